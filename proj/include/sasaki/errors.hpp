#ifndef SASAKI_ERRORS_HPP
#define SASAKI_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sasaki {

// Input lies outside an operation's stated domain.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A computation over valid inputs could not be completed.
class ComputationError : public std::runtime_error {
public:
    explicit ComputationError(const std::string& what) : std::runtime_error(what) {}
};

// gcd(l2, l1*w1*w2) != 1: the circle quotient is not a smooth manifold.
class SmoothnessViolation : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// The operation's statement assumes w != (1,1).
class UnsupportedWeight : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// w1*v2 = w2*v1: the ray sits on the degenerate line c = t.
class DegenerateRay : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// Family parameter k must be a rational > 1.
class InvalidK : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// (p, q) must be coprime with 1 <= q < p, p > 1.
class InvalidPQ : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// The congruence test requires odd w1*w2.
class ParityError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

// No sign change found within the search range of the transcendental solve.
class BracketNotFound : public ComputationError {
public:
    using ComputationError::ComputationError;
};

// The exact linear system is rank-deficient.
class SingularSystem : public ComputationError {
public:
    using ComputationError::ComputationError;
};

} // namespace sasaki

#endif // SASAKI_ERRORS_HPP
