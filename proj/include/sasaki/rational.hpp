#ifndef SASAKI_RATIONAL_HPP
#define SASAKI_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "sasaki/errors.hpp"

namespace sasaki {

using Integer = boost::multiprecision::cpp_int;

inline Integer integer_gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

// Exact rational scalar. Always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : q_(0) {}
    Rational(long long n) : q_(n) {}              // NOLINT: implicit by design
    Rational(const Integer& n) : q_(n) {}         // NOLINT: implicit by design

    Rational(const Integer& num, const Integer& den) {
        if (den == 0) throw ValidationError("rational: zero denominator");
        if (den < 0)
            q_ = Backing(-num, -den);
        else
            q_ = Backing(num, den);
    }

    Rational(long long num, long long den) : Rational(Integer(num), Integer(den)) {}

    // Accepts "a/b" or "a" with optional leading sign.
    static Rational from_string(std::string_view text) {
        const auto slash = text.find('/');
        try {
            if (slash == std::string_view::npos) return Rational(Integer(std::string(text)));
            Integer num{std::string(text.substr(0, slash))};
            Integer den{std::string(text.substr(slash + 1))};
            return Rational(num, den);
        } catch (const std::runtime_error&) {
            throw ValidationError("rational: cannot parse '" + std::string(text) + "'");
        }
    }

    // Exact dyadic value of a finite double.
    static Rational from_double(double x) {
        Rational r;
        r.q_ = Backing(x);
        return r;
    }

    Integer numerator() const { return boost::multiprecision::numerator(q_); }
    Integer denominator() const { return boost::multiprecision::denominator(q_); }

    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return denominator() == 1; }
    int sign() const { return q_ == 0 ? 0 : (q_ < 0 ? -1 : 1); }

    Rational operator-() const { return wrap(-q_); }
    Rational operator+(const Rational& o) const { return wrap(q_ + o.q_); }
    Rational operator-(const Rational& o) const { return wrap(q_ - o.q_); }
    Rational operator*(const Rational& o) const { return wrap(q_ * o.q_); }
    Rational operator/(const Rational& o) const {
        if (o.is_zero()) throw ValidationError("rational: division by zero");
        return wrap(q_ / o.q_);
    }

    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    Rational abs() const { return q_ < 0 ? -*this : *this; }

    Rational reciprocal() const {
        if (is_zero()) throw ValidationError("rational: reciprocal of zero");
        return Rational(denominator(), numerator());
    }

    Rational pow(long long e) const {
        if (e < 0) return reciprocal().pow(-e);
        Rational result(1);
        Rational base = *this;
        for (auto k = static_cast<unsigned long long>(e); k != 0; k >>= 1) {
            if (k & 1) result *= base;
            base *= base;
        }
        return result;
    }

    // Largest integer <= value.
    Integer floor() const {
        Integer n = numerator(), d = denominator();
        Integer q = n / d;                      // truncates toward zero
        if (n < 0 && q * d != n) --q;
        return q;
    }

    double to_double() const { return q_.template convert_to<double>(); }

    std::string str() const {
        std::string s = numerator().str();
        if (!is_integer()) s += "/" + denominator().str();
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

private:
    using Backing = boost::multiprecision::cpp_rational;

    static Rational wrap(Backing q) {
        Rational r;
        r.q_ = std::move(q);
        return r;
    }

    Backing q_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

// Narrowing conversion for handing exact integers to machine-width APIs.
inline long long to_int64(const Integer& n) {
    if (n > std::numeric_limits<long long>::max() || n < std::numeric_limits<long long>::min())
        throw ComputationError("integer exceeds 64-bit range");
    return n.template convert_to<long long>();
}

} // namespace sasaki

#endif // SASAKI_RATIONAL_HPP
