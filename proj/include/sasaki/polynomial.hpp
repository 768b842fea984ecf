#ifndef SASAKI_POLYNOMIAL_HPP
#define SASAKI_POLYNOMIAL_HPP

#include <initializer_list>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/rational.hpp"

namespace sasaki {

// Univariate polynomial over exact rationals. Coefficient index = degree.
// Invariant: trailing (leading-degree) coefficient nonzero; zero polynomial is empty.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(const Rational& constant) {
        if (!constant.is_zero()) c_.push_back(constant);
    }

    explicit Polynomial(std::vector<Rational> coefficients) : c_(std::move(coefficients)) { trim(); }

    Polynomial(std::initializer_list<Rational> coefficients)
        : c_(coefficients) { trim(); }

    static Polynomial variable() { return monomial(Rational(1), 1); }

    static Polynomial monomial(const Rational& a, std::size_t k) {
        if (a.is_zero()) return {};
        std::vector<Rational> c(k + 1);
        c[k] = a;
        return Polynomial(std::move(c));
    }

    // degree of the zero polynomial is -1 by convention
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    Rational coefficient(std::size_t k) const {
        return k < c_.size() ? c_[k] : Rational(0);
    }

    const std::vector<Rational>& coefficients() const { return c_; }

    Rational leading() const {
        return c_.empty() ? Rational(0) : c_.back();
    }

    bool operator==(const Polynomial& o) const { return c_ == o.c_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial operator-() const {
        Polynomial r = *this;
        for (auto& a : r.c_) a = -a;
        return r;
    }

    Polynomial operator+(const Polynomial& o) const {
        std::vector<Rational> c(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = coefficient(i) + o.coefficient(i);
        return Polynomial(std::move(c));
    }

    Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

    Polynomial operator*(const Polynomial& o) const {
        if (is_zero() || o.is_zero()) return {};
        std::vector<Rational> c(c_.size() + o.c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                c[i + j] += c_[i] * o.c_[j];
        return Polynomial(std::move(c));
    }

    Polynomial operator*(const Rational& a) const {
        if (a.is_zero()) return {};
        Polynomial r = *this;
        for (auto& x : r.c_) x *= a;
        return r;
    }

    Polynomial operator/(const Rational& a) const { return *this * a.reciprocal(); }

    Polynomial& operator+=(const Polynomial& o) { *this = *this + o; return *this; }
    Polynomial& operator-=(const Polynomial& o) { *this = *this - o; return *this; }
    Polynomial& operator*=(const Polynomial& o) { *this = *this * o; return *this; }

    Polynomial pow(unsigned e) const {
        Polynomial result{Rational(1)};
        Polynomial base = *this;
        for (; e != 0; e >>= 1) {
            if (e & 1) result *= base;
            if (e > 1) base *= base;
        }
        return result;
    }

    Rational evaluate(const Rational& x) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    Polynomial derivative() const {
        if (c_.size() <= 1) return {};
        std::vector<Rational> c(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) c[i - 1] = c_[i] * Rational(static_cast<long long>(i));
        return Polynomial(std::move(c));
    }

    // Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        if (is_zero()) return {};
        std::vector<Rational> c(c_.size() + 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            c[i + 1] = c_[i] / Rational(static_cast<long long>(i + 1));
        return Polynomial(std::move(c));
    }

    Polynomial monic() const {
        if (is_zero()) return {};
        return *this / leading();
    }

    // Quotient and remainder of exact division; divisor must be nonzero.
    static std::pair<Polynomial, Polynomial> divmod(const Polynomial& num, const Polynomial& den) {
        if (den.is_zero()) throw ValidationError("polynomial: division by zero polynomial");
        Polynomial q, r = num;
        const int dd = den.degree();
        while (!r.is_zero() && r.degree() >= dd) {
            const auto shift = static_cast<std::size_t>(r.degree() - dd);
            Polynomial term = monomial(r.leading() / den.leading(), shift);
            q += term;
            r -= term * den;
        }
        return {q, r};
    }

    std::string str(const std::string& var = "z") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Rational& a = c_[static_cast<std::size_t>(k)];
            if (a.is_zero()) continue;
            if (out.empty())
                out += a.sign() < 0 ? "-" : "";
            else
                out += a.sign() < 0 ? " - " : " + ";
            const Rational mag = a.abs();
            if (k == 0) {
                out += mag.str();
            } else {
                if (mag != Rational(1)) out += mag.str() + "*";
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << p.str(); }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

inline Polynomial operator*(const Rational& a, const Polynomial& p) { return p * a; }

// Exact definite integral over [a, b].
inline Rational integrate(const Polynomial& p, const Rational& a, const Rational& b) {
    const Polynomial anti = p.antiderivative();
    return anti.evaluate(b) - anti.evaluate(a);
}

// Monic gcd; gcd(0, 0) = 0.
inline Polynomial polynomial_gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = Polynomial::divmod(a, b).second;
        a = std::move(b);
        b = r.is_zero() ? Polynomial{} : r.monic();
    }
    return a.is_zero() ? a : a.monic();
}

// p with all root multiplicities flattened to one: p / gcd(p, p').
inline Polynomial square_free_part(const Polynomial& p) {
    if (p.degree() <= 0) return p;
    const Polynomial g = polynomial_gcd(p, p.derivative());
    if (g.degree() <= 0) return p;
    return Polynomial::divmod(p, g).first;
}

// Yun decomposition: returns a[0..] with p = lc * prod a[i]^(i+1), each a[i] square-free,
// pairwise coprime and monic.
inline std::vector<Polynomial> square_free_decomposition(const Polynomial& p) {
    std::vector<Polynomial> factors;
    if (p.degree() <= 0) return factors;
    Polynomial q = p.monic();
    Polynomial g = polynomial_gcd(q, q.derivative());
    if (g.degree() == 0) {
        factors.push_back(q);
        return factors;
    }
    Polynomial w = Polynomial::divmod(q, g).first;
    Polynomial y = Polynomial::divmod(q.derivative(), g).first;
    Polynomial z = y - w.derivative();
    while (w.degree() > 0) {
        Polynomial gi = polynomial_gcd(w, z);
        factors.push_back(gi);
        w = Polynomial::divmod(w, gi).first;
        y = Polynomial::divmod(z, gi).first;
        z = y - w.derivative();
    }
    return factors;
}

// Unique interpolating polynomial of degree < #points through exact nodes.
inline Polynomial lagrange_interpolate(const std::vector<std::pair<Rational, Rational>>& points) {
    Polynomial result;
    for (std::size_t i = 0; i < points.size(); ++i) {
        Polynomial basis{Rational(1)};
        Rational denom(1);
        for (std::size_t j = 0; j < points.size(); ++j) {
            if (j == i) continue;
            basis *= Polynomial{-points[j].first, Rational(1)};
            denom *= points[i].first - points[j].first;
        }
        if (denom.is_zero()) throw ValidationError("interpolate: repeated node");
        result += basis * (points[i].second / denom);
    }
    return result;
}

} // namespace sasaki

#endif // SASAKI_POLYNOMIAL_HPP
