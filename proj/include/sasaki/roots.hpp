#ifndef SASAKI_ROOTS_HPP
#define SASAKI_ROOTS_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <utility>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/polynomial.hpp"
#include "sasaki/rational.hpp"

namespace sasaki {

// Certified isolating interval: the square-free part of the target polynomial has
// exactly one root in the open interval (lo, hi) and no root at either endpoint.
// sign_change: +1 if the square-free part passes from negative to positive, -1 otherwise.
// multiplicity: multiplicity of the enclosed root in the original polynomial.
struct RootInterval {
    Rational lo;
    Rational hi;
    int sign_change = 0;
    int multiplicity = 1;

    Rational width() const { return hi - lo; }
    Rational midpoint() const { return (lo + hi) / Rational(2); }
    bool contains(const Rational& x) const { return lo < x && x < hi; }
};

inline Rational default_isolation_width() {
    return Rational(Integer(1), Integer("1000000000000")); // 10^-12
}

// Canonical signed-remainder sequence.
inline std::vector<Polynomial> sturm_sequence(const Polynomial& p) {
    std::vector<Polynomial> seq;
    if (p.is_zero()) return seq;
    seq.push_back(p);
    Polynomial d = p.derivative();
    if (d.is_zero()) return seq;
    seq.push_back(d);
    while (true) {
        const Polynomial& a = seq[seq.size() - 2];
        const Polynomial& b = seq.back();
        Polynomial r = Polynomial::divmod(a, b).second;
        if (r.is_zero()) break;
        seq.push_back(-r);
    }
    return seq;
}

namespace detail {

inline int sign_at(const Polynomial& p, const Rational& x) { return p.evaluate(x).sign(); }

// Sign at -infinity (direction < 0) or +infinity (direction > 0).
inline int sign_at_infinity(const Polynomial& p, int direction) {
    if (p.is_zero()) return 0;
    int s = p.leading().sign();
    if (direction < 0 && p.degree() % 2 == 1) s = -s;
    return s;
}

inline int count_flips(const std::vector<int>& signs) {
    int flips = 0, prev = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++flips;
        prev = s;
    }
    return flips;
}

inline int sign_variations(const std::vector<Polynomial>& seq, const std::optional<Rational>& x,
                           int direction_if_infinite) {
    std::vector<int> signs;
    signs.reserve(seq.size());
    for (const auto& p : seq)
        signs.push_back(x ? sign_at(p, *x) : sign_at_infinity(p, direction_if_infinite));
    return count_flips(signs);
}

} // namespace detail

// Number of distinct real roots in (lo, hi]; open endpoints via nullopt.
// Requires p(lo) != 0 when lo is finite.
inline int count_distinct_roots(const std::vector<Polynomial>& seq,
                                const std::optional<Rational>& lo,
                                const std::optional<Rational>& hi) {
    return detail::sign_variations(seq, lo, -1) - detail::sign_variations(seq, hi, +1);
}

// All real roots of p lie strictly inside (-B, B).
inline Rational cauchy_root_bound(const Polynomial& p) {
    if (p.degree() <= 0) return Rational(1);
    Rational m(0);
    const Rational lead = p.leading().abs();
    for (int i = 0; i < p.degree(); ++i)
        m = std::max(m, p.coefficient(static_cast<std::size_t>(i)).abs() / lead);
    return Rational(1) + m;
}

namespace detail {

// Divide out a simple root at x0 (exact).
inline Polynomial deflate_at(const Polynomial& p, const Rational& x0) {
    auto [q, r] = Polynomial::divmod(p, Polynomial{-x0, Rational(1)});
    if (!r.is_zero()) throw ValidationError("deflate: not a root");
    return q;
}

struct IsolationState {
    Polynomial sf;                  // square-free part of the input, possibly endpoint-deflated
    Polynomial sf_full;             // square-free part of the input
    std::vector<Polynomial> sturm;  // sturm sequence of sf
    std::vector<Polynomial> yun;    // multiplicity factors of the input
};

inline int multiplicity_in(const IsolationState& st, const Rational& a, const Rational& b) {
    for (std::size_t i = 0; i < st.yun.size(); ++i) {
        const Polynomial& f = st.yun[i];
        if (f.degree() <= 0) continue;
        if (sign_at(f, a) * sign_at(f, b) < 0) return static_cast<int>(i) + 1;
    }
    return 1;
}

inline RootInterval finish_interval(const IsolationState& st, const Rational& a, const Rational& b) {
    RootInterval out;
    out.lo = a;
    out.hi = b;
    const int sb = sign_at(st.sf_full, b);
    out.sign_change = sb > 0 ? +1 : -1;
    out.multiplicity = multiplicity_in(st, a, b);
    return out;
}

// Shrink an isolating half-open interval (a, b] (exactly one sf-root, sf(a) != 0) until
// width <= target and both endpoints are non-roots of sf_full, then emit it.
inline RootInterval refine_interval(const IsolationState& st, Rational a, Rational b,
                                    const Rational& target) {
    while (true) {
        const bool clean =
            sign_at(st.sf_full, a) != 0 && sign_at(st.sf_full, b) != 0;
        if (clean && b - a <= target) return finish_interval(st, a, b);

        const Rational mid = (a + b) / Rational(2);
        if (sign_at(st.sf, mid) == 0) {
            // Landed exactly on the root; center a clean interval around it.
            Rational delta = std::min(std::min(mid - a, b - mid), target) / Rational(2);
            while (sign_at(st.sf_full, mid - delta) == 0 || sign_at(st.sf_full, mid + delta) == 0)
                delta /= Rational(2);
            return finish_interval(st, mid - delta, mid + delta);
        }
        if (count_distinct_roots(st.sturm, a, mid) == 1)
            b = mid;
        else
            a = mid;
    }
}

} // namespace detail

// Isolating intervals, with multiplicity, for every distinct real root of p between
// lo and hi (either may be absent, meaning unbounded). Intervals are pairwise disjoint,
// sorted ascending, and refined to width <= width.
inline std::vector<RootInterval> isolate_roots(const Polynomial& p,
                                               const std::optional<Rational>& lo = std::nullopt,
                                               const std::optional<Rational>& hi = std::nullopt,
                                               const Rational& width = default_isolation_width()) {
    if (p.is_zero()) throw ValidationError("isolate_roots: zero polynomial");
    std::vector<RootInterval> out;
    if (p.degree() == 0) return out;
    if (lo && hi && *lo >= *hi) return out;

    detail::IsolationState st;
    st.sf_full = square_free_part(p).monic();
    st.sf = st.sf_full;
    st.yun = square_free_decomposition(p);

    // Clip to a finite range containing every root of interest; endpoint roots are
    // excluded from the open range, so divide them out before Sturm counting.
    const Rational bound = cauchy_root_bound(st.sf);
    Rational a = lo ? *lo : -bound;
    Rational b = hi ? *hi : bound;
    if (lo && *lo < -bound) a = -bound;
    if (hi && *hi > bound) b = bound;
    if (a >= b) return out;
    while (detail::sign_at(st.sf, a) == 0) st.sf = detail::deflate_at(st.sf, a);
    if (detail::sign_at(st.sf, b) == 0) st.sf = detail::deflate_at(st.sf, b);
    if (st.sf.degree() <= 0) return out;
    st.sturm = sturm_sequence(st.sf);

    // Depth-first bisection over half-open segments (a, b].
    std::vector<std::pair<Rational, Rational>> stack{{a, b}};
    while (!stack.empty()) {
        auto [x, y] = stack.back();
        stack.pop_back();
        const int n = count_distinct_roots(st.sturm, x, y);
        if (n == 0) continue;
        if (n == 1) {
            // Segment ends are never roots of st.sf (deflated globals, checked midpoints).
            out.push_back(detail::refine_interval(st, x, y, width));
            continue;
        }
        const Rational mid = (x + y) / Rational(2);
        if (detail::sign_at(st.sf, mid) == 0) {
            // Exact root at the split point: emit a clean box, recurse on both flanks.
            Rational delta = std::min(std::min(mid - x, y - mid), width) / Rational(2);
            while (detail::sign_at(st.sf_full, mid - delta) == 0 ||
                   detail::sign_at(st.sf_full, mid + delta) == 0 ||
                   count_distinct_roots(st.sturm, mid - delta, mid + delta) != 1)
                delta /= Rational(2);
            out.push_back(detail::finish_interval(st, mid - delta, mid + delta));
            stack.emplace_back(x, mid - delta);
            stack.emplace_back(mid + delta, y);
        } else {
            stack.emplace_back(x, mid);
            stack.emplace_back(mid, y);
        }
    }

    std::sort(out.begin(), out.end(),
              [](const RootInterval& u, const RootInterval& v) { return u.lo < v.lo; });
    return out;
}

// Exact decision of p > 0 everywhere on the open interval (a, b).
inline bool positive_on_open_interval(const Polynomial& p, const Rational& a, const Rational& b) {
    if (a >= b) return true; // vacuous
    if (p.is_zero()) return false;
    if (p.degree() == 0) return p.leading().sign() > 0;

    Polynomial sf = square_free_part(p).monic();
    while (detail::sign_at(sf, a) == 0) sf = detail::deflate_at(sf, a);
    while (detail::sign_at(sf, b) == 0) sf = detail::deflate_at(sf, b);
    if (sf.degree() > 0) {
        const auto seq = sturm_sequence(sf);
        if (count_distinct_roots(seq, a, b) > 0) return false; // an interior zero of p
    }
    return p.evaluate((a + b) / Rational(2)).sign() > 0;
}

// Trial-division prime factorization; input capped at 2^63 - 1.
inline std::vector<std::pair<std::uint64_t, int>> factorize(const Integer& n) {
    if (n < 1) throw ValidationError("factorize: input must be >= 1");
    if (n > Integer("9223372036854775807")) throw ValidationError("factorize: input exceeds 2^63 - 1");
    auto m = n.convert_to<std::uint64_t>();
    std::vector<std::pair<std::uint64_t, int>> out;
    for (std::uint64_t d = 2; d <= m / d; d += (d == 2 ? 1 : 2)) {
        if (m % d != 0) continue;
        int e = 0;
        while (m % d == 0) {
            m /= d;
            ++e;
        }
        out.emplace_back(d, e);
    }
    if (m > 1) out.emplace_back(m, 1);
    return out;
}

// Sorted list of every positive divisor.
inline std::vector<std::uint64_t> divisors(const Integer& n) {
    std::vector<std::uint64_t> out{1};
    for (const auto& [p, e] : factorize(n)) {
        const std::size_t base_count = out.size();
        std::uint64_t pk = 1;
        for (int k = 1; k <= e; ++k) {
            pk *= p;
            for (std::size_t i = 0; i < base_count; ++i) out.push_back(out[i] * pk);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// All rational roots of p, ascending, via the rational-root theorem on the
// primitive integer form of p.
inline std::vector<Rational> rational_roots(const Polynomial& p) {
    if (p.is_zero()) throw ValidationError("rational_roots: zero polynomial");
    std::vector<Rational> out;
    if (p.degree() == 0) return out;

    // Factor out z^k exactly; zero is a root iff the constant term vanishes.
    std::size_t low = 0;
    while (p.coefficient(low).is_zero()) ++low;
    if (low > 0) out.push_back(Rational(0));

    std::vector<Rational> c(p.coefficients().begin() + static_cast<long>(low),
                            p.coefficients().end());
    if (c.size() <= 1) return out;

    // Clear denominators and divide by the content: primitive integer coefficients.
    Integer lcm_den = 1;
    for (const auto& a : c) lcm_den = lcm_den / integer_gcd(lcm_den, a.denominator()) * a.denominator();
    std::vector<Integer> ic;
    ic.reserve(c.size());
    for (const auto& a : c) ic.push_back(a.numerator() * (lcm_den / a.denominator()));
    Integer content = 0;
    for (const auto& a : ic) content = integer_gcd(content, a);
    for (auto& a : ic) a /= content;

    const Integer a0 = boost::multiprecision::abs(ic.front());
    const Integer an = boost::multiprecision::abs(ic.back());
    Polynomial prim{std::vector<Rational>(ic.begin(), ic.end())};
    for (const std::uint64_t r : divisors(a0)) {
        for (const std::uint64_t s : divisors(an)) {
            if (std::gcd(r, s) != 1) continue;
            const Rational cand{Integer(r), Integer(s)};
            if (prim.evaluate(cand).is_zero()) out.push_back(cand);
            if (prim.evaluate(-cand).is_zero()) out.push_back(-cand);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace sasaki

#endif // SASAKI_ROOTS_HPP
