#ifndef SASAKI_ADMISSIBLE_HPP
#define SASAKI_ADMISSIBLE_HPP

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/quotient.hpp"
#include "sasaki/roots.hpp"

namespace sasaki {

// r = (w1 v2 - w2 v1)/(w1 v2 + w2 v1), the profile parameter of the ray;
// always in (-1, 1), zero exactly on the degenerate line.
inline Rational ray_ratio(const WeightVector& w, const ReebRay& v) {
    return Rational(w.w1 * v.v2 - w.w2 * v.v1, w.w1 * v.v2 + w.w2 * v.v1);
}

// Discrete data feeding the profile construction: transverse dimension,
// scaled scalar curvature I_N/n (signed with the ray orientation), the ray
// parameter r, and the two branch orders.
struct AdmissibleData {
    long long d_N;
    Rational scalar_s;
    Rational r;
    long long m1;
    long long m2;

    AdmissibleData(long long d, Rational s, Rational ratio, long long m1_, long long m2_)
        : d_N(d), scalar_s(std::move(s)), r(std::move(ratio)), m1(m1_), m2(m2_) {
        if (d_N < 1) throw ValidationError("admissible data: d_N must be positive");
        if (m1 < 1 || m2 < 1) throw ValidationError("admissible data: branch orders must be positive");
        if (r.is_zero() || !(r.abs() < Rational(1)))
            throw ValidationError("admissible data: requires 0 < |r| < 1");
        if (r.sign() != scalar_s.sign())
            throw ValidationError("admissible data: r and the scalar factor must share a sign");
    }
};

inline AdmissibleData admissible_data(const JoinSpec& join, const ReebRay& v) {
    const auto d = detail::ray_data(join, v);
    return {join.base.complex_dim, Rational(join.base.fano_index, d.n_signed),
            ray_ratio(join.w, v), d.m1, d.m2};
}

namespace detail {

// ((1 - z)/m2 - (1 + z)/m1) * (1 + r z)^d
inline Polynomial profile_integrand(long long d_N, const Rational& r, long long m1,
                                    long long m2) {
    const Polynomial linear{Rational(1, m2) - Rational(1, m1),
                            -(Rational(1, m2) + Rational(1, m1))};
    return linear * Polynomial{Rational(1), r}.pow(static_cast<unsigned>(d_N));
}

} // namespace detail

// F(z) = integral of the profile integrand from -1 to z. F(-1) = 0 by
// construction; F(1) = 0 exactly when the ray is Einstein, and the value at 1
// is otherwise the boundary defect.
inline Polynomial ke_profile(const AdmissibleData& data) {
    const Polynomial anti =
        detail::profile_integrand(data.d_N, data.r, data.m1, data.m2).antiderivative();
    return anti - Polynomial(anti.evaluate(Rational(-1)));
}

namespace detail {

// f(c) for one value of c: the exact integral over [-1, 1] of
// ((1-c) - (1+c)z) ((c+t) + (c-t)z)^d.
inline Rational ke_defect_at(const Rational& t, const Rational& c, long long d_N) {
    const Polynomial linear{Rational(1) - c, -(Rational(1) + c)};
    const Polynomial affine{c + t, c - t};
    return integrate(linear * affine.pow(static_cast<unsigned>(d_N)), Rational(-1),
                     Rational(1));
}

// Exact expansion of c -> f(c), degree d_N + 1, recovered by interpolation
// through d_N + 2 nodes to the right of t.
inline Polynomial ke_defect_polynomial(const Rational& t, long long d_N) {
    std::vector<std::pair<Rational, Rational>> nodes;
    nodes.reserve(static_cast<unsigned>(d_N) + 2);
    for (long long j = 1; j <= d_N + 2; ++j) {
        const Rational c = t + Rational(j);
        nodes.emplace_back(c, ke_defect_at(t, c, d_N));
    }
    return lagrange_interpolate(nodes);
}

} // namespace detail

// Exact Einstein defect of the ray v over the weights w; zero iff the ray
// carries the Einstein structure.
inline Rational ke_defect(const WeightVector& w, const ReebRay& v, long long d_N) {
    if (d_N < 1) throw ValidationError("ke defect: d_N must be positive");
    const Rational t(w.w2, w.w1);
    const Rational c(v.v2, v.v1);
    if (c == t) throw DegenerateRay("ke defect: ray parallel to the weight vector");
    return detail::ke_defect_at(t, c, d_N);
}

enum class RayClass { Regular, QuasiRegular, Irregular };

inline std::string to_string(RayClass c) {
    switch (c) {
        case RayClass::Regular: return "regular";
        case RayClass::QuasiRegular: return "quasi_regular";
        default: return "irregular";
    }
}

struct KERoot {
    bool rational = false;
    Rational value;   // exact root when rational
    RootInterval box; // certified isolating interval in every case
    RayClass classification = RayClass::Irregular;
    std::optional<ReebRay> v; // coprime ray with v2/v1 = value, when rational
};

struct KESolution {
    Rational t;
    Polynomial defect; // the expanded f(c)
    std::vector<KERoot> roots;
    std::optional<ReebRay> v_if_rational; // first (smallest) rational root's ray
    std::optional<Rational> lambda;       // (1/m1 + 1/m2)/2 for that ray; needs the base index
};

// Expands the defect to an exact polynomial, isolates every root to the right
// of t, and classifies each. Rational roots are exact and carry their ray;
// the base index is only needed to attach quotient data (lambda, and the
// regular-versus-quasi-regular split, which the defect sign analysis already
// settles as quasi-regular: f(1) < 0 keeps the diagonal ray off the zero set).
inline KESolution solve_ke_ray(const WeightVector& w, long long d_N,
                               const Rational& precision = default_isolation_width(),
                               std::optional<long long> fano_index = std::nullopt) {
    if (w.w1 <= w.w2) throw ValidationError("ke solve: requires w1 > w2");
    if (d_N < 1) throw ValidationError("ke solve: d_N must be positive");
    if (!(precision > Rational(0))) throw ValidationError("ke solve: precision must be positive");

    KESolution sol;
    sol.t = Rational(w.w2, w.w1);
    sol.defect = detail::ke_defect_polynomial(sol.t, d_N);

    std::optional<JoinSpec> join;
    if (fano_index) join = make_join(FanoBase::custom(*fano_index, d_N), w);

    const auto rationals = rational_roots(sol.defect);
    for (const auto& box : isolate_roots(sol.defect, sol.t, std::nullopt, precision)) {
        KERoot root;
        root.box = box;
        for (const auto& candidate : rationals)
            if (box.contains(candidate)) {
                root.rational = true;
                root.value = candidate;
                break;
            }
        if (root.rational) {
            const ReebRay ray(to_int64(root.value.denominator()),
                              to_int64(root.value.numerator()));
            root.v = ray;
            if (join) {
                const ReebQuotient quot = reeb_quotient(*join, ray);
                root.classification = quot.regularity == Regularity::Regular
                                          ? RayClass::Regular
                                          : RayClass::QuasiRegular;
                if (!sol.lambda)
                    sol.lambda = (Rational(1, quot.m1) + Rational(1, quot.m2)) / Rational(2);
            } else {
                if (root.value == Rational(1))
                    throw ComputationError("ke solve: diagonal root contradicts f(1) < 0");
                root.classification = RayClass::QuasiRegular;
            }
            if (!sol.v_if_rational) sol.v_if_rational = ray;
        }
        sol.roots.push_back(std::move(root));
    }
    return sol;
}

// One member of the quasi-regular family: the parameter k, the exact weight
// ratio t(k) and ray ratio c = k t, their coprime integer forms, and the join
// when a base index is supplied.
struct FamilyRay {
    Rational k;
    Rational t;
    Rational c;
    WeightVector w;
    ReebRay v;
    std::optional<JoinSpec> join;
};

// t(k) is the ratio of the two boundary integrals; the resulting ray has
// Einstein defect exactly zero, which is re-verified before returning.
inline FamilyRay quasiregular_family(const Rational& k, long long d_N,
                                     std::optional<long long> fano_index = std::nullopt) {
    if (!(k > Rational(1))) throw InvalidK("family: requires k > 1");
    if (d_N < 1) throw ValidationError("family: d_N must be positive");

    const Polynomial core =
        Polynomial{k + Rational(1), k - Rational(1)}.pow(static_cast<unsigned>(d_N));
    const Rational numer =
        integrate(Polynomial{Rational(1), Rational(-1)} * core, Rational(-1), Rational(1));
    const Rational denom =
        k * integrate(Polynomial{Rational(1), Rational(1)} * core, Rational(-1), Rational(1));
    const Rational t = numer / denom;
    const Rational c = k * t;

    FamilyRay fam{k, t, c, WeightVector(to_int64(t.denominator()), to_int64(t.numerator())),
                  ReebRay(to_int64(c.denominator()), to_int64(c.numerator())), std::nullopt};
    if (!ke_defect(fam.w, fam.v, d_N).is_zero())
        throw ComputationError("family: defect failed to vanish on the constructed ray");
    if (fano_index) fam.join = make_join(FanoBase::custom(*fano_index, d_N), fam.w);
    return fam;
}

struct YpqData {
    long long p;
    long long q;
    WeightVector w;
    long long l1;
    long long l2;
};

// Weights and relative indices carried by the (p, q) member of the d_N = 1
// family: w = (p+q, p-q)/gcd, l1 = gcd(p+q, p-q), l2 = p.
inline YpqData ypq_bridge(long long p, long long q) {
    const WeightVector w = ypq_weights(p, q);
    return {p, q, w, std::gcd(p + q, p - q), p};
}

// (p, q) of the member reached by k = a/b. The raw values
// (ab + a^2 + b^2, a^2 - b^2) pick up a common factor of 3 exactly when
// a = b mod 3; it is divided out to land on the coprime normal form.
inline std::pair<long long, long long> ypq_from_ab(long long a, long long b) {
    if (b < 1 || a <= b || std::gcd(a, b) != 1)
        throw InvalidPQ("ypq: requires coprime a > b >= 1");
    const long long p = a * b + a * a + b * b;
    const long long q = a * a - b * b;
    const long long g = std::gcd(p, q);
    return {p / g, q / g};
}

struct SolitonSolution {
    double a = 0;
    double a_lo = 0;
    double a_hi = 0;
    double bracket_width = 0;
    int sign_lo = 0; // sign of G at each end of the final bracket
    int sign_hi = 0;
    bool exact_zero = false; // G(0) vanished exactly; the bracket collapses at 0
    Rational g_at_zero;      // exact rational value of G(0)
};

namespace detail {

// Closed-form evaluator for G(a) = integral of e^{-a z} q(z) over [-1, 1]:
// G(a) = e^a S(-1) - e^{-a} S(1) with S(z) = sum_i q^(i)(z)/a^{i+1}. Near
// a = 0 the powers of 1/a cancel catastrophically, so a short exact-moment
// series takes over below the switchover.
struct SolitonKernel {
    std::vector<double> at_lo;   // q^(i)(-1)
    std::vector<double> at_hi;   // q^(i)(+1)
    std::vector<double> moments; // integral of q z^n over [-1, 1], n = 0..7

    explicit SolitonKernel(const Polynomial& q) {
        Polynomial derivative = q;
        while (!derivative.is_zero()) {
            at_lo.push_back(derivative.evaluate(Rational(-1)).to_double());
            at_hi.push_back(derivative.evaluate(Rational(1)).to_double());
            derivative = derivative.derivative();
        }
        Polynomial weighted = q;
        const Polynomial z = Polynomial::variable();
        for (int n = 0; n < 8; ++n) {
            moments.push_back(integrate(weighted, Rational(-1), Rational(1)).to_double());
            weighted *= z;
        }
    }

    double operator()(double a) const {
        if (std::abs(a) < std::ldexp(1.0, -20)) {
            double sum = 0.0;
            double term = 1.0; // (-a)^n / n!
            for (std::size_t n = 0; n < moments.size(); ++n) {
                sum += term * moments[n];
                term *= -a / static_cast<double>(n + 1);
            }
            return sum;
        }
        double s_lo = 0.0, s_hi = 0.0;
        double power = 1.0 / a;
        for (std::size_t i = 0; i < at_lo.size(); ++i) {
            s_lo += at_lo[i] * power;
            s_hi += at_hi[i] * power;
            power /= a;
        }
        return std::exp(a) * s_lo - std::exp(-a) * s_hi;
    }
};

inline int fsign(double x) { return x > 0 ? 1 : x < 0 ? -1 : 0; }

} // namespace detail

// Solves G(a) = 0 where G weights the Einstein defect integrand by e^{-a z}.
// The branch orders enter only through the ray (the residual quotient order
// scales G by a positive constant and moves no zero). G grows to +infinity on
// the right and falls to -infinity on the left, so doubling away from 0
// against the sign of G(0) always brackets a root in exact arithmetic; the
// cap surfaces numerical pathologies instead of looping.
inline SolitonSolution solve_soliton(const WeightVector& w, const ReebRay& v, long long d_N,
                                     double tol = 1e-12) {
    if (d_N < 1) throw ValidationError("soliton: d_N must be positive");
    if (!(tol > 0)) throw ValidationError("soliton: tolerance must be positive");
    if (w.w1 * v.v2 == w.w2 * v.v1)
        throw DegenerateRay("soliton: ray parallel to the weight vector");

    const Polynomial q = detail::profile_integrand(d_N, ray_ratio(w, v), v.v1, v.v2);
    SolitonSolution sol;
    sol.g_at_zero = integrate(q, Rational(-1), Rational(1));
    if (sol.g_at_zero.is_zero()) {
        sol.exact_zero = true;
        return sol;
    }

    const detail::SolitonKernel G(q);
    const int sign0 = sol.g_at_zero.sign();
    const double direction = sign0 < 0 ? 1.0 : -1.0;
    double prev = 0.0;
    double probe = 0.0;
    bool bracketed = false;
    for (double step = 1.0; step <= 1024.0; step *= 2.0) {
        probe = direction * step;
        if (detail::fsign(G(probe)) != sign0) {
            bracketed = true;
            break;
        }
        prev = probe;
    }
    if (!bracketed) throw BracketNotFound("soliton: no sign change within |a| <= 2^10");

    double lo = std::min(prev, probe), hi = std::max(prev, probe);
    int lo_sign = detail::fsign(G(lo));
    int hi_sign = detail::fsign(G(hi));
    while (hi - lo > tol) {
        const double mid = lo + (hi - lo) / 2;
        if (mid <= lo || mid >= hi) break; // double resolution exhausted
        const int mid_sign = detail::fsign(G(mid));
        if (mid_sign == lo_sign) {
            lo = mid;
        } else {
            hi = mid;
            hi_sign = mid_sign;
        }
    }
    sol.a_lo = lo;
    sol.a_hi = hi;
    sol.a = lo + (hi - lo) / 2;
    sol.bracket_width = hi - lo;
    sol.sign_lo = lo_sign;
    sol.sign_hi = hi_sign;
    return sol;
}

struct ExtremalSolution {
    Polynomial P; // degree <= 2 factor of F''
    Polynomial F;
    bool positive = false; // F > 0 on (-1, 1), Sturm-certified
};

namespace detail {

// Exact Gaussian elimination on an n x (n+1) augmented system.
inline std::vector<Rational> solve_linear_system(std::vector<std::vector<Rational>> aug) {
    const std::size_t n = aug.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && aug[pivot][col].is_zero()) ++pivot;
        if (pivot == n) throw SingularSystem("extremal: boundary system is rank-deficient");
        std::swap(aug[col], aug[pivot]);
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || aug[row][col].is_zero()) continue;
            const Rational factor = aug[row][col] / aug[col][col];
            for (std::size_t k = col; k <= n; ++k) aug[row][k] -= factor * aug[col][k];
        }
    }
    std::vector<Rational> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = aug[i][n] / aug[i][i];
    return x;
}

} // namespace detail

// Solves the boundary problem F'' = (1 + r z)^{d_N - 1} P(z) with P of degree
// at most 2: five exact linear equations (the value of P at -1/r prescribed
// by the scalar factor, F(+-1) = 0, and the two endpoint derivatives) in the
// three coefficients of P and two integration constants.
inline ExtremalSolution solve_extremal(const WeightVector& w, const ReebRay& v, long long d_N,
                                       long long fano_index) {
    if (d_N < 1) throw ValidationError("extremal: d_N must be positive");
    const JoinSpec join = make_join(FanoBase::custom(fano_index, d_N), w);
    const AdmissibleData data = admissible_data(join, v);
    const Rational& r = data.r;

    const Polynomial weight = Polynomial{Rational(1), r}.pow(static_cast<unsigned>(d_N - 1));
    Polynomial basis[3];      // double antiderivatives of z^j (1 + r z)^{d_N - 1}
    Polynomial basis_slope[3];
    Polynomial zj{Rational(1)};
    const Polynomial z = Polynomial::variable();
    for (int j = 0; j < 3; ++j) {
        basis_slope[j] = (weight * zj).antiderivative();
        basis[j] = basis_slope[j].antiderivative();
        zj *= z;
    }

    const Rational p_at_lo = (Rational(1) - r).pow(d_N);
    const Rational p_at_hi = (Rational(1) + r).pow(d_N);
    const Rational pole = -r.reciprocal();

    // Unknowns (p0, p1, p2, C1, C2).
    std::vector<std::vector<Rational>> aug = {
        {Rational(1), pole, pole * pole, Rational(0), Rational(0),
         Rational(2 * d_N) * data.scalar_s * r},
        {basis[0].evaluate(Rational(-1)), basis[1].evaluate(Rational(-1)),
         basis[2].evaluate(Rational(-1)), Rational(-1), Rational(1), Rational(0)},
        {basis[0].evaluate(Rational(1)), basis[1].evaluate(Rational(1)),
         basis[2].evaluate(Rational(1)), Rational(1), Rational(1), Rational(0)},
        {basis_slope[0].evaluate(Rational(-1)), basis_slope[1].evaluate(Rational(-1)),
         basis_slope[2].evaluate(Rational(-1)), Rational(1), Rational(0),
         Rational(2) * p_at_lo / Rational(data.m2)},
        {basis_slope[0].evaluate(Rational(1)), basis_slope[1].evaluate(Rational(1)),
         basis_slope[2].evaluate(Rational(1)), Rational(1), Rational(0),
         Rational(-2) * p_at_hi / Rational(data.m1)}};
    const auto x = detail::solve_linear_system(std::move(aug));

    ExtremalSolution sol;
    sol.P = Polynomial{x[0], x[1], x[2]};
    sol.F = x[0] * basis[0] + x[1] * basis[1] + x[2] * basis[2] +
            Polynomial{x[4], x[3]};
    sol.positive = positive_on_open_interval(sol.F, Rational(-1), Rational(1));
    return sol;
}

} // namespace sasaki

#endif
