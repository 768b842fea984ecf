#ifndef SASAKI_QUOTIENT_HPP
#define SASAKI_QUOTIENT_HPP

#include <cstdlib>
#include <numeric>
#include <string>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/join.hpp"
#include "sasaki/rational.hpp"

namespace sasaki {

// Direction v = (v1, v2) in the two-dimensional cone of Reeb fields.
struct ReebRay {
    long long v1 = 1;
    long long v2 = 1;

    ReebRay() = default;
    ReebRay(long long a, long long b) : v1(a), v2(b) {
        if (v1 < 1 || v2 < 1) throw ValidationError("ray: components must be positive");
        if (std::gcd(v1, v2) != 1) throw ValidationError("ray: components must be coprime");
    }

    bool operator==(const ReebRay& o) const { return v1 == o.v1 && v2 == o.v2; }
};

enum class Regularity { Regular, QuasiRegularWithBranching };

inline const char* to_string(Regularity r) {
    return r == Regularity::Regular ? "regular" : "quasi_regular_with_branching";
}

// One branch divisor of the quotient log pair, with its ramification index and
// the coefficient it contributes to the branch divisor sum.
struct BranchDivisor {
    std::string divisor; // "D1" or "D2"
    long long ramification = 1;
    Rational delta_coefficient; // 1 - 1/ramification
};

namespace detail {

// Shared integer core of the circle quotient along v; degree keeps its sign here.
struct RayData {
    long long s, m, m1, m2, n_signed;
};

inline RayData ray_data(const JoinSpec& join, const ReebRay& v) {
    const long long cross = join.w.w1 * v.v2 - join.w.w2 * v.v1;
    if (cross == 0)
        throw DegenerateRay("quotient: w1*v2 = w2*v1 (ray on the degenerate line c = t)");
    RayData d{};
    d.s = std::gcd(std::llabs(cross), join.l2);
    d.m = join.l2 / d.s;
    d.m1 = v.v1 * d.m;
    d.m2 = v.v2 * d.m;
    d.n_signed = join.l1 * cross / d.s;
    return d;
}

} // namespace detail

// Quotient of the join by the flow of the ray v: a ruled surface-like log pair
// (S_n, Delta) with branch data, fiber, and lens-space metadata.
//
// Invariant fields: s = gcd(|w1 v2 - w2 v1|, l2), m*s = l2, m1 = v1*m, m2 = v2*m,
// degree_n * s = l1 * |w1 v2 - w2 v1|, orb_pi1_order = m.
// When w1 v2 < w2 v1 the signed degree is negative; it is reported as its absolute
// value with orientation_reversed set and the divisor labels in `branch` swapped.
struct ReebQuotient {
    long long s = 1;
    long long m = 1;
    long long m1 = 1;
    long long m2 = 1;
    long long degree_n = 0;
    bool orientation_reversed = false;
    std::vector<BranchDivisor> branch; // entries for D1 and D2, in that order
    long long orb_pi1_order = 1;
    // Fiber of the quotient map: weighted projective line CP^1[v1,v2] / Z_m.
    long long fiber_v1 = 1, fiber_v2 = 1, fiber_quotient_order = 1;
    // Fiber of the join over the base: lens space L(l2; l1*w1, l1*w2).
    long long lens_order = 1, lens_p1 = 1, lens_p2 = 1;
    Regularity regularity = Regularity::Regular;

    std::string fiber_string() const {
        return "CP^1[" + std::to_string(fiber_v1) + "," + std::to_string(fiber_v2) + "]/Z_" +
               std::to_string(fiber_quotient_order);
    }
    std::string lens_string() const {
        return "L(" + std::to_string(lens_order) + ";" + std::to_string(lens_p1) + "," +
               std::to_string(lens_p2) + ")";
    }
};

inline ReebQuotient reeb_quotient(const JoinSpec& join, const ReebRay& v) {
    const auto d = detail::ray_data(join, v);
    ReebQuotient q;
    q.s = d.s;
    q.m = d.m;
    q.m1 = d.m1;
    q.m2 = d.m2;
    q.degree_n = std::llabs(d.n_signed);
    q.orientation_reversed = d.n_signed < 0;
    const long long ram_d1 = q.orientation_reversed ? q.m2 : q.m1;
    const long long ram_d2 = q.orientation_reversed ? q.m1 : q.m2;
    q.branch = {{"D1", ram_d1, Rational(ram_d1 - 1, ram_d1)},
                {"D2", ram_d2, Rational(ram_d2 - 1, ram_d2)}};
    q.orb_pi1_order = q.m;
    q.fiber_v1 = v.v1;
    q.fiber_v2 = v.v2;
    q.fiber_quotient_order = q.m;
    q.lens_order = join.l2;
    q.lens_p1 = join.l1 * join.w.w1;
    q.lens_p2 = join.l1 * join.w.w2;
    q.regularity = (q.m1 == 1 && q.m2 == 1) ? Regularity::Regular
                                            : Regularity::QuasiRegularWithBranching;
    return q;
}

// Orbit periods of the Reeb flow in units of 2*pi: 1/s on the open dense stratum,
// gcd(I_N,|w|)/(v_j*|w|) = 1/(v_j*l2) along the endpoint divisor D_j.
struct OrbitPeriods {
    Rational generic;
    Rational at_D1;
    Rational at_D2;
};

inline OrbitPeriods orbit_periods(const JoinSpec& join, const ReebRay& v) {
    if (join.w.homogeneous())
        throw UnsupportedWeight("periods: statement assumes w != (1,1)");
    const auto d = detail::ray_data(join, v);
    OrbitPeriods p;
    p.generic = Rational(1, d.s);
    p.at_D1 = Rational(1, v.v1 * join.l2);
    p.at_D2 = Rational(1, v.v2 * join.l2);
    return p;
}

// Quotient of the Y^{p,q} join along the diagonal ray: w from (p, q) over CP^1.
// Satisfies n = 2q, m = p for odd p and n = q, m = p/2 for even p.
inline ReebQuotient ypq_quotient(long long p, long long q) {
    const JoinSpec join = make_join(FanoBase::projective_space(1), ypq_weights(p, q));
    return reeb_quotient(join, ReebRay(1, 1));
}

} // namespace sasaki

#endif // SASAKI_QUOTIENT_HPP
