#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "sasaki/quotient.hpp"

using sasaki::FanoBase;
using sasaki::JoinSpec;
using sasaki::make_join;
using sasaki::orbit_periods;
using sasaki::Rational;
using sasaki::ReebQuotient;
using sasaki::ReebRay;
using sasaki::reeb_quotient;
using sasaki::Regularity;
using sasaki::WeightVector;
using sasaki::ypq_quotient;

TEST_CASE("reeb ray validation", "[quotient]") {
    CHECK_NOTHROW(ReebRay(4, 5));
    CHECK_THROWS_AS(ReebRay(2, 4), sasaki::ValidationError);
    CHECK_THROWS_AS(ReebRay(0, 1), sasaki::ValidationError);
}

TEST_CASE("quotient of an index-1 join along (4,5)", "[quotient]") {
    const JoinSpec j = make_join(FanoBase::custom(1, 2), WeightVector(11, 1));
    REQUIRE(j.l1 == 1);
    REQUIRE(j.l2 == 12);

    const ReebQuotient q = reeb_quotient(j, ReebRay(4, 5));
    CHECK(q.s == 3);
    CHECK(q.m == 4);
    CHECK(q.m1 == 16);
    CHECK(q.m2 == 20);
    CHECK(q.degree_n == 17);
    CHECK_FALSE(q.orientation_reversed);
    CHECK(q.regularity == Regularity::QuasiRegularWithBranching);

    REQUIRE(q.branch.size() == 2);
    CHECK(q.branch[0].divisor == "D1");
    CHECK(q.branch[0].ramification == 16);
    CHECK(q.branch[0].delta_coefficient == Rational(15, 16));
    CHECK(q.branch[1].divisor == "D2");
    CHECK(q.branch[1].ramification == 20);
    CHECK(q.branch[1].delta_coefficient == Rational(19, 20));

    CHECK(q.orb_pi1_order == 4);
    CHECK(q.fiber_string() == "CP^1[4,5]/Z_4");
    CHECK(q.lens_string() == "L(12;11,1)");
}

TEST_CASE("quotient of the same join along the diagonal", "[quotient]") {
    const JoinSpec j = make_join(FanoBase::custom(1, 2), WeightVector(11, 1));
    const ReebQuotient q = reeb_quotient(j, ReebRay(1, 1));
    CHECK(q.s == 2);
    CHECK(q.m == 6);
    CHECK(q.m1 == 6);
    CHECK(q.m2 == 6);
    CHECK(q.degree_n == 5);
    CHECK(q.branch[0].delta_coefficient == Rational(5, 6));
    CHECK(q.branch[1].delta_coefficient == Rational(5, 6));
    CHECK(q.regularity == Regularity::QuasiRegularWithBranching);
}

TEST_CASE("quotient with coprime twist", "[quotient]") {
    const JoinSpec j = make_join(FanoBase::projective_space(1), WeightVector(5, 2));
    REQUIRE(j.l1 == 2);
    REQUIRE(j.l2 == 7);

    const ReebQuotient q = reeb_quotient(j, ReebRay(5, 4));
    CHECK(q.s == 1);
    CHECK(q.m == 7);
    CHECK(q.m1 == 35);
    CHECK(q.m2 == 28);
    CHECK(q.degree_n == 20);
    CHECK(q.orb_pi1_order == 7);
    CHECK(q.lens_string() == "L(7;10,4)");
}

TEST_CASE("orientation flips when the ray crosses the weight line", "[quotient]") {
    const JoinSpec j = make_join(FanoBase::projective_space(1), WeightVector(3, 1));
    REQUIRE(j.l2 == 2);

    const ReebQuotient q = reeb_quotient(j, ReebRay(4, 1));
    // cross = 3*1 - 1*4 = -1: the quotient keeps |n| and records the flip.
    CHECK(q.degree_n == 1);
    CHECK(q.orientation_reversed);
    CHECK(q.s == 1);
    CHECK(q.m == 2);
    CHECK(q.m1 == 8);
    CHECK(q.m2 == 2);
    // Branch labels swap so D1 carries the divisor fixed by the flip.
    CHECK(q.branch[0].divisor == "D1");
    CHECK(q.branch[0].ramification == 2);
    CHECK(q.branch[1].ramification == 8);
}

TEST_CASE("degenerate ray rejected", "[quotient]") {
    const JoinSpec j = make_join(FanoBase::projective_space(2), WeightVector(2, 1));
    CHECK_THROWS_AS(reeb_quotient(j, ReebRay(2, 1)), sasaki::DegenerateRay);
}

TEST_CASE("orbit period table", "[quotient]") {
    SECTION("branched example") {
        const JoinSpec j = make_join(FanoBase::custom(1, 2), WeightVector(11, 1));
        const auto p = orbit_periods(j, ReebRay(4, 5));
        CHECK(p.generic == Rational(1, 3));
        CHECK(p.at_D1 == Rational(1, 48));
        CHECK(p.at_D2 == Rational(1, 60));
    }
    SECTION("regular ray makes all periods agree") {
        const JoinSpec j = make_join(FanoBase::quadric_product(), WeightVector(3, 1));
        const auto p = orbit_periods(j, ReebRay(1, 1));
        CHECK(p.generic == Rational(1, 2));
        CHECK(p.at_D1 == Rational(1, 2));
        CHECK(p.at_D2 == Rational(1, 2));
    }
    SECTION("homogeneous weights rejected") {
        const JoinSpec j = make_join(FanoBase::projective_space(1), WeightVector(1, 1));
        CHECK_THROWS_AS(orbit_periods(j, ReebRay(1, 1)), sasaki::UnsupportedWeight);
    }
}

TEST_CASE("ypq quotients", "[quotient]") {
    SECTION("p = 2 is the regular case") {
        const ReebQuotient q = ypq_quotient(2, 1);
        CHECK(q.degree_n == 1);
        CHECK(q.m == 1);
        CHECK(q.regularity == Regularity::Regular);
        CHECK(q.branch[0].ramification == 1);
        CHECK(q.branch[1].ramification == 1);
    }
    SECTION("odd p") {
        const ReebQuotient q = ypq_quotient(3, 1);
        CHECK(q.degree_n == 2);
        CHECK(q.m == 3);
        CHECK(q.branch[0].delta_coefficient == Rational(2, 3));
        CHECK(q.branch[1].delta_coefficient == Rational(2, 3));
    }
    SECTION("even p") {
        const ReebQuotient q = ypq_quotient(4, 1);
        CHECK(q.degree_n == 1);
        CHECK(q.m == 2);
    }
    SECTION("degree and order formulas split on the parity of p") {
        for (long long p = 2; p <= 50; ++p)
            for (long long q = 1; q < p; ++q) {
                if (std::gcd(p, q) != 1) continue;
                const ReebQuotient quot = ypq_quotient(p, q);
                if (p % 2 == 1) {
                    REQUIRE(quot.degree_n == 2 * q);
                    REQUIRE(quot.m == p);
                } else {
                    REQUIRE(quot.degree_n == q);
                    REQUIRE(quot.m == p / 2);
                }
                REQUIRE(quot.m1 == quot.m2);
            }
    }
}

TEST_CASE("quotient invariants over sampled joins", "[quotient]") {
    const FanoBase bases[] = {FanoBase::custom(1, 1), FanoBase::quadric_product(),
                              FanoBase::projective_space(2)};
    for (const auto& base : bases)
        for (long long w1 = 1; w1 <= 16; ++w1)
            for (long long w2 = 1; w2 <= w1; ++w2) {
                if (std::gcd(w1, w2) != 1) continue;
                const JoinSpec j = make_join(base, WeightVector(w1, w2));
                for (long long v1 = 1; v1 <= 16; ++v1)
                    for (long long v2 = 1; v2 <= 16; ++v2) {
                        if (std::gcd(v1, v2) != 1) continue;
                        if (w1 * v2 == w2 * v1) continue;
                        const ReebQuotient q = reeb_quotient(j, ReebRay(v1, v2));

                        // Branch orders are the ray scaled by the residual order.
                        REQUIRE(q.m1 == v1 * q.m);
                        REQUIRE(q.m2 == v2 * q.m);
                        REQUIRE(q.m * q.s == j.l2);

                        // Degree identity: n * s = l1 * |w1 v2 - w2 v1|.
                        const long long cross = w1 * v2 - w2 * v1;
                        REQUIRE(q.degree_n * q.s == j.l1 * std::llabs(cross));
                        REQUIRE(q.orientation_reversed == (cross < 0));

                        // Regular exactly when no branching remains.
                        const bool regular = q.regularity == Regularity::Regular;
                        REQUIRE(regular == (q.m1 == 1 && q.m2 == 1));
                        if (w1 != w2)
                            REQUIRE(regular == has_regular_ray(j, v1, v2));

                        // Exceptional-orbit periods divide the generic one.
                        if (w1 != w2) {
                            const auto p = orbit_periods(j, ReebRay(v1, v2));
                            REQUIRE((p.generic / p.at_D1).is_integer());
                            REQUIRE((p.generic / p.at_D2).is_integer());
                            REQUIRE(p.generic == Rational(1, q.s));
                        }
                    }
            }
}
