#include <catch2/catch_amalgamated.hpp>

#include <numeric>

#include "sasaki/join.hpp"

using sasaki::enumerate_regular_cones;
using sasaki::FanoBase;
using sasaki::has_regular_ray;
using sasaki::JoinSpec;
using sasaki::make_join;
using sasaki::WeightVector;
using sasaki::ypq_weights;

TEST_CASE("weight vector validation", "[join]") {
    CHECK_NOTHROW(WeightVector(3, 1));
    CHECK_NOTHROW(WeightVector(1, 1));
    CHECK(WeightVector(1, 1).homogeneous());
    CHECK_FALSE(WeightVector(3, 2).homogeneous());
    CHECK_THROWS_AS(WeightVector(2, 3), sasaki::ValidationError); // ordered
    CHECK_THROWS_AS(WeightVector(4, 2), sasaki::ValidationError); // coprime
    CHECK_THROWS_AS(WeightVector(3, 0), sasaki::ValidationError); // positive
}

TEST_CASE("base families fix index and dimension", "[join]") {
    const FanoBase cp2 = FanoBase::projective_space(2);
    CHECK(cp2.fano_index == 3);
    CHECK(cp2.complex_dim == 2);

    const FanoBase quadric = FanoBase::quadric_product();
    CHECK(quadric.fano_index == 2);
    CHECK(quadric.complex_dim == 2);

    const FanoBase dp5 = FanoBase::del_pezzo(5);
    CHECK(dp5.fano_index == 1);
    CHECK(dp5.complex_dim == 2);

    CHECK(FanoBase::custom(4, 3).fano_index == 4);
    CHECK_THROWS_AS(FanoBase::projective_space(0), sasaki::ValidationError);
    CHECK_THROWS_AS(FanoBase::del_pezzo(9), sasaki::ValidationError);
    CHECK_THROWS_AS(FanoBase::custom(0, 2), sasaki::ValidationError);
}

TEST_CASE("relative indices frozen cases", "[join]") {
    SECTION("index-3 base") {
        const JoinSpec a = make_join(FanoBase::projective_space(2), WeightVector(2, 1));
        CHECK(a.l1 == 1);
        CHECK(a.l2 == 1);
        const JoinSpec b = make_join(FanoBase::projective_space(2), WeightVector(5, 1));
        CHECK(b.l1 == 1);
        CHECK(b.l2 == 2);
    }
    SECTION("index-1 base always gives l1 = 1, l2 = |w|") {
        for (const auto& w : {WeightVector(3, 2), WeightVector(7, 4), WeightVector(11, 1)}) {
            const JoinSpec j = make_join(FanoBase::del_pezzo(3), w);
            CHECK(j.l1 == 1);
            CHECK(j.l2 == w.sum());
        }
    }
    SECTION("homogeneous pair over the 2-sphere") {
        const JoinSpec j = make_join(FanoBase::projective_space(1), WeightVector(1, 1));
        CHECK(j.l1 == 1);
        CHECK(j.l2 == 1);
    }
}

TEST_CASE("join invariants across bases and weights", "[join]") {
    const FanoBase bases[] = {FanoBase::projective_space(1), FanoBase::projective_space(2),
                              FanoBase::projective_space(3), FanoBase::quadric_product(),
                              FanoBase::del_pezzo(1), FanoBase::custom(6, 2)};
    for (const auto& base : bases) {
        for (long long w1 = 1; w1 <= 24; ++w1) {
            for (long long w2 = 1; w2 <= w1; ++w2) {
                if (std::gcd(w1, w2) != 1) continue;
                const JoinSpec j = make_join(base, WeightVector(w1, w2));
                REQUIRE(std::gcd(j.l1, j.l2) == 1);
                REQUIRE(j.l2 * base.fano_index == (w1 + w2) * j.l1);
                REQUIRE(j.smooth);
            }
        }
    }
}

TEST_CASE("regular ray criterion", "[join]") {
    SECTION("diagonal ray with l2 dividing the weight difference") {
        const JoinSpec j = make_join(FanoBase::quadric_product(), WeightVector(3, 1));
        CHECK(j.l2 == 2);
        CHECK(has_regular_ray(j, 1, 1));
    }
    SECTION("index-1 bases never carry a regular ray") {
        const JoinSpec j = make_join(FanoBase::del_pezzo(2), WeightVector(3, 2));
        CHECK(j.l2 == 5);
        CHECK_FALSE(has_regular_ray(j, 1, 1));
    }
    SECTION("off-diagonal rays are never regular") {
        const JoinSpec j = make_join(FanoBase::projective_space(2), WeightVector(2, 1));
        CHECK_FALSE(has_regular_ray(j, 2, 1));
    }
    SECTION("homogeneous weights rejected") {
        const JoinSpec j = make_join(FanoBase::projective_space(2), WeightVector(1, 1));
        CHECK_THROWS_AS(has_regular_ray(j, 1, 1), sasaki::UnsupportedWeight);
    }
    SECTION("invalid rays rejected") {
        const JoinSpec j = make_join(FanoBase::projective_space(2), WeightVector(2, 1));
        CHECK_THROWS_AS(has_regular_ray(j, 2, 4), sasaki::ValidationError);
        CHECK_THROWS_AS(has_regular_ray(j, 0, 1), sasaki::ValidationError);
    }
}

TEST_CASE("regular cone enumeration frozen cases", "[join]") {
    CHECK(enumerate_regular_cones(FanoBase::quadric_product()) ==
          std::vector<WeightVector>{WeightVector(3, 1)});
    CHECK(enumerate_regular_cones(FanoBase::projective_space(2)) ==
          std::vector<WeightVector>{WeightVector(2, 1), WeightVector(5, 1)});
    CHECK(enumerate_regular_cones(FanoBase::del_pezzo(4)).empty());
    CHECK(enumerate_regular_cones(FanoBase::custom(4, 2)) ==
          std::vector<WeightVector>{WeightVector(3, 1), WeightVector(5, 3), WeightVector(7, 1)});
}

TEST_CASE("enumeration matches a brute-force scan", "[join]") {
    for (const long long index : {1LL, 2LL, 3LL, 4LL, 6LL, 12LL}) {
        const FanoBase base = FanoBase::custom(index, 2);
        const auto enumerated = enumerate_regular_cones(base);

        // Every enumerated cone really is regular along (1,1).
        for (const auto& w : enumerated)
            REQUIRE(has_regular_ray(make_join(base, w), 1, 1));

        // No regular cone escapes the enumeration, up to w1 <= 200.
        std::vector<WeightVector> brute;
        for (long long w1 = 2; w1 <= 200; ++w1)
            for (long long w2 = 1; w2 < w1; ++w2) {
                if (std::gcd(w1, w2) != 1) continue;
                const WeightVector w(w1, w2);
                if (has_regular_ray(make_join(base, w), 1, 1)) brute.push_back(w);
            }
        std::vector<WeightVector> expected;
        for (const auto& w : enumerated)
            if (w.w1 <= 200) expected.push_back(w);
        REQUIRE(brute == expected);
    }
}

TEST_CASE("ypq weight construction", "[join]") {
    CHECK(ypq_weights(2, 1) == WeightVector(3, 1));
    CHECK(ypq_weights(7, 3) == WeightVector(5, 2));
    CHECK(ypq_weights(3, 1) == WeightVector(2, 1));
    CHECK_THROWS_AS(ypq_weights(4, 2), sasaki::InvalidPQ);
    CHECK_THROWS_AS(ypq_weights(3, 3), sasaki::InvalidPQ);
    CHECK_THROWS_AS(ypq_weights(1, 1), sasaki::InvalidPQ);
    CHECK_THROWS_AS(ypq_weights(5, 0), sasaki::InvalidPQ);
}

TEST_CASE("ypq joins satisfy the index identities", "[join]") {
    for (long long p = 2; p <= 50; ++p)
        for (long long q = 1; q < p; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const JoinSpec j = make_join(FanoBase::projective_space(1), ypq_weights(p, q));
            REQUIRE(j.l1 == std::gcd(p + q, p - q));
            REQUIRE(j.l2 == p);
        }
}
