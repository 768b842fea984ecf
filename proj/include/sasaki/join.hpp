#ifndef SASAKI_JOIN_HPP
#define SASAKI_JOIN_HPP

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "sasaki/errors.hpp"
#include "sasaki/roots.hpp"

namespace sasaki {

// Coprime weight pair for the weighted 3-sphere, ordered w1 >= w2 >= 1.
// (1,1) is representable but rejected by every operation whose statement assumes
// unequal weights.
struct WeightVector {
    long long w1 = 1;
    long long w2 = 1;

    WeightVector() = default;
    WeightVector(long long a, long long b) : w1(a), w2(b) {
        if (w1 < 1 || w2 < 1) throw ValidationError("weight: components must be positive");
        if (w1 < w2) throw ValidationError("weight: require w1 >= w2");
        if (std::gcd(w1, w2) != 1) throw ValidationError("weight: components must be coprime");
    }

    long long sum() const { return w1 + w2; }
    long long product() const { return w1 * w2; }
    bool homogeneous() const { return w1 == 1 && w2 == 1; }

    bool operator==(const WeightVector& o) const { return w1 == o.w1 && w2 == o.w2; }
    bool operator<(const WeightVector& o) const {
        return w1 != o.w1 ? w1 < o.w1 : w2 < o.w2;
    }
};

enum class BaseFamily { ProjectiveSpace, QuadricProduct, DelPezzo, Custom };

// A positive Kaehler-Einstein base, carried as discrete data: complex dimension and
// Fano index, plus the family tag that unlocks the topology presentations.
struct FanoBase {
    BaseFamily family = BaseFamily::Custom;
    int param = 0; // r for projective space, k for del Pezzo
    long long fano_index = 1;
    int complex_dim = 1;
    std::string name;

    static FanoBase projective_space(int r) {
        if (r < 1) throw ValidationError("base: projective space needs r >= 1");
        return {BaseFamily::ProjectiveSpace, r, r + 1, r, "CP^" + std::to_string(r)};
    }
    static FanoBase quadric_product() {
        return {BaseFamily::QuadricProduct, 0, 2, 2, "CP^1xCP^1"};
    }
    static FanoBase del_pezzo(int k) {
        if (k < 1 || k > 8) throw ValidationError("base: del Pezzo degree k must be 1..8");
        return {BaseFamily::DelPezzo, k, 1, 2, "dP_" + std::to_string(k)};
    }
    static FanoBase custom(long long fano_index, int complex_dim) {
        if (fano_index < 1) throw ValidationError("base: Fano index must be >= 1");
        if (complex_dim < 1) throw ValidationError("base: complex dimension must be >= 1");
        return {BaseFamily::Custom, 0, fano_index, complex_dim,
                "custom(I=" + std::to_string(fano_index) + ",d=" + std::to_string(complex_dim) + ")"};
    }
};

// The join of the base with a weighted 3-sphere, normalized by the relative indices
// (l1, l2). Invariants: gcd(l1, l2) = 1, l2 * I_N = |w| * l1, gcd(l2, l1*w1*w2) = 1.
struct JoinSpec {
    FanoBase base;
    WeightVector w;
    long long l1 = 1;
    long long l2 = 1;
    bool smooth = true;
};

// Relative indices l1 = I_N/g, l2 = |w|/g with g = gcd(|w|, I_N); the resulting
// 7-manifold (or (2d_N+3)-manifold) is smooth iff gcd(l2, l1*w1*w2) = 1.
inline JoinSpec make_join(const FanoBase& base, const WeightVector& w) {
    const long long g = std::gcd(w.sum(), base.fano_index);
    JoinSpec join{base, w, base.fano_index / g, w.sum() / g, true};
    join.smooth = std::gcd(join.l2, join.l1 * w.w1 * w.w2) == 1;
    if (!join.smooth)
        throw SmoothnessViolation("join: gcd(l2, l1*w1*w2) != 1 for w=(" +
                                  std::to_string(w.w1) + "," + std::to_string(w.w2) + ")");
    return join;
}

// The ray v carries a regular Reeb field iff v = (1,1) and l2 divides w1 - w2.
inline bool has_regular_ray(const JoinSpec& join, long long v1, long long v2) {
    if (v1 < 1 || v2 < 1 || std::gcd(v1, v2) != 1)
        throw ValidationError("ray: components must be positive and coprime");
    if (join.w.homogeneous())
        throw UnsupportedWeight("regular-ray test assumes w != (1,1)");
    if (v1 != 1 || v2 != 1) return false;
    return (join.w.w1 - join.w.w2) % join.l2 == 0;
}

// All weight vectors whose w-Sasaki cone contains a regular ray, for this base.
// K = gcd(I_N, |w|) is defined implicitly through w; iterate K over divisors of I_N,
// emit w = ((K+j)/g, (K-j)/g) for 1 <= j < K, and keep candidates that realize K.
inline std::vector<WeightVector> enumerate_regular_cones(const FanoBase& base) {
    std::vector<WeightVector> out;
    for (const std::uint64_t K64 : divisors(Integer(base.fano_index))) {
        const auto K = static_cast<long long>(K64);
        for (long long j = 1; j < K; ++j) {
            const long long g = std::gcd(K + j, K - j);
            const WeightVector w((K + j) / g, (K - j) / g);
            if (std::gcd(base.fano_index, w.sum()) != K) continue;
            out.push_back(w);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Weight vector of the Y^{p,q} family: w = (p+q, p-q)/gcd(p+q, p-q).
inline WeightVector ypq_weights(long long p, long long q) {
    if (p <= 1 || q < 1 || q >= p || std::gcd(p, q) != 1)
        throw InvalidPQ("ypq: require coprime 1 <= q < p, p > 1");
    const long long g = std::gcd(p + q, p - q);
    return WeightVector((p + q) / g, (p - q) / g);
}

} // namespace sasaki

#endif // SASAKI_JOIN_HPP
