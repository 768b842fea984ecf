#ifndef SASAKI_TOPOLOGY_HPP
#define SASAKI_TOPOLOGY_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/join.hpp"
#include "sasaki/roots.hpp"

namespace sasaki {

// Finitely generated abelian group, stored as a free rank plus cyclic torsion
// factors in whatever order a construction produced them. Isomorphism testing
// goes through the invariant-factor normal form, never the raw factor list.
struct AbelianGroup {
    long long free_rank = 0;
    std::vector<Integer> torsion; // cyclic orders > 1

    AbelianGroup() = default;
    AbelianGroup(long long rank, std::vector<Integer> orders) : free_rank(rank) {
        if (rank < 0) throw ValidationError("abelian group: negative rank");
        for (auto& t : orders) {
            if (t < 1) throw ValidationError("abelian group: nonpositive torsion order");
            if (t > 1) torsion.push_back(std::move(t));
        }
    }

    static AbelianGroup trivial() { return {}; }
    static AbelianGroup free(long long rank) { return {rank, {}}; }
    static AbelianGroup cyclic(const Integer& order) { return {0, {order}}; }

    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }

    Integer torsion_order() const {
        Integer prod = 1;
        for (const auto& t : torsion) prod *= t;
        return prod;
    }

    // Canonical form d_1 | d_2 | ... | d_k, ascending. Slot i collects the
    // i-th largest prime power of each prime across all cyclic factors.
    std::vector<Integer> invariant_factors() const {
        std::map<std::uint64_t, std::vector<int>> powers;
        std::size_t slots = 0;
        for (const auto& t : torsion)
            for (const auto& [p, e] : factorize(t)) {
                auto& es = powers[p];
                es.push_back(e);
                std::sort(es.begin(), es.end(), std::greater<>());
                slots = std::max(slots, es.size());
            }
        std::vector<Integer> inv(slots, Integer(1));
        for (const auto& [p, es] : powers)
            for (std::size_t i = 0; i < es.size(); ++i)
                inv[i] *= boost::multiprecision::pow(Integer(p), static_cast<unsigned>(es[i]));
        std::reverse(inv.begin(), inv.end());
        return inv;
    }

    bool isomorphic_to(const AbelianGroup& other) const {
        return free_rank == other.free_rank && invariant_factors() == other.invariant_factors();
    }

    std::string str() const {
        if (is_trivial()) return "0";
        std::vector<std::string> parts;
        if (free_rank == 1) parts.push_back("Z");
        else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
        for (const auto& t : torsion) parts.push_back("Z_" + t.str());
        std::string out = parts.front();
        for (std::size_t i = 1; i < parts.size(); ++i) out += " x " + parts[i];
        return out;
    }
};

inline bool operator==(const AbelianGroup& a, const AbelianGroup& b) {
    return a.isomorphic_to(b);
}

struct RingGenerator {
    std::string name;
    long long degree = 0;
};

// One relation c * g1^e1 ... gk^ek = 0 in the presented ring.
struct RingRelation {
    Integer coefficient = 1;
    std::vector<std::pair<std::string, long long>> monomial;

    std::string str() const {
        std::string out;
        if (coefficient != 1) out = coefficient.str();
        for (const auto& [g, e] : monomial) {
            out += g;
            if (e > 1) out += "^" + std::to_string(e);
        }
        return out;
    }
};

struct RingPresentation {
    long long manifold_dim = 0;
    std::vector<RingGenerator> generators;
    std::vector<RingRelation> relations;
    std::map<long long, AbelianGroup> groups; // only nontrivial degrees stored

    AbelianGroup group(long long degree) const {
        const auto it = groups.find(degree);
        return it == groups.end() ? AbelianGroup::trivial() : it->second;
    }

    // "Z[x,y]/(9x^2, x^3, x^2y, y^2)"
    std::string ring_string() const {
        std::string gens, rels;
        for (const auto& g : generators) {
            if (!gens.empty()) gens += ",";
            gens += g.name;
        }
        for (const auto& r : relations) {
            if (!rels.empty()) rels += ", ";
            rels += r.str();
        }
        return "Z[" + gens + "]/(" + rels + ")";
    }

    // rank H^q = rank H^{dim-q}, torsion H^q = torsion H^{dim+1-q}.
    bool poincare_duality_holds() const {
        for (long long q = 0; q <= manifold_dim; ++q) {
            if (group(q).free_rank != group(manifold_dim - q).free_rank) return false;
            const auto tq = group(q).invariant_factors();
            if (q >= 1 && tq != group(manifold_dim + 1 - q).invariant_factors()) return false;
        }
        return true;
    }
};

// Join of a (2r+1)-sphere with the weighted 3-sphere, r >= 2. The base has
// index r+1, so l1 = (r+1)/gcd(|w|, r+1); the single torsion order is
// w1*w2*l1^2, repeated through the middle even degrees.
inline RingPresentation cohomology_sphere_join(long long r, const WeightVector& w) {
    if (r < 2) throw ValidationError("sphere join cohomology: requires r >= 2");
    const JoinSpec join = make_join(FanoBase::projective_space(r), w);
    const Integer torsion = Integer(w.product()) * join.l1 * join.l1;

    RingPresentation ring;
    ring.manifold_dim = 2 * r + 3;
    ring.generators = {{"x", 2}, {"y", 2 * r + 1}};
    ring.relations = {{torsion, {{"x", 2}}},
                      {1, {{"x", r + 1}}},
                      {1, {{"x", 2}, {"y", 1}}},
                      {1, {{"y", 2}}}};
    ring.groups[0] = AbelianGroup::free(1);
    ring.groups[2] = AbelianGroup::free(1);
    if (torsion > 1)
        for (long long j = 2; j <= r; ++j) ring.groups[2 * j] = AbelianGroup::cyclic(torsion);
    ring.groups[2 * r + 1] = AbelianGroup::free(1);
    ring.groups[2 * r + 3] = AbelianGroup::free(1);
    return ring;
}

// Join of the product quadric's 5-manifold with the weighted 3-sphere.
inline RingPresentation cohomology_quadric_join(const WeightVector& w) {
    const JoinSpec join = make_join(FanoBase::quadric_product(), w);
    const Integer l2(join.l2);
    const Integer y_torsion = Integer(w.product()) * join.l1 * join.l1;

    RingPresentation ring;
    ring.manifold_dim = 7;
    ring.generators = {{"x", 2}, {"y", 2}, {"z", 5}, {"u", 5}};
    ring.relations = {{1, {{"x", 2}}},          {l2, {{"x", 1}, {"y", 1}}},
                      {y_torsion, {{"y", 2}}},  {1, {{"z", 2}}},
                      {1, {{"u", 2}}},          {1, {{"z", 1}, {"u", 1}}},
                      {1, {{"z", 1}, {"x", 1}}}, {1, {{"u", 1}, {"x", 1}}},
                      {1, {{"u", 1}, {"y", 1}}}};
    ring.groups[0] = AbelianGroup::free(1);
    ring.groups[2] = AbelianGroup::free(2);
    if (AbelianGroup h4(0, {l2, y_torsion}); !h4.is_trivial()) ring.groups[4] = h4;
    ring.groups[5] = AbelianGroup::free(2);
    ring.groups[7] = AbelianGroup::free(1);
    return ring;
}

// Join of the k-fold connected sum of S^2 x S^3 (the circle bundle over the
// blown-up plane) with the weighted 3-sphere; the base has index 1.
inline RingPresentation cohomology_delpezzo_join(long long k, const WeightVector& w) {
    if (k < 1 || k > 8) throw ValidationError("del Pezzo join cohomology: requires 1 <= k <= 8");
    const Integer sum(w.sum());
    const Integer prod(w.product());

    RingPresentation ring;
    ring.manifold_dim = 7;
    for (long long i = 1; i <= k; ++i) ring.generators.push_back({"a" + std::to_string(i), 2});
    ring.generators.push_back({"s", 2});
    for (long long i = 1; i <= k; ++i)
        for (long long j = i; j <= k; ++j)
            ring.relations.push_back(
                {1, {{"a" + std::to_string(i), 1}, {"a" + std::to_string(j), 1}}});
    ring.relations.push_back({prod, {{"s", 2}}});
    for (long long i = 1; i <= k; ++i)
        ring.relations.push_back({sum, {{"a" + std::to_string(i), 1}, {"s", 1}}});

    ring.groups[0] = AbelianGroup::free(1);
    ring.groups[2] = AbelianGroup::free(k + 1);
    std::vector<Integer> h4(static_cast<std::size_t>(k), sum);
    h4.push_back(prod);
    if (AbelianGroup g4(0, std::move(h4)); !g4.is_trivial()) ring.groups[4] = g4;
    ring.groups[5] = AbelianGroup::free(k + 1);
    ring.groups[7] = AbelianGroup::free(1);
    return ring;
}

// One member of the family sharing H^4 order: the weight vector together with
// its class index (0 when 3 divides w1+w2, else 1). All members of a given W
// land in the same class, so the split is a property of W itself.
struct WeightClass {
    WeightVector w;
    int class_index = 1;
};

inline bool operator==(const WeightClass& a, const WeightClass& b) {
    return a.w == b.w && a.class_index == b.class_index;
}

// All ordered coprime factorizations w1 > w2 of W (each prime power lands
// wholly on one side), sorted by descending w1; 2^{k-1} of them when W > 1
// has k distinct primes. The class index is only meaningful for r = 2 but is
// computed uniformly.
inline std::vector<WeightClass> partition_classes(long long W, long long r) {
    if (W < 1) throw ValidationError("partition classes: W must be positive");
    if (r < 2) throw ValidationError("partition classes: requires r >= 2");
    if (W == 1) return {WeightClass{WeightVector(1, 1), WeightVector(1, 1).sum() % 3 == 0 ? 0 : 1}};

    const auto primes = factorize(W);
    std::vector<long long> firsts;
    const std::size_t k = primes.size();
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << k); ++mask) {
        long long d = 1;
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (std::uint64_t(1) << i))
                for (int e = 0; e < primes[i].second; ++e) d *= static_cast<long long>(primes[i].first);
        if (d > W / d) firsts.push_back(d);
    }
    std::sort(firsts.begin(), firsts.end(), std::greater<>());

    std::vector<WeightClass> out;
    out.reserve(firsts.size());
    for (const long long w1 : firsts) {
        const WeightVector w(w1, W / w1);
        out.push_back({w, w.sum() % 3 == 0 ? 0 : 1});
    }
    return out;
}

enum class Verdict { Equivalent, Inequivalent, Inconclusive };

inline std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Equivalent: return "equivalent";
        case Verdict::Inequivalent: return "inequivalent";
        default: return "inconclusive";
    }
}

// Outcome of the 7-dimensional homotopy comparison. When the weights share
// the torsion order, the witness holds the two cubed indices reduced mod
// l1^2*W; when the orders already differ, it holds the orders themselves and
// modulus 0 records that they were compared as plain integers.
struct HomotopyVerdict {
    Verdict verdict = Verdict::Inconclusive;
    Integer lhs_residue;
    Integer rhs_residue;
    Integer modulus;
};

namespace detail {

inline Integer mod_norm(Integer x, const Integer& modulus) {
    x %= modulus;
    if (x < 0) x += modulus;
    return x;
}

} // namespace detail

// Homotopy comparison for the 7-dimensional sphere-join family (r = 2).
// Distinct torsion orders are conclusive by themselves; equal odd orders are
// decided by l2^3 up to sign in the units mod l1^2*W; equal even orders fall
// outside the classification used and come back inconclusive.
inline HomotopyVerdict homotopy_equivalent_7(const WeightVector& w, const WeightVector& wp) {
    const JoinSpec a = make_join(FanoBase::projective_space(2), w);
    const JoinSpec b = make_join(FanoBase::projective_space(2), wp);
    const Integer order_a = Integer(w.product()) * a.l1 * a.l1;
    const Integer order_b = Integer(wp.product()) * b.l1 * b.l1;

    if (order_a != order_b) return {Verdict::Inequivalent, order_a, order_b, 0};

    const Integer modulus = order_a;
    const Integer lhs = detail::mod_norm(boost::multiprecision::pow(Integer(a.l2), 3), modulus);
    const Integer rhs = detail::mod_norm(boost::multiprecision::pow(Integer(b.l2), 3), modulus);
    if (modulus % 2 == 0) return {Verdict::Inconclusive, lhs, rhs, modulus};

    const bool same = rhs == lhs || rhs == detail::mod_norm(-lhs, modulus);
    return {same ? Verdict::Equivalent : Verdict::Inequivalent, lhs, rhs, modulus};
}

struct P1Residue {
    Integer residue;
    Integer modulus;
};

// Characteristic residue of the 7-manifold: -6|w|^2 mod 9*w1*w2 away from the
// branch where 3 divides |w|, and -6(|w|/3)^2 mod w1*w2 on it.
inline P1Residue p1_residue(const WeightVector& w) {
    const Integer sum(w.sum());
    if (sum % 3 != 0) {
        const Integer modulus = Integer(9) * w.product();
        return {detail::mod_norm(Integer(-6) * sum * sum, modulus), modulus};
    }
    const Integer third = sum / 3;
    const Integer modulus(w.product());
    return {detail::mod_norm(Integer(-6) * third * third, modulus), modulus};
}

// Necessary congruence for a homeomorphism between members of an odd-W
// family: 2|w'|^2 = 2|w|^2 mod 3*w1*w2. False certifies non-homeomorphic.
inline bool homeo_obstruction(const WeightVector& w, const WeightVector& wp) {
    if (w.product() != wp.product())
        throw ValidationError("homeomorphism obstruction: weight products differ");
    if (w.product() % 2 == 0)
        throw ParityError("homeomorphism obstruction: requires odd w1*w2");
    const Integer modulus = Integer(3) * w.product();
    const Integer lhs = detail::mod_norm(Integer(2) * w.sum() * w.sum(), modulus);
    const Integer rhs = detail::mod_norm(Integer(2) * wp.sum() * wp.sum(), modulus);
    return lhs == rhs;
}

// Stored fact: the sphere-join family has pi_4 of order 2, while the
// 3-Sasakian quotients of SU(3) have trivial pi_4; the lookup is what keeps
// the two families apart, no computation involved.
inline constexpr long long pi4_order_sphere_join = 2;
inline constexpr long long pi4_order_su3_quotient = 1;

} // namespace sasaki

#endif
