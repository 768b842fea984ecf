#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sasaki/admissible.hpp"
#include "sasaki/topology.hpp"

namespace {

using nlohmann::ordered_json;
using namespace sasaki;

bool g_exact_only = false;
std::string g_format = "json";

// ---------- input parsing ----------

long long parse_ll(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long value = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return value;
    } catch (const std::exception&) {
        throw ValidationError(what + ": expected an integer, got '" + s + "'");
    }
}

std::pair<long long, long long> parse_pair(const std::string& s, const std::string& what) {
    const auto comma = s.find(',');
    if (comma == std::string::npos || s.find(',', comma + 1) != std::string::npos)
        throw ValidationError(what + ": expected '<a>,<b>', got '" + s + "'");
    return {parse_ll(s.substr(0, comma), what), parse_ll(s.substr(comma + 1), what)};
}

Rational parse_rational(const std::string& s, const std::string& what) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_ll(s, what));
    const long long num = parse_ll(s.substr(0, slash), what);
    const long long den = parse_ll(s.substr(slash + 1), what);
    if (den == 0) throw ValidationError(what + ": zero denominator");
    return Rational(num, den);
}

// Interval widths accept "num/den", decimal or scientific notation, or a bare
// integer k meaning 10^-k.
Rational parse_width(const std::string& s, const std::string& what) {
    Rational width;
    if (s.find('/') != std::string::npos) {
        width = parse_rational(s, what);
    } else if (s.find_first_of(".eE") != std::string::npos) {
        char* end = nullptr;
        const double x = std::strtod(s.c_str(), &end);
        if (end == nullptr || *end != '\0' || !std::isfinite(x) || !(x > 0))
            throw ValidationError(what + ": expected a positive width, got '" + s + "'");
        width = Rational::from_double(x);
    } else {
        const long long k = parse_ll(s, what);
        if (k < 1 || k > 16384) throw ValidationError(what + ": exponent out of range 1..16384");
        width = Rational(10).pow(-k);
    }
    if (!(width > Rational(0))) throw ValidationError(what + ": width must be positive");
    return width;
}

FanoBase parse_base(const std::string& s) {
    if (s == "quadric") return FanoBase::quadric_product();
    if (s.rfind("cpn:", 0) == 0)
        return FanoBase::projective_space(static_cast<int>(parse_ll(s.substr(4), "--base")));
    if (s.rfind("delpezzo:", 0) == 0)
        return FanoBase::del_pezzo(static_cast<int>(parse_ll(s.substr(9), "--base")));
    if (s.rfind("custom:", 0) == 0) {
        const auto [fano, dim] = parse_pair(s.substr(7), "--base");
        return FanoBase::custom(fano, static_cast<int>(dim));
    }
    throw ValidationError("base '" + s +
                          "' not recognized (cpn:<r> | quadric | delpezzo:<k> | custom:<I_N>,<d_N>)");
}

WeightVector parse_weights(const std::string& s, const std::string& what) {
    const auto [a, b] = parse_pair(s, what);
    return WeightVector(a, b);
}

ReebRay parse_reeb(const std::string& s, const std::string& what) {
    const auto [a, b] = parse_pair(s, what);
    return ReebRay(a, b);
}

// ---------- serialization ----------

ordered_json jrat(const Rational& x) { return x.str(); }

ordered_json jint(const Integer& n) { return n.str(); }

ordered_json jweights(const WeightVector& w) { return ordered_json::array({w.w1, w.w2}); }

ordered_json jreeb(const ReebRay& v) { return ordered_json::array({v.v1, v.v2}); }

ordered_json jpoly(const Polynomial& p, const std::string& var) {
    ordered_json coeffs = ordered_json::array();
    for (int k = 0; k <= p.degree(); ++k) coeffs.push_back(jrat(p.coefficient(static_cast<std::size_t>(k))));
    return ordered_json{{"str", p.str(var)}, {"coefficients", coeffs}};
}

ordered_json jbox(const RootInterval& box) {
    return ordered_json{{"lo", jrat(box.lo)}, {"hi", jrat(box.hi)}, {"width", jrat(box.width())}};
}

ordered_json jgroup(const AbelianGroup& g) {
    ordered_json torsion = ordered_json::array();
    for (const auto& t : g.torsion) torsion.push_back(jint(t));
    ordered_json invariant = ordered_json::array();
    for (const auto& d : g.invariant_factors()) invariant.push_back(jint(d));
    return ordered_json{{"group", g.str()},
                        {"free_rank", g.free_rank},
                        {"torsion", torsion},
                        {"invariant_factors", invariant}};
}

void put_approx(ordered_json& obj, const std::string& key, double value, double bound) {
    if (g_exact_only) return;
    obj[key] = ordered_json{{"approx", true}, {"value", value}, {"error_bound", bound}};
}

ordered_json jbase(const FanoBase& base) {
    return ordered_json{{"name", base.name},
                        {"fano_index", base.fano_index},
                        {"complex_dim", base.complex_dim}};
}

// ---------- command payloads ----------

struct Payload {
    ordered_json inputs;
    ordered_json outputs;
    std::vector<std::string> provenance;
};

std::string a_base, a_family, a_w, a_v, a_wprime, a_k, a_precision, a_from_ab;
long long a_dn = 1, a_in = 0, a_W = 1, a_r = 2, a_p = 0, a_q = 0, a_wmax = 0, a_vmax = 6;
double a_tol = 0;
std::string a_regularity = "any", a_rationality = "any";

Rational resolve_width(const CLI::App* sub, const std::string& flag) {
    if (sub->count(flag) > 0) return parse_width(a_precision, flag);
    if (const char* env = std::getenv("SASAKI_PRECISION")) return parse_width(env, "SASAKI_PRECISION");
    return default_isolation_width();
}

double resolve_tol(const CLI::App* sub) {
    if (sub->count("--tol") > 0) return a_tol;
    if (const char* env = std::getenv("SASAKI_PRECISION"))
        return parse_width(env, "SASAKI_PRECISION").to_double();
    return 1e-12;
}

Payload run_join() {
    const FanoBase base = parse_base(a_base);
    const WeightVector w = parse_weights(a_w, "--w");
    const JoinSpec join = make_join(base, w);
    Payload out;
    out.inputs = {{"base", a_base}, {"w", jweights(w)}};
    out.outputs = {{"base", jbase(join.base)},
                   {"w", jweights(join.w)},
                   {"l1", join.l1},
                   {"l2", join.l2},
                   {"smooth", join.smooth}};
    out.provenance = {"join.relative-fano-indices", "join.smoothness-test"};
    return out;
}

Payload run_regular_cones() {
    const FanoBase base = parse_base(a_base);
    const auto cones = enumerate_regular_cones(base);
    ordered_json weights = ordered_json::array();
    for (const auto& w : cones) weights.push_back(jweights(w));
    Payload out;
    out.inputs = {{"base", a_base}};
    out.outputs = {{"count", cones.size()}, {"weights", weights}};
    out.provenance = {"join.regular-ray-criterion", "join.cone-enumeration"};
    return out;
}

Payload run_quotient() {
    const FanoBase base = parse_base(a_base);
    const WeightVector w = parse_weights(a_w, "--w");
    const ReebRay v = parse_reeb(a_v, "--v");
    const ReebQuotient q = reeb_quotient(make_join(base, w), v);
    ordered_json branch = ordered_json::array();
    for (const auto& d : q.branch)
        branch.push_back(ordered_json{{"divisor", d.divisor},
                                      {"ramification", d.ramification},
                                      {"delta", jrat(d.delta_coefficient)}});
    Payload out;
    out.inputs = {{"base", a_base}, {"w", jweights(w)}, {"v", jreeb(v)}};
    out.outputs = {{"s", q.s},
                   {"m", q.m},
                   {"m1", q.m1},
                   {"m2", q.m2},
                   {"n", q.degree_n},
                   {"orientation_reversed", q.orientation_reversed},
                   {"regularity", to_string(q.regularity)},
                   {"branch", branch},
                   {"orb_pi1_order", q.orb_pi1_order},
                   {"fiber", q.fiber_string()},
                   {"lens", q.lens_string()}};
    out.provenance = {"quotient.orbifold-ramification", "quotient.lens-fiber"};
    return out;
}

Payload run_periods() {
    const FanoBase base = parse_base(a_base);
    const WeightVector w = parse_weights(a_w, "--w");
    const ReebRay v = parse_reeb(a_v, "--v");
    const OrbitPeriods p = orbit_periods(make_join(base, w), v);
    Payload out;
    out.inputs = {{"base", a_base}, {"w", jweights(w)}, {"v", jreeb(v)}};
    out.outputs = {{"generic", jrat(p.generic)}, {"at_D1", jrat(p.at_D1)}, {"at_D2", jrat(p.at_D2)}};
    out.provenance = {"quotient.orbit-periods"};
    return out;
}

Payload run_cohomology() {
    const FanoBase base = parse_base(a_family);
    const WeightVector w = parse_weights(a_w, "--w");
    RingPresentation ring;
    std::string rule;
    switch (base.family) {
        case BaseFamily::ProjectiveSpace:
            ring = cohomology_sphere_join(base.param, w);
            rule = "topology.sphere-join-ring";
            break;
        case BaseFamily::QuadricProduct:
            ring = cohomology_quadric_join(w);
            rule = "topology.quadric-join-ring";
            break;
        case BaseFamily::DelPezzo:
            ring = cohomology_delpezzo_join(base.param, w);
            rule = "topology.delpezzo-join-ring";
            break;
        case BaseFamily::Custom:
            throw ValidationError("cohomology: supported families are cpn:<r>, quadric, delpezzo:<k>");
    }
    ordered_json generators = ordered_json::array();
    for (const auto& g : ring.generators)
        generators.push_back(ordered_json{{"name", g.name}, {"degree", g.degree}});
    ordered_json relations = ordered_json::array();
    for (const auto& r : ring.relations) relations.push_back(r.str());
    ordered_json groups = ordered_json::array();
    for (const auto& [degree, group] : ring.groups) {
        ordered_json row = ordered_json{{"degree", degree}};
        row.update(jgroup(group));
        groups.push_back(row);
    }
    Payload out;
    out.inputs = {{"family", a_family}, {"w", jweights(w)}};
    out.outputs = {{"manifold_dim", ring.manifold_dim},
                   {"generators", generators},
                   {"relations", relations},
                   {"ring", ring.ring_string()},
                   {"groups", groups}};
    out.provenance = {rule};
    return out;
}

Payload run_classes() {
    const auto classes = partition_classes(a_W, a_r);
    ordered_json rows = ordered_json::array();
    for (const auto& c : classes)
        rows.push_back(ordered_json{{"w", jweights(c.w)}, {"class", c.class_index}});
    Payload out;
    out.inputs = {{"W", a_W}, {"r", a_r}};
    out.outputs = {{"count", classes.size()}, {"classes", rows}};
    out.provenance = {"topology.weight-partition"};
    return out;
}

Payload run_homotopy() {
    const WeightVector w = parse_weights(a_w, "--w");
    const WeightVector wp = parse_weights(a_wprime, "--wprime");
    const HomotopyVerdict verdict = homotopy_equivalent_7(w, wp);
    Payload out;
    out.inputs = {{"w", jweights(w)}, {"wprime", jweights(wp)}};
    out.outputs = {{"verdict", to_string(verdict.verdict)},
                   {"lhs_residue", jint(verdict.lhs_residue)},
                   {"rhs_residue", jint(verdict.rhs_residue)},
                   {"modulus", jint(verdict.modulus)}};
    out.provenance = {"topology.cubic-residue-criterion"};
    return out;
}

Payload run_p1() {
    const WeightVector w = parse_weights(a_w, "--w");
    const P1Residue res = p1_residue(w);
    Payload out;
    out.inputs = {{"w", jweights(w)}};
    out.outputs = {{"residue", jint(res.residue)}, {"modulus", jint(res.modulus)}};
    out.provenance = {"topology.characteristic-residue"};
    return out;
}

Payload run_homeo() {
    const WeightVector w = parse_weights(a_w, "--w");
    const WeightVector wp = parse_weights(a_wprime, "--wprime");
    Payload out;
    out.inputs = {{"w", jweights(w)}, {"wprime", jweights(wp)}};
    out.outputs = {{"obstruction_vanishes", homeo_obstruction(w, wp)}};
    out.provenance = {"topology.homeo-congruence"};
    return out;
}

Payload run_ke_solve(const CLI::App* sub) {
    const WeightVector w = parse_weights(a_w, "--w");
    const Rational width = resolve_width(sub, "--precision");
    std::optional<long long> fano;
    if (sub->count("--in") > 0) fano = a_in;
    const KESolution sol = solve_ke_ray(w, a_dn, width, fano);

    ordered_json roots = ordered_json::array();
    for (const auto& root : sol.roots) {
        ordered_json row = {{"rational", root.rational},
                            {"classification", to_string(root.classification)},
                            {"box", jbox(root.box)}};
        if (root.rational) row["value"] = jrat(root.value);
        if (root.v) row["ray"] = jreeb(*root.v);
        if (!root.rational)
            put_approx(row, "approx_value", root.box.midpoint().to_double(),
                       root.box.width().to_double());
        roots.push_back(row);
    }
    Payload out;
    out.inputs = {{"w", jweights(w)}, {"d_N", a_dn}, {"precision", jrat(width)}};
    if (fano) out.inputs["fano_index"] = *fano;
    out.outputs = {{"t", jrat(sol.t)},
                   {"defect", jpoly(sol.defect, "c")},
                   {"root_count", sol.roots.size()},
                   {"roots", roots}};
    if (sol.v_if_rational) out.outputs["v_if_rational"] = jreeb(*sol.v_if_rational);
    if (sol.lambda) out.outputs["lambda"] = jrat(*sol.lambda);
    out.provenance = {"admissible.ke-defect-integral", "roots.sturm-isolation"};
    return out;
}

Payload run_ke_defect() {
    const WeightVector w = parse_weights(a_w, "--w");
    const ReebRay v = parse_reeb(a_v, "--v");
    const Rational defect = ke_defect(w, v, a_dn);
    Payload out;
    out.inputs = {{"w", jweights(w)}, {"v", jreeb(v)}, {"d_N", a_dn}};
    out.outputs = {{"t", jrat(Rational(w.w2, w.w1))},
                   {"c", jrat(Rational(v.v2, v.v1))},
                   {"defect", jrat(defect)},
                   {"is_zero", defect.is_zero()}};
    out.provenance = {"admissible.ke-defect-integral"};
    return out;
}

Payload run_family(const CLI::App* sub) {
    const Rational k = parse_rational(a_k, "--k");
    std::optional<long long> fano;
    if (sub->count("--in") > 0) fano = a_in;
    const FamilyRay fam = quasiregular_family(k, a_dn, fano);
    Payload out;
    out.inputs = {{"k", jrat(k)}, {"d_N", a_dn}};
    if (fano) out.inputs["fano_index"] = *fano;
    out.outputs = {{"k", jrat(fam.k)},
                   {"t", jrat(fam.t)},
                   {"c", jrat(fam.c)},
                   {"w", jweights(fam.w)},
                   {"v", jreeb(fam.v)}};
    if (fam.join) {
        out.outputs["l1"] = fam.join->l1;
        out.outputs["l2"] = fam.join->l2;
    } else {
        // No base index given: report the relative indices symbolically in I_N.
        const std::string sum = std::to_string(fam.w.sum());
        out.outputs["l1"] = "I_N/gcd(I_N," + sum + ")";
        out.outputs["l2"] = sum + "/gcd(I_N," + sum + ")";
    }
    out.provenance = {"admissible.quasiregular-family"};
    return out;
}

Payload run_ypq(const CLI::App* sub) {
    Payload out;
    long long p = a_p, q = a_q;
    if (sub->count("--from-ab") > 0) {
        if (sub->count("--p") > 0 || sub->count("--q") > 0)
            throw ValidationError("ypq: --from-ab excludes --p/--q");
        const auto [a, b] = parse_pair(a_from_ab, "--from-ab");
        std::tie(p, q) = ypq_from_ab(a, b);
        out.inputs = {{"a", a}, {"b", b}};
        out.provenance = {"admissible.ypq-inverse", "admissible.ypq-bridge"};
    } else {
        if (sub->count("--p") == 0 || sub->count("--q") == 0)
            throw ValidationError("ypq: provide --p and --q, or --from-ab <a>,<b>");
        out.inputs = {{"p", p}, {"q", q}};
        out.provenance = {"admissible.ypq-bridge"};
    }
    const YpqData data = ypq_bridge(p, q);
    out.outputs = {{"p", data.p},
                   {"q", data.q},
                   {"w", jweights(data.w)},
                   {"l1", data.l1},
                   {"l2", data.l2}};
    return out;
}

Payload run_soliton(const CLI::App* sub) {
    const WeightVector w = parse_weights(a_w, "--w");
    const ReebRay v = parse_reeb(a_v, "--v");
    const double tol = resolve_tol(sub);
    const SolitonSolution sol = solve_soliton(w, v, a_dn, tol);

    // Bisection endpoints are dyadic, so the bracket serializes exactly.
    const Rational lo = Rational::from_double(sol.a_lo);
    const Rational hi = Rational::from_double(sol.a_hi);
    Payload out;
    out.inputs = {{"w", jweights(w)}, {"v", jreeb(v)}, {"d_N", a_dn}, {"tol", tol}};
    out.outputs = {{"g_at_zero", jrat(sol.g_at_zero)},
                   {"exact_zero", sol.exact_zero},
                   {"bracket", ordered_json{{"lo", jrat(lo)},
                                            {"hi", jrat(hi)},
                                            {"width", jrat(hi - lo)}}},
                   {"sign_lo", sol.sign_lo},
                   {"sign_hi", sol.sign_hi}};
    put_approx(out.outputs, "a", sol.a, sol.bracket_width / 2);
    out.provenance = {"admissible.soliton-closed-form", "admissible.soliton-bisection"};
    return out;
}

Payload run_extremal() {
    const WeightVector w = parse_weights(a_w, "--w");
    const ReebRay v = parse_reeb(a_v, "--v");
    const ExtremalSolution sol = solve_extremal(w, v, a_dn, a_in);
    Payload out;
    out.inputs = {{"w", jweights(w)}, {"v", jreeb(v)}, {"d_N", a_dn}, {"fano_index", a_in}};
    out.outputs = {{"F", jpoly(sol.F, "z")},
                   {"P", jpoly(sol.P, "z")},
                   {"positive", sol.positive}};
    out.provenance = {"admissible.extremal-linear-system", "roots.sturm-positivity"};
    return out;
}

Payload run_enumerate() {
    const FanoBase base = parse_base(a_base);
    if (a_wmax < 1) throw ValidationError("enumerate: --wmax must be positive");
    if (a_vmax < 1) throw ValidationError("enumerate: --vmax must be positive");
    const long long d_N = base.complex_dim;

    ordered_json rows = ordered_json::array();
    for (long long w1 = 2; w1 <= a_wmax; ++w1)
        for (long long w2 = 1; w2 < w1; ++w2) {
            if (std::gcd(w1, w2) != 1) continue;
            const WeightVector w(w1, w2);
            const JoinSpec join = make_join(base, w);
            // Coarse isolation is enough: only rationality is reported here.
            const KESolution sol = solve_ke_ray(w, d_N, Rational(1, 1 << 20));
            bool any_rational = false;
            for (const auto& root : sol.roots) any_rational = any_rational || root.rational;
            if (a_rationality == "rational" && !any_rational) continue;
            if (a_rationality == "irrational" && any_rational) continue;

            for (long long v1 = 1; v1 <= a_vmax; ++v1)
                for (long long v2 = 1; v2 <= a_vmax; ++v2) {
                    if (std::gcd(v1, v2) != 1) continue;
                    if (w1 * v2 == w2 * v1) continue;
                    const ReebRay v(v1, v2);
                    const ReebQuotient q = reeb_quotient(join, v);
                    const std::string regularity = to_string(q.regularity);
                    if (a_regularity == "regular" && q.regularity != Regularity::Regular) continue;
                    if (a_regularity == "quasi-regular" && q.regularity == Regularity::Regular)
                        continue;
                    rows.push_back(ordered_json{{"w", jweights(w)},
                                                {"v", jreeb(v)},
                                                {"regularity", regularity},
                                                {"s", q.s},
                                                {"m", q.m},
                                                {"m1", q.m1},
                                                {"m2", q.m2},
                                                {"n", q.degree_n},
                                                {"orientation_reversed", q.orientation_reversed},
                                                {"ke_root_rational", any_rational},
                                                {"is_ke_ray", ke_defect(w, v, d_N).is_zero()}});
                }
        }
    Payload out;
    out.inputs = {{"base", a_base},
                  {"wmax", a_wmax},
                  {"vmax", a_vmax},
                  {"regularity", a_regularity},
                  {"rationality", a_rationality}};
    out.outputs = {{"d_N", d_N}, {"count", rows.size()}, {"rows", rows}};
    out.provenance = {"quotient.orbifold-ramification", "admissible.ke-defect-integral"};
    return out;
}

// ---------- output rendering ----------

void flatten(const ordered_json& j, const std::string& path,
             std::vector<std::pair<std::string, std::string>>& rows) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items())
            flatten(value, path.empty() ? key : path + "." + key, rows);
        return;
    }
    if (j.is_array()) {
        bool scalar = true;
        for (const auto& item : j) scalar = scalar && !item.is_structured();
        if (scalar) {
            rows.emplace_back(path, j.dump());
            return;
        }
        for (std::size_t i = 0; i < j.size(); ++i)
            flatten(j[i], path + "[" + std::to_string(i) + "]", rows);
        return;
    }
    rows.emplace_back(path, j.is_string() ? j.get<std::string>() : j.dump());
}

void render(const ordered_json& doc) {
    if (g_format == "json") {
        std::cout << doc.dump(2) << "\n";
        return;
    }
    std::vector<std::pair<std::string, std::string>> rows;
    flatten(doc, "", rows);
    std::size_t width = 0;
    for (const auto& [key, value] : rows) width = std::max(width, key.size());
    for (const auto& [key, value] : rows)
        std::cout << key << std::string(width - key.size() + 2, ' ') << value << "\n";
}

void add_common(CLI::App* sub) {
    sub->add_option("--format", g_format, "Output format")
        ->check(CLI::IsMember({"json", "table"}));
    sub->add_flag("--exact-only", g_exact_only, "Suppress all floating-point fields");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact invariants of joins of a Fano base with a weighted 3-sphere"};
    app.require_subcommand(1);

    auto* join = app.add_subcommand("join", "Relative indices and smoothness of a join");
    join->add_option("--base", a_base, "cpn:<r> | quadric | delpezzo:<k> | custom:<I_N>,<d_N>")
        ->required();
    join->add_option("--w", a_w, "Weights w1,w2")->required();
    add_common(join);

    auto* cones = app.add_subcommand("regular-cones", "Weights whose cone has a regular ray");
    cones->add_option("--base", a_base, "Base specification")->required();
    add_common(cones);

    auto* quot = app.add_subcommand("quotient", "Orbifold data of the quotient by a Reeb ray");
    quot->add_option("--base", a_base, "Base specification")->required();
    quot->add_option("--w", a_w, "Weights w1,w2")->required();
    quot->add_option("--v", a_v, "Reeb ray v1,v2")->required();
    add_common(quot);

    auto* periods = app.add_subcommand("periods", "Orbit periods along a Reeb ray");
    periods->add_option("--base", a_base, "Base specification")->required();
    periods->add_option("--w", a_w, "Weights w1,w2")->required();
    periods->add_option("--v", a_v, "Reeb ray v1,v2")->required();
    add_common(periods);

    auto* coh = app.add_subcommand("cohomology", "Cohomology ring presentation of a join");
    coh->add_option("--family", a_family, "cpn:<r> (r >= 2) | quadric | delpezzo:<k>")->required();
    coh->add_option("--w", a_w, "Weights w1,w2")->required();
    add_common(coh);

    auto* classes = app.add_subcommand("classes", "Ordered coprime weight pairs of product W");
    classes->add_option("--W", a_W, "Weight product")->required();
    classes->add_option("--r", a_r, "Base projective-space dimension")->default_val(2);
    add_common(classes);

    auto* homotopy = app.add_subcommand("homotopy", "Homotopy comparison of two 7-manifolds");
    homotopy->add_option("--w", a_w, "Weights w1,w2")->required();
    homotopy->add_option("--wprime", a_wprime, "Weights w1',w2'")->required();
    add_common(homotopy);

    auto* p1 = app.add_subcommand("p1", "Characteristic residue of the 7-manifold");
    p1->add_option("--w", a_w, "Weights w1,w2")->required();
    add_common(p1);

    auto* homeo = app.add_subcommand("homeo", "Homeomorphism congruence for an odd-W pair");
    homeo->add_option("--w", a_w, "Weights w1,w2")->required();
    homeo->add_option("--wprime", a_wprime, "Weights w1',w2'")->required();
    add_common(homeo);

    auto* ke = app.add_subcommand("ke-solve", "Isolate and classify Einstein rays");
    ke->add_option("--w", a_w, "Weights w1,w2")->required();
    ke->add_option("--dn", a_dn, "Complex dimension of the base")->required();
    ke->add_option("--in", a_in, "Fano index of the base (attaches quotient data)");
    ke->add_option("--precision", a_precision, "Isolation width: num/den, 1e-15, or k for 10^-k");
    add_common(ke);

    auto* defect = app.add_subcommand("ke-defect", "Exact Einstein defect of one ray");
    defect->add_option("--w", a_w, "Weights w1,w2")->required();
    defect->add_option("--v", a_v, "Reeb ray v1,v2")->required();
    defect->add_option("--dn", a_dn, "Complex dimension of the base")->required();
    add_common(defect);

    auto* family = app.add_subcommand("family", "Quasi-regular Einstein ray with parameter k");
    family->add_option("--k", a_k, "Rational parameter > 1 (num/den)")->required();
    family->add_option("--dn", a_dn, "Complex dimension of the base")->required();
    family->add_option("--in", a_in, "Fano index of the base");
    add_common(family);

    auto* ypq = app.add_subcommand("ypq", "Weighted-sphere data of the Y^{p,q} family");
    ypq->add_option("--p", a_p, "p");
    ypq->add_option("--q", a_q, "q");
    ypq->add_option("--from-ab", a_from_ab, "Derive p,q from a,b");
    add_common(ypq);

    auto* soliton = app.add_subcommand("soliton", "Bracketed soliton parameter on a ray");
    soliton->add_option("--w", a_w, "Weights w1,w2")->required();
    soliton->add_option("--v", a_v, "Reeb ray v1,v2")->required();
    soliton->add_option("--dn", a_dn, "Complex dimension of the base")->required();
    soliton->add_option("--tol", a_tol, "Bracket width tolerance");
    add_common(soliton);

    auto* extremal = app.add_subcommand("extremal", "Extremal profile on a ray");
    extremal->add_option("--w", a_w, "Weights w1,w2")->required();
    extremal->add_option("--v", a_v, "Reeb ray v1,v2")->required();
    extremal->add_option("--dn", a_dn, "Complex dimension of the base")->required();
    extremal->add_option("--in", a_in, "Fano index of the base")->required();
    add_common(extremal);

    auto* enumerate = app.add_subcommand("enumerate", "Batch quotient survey over w and v ranges");
    enumerate->add_option("--base", a_base, "Base specification")->required();
    enumerate->add_option("--wmax", a_wmax, "Upper bound for w1")->required();
    enumerate->add_option("--vmax", a_vmax, "Upper bound for v components")->default_val(6);
    enumerate->add_option("--regularity", a_regularity, "Row filter")
        ->check(CLI::IsMember({"any", "regular", "quasi-regular"}));
    enumerate->add_option("--rationality", a_rationality, "Einstein-root filter")
        ->check(CLI::IsMember({"any", "rational", "irrational"}));
    add_common(enumerate);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "sasaki: " << e.what() << "\n";
        return 2;
    }

    std::string command;
    Payload payload;
    try {
        if (app.got_subcommand(join)) {
            command = "join";
            payload = run_join();
        } else if (app.got_subcommand(cones)) {
            command = "regular-cones";
            payload = run_regular_cones();
        } else if (app.got_subcommand(quot)) {
            command = "quotient";
            payload = run_quotient();
        } else if (app.got_subcommand(periods)) {
            command = "periods";
            payload = run_periods();
        } else if (app.got_subcommand(coh)) {
            command = "cohomology";
            payload = run_cohomology();
        } else if (app.got_subcommand(classes)) {
            command = "classes";
            payload = run_classes();
        } else if (app.got_subcommand(homotopy)) {
            command = "homotopy";
            payload = run_homotopy();
        } else if (app.got_subcommand(p1)) {
            command = "p1";
            payload = run_p1();
        } else if (app.got_subcommand(homeo)) {
            command = "homeo";
            payload = run_homeo();
        } else if (app.got_subcommand(ke)) {
            command = "ke-solve";
            payload = run_ke_solve(ke);
        } else if (app.got_subcommand(defect)) {
            command = "ke-defect";
            payload = run_ke_defect();
        } else if (app.got_subcommand(family)) {
            command = "family";
            payload = run_family(family);
        } else if (app.got_subcommand(ypq)) {
            command = "ypq";
            payload = run_ypq(ypq);
        } else if (app.got_subcommand(soliton)) {
            command = "soliton";
            payload = run_soliton(soliton);
        } else if (app.got_subcommand(extremal)) {
            command = "extremal";
            payload = run_extremal();
        } else if (app.got_subcommand(enumerate)) {
            command = "enumerate";
            payload = run_enumerate();
        }
    } catch (const sasaki::ValidationError& e) {
        std::cerr << "sasaki: " << e.what() << "\n";
        return 2;
    } catch (const sasaki::ComputationError& e) {
        std::cerr << "sasaki: " << e.what() << "\n";
        return 3;
    }

    ordered_json doc;
    doc["command"] = command;
    doc["inputs"] = payload.inputs;
    doc["outputs"] = payload.outputs;
    doc["provenance"] = payload.provenance;
    render(doc);
    return 0;
}
