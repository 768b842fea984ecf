#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <regex>
#include <string>
#include <sys/wait.h>

namespace {

using json = nlohmann::json;

struct RunResult {
    int code = -1;
    std::string out;
};

RunResult run_raw(const std::string& cmd) {
    RunResult result;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof buffer, pipe)) > 0) result.out.append(buffer, n);
    const int status = pclose(pipe);
    result.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return result;
}

// Stdout only, with the precision variable scrubbed from the environment.
RunResult run(const std::string& args) {
    return run_raw(std::string("env -u SASAKI_PRECISION \"") + SASAKI_CLI_PATH + "\" " + args +
                   " 2>/dev/null");
}

RunResult run_env(const std::string& precision, const std::string& args) {
    return run_raw(std::string("env SASAKI_PRECISION=") + precision + " \"" + SASAKI_CLI_PATH +
                   "\" " + args + " 2>/dev/null");
}

// Stderr only.
RunResult run_err(const std::string& args) {
    return run_raw(std::string("env -u SASAKI_PRECISION \"") + SASAKI_CLI_PATH + "\" " + args +
                   " 2>&1 1>/dev/null");
}

json parse(const RunResult& result) {
    REQUIRE(result.code == 0);
    return json::parse(result.out);
}

// --- minimal validator for the subset of schema keywords the document uses ---

const json& resolve(const json& schema, const json& root) {
    if (schema.contains("$ref")) {
        const std::string ref = schema["$ref"].get<std::string>();
        REQUIRE(ref.rfind("#/$defs/", 0) == 0);
        return root["$defs"].at(ref.substr(8));
    }
    return schema;
}

bool conforms(const json& schema_in, const json& value, const json& root) {
    const json& schema = resolve(schema_in, root);
    if (schema.contains("const") && value != schema["const"]) return false;
    if (schema.contains("enum")) {
        bool hit = false;
        for (const auto& e : schema["enum"]) hit = hit || value == e;
        if (!hit) return false;
    }
    if (schema.contains("type")) {
        const std::string t = schema["type"].get<std::string>();
        if (t == "object" && !value.is_object()) return false;
        if (t == "array" && !value.is_array()) return false;
        if (t == "string" && !value.is_string()) return false;
        if (t == "integer" && !value.is_number_integer()) return false;
        if (t == "number" && !value.is_number()) return false;
        if (t == "boolean" && !value.is_boolean()) return false;
    }
    if (schema.contains("pattern")) {
        if (!value.is_string()) return false;
        if (!std::regex_search(value.get<std::string>(),
                               std::regex(schema["pattern"].get<std::string>())))
            return false;
    }
    if (schema.contains("required")) {
        if (!value.is_object()) return false;
        for (const auto& key : schema["required"])
            if (!value.contains(key.get<std::string>())) return false;
    }
    if (schema.contains("properties") && value.is_object())
        for (const auto& [key, sub] : schema["properties"].items())
            if (value.contains(key) && !conforms(sub, value.at(key), root)) return false;
    if (schema.contains("items") && value.is_array())
        for (const auto& item : value)
            if (!conforms(schema["items"], item, root)) return false;
    if (schema.contains("minItems") && value.is_array() &&
        value.size() < schema["minItems"].get<std::size_t>())
        return false;
    if (schema.contains("maxItems") && value.is_array() &&
        value.size() > schema["maxItems"].get<std::size_t>())
        return false;
    if (schema.contains("oneOf")) {
        int hits = 0;
        for (const auto& branch : schema["oneOf"]) hits += conforms(branch, value, root) ? 1 : 0;
        if (hits != 1) return false;
    }
    return true;
}

const json& schema() {
    static const json loaded = [] {
        std::ifstream in(SASAKI_SCHEMA_PATH);
        REQUIRE(in.good());
        return json::parse(in);
    }();
    return loaded;
}

void require_valid(const json& doc) { REQUIRE(conforms(schema(), doc, schema())); }

} // namespace

TEST_CASE("cli quotient worked example", "[cli]") {
    const json doc = parse(run("quotient --base custom:1,2 --w 11,1 --v 4,5"));
    require_valid(doc);
    CHECK(doc["command"] == "quotient");
    const auto& out = doc["outputs"];
    CHECK(out["s"] == 3);
    CHECK(out["m"] == 4);
    CHECK(out["m1"] == 16);
    CHECK(out["m2"] == 20);
    CHECK(out["n"] == 17);
    CHECK(out["branch"][0]["delta"] == "15/16");
    CHECK(out["branch"][1]["delta"] == "19/20");
    CHECK(out["fiber"] == "CP^1[4,5]/Z_4");
    CHECK(out["lens"] == "L(12;11,1)");
}

TEST_CASE("cli ke-solve irregular ray", "[cli]") {
    const json doc = parse(run("ke-solve --w 3,1 --dn 1"));
    require_valid(doc);
    const auto& out = doc["outputs"];
    CHECK(out["root_count"] == 1);
    const auto& root = out["roots"][0];
    CHECK(root["rational"] == false);
    CHECK(root["classification"] == "irregular");
    CHECK(root["approx_value"]["value"].get<double>() ==
          Catch::Approx(0.7675918792).epsilon(1e-9));
    CHECK(root["approx_value"]["error_bound"].get<double>() <= 1e-12);
    CHECK_FALSE(out.contains("v_if_rational"));
}

TEST_CASE("cli ke-solve rational ray with base index", "[cli]") {
    const json doc = parse(run("ke-solve --w 5,2 --dn 1 --in 2"));
    require_valid(doc);
    const auto& out = doc["outputs"];
    CHECK(out["roots"][0]["rational"] == true);
    CHECK(out["roots"][0]["value"] == "4/5");
    CHECK(out["roots"][0]["classification"] == "quasi_regular");
    CHECK(out["roots"][0]["ray"] == json::array({5, 4}));
    CHECK(out["v_if_rational"] == json::array({5, 4}));
    CHECK(out["lambda"] == "9/280");
}

TEST_CASE("cli homotopy verdict", "[cli]") {
    const json doc = parse(run("homotopy --w 15,1 --wprime 5,3"));
    require_valid(doc);
    CHECK(doc["outputs"]["verdict"] == "inequivalent");
    CHECK(doc["outputs"]["lhs_residue"] == "46");
    CHECK(doc["outputs"]["rhs_residue"] == "107");
    CHECK(doc["outputs"]["modulus"] == "135");
}

TEST_CASE("cli payloads validate against the shipped schema", "[cli]") {
    const char* commands[] = {
        "join --base cpn:2 --w 3,1",
        "regular-cones --base quadric",
        "quotient --base quadric --w 3,1 --v 1,1",
        "periods --base custom:1,2 --w 11,1 --v 4,5",
        "cohomology --family cpn:2 --w 3,1",
        "cohomology --family quadric --w 5,2",
        "cohomology --family delpezzo:3 --w 2,1",
        "classes --W 6545",
        "homotopy --w 15,1 --wprime 5,3",
        "homotopy --w 3,1 --wprime 3,1",
        "p1 --w 3,1",
        "homeo --w 85,77 --wprime 119,55",
        "ke-solve --w 3,1 --dn 1",
        "ke-solve --w 5,2 --dn 1 --in 2",
        "ke-defect --w 3,1 --v 1,1 --dn 1",
        "family --k 3/2 --dn 2",
        "family --k 2 --dn 1 --in 2",
        "ypq --p 7 --q 3",
        "ypq --from-ab 4,1",
        "soliton --w 3,1 --v 1,1 --dn 1",
        "soliton --w 5,2 --v 5,4 --dn 1",
        "extremal --w 7,3 --v 2,1 --dn 2 --in 2",
        "enumerate --base custom:1,1 --wmax 6 --vmax 4",
    };
    for (const char* cmd : commands) {
        INFO(cmd);
        require_valid(parse(run(cmd)));
    }
}

TEST_CASE("cli output is byte-stable", "[cli]") {
    const char* commands[] = {
        "quotient --base custom:1,2 --w 11,1 --v 4,5",
        "ke-solve --w 3,1 --dn 1",
        "soliton --w 3,1 --v 1,1 --dn 1",
        "enumerate --base custom:2,1 --wmax 6 --vmax 4",
        "cohomology --family delpezzo:3 --w 2,1 --format table",
    };
    for (const char* cmd : commands) {
        INFO(cmd);
        const RunResult first = run(cmd);
        const RunResult second = run(cmd);
        REQUIRE(first.code == 0);
        REQUIRE(first.out == second.out);
        REQUIRE_FALSE(first.out.empty());
    }
}

TEST_CASE("cli exit codes", "[cli]") {
    // Domain violations exit 2.
    CHECK(run("periods --base custom:1,2 --w 1,1 --v 1,1").code == 2);
    CHECK(run("quotient --base custom:1,2 --w 2,1 --v 2,1").code == 2);
    CHECK(run("join --base cpn:0 --w 3,1").code == 2);
    CHECK(run("join --base nonsense --w 3,1").code == 2);
    CHECK(run("join --base cpn:2 --w 4,2").code == 2);
    CHECK(run("family --k 1 --dn 1").code == 2);
    CHECK(run("ypq --p 4 --q 2").code == 2);
    CHECK(run("ypq --p 7 --q 3 --from-ab 2,1").code == 2);
    CHECK(run("cohomology --family custom:1,2 --w 3,1").code == 2);
    CHECK(run("homeo --w 3,1 --wprime 5,3").code == 2);
    CHECK(run("soliton --w 3,1 --v 1,1 --dn 1 --tol 0").code == 2);

    // Usage errors exit 2 and land on standard error.
    CHECK(run("bogus-command").code == 2);
    CHECK(run("ke-solve --w 3,1").code == 2);
    CHECK(run("").code == 2);
    const RunResult err = run_err("ke-solve --w 3,1");
    CHECK(err.code == 2);
    CHECK(err.out.find("sasaki:") != std::string::npos);

    // A computation that runs off its search range exits 3.
    CHECK(run("soliton --w 3,1 --v 1,1000000000 --dn 1").code == 3);

    // Errors never leave a partial payload on standard output.
    CHECK(run("periods --base custom:1,2 --w 1,1 --v 1,1").out.empty());
    CHECK(run("soliton --w 3,1 --v 1,1000000000 --dn 1").out.empty());
}

TEST_CASE("cli exact-only suppresses floating fields", "[cli]") {
    const RunResult solve = run("ke-solve --w 3,1 --dn 1 --exact-only");
    REQUIRE(solve.code == 0);
    CHECK(solve.out.find("approx") == std::string::npos);
    require_valid(json::parse(solve.out));

    const json soliton = parse(run("soliton --w 3,1 --v 1,1 --dn 1 --exact-only"));
    require_valid(soliton);
    CHECK_FALSE(soliton["outputs"].contains("a"));
    // The bracket is made of dyadic endpoints, so it survives exact-only.
    CHECK(soliton["outputs"]["bracket"].contains("lo"));
}

TEST_CASE("cli precision control", "[cli]") {
    const json coarse = parse(run_env("1/1024", "ke-solve --w 3,1 --dn 1"));
    CHECK(coarse["inputs"]["precision"] == "1/1024");
    CHECK(coarse["outputs"]["roots"][0]["approx_value"]["error_bound"].get<double>() <=
          1.0 / 1024);

    // A bare integer k means 10^-k.
    const json powers = parse(run_env("8", "ke-solve --w 3,1 --dn 1"));
    CHECK(powers["inputs"]["precision"] == "1/100000000");

    // The flag wins over the environment.
    const json flagged = parse(run_env("8", "ke-solve --w 3,1 --dn 1 --precision 1/2048"));
    CHECK(flagged["inputs"]["precision"] == "1/2048");

    CHECK(run_env("0", "ke-solve --w 3,1 --dn 1").code == 2);
    CHECK(run_env("garbage", "ke-solve --w 3,1 --dn 1").code == 2);
}

TEST_CASE("cli table format", "[cli]") {
    const RunResult table = run("quotient --base custom:1,2 --w 11,1 --v 4,5 --format table");
    REQUIRE(table.code == 0);
    CHECK(table.out.find("outputs.s") != std::string::npos);
    CHECK(table.out.find('{') == std::string::npos);
    CHECK(run("quotient --base custom:1,2 --w 11,1 --v 4,5 --format csv").code == 2);
}

TEST_CASE("cli enumerate filters", "[cli]") {
    const json regular = parse(run("enumerate --base quadric --wmax 4 --vmax 2 --regularity regular"));
    require_valid(regular);
    for (const auto& row : regular["outputs"]["rows"]) {
        CHECK(row["regularity"] == "regular");
        CHECK(row["m1"] == 1);
        CHECK(row["m2"] == 1);
    }
    // (3,1) over the quadric has the regular diagonal ray.
    bool found = false;
    for (const auto& row : regular["outputs"]["rows"])
        found = found || (row["w"] == json::array({3, 1}) && row["v"] == json::array({1, 1}));
    CHECK(found);

    const json rational = parse(run("enumerate --base custom:2,1 --wmax 6 --vmax 6 --rationality rational"));
    require_valid(rational);
    bool ke_ray = false;
    for (const auto& row : rational["outputs"]["rows"]) {
        CHECK(row["ke_root_rational"] == true);
        if (row["w"] == json::array({5, 2}) && row["v"] == json::array({5, 4}))
            ke_ray = row["is_ke_ray"].get<bool>();
    }
    CHECK(ke_ray);

    // Sorted by (w1, w2, v1, v2).
    const auto& rows = rational["outputs"]["rows"];
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto key = [](const json& row) {
            return std::array<long long, 4>{row["w"][0].get<long long>(),
                                            row["w"][1].get<long long>(),
                                            row["v"][0].get<long long>(),
                                            row["v"][1].get<long long>()};
        };
        CHECK(key(rows[i - 1]) < key(rows[i]));
    }
}

TEST_CASE("cli family symbolic indices", "[cli]") {
    const json symbolic = parse(run("family --k 2 --dn 1"));
    require_valid(symbolic);
    CHECK(symbolic["outputs"]["l1"] == "I_N/gcd(I_N,7)");
    CHECK(symbolic["outputs"]["l2"] == "7/gcd(I_N,7)");

    const json concrete = parse(run("family --k 2 --dn 1 --in 2"));
    require_valid(concrete);
    CHECK(concrete["outputs"]["l1"] == 2);
    CHECK(concrete["outputs"]["l2"] == 7);
    CHECK(concrete["outputs"]["w"] == json::array({5, 2}));
    CHECK(concrete["outputs"]["v"] == json::array({5, 4}));
}

TEST_CASE("cli soliton exact zero", "[cli]") {
    const json doc = parse(run("soliton --w 5,2 --v 5,4 --dn 1"));
    require_valid(doc);
    CHECK(doc["outputs"]["exact_zero"] == true);
    CHECK(doc["outputs"]["g_at_zero"] == "0");
    CHECK(doc["outputs"]["bracket"]["width"] == "0");
}
