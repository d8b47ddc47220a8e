#include <catch2/catch_amalgamated.hpp>
#include <cstdlib>
#include <fstream>
#include <random>

#include "loopfix/cli.hpp"

using namespace loopfix;

namespace {

RootSystem make(const std::string& spec) { return build_root_system(parse_group_spec(spec)); }

std::mt19937 rng(90210);

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    if (out_text) *out_text = out.str();
    if (err_text) *err_text = err.str();
    return code;
}

std::string temp_path(const std::string& name) {
    return std::string("/tmp/loopfix_test_") + name;
}

}  // namespace

TEST_CASE("json round trips") {
    for (int trial = 0; trial < 20; ++trial) {
        Rational q = rat((long long)(rng() % 41) - 20, 1 + (long long)(rng() % 9));
        CHECK(io::rational_from_json(io::rational_to_json(q)) == q);
    }
    for (int trial = 0; trial < 15; ++trial) {
        long n = 1 + (long)(rng() % 12);
        Cyclotomic c = Cyclotomic::zero();
        for (int i = 0; i < 3; ++i)
            c += rat((long long)(rng() % 7) - 3, 2) *
                 Cyclotomic::root_of_unity(n, (long long)(rng() % (unsigned)n));
        CHECK(io::cyclotomic_from_json(io::cyclotomic_to_json(c)) == c);
    }
    IntVec v{3, -1, 0};
    CHECK(io::weight_from_key(io::weight_key(v), 3) == v);
    CHECK_THROWS_AS(io::weight_from_key("1,2", 3), error);
}

TEST_CASE("model file round trip") {
    auto rs = make("A1");
    Level k{2};
    auto model = coadjoint_orbit_model(rs, k, IntVec{1});
    // add an isolated entry with a half-integral shift to cover both kinds
    IsolatedFixedPoint iso;
    iso.line_weight = IntVec{2};
    iso.normal_weights.weights = {IntVec{2}, IntVec{-3}};
    iso.sign = -1;
    iso.canonical_shift = RatVec{rat(1, 2)};
    model.entries.push_back(iso);

    auto doc = io::model_to_json(model);
    auto back = io::model_from_json(doc);
    CHECK(back.rs.name == model.rs.name);
    CHECK(back.k == model.k);
    REQUIRE(back.entries.size() == model.entries.size());
    auto t = t_lambda(rs, k, IntVec{0}, session_order(rs, k));
    for (size_t i = 0; i < model.entries.size(); ++i)
        CHECK(contribution_at(model, model.entries[i], t) ==
              contribution_at(back, back.entries[i], t));
    // extraction agrees after the round trip (on the consistent orbit model;
    // the extra isolated entry above is synthetic data, not an index)
    auto orbit = coadjoint_orbit_model(rs, k, IntVec{1});
    auto orbit_back = io::model_from_json(io::model_to_json(orbit));
    CHECK(extract_multiplicities(orbit_back) == extract_multiplicities(orbit));

    CHECK_THROWS_AS(io::model_from_json(io::json{{"group", "A1"},
                                                 {"level", io::json::array({1})},
                                                 {"entries", io::json::array({io::json{
                                                     {"kind", "mystery"}}})}}),
                    error);
}

TEST_CASE("extract output round trips through the machine format") {
    auto rs = make("A2");
    Level k{1};
    auto model = coadjoint_orbit_model(rs, k, IntVec{0, 1});
    std::string path = temp_path("coadjoint_a2.json");
    {
        std::ofstream f(path);
        f << io::model_to_json(model).dump();
    }
    std::string out;
    int code = run_cli({"extract", "--model", path, "--format", "json"}, &out);
    REQUIRE(code == 0);
    auto parsed = io::table_from_json(io::json::parse(out));
    CHECK(parsed == extract_multiplicities(model));
    CHECK(io::json::parse(out).at("group").get<std::string>() == "A2");

    // mismatched flags are rejected
    std::string err;
    CHECK(run_cli({"extract", "--model", path, "--group", "A1"}, &out, &err) == 1);
    CHECK(err.find("disagrees") != std::string::npos);
    CHECK(run_cli({"extract", "--model", path, "--level", "2"}, &out, &err) == 1);
}

TEST_CASE("cli worked examples") {
    std::string out;
    REQUIRE(run_cli({"verlinde", "--group", "A1", "--level", "1", "--genus", "2"}, &out) == 0);
    CHECK(out == "4\n");

    REQUIRE(run_cli({"levelk", "--group", "A1", "--level", "3"}, &out) == 0);
    CHECK(out.find("lambda = [0]") != std::string::npos);
    CHECK(out.find("lambda = [3]") != std::string::npos);
    CHECK(out.find("<rho,v> = 1/10") != std::string::npos);

    REQUIRE(run_cli({"char", "--group", "A1", "--level", "2", "--mu", "1", "--lambda", "1"},
                    &out) == 0);
    CHECK(out.find("shadow") != std::string::npos);

    REQUIRE(run_cli({"fusion", "--group", "A1", "--level", "2", "--mu", "1", "--nu", "1"},
                    &out) == 0);
    CHECK(out.find("chi[0] + chi[2]") != std::string::npos);

    REQUIRE(run_cli({"roots", "--group", "G2", "--format", "json"}, &out) == 0);
    auto doc = io::json::parse(out);
    CHECK(doc.at("roots").get<int>() == 12);
    CHECK(doc.at("weyl_order").get<std::string>() == "12");

    REQUIRE(run_cli({"faces", "--group", "A1"}, &out) == 0);
    CHECK(out.find("A1:[0]") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    std::string out, err;
    CHECK(run_cli({}, &out, &err) == 2);                       // missing subcommand
    CHECK(run_cli({"roots"}, &out, &err) == 2);                // missing --group
    CHECK(run_cli({"roots", "--group", "Q7"}, &out, &err) == 1);
    CHECK(run_cli({"roots", "--group", "E8"}, &out, &err) == 1);  // cap refusal
    CHECK(err.find("cap") != std::string::npos);
    CHECK(run_cli({"char", "--group", "A1", "--level", "2", "--mu", "1,2", "--lambda", "0"},
                  &out, &err) == 1);  // wrong rank weight
    CHECK(run_cli({"fusion", "--group", "A1", "--level", "2", "--mu", "1"}, &out, &err) == 2);
    CHECK(run_cli({"--help"}, &out, &err) == 0);
    CHECK(out.find("loopfix") != std::string::npos);
}

TEST_CASE("identical invocations are bit-identical across thread counts") {
    auto rs = make("A1");
    Level k{3};
    auto model = coadjoint_orbit_model(rs, k, IntVec{2});
    std::string path = temp_path("coadjoint_a1.json");
    {
        std::ofstream f(path);
        f << io::model_to_json(model).dump();
    }
    std::string first, second;
    setenv("LOOPFIX_THREADS", "1", 1);
    REQUIRE(run_cli({"extract", "--model", path, "--format", "json"}, &first) == 0);
    setenv("LOOPFIX_THREADS", "3", 1);
    REQUIRE(run_cli({"extract", "--model", path, "--format", "json"}, &second) == 0);
    unsetenv("LOOPFIX_THREADS");
    CHECK(first == second);
    std::string again;
    REQUIRE(run_cli({"extract", "--model", path, "--format", "json"}, &again) == 0);
    CHECK(first == again);
}

TEST_CASE("config file provides defaults, flags win") {
    std::string path = temp_path("config.ini");
    {
        std::ofstream f(path);
        f << "[verlinde]\ngroup=A1\nlevel=1\ngenus=2\n";
    }
    std::string out;
    REQUIRE(run_cli({"--config", path, "verlinde"}, &out) == 0);
    CHECK(out == "4\n");
    // an explicit flag overrides the config value
    REQUIRE(run_cli({"--config", path, "verlinde", "--genus", "1"}, &out) == 0);
    CHECK(out == "2\n");
}

TEST_CASE("selftest command") {
    std::string out, err;
    CHECK(run_cli({"selftest"}, &out, &err) == 0);
    CHECK(out.find("PASS orthogonality") != std::string::npos);
    CHECK(out.find("PASS coadjoint-delta") != std::string::npos);

    // an absurd cap surfaces as a clean failing suite
    CHECK(run_cli({"selftest", "--weyl-cap", "1"}, &out, &err) == 1);
    CHECK(out.find("FAIL") != std::string::npos);
    CHECK(out.find("cap") != std::string::npos);

    CHECK(run_cli({"selftest", "--format", "json"}, &out, &err) == 0);
    auto doc = io::json::parse(out);
    CHECK(doc.is_array());
    for (const auto& suite : doc) CHECK(suite.at("passed").get<bool>());
}
