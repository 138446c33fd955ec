#include <doctest.h>

#include "gtrep/json_io.hpp"

#include "test_configs.hpp"

using namespace gtrep;

TEST_CASE("weights JSON round trip") {
    const auto spec = testcfg::p122();
    const json j = weights_json(spec);
    CHECK(j["pyramid"] == json::array({1, 2, 2}));
    CHECK(j["lambda"]["2"] == json::array({"0", "1/2"}));
    const auto back = parse_weights_json(j);
    CHECK(back == spec);
}

TEST_CASE("weights JSON rejects malformed input") {
    CHECK_THROWS_AS(parse_weights_json(json::parse("[1,2]")), InvalidInput);
    CHECK_THROWS_AS(parse_weights_json(json::parse(R"({"lambda":{}})")), InvalidInput);
    CHECK_THROWS_AS(
        parse_weights_json(json::parse(R"({"pyramid":[1],"lambda":{"1":[7]}})")),
        InvalidInput);
    CHECK_THROWS_AS(
        parse_weights_json(json::parse(R"({"pyramid":[1],"lambda":{"1":["x"]}})")),
        InvalidInput);
    // validation failures propagate as domain errors
    CHECK_THROWS_AS(
        parse_weights_json(
            json::parse(R"({"pyramid":[2,1],"lambda":{"1":["0","0"],"2":["0"]}})")),
        NotLeftJustified);
}

TEST_CASE("pyramid override replaces the file pyramid") {
    const json j = json::parse(
        R"({"pyramid":[9,9],"lambda":{"1":["1"],"2":["0"]}})");
    const std::vector<int> rows{1, 1};
    const auto spec = parse_weights_json(j, &rows);
    CHECK(spec.pyramid().row_lengths() == rows);
}

TEST_CASE("pattern JSON lists triangles top row first") {
    Representation rep(testcfg::p12());
    const json j = pattern_json(rep.basis().pattern(1));
    REQUIRE(j["columns"].size() == 2);
    CHECK(j["columns"][0]["k"] == 1);
    CHECK(j["columns"][0]["triangle"] ==
          json::array({json::array({"1", "0"}), json::array({"0"})}));
    CHECK(j["columns"][1]["triangle"] == json::array({json::array({"1/2"})}));
}

TEST_CASE("matrix JSON carries the single lowering entry of p=(1,2)") {
    Representation rep(testcfg::p12());
    const json j = matrix_poly_json("C", 1, rep.dim(), rep.C(1));
    CHECK(j["op"] == "C");
    CHECK(j["r"] == 1);
    CHECK(j["dim"] == 2);
    REQUIRE(j["coeffs"].size() == 1);
    CHECK(j["coeffs"][0]["power"] == 0);
    CHECK(j["coeffs"][0]["entries"] == json::array({json::array({1, 0, "1"})}));
}

TEST_CASE("report JSON shape") {
    Representation rep(testcfg::p11());
    const auto report = verify_polynomial_identities(rep, PolySuite::abc);
    const json j = report_json(report, rep.spec());
    CHECK(j["suite"] == "abc");
    CHECK(j["config"]["pyramid"] == json::array({1, 1}));
    CHECK(j.contains("elapsed_ms"));
    REQUIRE(!j["results"].empty());
    for (const auto& r : j["results"]) {
        CHECK(r.contains("id"));
        CHECK(r.contains("params"));
        CHECK((r["status"] == "pass" || r["status"] == "fail"));
    }
}

TEST_CASE("branch JSON sums the branch dimensions") {
    Representation rep(testcfg::p111());
    std::vector<BranchingDatum> data;
    for (const auto& mu : rep.branch_weights())
        data.push_back(rep.branching_vector(mu));
    const json j = branch_json(rep, data);
    CHECK(j["module_dim"] == 8);
    CHECK(j["branch_dim_sum"] == 8);
    REQUIRE(j["branches"].size() == 4);
    CHECK(j["branches"][0]["dim"] == 2);
    CHECK(j["branches"][0]["zeta"] == json::array({json::array({0, "1"})}));
}
