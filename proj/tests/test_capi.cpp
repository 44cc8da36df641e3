// Links only the shared library.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <quotlat/quotlat.h>

#include <string>

#include "json.hpp"

using json = nlohmann::json;

namespace {

json take(char* s) {
    REQUIRE(s != nullptr);
    json j = json::parse(s);
    ql_string_free(s);
    return j;
}

}  // namespace

TEST_CASE("lattice handles") {
    ql_lattice* l = nullptr;
    REQUIRE(ql_lattice_parse("U+U(3)^2+A2(-1)^2", &l) == QL_OK);
    size_t rank = 0;
    CHECK(ql_lattice_rank(l, &rank) == QL_OK);
    CHECK(rank == 10);
    char* out = nullptr;
    REQUIRE(ql_lattice_invariants_json(l, &out) == QL_OK);
    json inv = take(out);
    CHECK(inv["det"] == -729);
    CHECK(inv["signature"] == json::array({3, 7}));

    ql_lattice* q = nullptr;
    REQUIRE(ql_lattice_quotient_middle(l, 3, &q) == QL_OK);
    REQUIRE(ql_lattice_invariants_json(q, &out) == QL_OK);
    CHECK(take(out)["det"] == -81);
    ql_lattice_free(q);
    ql_lattice_free(l);

    ql_lattice* g = nullptr;
    REQUIRE(ql_lattice_from_gram("[[2, \"1\"], [1, 2]]", &g) == QL_OK);
    REQUIRE(ql_lattice_gram_json(g, &out) == QL_OK);
    CHECK(take(out) == json::parse("[[2,1],[1,2]]"));
    ql_lattice_free(g);
}

TEST_CASE("errors carry a status and a message") {
    ql_lattice* l = nullptr;
    CHECK(ql_lattice_parse("U+", &l) == QL_PARSE_ERROR);
    CHECK(l == nullptr);
    CHECK(std::string(ql_last_error()).size() > 0);
    CHECK(ql_lattice_from_gram("[[1,2],[3,4]]", &l) != QL_OK);
    CHECK(ql_lattice_parse(nullptr, &l) == QL_INVALID_ARGUMENT);
    CHECK(std::string(ql_status_name(QL_SCHEMA_ERROR)) == "SchemaError");
    CHECK(std::string(ql_status_name(QL_OK)) == "Ok");
    ql_scenario* s = nullptr;
    CHECK(ql_scenario_parse("{\"name\": \"x\", \"dimension\": 2}", &s) == QL_SCHEMA_ERROR);
    CHECK(std::string(ql_last_error()).find("$.prime") != std::string::npos);
    CHECK(ql_scenario_load("no-such-scenario", &s) == QL_NOT_FOUND);
    char* out = nullptr;
    CHECK(ql_weight2d_json(4, 1, &out) == QL_INVALID_ARGUMENT);
    CHECK(ql_lattice_rank(nullptr, nullptr) == QL_INVALID_ARGUMENT);
    ql_lattice_free(nullptr);
    ql_scenario_free(nullptr);
}

TEST_CASE("matrices and local computations") {
    char* out = nullptr;
    REQUIRE(ql_snf_json("[[2,4],[6,8]]", &out) == QL_OK);
    CHECK(take(out)["diag"] == json::array({2, 4}));
    REQUIRE(ql_jordan_json("[[0,1],[1,0]]", 2, "[[2,1],[1,2]]", &out) == QL_OK);
    json j = take(out);
    CHECK(j["blocks"]["2"] == 1);
    CHECK(j["a_invariant"] == 1);
    REQUIRE(ql_weight2d_json(5, 2, &out) == QL_OK);
    j = take(out);
    CHECK(j["hj"] == json::array({3, 2}));
    CHECK(j["weight"] == 1);
    long k[] = {1, 1, 4, 4};
    REQUIRE(ql_weight_json(5, k, 4, &out) == QL_OK);
    CHECK(take(out)["weight"] == 1);
    long unknown[] = {1, 2, 2, 4};
    REQUIRE(ql_weight_json(5, unknown, 4, &out) == QL_OK);
    CHECK(take(out)["known"] == false);
}

TEST_CASE("Hilbert square") {
    char* out = nullptr;
    json e1 = json::array(), dl = json::array();
    for (int i = 0; i < 23; ++i) {
        e1.push_back(i == 0 ? 1 : 0);
        dl.push_back(i == 22 ? 1 : 0);
    }
    REQUIRE(ql_hilb2_json(nullptr, dl.dump().c_str(), e1.dump().c_str(), &out) == QL_OK);
    json j = take(out);
    CHECK(j["bb"]["xx"] == -2);
    CHECK(j["products"]["x^4"] == 12);
    CHECK(ql_hilb2_json(nullptr, "[1,0]", "[0,1]", &out) == QL_INVALID_ARGUMENT);
    REQUIRE(ql_hilb2_s_lattice_json(nullptr, &out) == QL_OK);
    j = take(out);
    CHECK(j["gram"][6][6] == 1);
    CHECK(j["det"].get<long>() % 5 != 0);
}

TEST_CASE("scenarios and catalog") {
    ql_scenario* s = nullptr;
    REQUIRE(ql_scenario_load("k3-sympl-7", &s) == QL_OK);
    char* out = nullptr;
    REQUIRE(ql_scenario_name(s, &out) == QL_OK);
    CHECK(std::string(out) == "Y7");
    ql_string_free(out);
    ql_verdict v = QL_UNKNOWN;
    REQUIRE(ql_normality_json(s, nullptr, &out, &v) == QL_OK);
    CHECK(v == QL_NORMAL);
    CHECK(take(out)["criterion"] == "simple:l1=1");
    // a named checker raises its hypothesis failure instead of falling back
    CHECK(ql_normality_json(s, "th3", &out, &v) == QL_NOT_ORDER3);
    CHECK(ql_normality_json(s, "bogus", &out, &v) == QL_INVALID_ARGUMENT);
    REQUIRE(ql_quotient_json(s, &out) == QL_OK);
    CHECK(take(out)["quotient"]["det"] == -7);
    int pass = 0;
    REQUIRE(ql_scenario_verify(s, QL_FORMAT_JSON, &out, &pass) == QL_OK);
    CHECK(pass == 1);
    ql_string_free(out);
    ql_scenario_free(s);

    REQUIRE(ql_scenario_load("M5", &s) == QL_OK);
    REQUIRE(ql_quotient_json(s, &out) == QL_OK);
    json q = take(out);
    CHECK(q["fujiki"] == 15);
    CHECK(q["gram"][6][6] == -10);
    ql_scenario_free(s);

    REQUIRE(ql_verify_catalog("m11", QL_FORMAT_JSON, 2, &out, &pass) == QL_OK);
    json c = take(out);
    CHECK(pass == 1);
    CHECK(c["total"] == 2);
    for (const auto& row : c["scenarios"]) CHECK(row["fujiki"] == "33");
    CHECK(ql_verify_catalog("nothing-matches", QL_FORMAT_TABLE, 0, &out, &pass) == QL_NOT_FOUND);
    REQUIRE(ql_catalog_dir(&out) == QL_OK);
    CHECK(std::string(out).size() > 0);
    ql_string_free(out);
}
