#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include <sstream>

#include "rankcap/experiment.hpp"

using namespace rankcap;
using Catch::Approx;

TEST_CASE("table 1: dual-computed base rows") {
    const auto rows = run_table(1);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].mode == "uniform");
    CHECK(rows[1].mode == "preferential");
    for (const auto& r : rows) {
        CHECK(r.solver == "iterate");
        CHECK(r.dual_checked);
        CHECK(r.dual_max_rel <= 1e-9);
        CHECK(r.compliant);
    }
    CHECK(rows[0].r_d == Approx(0.37027467280795373).epsilon(1e-9));
    CHECK(rows[0].outflow == Approx(0.025837057959733914).epsilon(1e-9));
    CHECK(rows[0].limit == Approx(0.9 / 7).epsilon(1e-12));
    CHECK(rows[1].r_d == Approx(0.38629617307368247).epsilon(1e-9));
    CHECK(rows[1].limit == Approx(0.9 / 13).epsilon(1e-12));
}

TEST_CASE("table 2: complex base rows") {
    const auto rows = run_table(2);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].r_e == Approx(0.11549621512594473).epsilon(1e-9));
    CHECK(rows[1].r_e == Approx(0.11372237183709928).epsilon(1e-9));
    CHECK(rows[1].limit == Approx(0.9 / 31).epsilon(1e-12));
}

TEST_CASE("table 3: explicit factors are cross-checked, large go zone-only") {
    ExperimentConfig cfg;
    cfg.max_explicit_factor = 10;
    // The iterate-vs-zone gap is set by the solve tolerance (an L1 change
    // below tol leaves the iterate within tol*(1-zeta)/zeta of the fixed
    // point), so pin it rather than inherit the default.
    cfg.solve.tolerance = 1e-13;
    const auto rows = run_table(3, cfg);
    REQUIRE(rows.size() == 5);
    CHECK(rows[0].label == "F=10");
    CHECK(rows[0].solver == "iterate");
    CHECK(rows[0].dual_checked);
    CHECK(rows[0].dual_max_rel <= 1e-8);
    CHECK(rows[1].solver == "zone");
    CHECK_FALSE(rows[1].dual_checked);
    CHECK(rows[0].r_d == Approx(0.024386161053695298).epsilon(1e-8));
    CHECK(rows[1].r_d == Approx(0.0024941304563809844).epsilon(1e-12));
    CHECK(rows[4].factor == 100000);
    for (const auto& r : rows) CHECK(r.compliant);
}

TEST_CASE("table 5: densified rows stay under a tightening limit") {
    const auto rows = run_table(5);
    REQUIRE(rows.size() == 6);
    CHECK(rows[0].e_degree == 5000000);
    CHECK(rows[0].outflow == Approx(2.9499961933348645e-14).epsilon(1e-12));
    CHECK(rows[0].limit == Approx(2.9999995e-14).epsilon(1e-12));
    for (const auto& r : rows) {
        CHECK(r.solver == "zone");
        CHECK(r.compliant);
    }
    // rel_left shrinks as the e-zone densifies toward the limit
    for (std::size_t j = 1; j < rows.size(); ++j)
        CHECK(rows[j].rel_left < rows[j - 1].rel_left);
}

TEST_CASE("tables 6 and 7: constant limits across the structure sweep") {
    const auto pref = run_table(6);
    REQUIRE(pref.size() == 9);
    for (const auto& r : pref) {
        CHECK(r.limit == Approx(0.9 / 524289).epsilon(1e-12));
        CHECK(r.mode == "preferential");
        CHECK(r.compliant);
    }
    const auto uni = run_table(7);
    REQUIRE(uni.size() == 8);
    for (const auto& r : uni) {
        CHECK(r.limit == Approx(0.9 / 524288).epsilon(1e-12));
        CHECK(r.compliant);
    }
    CHECK(all_compliant(pref));
    CHECK(all_compliant(uni));
}

TEST_CASE("invalid table ids are rejected") {
    CHECK_THROWS_AS(run_table(0), std::invalid_argument);
    CHECK_THROWS_AS(run_table(8), std::invalid_argument);
    CHECK_THROWS_AS(run_table(-3), std::invalid_argument);
}

TEST_CASE("csv emission") {
    const auto rows = run_table(1);
    std::stringstream out;
    emit_csv(rows, out);
    std::string line;
    std::getline(out, line);
    CHECK(line ==
          "table,label,mode,solver,factor,e_degree,e_count,"
          "r_a,r_b,r_c,r_d,r_e,outflow,limit,rel_left,"
          "dual_checked,dual_max_rel,compliant");
    std::size_t data_lines = 0;
    while (std::getline(out, line))
        if (!line.empty()) ++data_lines;
    CHECK(data_lines == rows.size());
}

TEST_CASE("json emission is valid and carries 12 significant digits") {
    const auto rows = run_table(5);
    std::stringstream out;
    emit_json(rows, out);
    const auto parsed = nlohmann::json::parse(out.str());
    REQUIRE(parsed.is_array());
    REQUIRE(parsed.size() == rows.size());
    CHECK(parsed[0]["mode"] == "uniform");
    CHECK(parsed[0]["outflow"].get<double>() ==
          Approx(rows[0].outflow).epsilon(1e-11));
    CHECK(parsed[0]["compliant"].get<bool>());
}

TEST_CASE("emission is deterministic and thread-count independent") {
    ExperimentConfig one;
    one.threads = 1;
    ExperimentConfig four;
    four.threads = 4;
    std::stringstream a, b;
    emit_csv(run_table(6, one), a);
    emit_csv(run_table(6, four), b);
    CHECK(a.str() == b.str());
}
