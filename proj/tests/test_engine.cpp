#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <vector>

#include "rankcap/engine.hpp"
#include "rankcap/netgen.hpp"
#include "rankcap/teleport.hpp"

using namespace rankcap;
using Catch::Approx;

namespace {

double l1_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
    return d;
}

double sum(const std::vector<double>& a) {
    return std::accumulate(a.begin(), a.end(), 0.0);
}

std::vector<WalkModel> all_models(double zeta) {
    return {WalkModel::traditional(zeta), WalkModel::lazy(zeta),
            WalkModel::generalized_lazy(zeta, 0.3),
            WalkModel::backstep_single(zeta, 0.3),
            WalkModel::backstep_multi(zeta, 0.25)};
}

}  // namespace

TEST_CASE("equivalent boring factors") {
    CHECK(WalkModel::traditional(0.1).equivalent_boring_factor() == Approx(0.1));
    CHECK(WalkModel::lazy(0.1).equivalent_boring_factor() == Approx(0.2 / 1.1));
    CHECK(WalkModel::generalized_lazy(0.1, 0.5).equivalent_boring_factor() ==
          Approx(0.2 / 1.1));
    CHECK(WalkModel::backstep_single(0.1, 0.3).equivalent_boring_factor() ==
          Approx(0.13));
    CHECK(WalkModel::backstep_multi(0.1, 0.25).equivalent_boring_factor() ==
          Approx(2.0 / 15));
}

TEST_CASE("model parameter validation") {
    CHECK_THROWS_AS(WalkModel::traditional(0.0).validate(), std::domain_error);
    CHECK_THROWS_AS(WalkModel::traditional(1.5).validate(), std::domain_error);
    CHECK_THROWS_AS(WalkModel::generalized_lazy(0.1, 1.0).validate(),
                    std::domain_error);
    CHECK_THROWS_AS(WalkModel::generalized_lazy(0.1, -0.1).validate(),
                    std::domain_error);
    // 1/(1+beta) must stay above zeta
    CHECK_THROWS_AS(WalkModel::backstep_single(0.6, 0.7).validate(),
                    std::domain_error);
    CHECK_NOTHROW(WalkModel::backstep_single(0.5, 0.9).validate());
    CHECK_THROWS_AS(WalkModel::backstep_multi(0.1, 0.5).validate(), std::domain_error);
    CHECK_THROWS_AS(WalkModel::backstep_multi(0.8, 0.3).validate(), std::domain_error);
    CHECK_NOTHROW(WalkModel::backstep_multi(0.7, 0.25).validate());
}

TEST_CASE("zeta = 1 pins every variant to the teleport vector") {
    const auto g = random_connected_graph(12, 10, 42);
    const auto s = uniform_global(12);
    for (SolvePath path : {SolvePath::transform, SolvePath::direct}) {
        SolveOptions opts;
        opts.path = path;
        for (const auto& model :
             {WalkModel::traditional(1.0), WalkModel::lazy(1.0),
              WalkModel::generalized_lazy(1.0, 0.4)}) {
            const auto r = rank(g, s, model, opts);
            CHECK(l1_diff(r.values, s.values()) <= 1e-12);
        }
    }
}

TEST_CASE("single-node graph ranks 1.0 under every model") {
    const auto g = UndirectedGraph::from_edges(1, {});
    const auto s = single_fan(1, 0);
    for (const auto& model : all_models(0.1)) {
        const auto r = rank(g, s, model);
        REQUIRE(r.values.size() == 1);
        CHECK(r.values[0] == Approx(1.0));
    }
}

TEST_CASE("generalized lazy interpolates lazy and traditional") {
    const auto g = random_connected_graph(25, 30, 7);
    const auto s = uniform_global(25);
    SolveOptions direct;
    direct.path = SolvePath::direct;
    const auto lazy = rank(g, s, WalkModel::lazy(0.2), direct);
    const auto half = rank(g, s, WalkModel::generalized_lazy(0.2, 0.5), direct);
    CHECK(l1_diff(lazy.values, half.values) <= 1e-12);
    const auto trad = rank(g, s, WalkModel::traditional(0.2), direct);
    const auto zero = rank(g, s, WalkModel::generalized_lazy(0.2, 0.0), direct);
    CHECK(l1_diff(trad.values, zero.values) <= 1e-12);
}

TEST_CASE("direct and transform paths agree for every variant") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        const NodeId n = 15 + static_cast<NodeId>(seed * 11);
        const auto g = random_connected_graph(n, n, 100 + seed);
        const auto fan = random_fan_set(n, 300 + seed);
        const auto s = hub_set_fan(g, fan);
        for (const auto& model : all_models(0.15)) {
            SolveOptions t, d;
            t.path = SolvePath::transform;
            d.path = SolvePath::direct;
            const auto rt = rank(g, s, model, t);
            const auto rd = rank(g, s, model, d);
            INFO(to_string(model.kind));
            CHECK(l1_diff(rt.values, rd.values) <= 1e-10);
            CHECK(rt.path == SolvePath::transform);
            CHECK(rd.path == SolvePath::direct);
        }
    }
}

TEST_CASE("rank conserves total mass") {
    const auto g = random_connected_graph(40, 60, 5);
    const auto s = single_fan(40, 3);
    for (const auto& model : all_models(0.08)) {
        SolveOptions d;
        d.path = SolvePath::direct;
        CHECK(sum(rank(g, s, model, d).values) == Approx(1.0).margin(1e-10));
    }
}

TEST_CASE("returned residual meets the tolerance") {
    const auto g = random_connected_graph(30, 20, 9);
    const auto s = uniform_global(30);
    const auto r = rank(g, s, WalkModel::traditional(0.1));
    CHECK(r.residual <= 1e-12);
    CHECK(r.iterations >= 1);
    // the fixed-point residual of the returned vector is itself below tol
    const auto P = TransitionOperator::from_undirected(g);
    std::vector<double> push;
    P.apply(r.values, push);
    double resid = 0.0;
    for (std::size_t v = 0; v < r.values.size(); ++v)
        resid += std::abs(r.values[v] - 0.9 * push[v] - 0.1 * s[v]);
    CHECK(resid <= 1e-12);
}

TEST_CASE("non-convergence carries the residual") {
    const auto g = random_connected_graph(30, 20, 9);
    const auto s = uniform_global(30);
    SolveOptions tight;
    tight.max_iterations = 2;
    try {
        rank(g, s, WalkModel::traditional(0.01), tight);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.iterations == 2);
        CHECK(e.residual > 0.0);
    }
}

TEST_CASE("dangling repair") {
    // 0 -> 1 -> 2, node 2 dangling
    std::vector<std::vector<NodeId>> adj{{1}, {2}, {}};
    const auto fixed = repair_dangling(adj);
    CHECK(fixed[2] == std::vector<NodeId>{0, 1});
    CHECK(fixed[0] == std::vector<NodeId>{1});
    // single node stays degenerate and the operator keeps its mass
    const auto single = repair_dangling({{}});
    CHECK(single[0].empty());
    const auto P = TransitionOperator::from_directed(single);
    std::vector<double> y;
    P.apply({1.0}, y);
    CHECK(y[0] == Approx(1.0));
    // an unrepaired dangling node is rejected
    CHECK_THROWS_AS(TransitionOperator::from_directed(adj), std::invalid_argument);
}

TEST_CASE("zone tree ranks, zone symmetry, and a frozen reference") {
    const auto net = zone_graph(zone_spec(1, ZoneVariant::tree));
    REQUIRE(net.graph.node_count() == 16);
    const auto s = teleport_for(net.graph, net.fan, FanKind::uniform);
    const auto r = rank(net.graph, s, WalkModel::traditional(0.1));

    // all nodes within a zone share one value
    for (NodeId v = 0; v < 6; ++v)
        CHECK(r.values[v] == Approx(r.values[net.rep_a]).margin(1e-12));
    for (NodeId v = 10; v < 16; ++v)
        CHECK(r.values[v] == Approx(r.values[net.rep_e]).margin(1e-12));

    // closed-form solution of the five-zone system
    CHECK(r.values[net.rep_a] == Approx(0.012479437654969869).epsilon(1e-9));
    CHECK(r.values[net.rep_b] == Approx(0.055464167355421638).epsilon(1e-9));
    CHECK(r.values[net.rep_c] == Approx(0.072565618956676639).epsilon(1e-9));
    CHECK(r.values[net.rep_d] == Approx(0.37027467280795373).epsilon(1e-9));
    CHECK(r.values[net.rep_e] == Approx(0.061892457932451191).epsilon(1e-9));
}
