#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "rankcap/bounds.hpp"
#include "rankcap/netgen.hpp"
#include "rankcap/oracle.hpp"

using namespace rankcap;
using Catch::Approx;

TEST_CASE("outside mass of the zone tree region") {
    const auto net = zone_graph(zone_spec(1, ZoneVariant::tree));
    const auto s = teleport_for(net.graph, net.fan, FanKind::uniform);
    const auto r = rank(net.graph, s, WalkModel::traditional(0.1));
    CHECK(outside_mass(r.values, net.fan) == Approx(0.2583705795973391).epsilon(1e-9));
}

TEST_CASE("bound formulas on the zone networks") {
    const auto tree = zone_graph(zone_spec(1, ZoneVariant::tree));
    CHECK(preferential_bound(tree.graph, tree.fan, 0.1) == Approx(0.9 / 13));
    CHECK(uniform_bound(tree.graph, tree.fan, 0.1) == Approx(0.9 / 7));
    const auto complex = zone_graph(zone_spec(1, ZoneVariant::complex));
    CHECK(preferential_bound(complex.graph, complex.fan, 0.1) == Approx(0.9 / 31));
    CHECK(uniform_bound(complex.graph, complex.fan, 0.1) == Approx(0.9 / 28));
}

TEST_CASE("general bound reduces to the uniform and preferential forms") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto g = random_connected_graph(20, 25, 500 + seed);
        const auto set = random_fan_set(20, 600 + seed);
        const double zeta = 0.25;
        CHECK(general_bound(g, set, zeta, uniform_set_fan(20, set)) ==
              Approx(uniform_bound(g, set, zeta)).epsilon(1e-12));
        CHECK(general_bound(g, set, zeta, hub_set_fan(g, set)) ==
              Approx(preferential_bound(g, set, zeta)).epsilon(1e-12));
    }
}

TEST_CASE("general bound with a lopsided custom fan") {
    const auto net = zone_graph(zone_spec(1, ZoneVariant::tree));
    std::vector<std::pair<NodeId, double>> w{{net.rep_d, 0.9}};
    for (NodeId j = 0; j < 6; ++j)
        w.emplace_back(net.rep_e + j, 0.1 / 6);
    const auto s = custom_fan(net.graph.node_count(), w);
    CHECK(general_bound(net.graph, net.fan, 0.1, s) ==
          Approx(8.1 / 70).epsilon(1e-12));
}

TEST_CASE("general bound rejects support outside the set") {
    const auto net = zone_graph(zone_spec(1, ZoneVariant::tree));
    const auto s = uniform_global(net.graph.node_count());
    CHECK_THROWS_AS(general_bound(net.graph, net.fan, 0.1, s),
                    std::invalid_argument);
}

TEST_CASE("bound preconditions") {
    const auto g = UndirectedGraph::from_edges(4, {{0, 1}, {2, 3}});
    const auto set = FanSet::from_ids({0, 1}, 4);
    CHECK_THROWS_AS(preferential_bound(g, set, 0.1), std::invalid_argument);
    const auto path = UndirectedGraph::from_edges(3, {{0, 1}, {1, 2}});
    const auto whole = FanSet::from_ids({0, 1, 2}, 3);
    CHECK_THROWS_AS(uniform_bound(path, whole, 0.1), std::invalid_argument);
}

TEST_CASE("variant bounds shrink by the model factor") {
    const auto net = zone_graph(zone_spec(1, ZoneVariant::tree));
    const auto& g = net.graph;
    const auto& U = net.fan;
    CHECK(model_bound(g, U, WalkModel::traditional(0.1), FanKind::preferential) ==
          Approx(0.9 / 13));
    CHECK(model_bound(g, U, WalkModel::lazy(0.1), FanKind::preferential) ==
          Approx(0.45 / 13));
    CHECK(model_bound(g, U, WalkModel::generalized_lazy(0.1, 0.5),
                      FanKind::preferential) == Approx(0.45 / 13));
    // backstep transfers to the equivalent boring factor
    CHECK(model_bound(g, U, WalkModel::backstep_single(0.1, 0.3),
                      FanKind::preferential) == Approx(0.87 / 13));
    CHECK(model_bound(g, U, WalkModel::backstep_multi(0.1, 0.25),
                      FanKind::uniform) == Approx((1.0 - 2.0 / 15) / 7));
}

TEST_CASE("preferential bound never exceeds the uniform bound") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const NodeId n = 10 + static_cast<NodeId>(seed % 40);
        const auto g = random_connected_graph(n, n / 2, 700 + seed);
        const auto set = random_fan_set(n, 800 + seed);
        CHECK(preferential_bound(g, set, 0.1) <=
              uniform_bound(g, set, 0.1) + 1e-15);
    }
}

TEST_CASE("tightness reports: compliance across variants and fans") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const NodeId n = 12 + static_cast<NodeId>(seed * 5);
        const auto g = random_connected_graph(n, n, 900 + seed);
        const auto set = random_fan_set(n, 950 + seed);
        for (const auto& model :
             {WalkModel::traditional(0.1), WalkModel::lazy(0.1),
              WalkModel::generalized_lazy(0.1, 0.8),
              WalkModel::backstep_single(0.1, 0.3),
              WalkModel::backstep_multi(0.1, 0.25)}) {
            for (FanKind kind : {FanKind::uniform, FanKind::preferential}) {
                const auto rep = tightness_report(g, set, model, kind);
                INFO(to_string(model.kind) << " " << to_string(kind) << " seed "
                                           << seed);
                CHECK(rep.compliant);
                CHECK(rep.bound > 0.0);
                REQUIRE(rep.rel_left.has_value());
                CHECK(*rep.rel_left >= -1e-12);
                CHECK(rep.outflow == Approx(rep.outside * rep.outflow_zeta));
                CHECK(rep.bound ==
                      Approx(rep.per_link_cap * static_cast<double>(rep.boundary)));
            }
        }
    }
}

TEST_CASE("tightness report with a custom fan") {
    const auto net = zone_graph(zone_spec(1, ZoneVariant::tree));
    std::vector<std::pair<NodeId, double>> w{{net.rep_d, 0.9}};
    for (NodeId j = 0; j < 6; ++j) w.emplace_back(net.rep_e + j, 0.1 / 6);
    const auto s = custom_fan(net.graph.node_count(), w);
    const auto rep = tightness_report(net.graph, net.fan,
                                      WalkModel::traditional(0.1), FanKind::custom, &s);
    CHECK(rep.bound == Approx(8.1 / 70).epsilon(1e-12));
    CHECK(rep.compliant);
    CHECK_THROWS_AS(tightness_report(net.graph, net.fan, WalkModel::traditional(0.1),
                                     FanKind::custom),
                    std::invalid_argument);
}

TEST_CASE("bipartite channel cap") {
    std::vector<std::pair<NodeId, NodeId>> edges;
    for (NodeId c = 0; c < 3; ++c)
        for (NodeId i = 0; i < 3; ++i) edges.emplace_back(c, i);
    const auto g = BipartiteGraph::from_edges(3, 3, edges);
    const auto uk = FanSet::from_ids({0, 1}, 3);
    const auto up = FanSet::from_ids({0, 1}, 3);
    CHECK(bipartite_channel_cap(g, uk, up) == Approx(1.0 / 6));
    CHECK(bipartite_channel_cap(g, FanSet::from_ids({0}, 3), up) == Approx(1.0 / 3));
}

TEST_CASE("cross boundaries count edges into the complements") {
    // c0-i0, c0-i1, c1-i1 (the asymmetric wedge)
    const auto g = BipartiteGraph::from_edges(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    const auto uk = FanSet::from_ids({0}, 2);
    const auto up = FanSet::from_ids({0}, 2);
    CHECK(item_cross_boundary(g, up, uk) == 0);    // i0's only client is c0
    CHECK(client_cross_boundary(g, uk, up) == 1);  // c0-i1 leaves U^p
}

TEST_CASE("a pinned side has zero bound and zero outflow") {
    const auto g = random_bipartite(5, 6, 18, 31);
    const auto uk = FanSet::from_ids({0, 1}, 5);
    const auto up = FanSet::from_ids({2, 3}, 6);
    const auto rep =
        bipartite_tightness_report(g, uk, up, {0.3, 1.0}, FanKind::uniform);
    // zeta_pk = 1 pins the client side to its fan: nothing leaks
    CHECK(rep.bound_k == 0.0);
    CHECK(rep.outside_k == Approx(0.0).margin(1e-14));
    CHECK_FALSE(rep.rel_left_k.has_value());
    CHECK_FALSE(rep.violated_k);
}

TEST_CASE("displayed per-side bounds can be violated and are flagged") {
    // the asymmetric wedge again: the k-side displayed bound is zero while
    // rank mass still reaches client c1
    const auto g = BipartiteGraph::from_edges(2, 2, {{0, 0}, {0, 1}, {1, 1}});
    const auto uk = FanSet::from_ids({0}, 2);
    const auto up = FanSet::from_ids({0}, 2);
    const auto rep =
        bipartite_tightness_report(g, uk, up, {0.2, 0.2}, FanKind::uniform);
    CHECK(rep.bound_k == 0.0);
    CHECK(rep.outside_k > 0.0);
    CHECK(rep.violated_k);
    CHECK(rep.violated);
    // the summed two-sided form still holds here
    CHECK_FALSE(rep.combined_violated);
}

TEST_CASE("bipartite fan sets must be proper subsets") {
    const auto g = random_bipartite(4, 4, 12, 77);
    const auto all = FanSet::from_ids({0, 1, 2, 3}, 4);
    const auto some = FanSet::from_ids({0}, 4);
    CHECK_THROWS_AS(bipartite_bounds(g, all, some, {0.1, 0.1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        bipartite_tightness_report(g, some, all, {0.1, 0.1}, FanKind::uniform),
        std::invalid_argument);
}
