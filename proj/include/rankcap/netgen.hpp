#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "rankcap/graph.hpp"

namespace rankcap {

namespace detail {

// Bounded uniform draw and Fisher-Yates shuffle on top of mt19937_64,
// hand-rolled so generated networks are byte-identical across standard
// libraries, not just across runs.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = bound * (UINT64_MAX / bound);
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <typename T>
void shuffle(std::vector<T>& xs, std::mt19937_64& rng) {
    for (std::size_t i = xs.size(); i > 1; --i)
        std::swap(xs[i - 1], xs[bounded(rng, i)]);
}

}  // namespace detail

/// k-regular circulant graph on n nodes: offsets 1..k/2 for even k;
/// odd k additionally pairs antipodal nodes and so needs even n.
/// Throws when k >= n or k*n is odd (no such regular graph exists).
inline std::vector<std::pair<NodeId, NodeId>> circulant_regular(std::size_t n,
                                                                std::size_t k) {
    if (k >= n)
        throw std::invalid_argument("regular degree must be below node count");
    if (k % 2 == 1 && n % 2 == 1)
        throw std::invalid_argument("degree and node count cannot both be odd");
    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(n * k / 2);
    for (std::size_t off = 1; off <= k / 2; ++off)
        for (std::size_t j = 0; j < n; ++j)
            edges.emplace_back(static_cast<NodeId>(j),
                               static_cast<NodeId>((j + off) % n));
    if (k % 2 == 1)
        for (std::size_t j = 0; j < n / 2; ++j)
            edges.emplace_back(static_cast<NodeId>(j),
                               static_cast<NodeId>(j + n / 2));
    return edges;
}

/// The five-zone benchmark family. Zone a: leaves, one edge each into a hub.
/// Zone b: hubs, each owning a_count/b_count leaves plus an edge to c.
/// Zone c: single collector node tied to every hub and to d. Zone d: single
/// gateway tied to c and to every e node. Zone e: a regular cluster whose
/// nodes each have e_total_degree edges (one to d, the rest internal).
struct ZoneSpec {
    std::size_t a_count = 6;
    std::size_t b_count = 2;
    std::size_t e_count = 6;
    std::size_t e_total_degree = 1;

    std::size_t leaves_per_hub() const { return a_count / b_count; }
    std::size_t internal_degree() const { return e_total_degree - 1; }

    /// Arithmetic sanity. Whether the e-zone regular graph is realizable
    /// is checked only by zone_graph: the closed-form solver needs just the
    /// degree numbers, and several benchmark structures are solvable without
    /// being materializable.
    void validate() const {
        if (a_count == 0 || b_count == 0 || e_count == 0)
            throw std::invalid_argument("zone counts must be positive");
        if (a_count % b_count != 0)
            throw std::invalid_argument("a_count must be a multiple of b_count");
        if (e_total_degree == 0)
            throw std::invalid_argument("e nodes need the edge to d");
        if (internal_degree() >= e_count)
            throw std::invalid_argument("e-zone internal degree too large");
    }
};

enum class ZoneVariant { tree, complex };

/// Scaled family: zones (6F, 2F, 1, 1, 6F); tree keeps the e-zone edgeless
/// internally (degree 1), complex makes it (4F-1)-regular (degree 4F).
inline ZoneSpec zone_spec(std::size_t factor, ZoneVariant variant) {
    if (factor == 0) throw std::invalid_argument("factor must be positive");
    ZoneSpec s;
    s.a_count = 6 * factor;
    s.b_count = 2 * factor;
    s.e_count = 6 * factor;
    s.e_total_degree = variant == ZoneVariant::tree ? 1 : 4 * factor;
    s.validate();
    return s;
}

/// Structure-sweep family: fixed 60000-leaf / 60000-hub periphery with a
/// configurable e-zone.
inline ZoneSpec table67_zone_spec(std::size_t e_degree, std::size_t e_count) {
    ZoneSpec s;
    s.a_count = 60000;
    s.b_count = 60000;
    s.e_count = e_count;
    s.e_total_degree = e_degree;
    s.validate();
    return s;
}

/// A materialized zone network: the graph, the canonical fan region
/// U = {d} ∪ e, and one representative node per zone (all nodes within a
/// zone are equivalent under the graph's symmetry).
struct ZoneNetwork {
    UndirectedGraph graph;
    FanSet fan;
    ZoneSpec spec;
    NodeId rep_a, rep_b, rep_c, rep_d, rep_e;
};

/// Build the explicit graph. Node ids in zone order a, b, c, d, e.
/// Throws when the e-zone regular graph is not realizable
/// (internal_degree * e_count odd).
inline ZoneNetwork zone_graph(const ZoneSpec& spec) {
    spec.validate();
    const std::size_t k = spec.internal_degree();
    if (k % 2 == 1 && spec.e_count % 2 == 1)
        throw std::invalid_argument(
            "e-zone not realizable: internal degree and count both odd");
    const NodeId a0 = 0;
    const NodeId b0 = static_cast<NodeId>(spec.a_count);
    const NodeId c = static_cast<NodeId>(spec.a_count + spec.b_count);
    const NodeId d = c + 1;
    const NodeId e0 = d + 1;
    const NodeId n = static_cast<NodeId>(e0 + spec.e_count);

    std::vector<std::pair<NodeId, NodeId>> edges;
    edges.reserve(spec.a_count + spec.b_count + 1 + spec.e_count +
                  spec.e_count * k / 2);
    const std::size_t leaves = spec.leaves_per_hub();
    for (std::size_t i = 0; i < spec.a_count; ++i)
        edges.emplace_back(a0 + static_cast<NodeId>(i),
                           b0 + static_cast<NodeId>(i / leaves));
    for (std::size_t h = 0; h < spec.b_count; ++h)
        edges.emplace_back(b0 + static_cast<NodeId>(h), c);
    edges.emplace_back(c, d);
    for (std::size_t j = 0; j < spec.e_count; ++j)
        edges.emplace_back(d, e0 + static_cast<NodeId>(j));
    if (k > 0)
        for (auto [u, v] : circulant_regular(spec.e_count, k))
            edges.emplace_back(e0 + u, e0 + v);

    ZoneNetwork net{UndirectedGraph::from_edges(n, edges), FanSet(), spec,
                    a0, b0, c, d, e0};
    std::vector<NodeId> fan_ids{d};
    for (std::size_t j = 0; j < spec.e_count; ++j)
        fan_ids.push_back(e0 + static_cast<NodeId>(j));
    net.fan = FanSet::from_ids(std::move(fan_ids), n);
    return net;
}

/// Random connected graph: a random spanning tree plus `extra_edges`
/// distinct additional edges. Deterministic for a fixed seed.
inline UndirectedGraph random_connected_graph(NodeId n, std::size_t extra_edges,
                                              std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("need at least one node");
    const std::size_t max_extra =
        static_cast<std::size_t>(n) * (n - 1) / 2 - (n == 0 ? 0 : n - 1);
    if (extra_edges > max_extra)
        throw std::invalid_argument("too many extra edges for a simple graph");
    std::mt19937_64 rng(seed);
    std::vector<NodeId> order(n);
    for (NodeId v = 0; v < n; ++v) order[v] = v;
    detail::shuffle(order, rng);

    std::vector<std::pair<NodeId, NodeId>> edges;
    std::unordered_set<std::uint64_t> present;
    auto key = [n](NodeId u, NodeId v) {
        if (u > v) std::swap(u, v);
        return static_cast<std::uint64_t>(u) * n + v;
    };
    for (NodeId i = 1; i < n; ++i) {
        NodeId u = order[i];
        NodeId v = order[detail::bounded(rng, i)];
        edges.emplace_back(u, v);
        present.insert(key(u, v));
    }
    while (extra_edges > 0) {
        NodeId u = static_cast<NodeId>(detail::bounded(rng, n));
        NodeId v = static_cast<NodeId>(detail::bounded(rng, n));
        if (u == v || present.count(key(u, v))) continue;
        edges.emplace_back(u, v);
        present.insert(key(u, v));
        --extra_edges;
    }
    return UndirectedGraph::from_edges(n, edges);
}

/// Random connected bipartite graph with exactly `edge_count` edges
/// (spanning tree across the two sides plus random extras).
inline BipartiteGraph random_bipartite(NodeId client_count, NodeId item_count,
                                       std::size_t edge_count, std::uint64_t seed) {
    const std::size_t tree_edges =
        static_cast<std::size_t>(client_count) + item_count - 1;
    if (edge_count < tree_edges)
        throw std::invalid_argument("too few edges to connect both sides");
    if (edge_count > static_cast<std::size_t>(client_count) * item_count)
        throw std::invalid_argument("too many edges for a simple bipartite graph");
    std::mt19937_64 rng(seed);
    std::vector<NodeId> cperm(client_count), iperm(item_count);
    for (NodeId v = 0; v < client_count; ++v) cperm[v] = v;
    for (NodeId v = 0; v < item_count; ++v) iperm[v] = v;
    detail::shuffle(cperm, rng);
    detail::shuffle(iperm, rng);

    std::vector<std::pair<NodeId, NodeId>> edges;
    std::unordered_set<std::uint64_t> present;
    auto key = [item_count](NodeId c, NodeId i) {
        return static_cast<std::uint64_t>(c) * item_count + i;
    };
    auto add = [&](NodeId c, NodeId i) {
        edges.emplace_back(c, i);
        present.insert(key(c, i));
    };
    // Spanning tree: seed with one client-item edge, then attach the
    // remaining nodes (in a shuffled merged order) to the attached side.
    std::vector<NodeId> attached_c{cperm[0]}, attached_i{iperm[0]};
    add(cperm[0], iperm[0]);
    std::vector<std::pair<bool, NodeId>> rest;  // (is_item, id)
    for (NodeId j = 1; j < client_count; ++j) rest.emplace_back(false, cperm[j]);
    for (NodeId j = 1; j < item_count; ++j) rest.emplace_back(true, iperm[j]);
    detail::shuffle(rest, rng);
    for (auto [is_item, v] : rest) {
        if (is_item) {
            NodeId c = attached_c[detail::bounded(rng, attached_c.size())];
            add(c, v);
            attached_i.push_back(v);
        } else {
            NodeId i = attached_i[detail::bounded(rng, attached_i.size())];
            add(v, i);
            attached_c.push_back(v);
        }
    }
    while (edges.size() < edge_count) {
        NodeId c = static_cast<NodeId>(detail::bounded(rng, client_count));
        NodeId i = static_cast<NodeId>(detail::bounded(rng, item_count));
        if (present.count(key(c, i))) continue;
        add(c, i);
    }
    return BipartiteGraph::from_edges(client_count, item_count, edges);
}

/// Random non-empty proper subset of the nodes (for property suites).
inline FanSet random_fan_set(NodeId node_count, std::uint64_t seed) {
    if (node_count < 2)
        throw std::invalid_argument("need at least two nodes for a proper subset");
    std::mt19937_64 rng(seed);
    const std::size_t size = 1 + detail::bounded(rng, node_count - 1);
    std::vector<NodeId> pool(node_count);
    for (NodeId v = 0; v < node_count; ++v) pool[v] = v;
    // partial Fisher-Yates: the first `size` entries are the sample
    for (std::size_t i = 0; i < size; ++i) {
        std::size_t j = i + detail::bounded(rng, node_count - i);
        std::swap(pool[i], pool[j]);
    }
    pool.resize(size);
    return FanSet::from_ids(std::move(pool), node_count);
}

}  // namespace rankcap
