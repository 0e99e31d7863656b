#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rankcap {

using NodeId = std::uint32_t;

/// Simple undirected graph in CSR form. No self-loops, no parallel edges,
/// and no isolated nodes (a single-node graph with zero edges is admitted
/// as the one degenerate exception).
class UndirectedGraph {
public:
    UndirectedGraph() = default;

    /// Build from an edge list. Each pair {u, v} is one undirected edge;
    /// order within the pair and within the list is irrelevant.
    /// Throws std::invalid_argument on self-loops, duplicate edges,
    /// out-of-range ids, or isolated nodes (when node_count >= 2).
    static UndirectedGraph from_edges(NodeId node_count,
                                      const std::vector<std::pair<NodeId, NodeId>>& edges) {
        if (node_count == 0)
            throw std::invalid_argument("graph must have at least one node");
        std::vector<std::size_t> deg(node_count, 0);
        for (const auto& [u, v] : edges) {
            if (u >= node_count || v >= node_count)
                throw std::invalid_argument("edge endpoint " +
                                            std::to_string(std::max(u, v)) +
                                            " out of range");
            if (u == v)
                throw std::invalid_argument("self-loop at node " + std::to_string(u));
            ++deg[u];
            ++deg[v];
        }
        UndirectedGraph g;
        g.offsets_.resize(node_count + 1, 0);
        for (NodeId v = 0; v < node_count; ++v)
            g.offsets_[v + 1] = g.offsets_[v] + deg[v];
        g.adj_.resize(g.offsets_[node_count]);
        std::vector<std::size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
        for (const auto& [u, v] : edges) {
            g.adj_[cursor[u]++] = v;
            g.adj_[cursor[v]++] = u;
        }
        for (NodeId v = 0; v < node_count; ++v) {
            auto begin = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
            auto end = g.adj_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
            std::sort(begin, end);
            if (std::adjacent_find(begin, end) != end)
                throw std::invalid_argument("duplicate edge at node " + std::to_string(v));
            if (begin == end && node_count >= 2)
                throw std::invalid_argument("isolated node " + std::to_string(v));
        }
        g.edge_count_ = edges.size();
        return g;
    }

    NodeId node_count() const { return static_cast<NodeId>(offsets_.size()) - 1; }
    std::size_t edge_count() const { return edge_count_; }

    std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }

    /// Undirected edges as {u, v} pairs with u < v, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        out.reserve(edge_count_);
        for (NodeId u = 0; u < node_count(); ++u)
            for (NodeId v : neighbors(u))
                if (u < v) out.emplace_back(u, v);
        return out;
    }

    friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) {
        return a.offsets_ == b.offsets_ && a.adj_ == b.adj_;
    }

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> adj_;
    std::size_t edge_count_ = 0;
};

/// Undirected bipartite graph between a client side and an item side,
/// with adjacency stored in both directions. Every node on both sides
/// must have degree >= 1.
class BipartiteGraph {
public:
    BipartiteGraph() = default;

    /// Build from (client, item) edge pairs; both sides use their own
    /// zero-based index space.
    static BipartiteGraph from_edges(NodeId client_count, NodeId item_count,
                                     const std::vector<std::pair<NodeId, NodeId>>& edges) {
        if (client_count == 0 || item_count == 0)
            throw std::invalid_argument("both sides must be non-empty");
        BipartiteGraph g;
        g.client_offsets_.assign(client_count + 1, 0);
        g.item_offsets_.assign(item_count + 1, 0);
        for (const auto& [c, i] : edges) {
            if (c >= client_count)
                throw std::invalid_argument("client id " + std::to_string(c) + " out of range");
            if (i >= item_count)
                throw std::invalid_argument("item id " + std::to_string(i) + " out of range");
            ++g.client_offsets_[c + 1];
            ++g.item_offsets_[i + 1];
        }
        std::partial_sum(g.client_offsets_.begin(), g.client_offsets_.end(),
                         g.client_offsets_.begin());
        std::partial_sum(g.item_offsets_.begin(), g.item_offsets_.end(),
                         g.item_offsets_.begin());
        g.client_adj_.resize(edges.size());
        g.item_adj_.resize(edges.size());
        std::vector<std::size_t> ccur(g.client_offsets_.begin(), g.client_offsets_.end() - 1);
        std::vector<std::size_t> icur(g.item_offsets_.begin(), g.item_offsets_.end() - 1);
        for (const auto& [c, i] : edges) {
            g.client_adj_[ccur[c]++] = i;
            g.item_adj_[icur[i]++] = c;
        }
        auto check_side = [](std::vector<std::size_t>& offsets, std::vector<NodeId>& adj,
                             const char* side) {
            for (std::size_t v = 0; v + 1 < offsets.size(); ++v) {
                auto begin = adj.begin() + static_cast<std::ptrdiff_t>(offsets[v]);
                auto end = adj.begin() + static_cast<std::ptrdiff_t>(offsets[v + 1]);
                std::sort(begin, end);
                if (std::adjacent_find(begin, end) != end)
                    throw std::invalid_argument(std::string("duplicate edge at ") + side +
                                                " " + std::to_string(v));
                if (begin == end)
                    throw std::invalid_argument(std::string("degree-zero ") + side + " " +
                                                std::to_string(v));
            }
        };
        check_side(g.client_offsets_, g.client_adj_, "client");
        check_side(g.item_offsets_, g.item_adj_, "item");
        return g;
    }

    NodeId client_count() const { return static_cast<NodeId>(client_offsets_.size()) - 1; }
    NodeId item_count() const { return static_cast<NodeId>(item_offsets_.size()) - 1; }
    std::size_t edge_count() const { return client_adj_.size(); }

    std::size_t client_degree(NodeId c) const {
        return client_offsets_[c + 1] - client_offsets_[c];
    }
    std::size_t item_degree(NodeId i) const { return item_offsets_[i + 1] - item_offsets_[i]; }

    std::span<const NodeId> items_of(NodeId c) const {
        return {client_adj_.data() + client_offsets_[c],
                client_adj_.data() + client_offsets_[c + 1]};
    }
    std::span<const NodeId> clients_of(NodeId i) const {
        return {item_adj_.data() + item_offsets_[i], item_adj_.data() + item_offsets_[i + 1]};
    }

    /// Edges as (client, item) pairs, sorted.
    std::vector<std::pair<NodeId, NodeId>> edges() const {
        std::vector<std::pair<NodeId, NodeId>> out;
        out.reserve(edge_count());
        for (NodeId c = 0; c < client_count(); ++c)
            for (NodeId i : items_of(c)) out.emplace_back(c, i);
        return out;
    }

    friend bool operator==(const BipartiteGraph& a, const BipartiteGraph& b) {
        return a.client_offsets_ == b.client_offsets_ && a.client_adj_ == b.client_adj_;
    }

private:
    std::vector<std::size_t> client_offsets_{0};
    std::vector<std::size_t> item_offsets_{0};
    std::vector<NodeId> client_adj_;  // client -> items
    std::vector<NodeId> item_adj_;    // item -> clients
};

/// A non-empty set of node ids, kept sorted and duplicate-free.
/// Used both as a teleport support ("fan") and as the region whose
/// rank capacity is bounded.
class FanSet {
public:
    /// Throws std::invalid_argument if ids are empty, contain duplicates,
    /// or reference nodes >= node_count.
    static FanSet from_ids(std::vector<NodeId> ids, NodeId node_count) {
        if (ids.empty()) throw std::invalid_argument("fan set must be non-empty");
        std::sort(ids.begin(), ids.end());
        if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
            throw std::invalid_argument("fan set contains duplicate ids");
        if (ids.back() >= node_count)
            throw std::invalid_argument("fan set id " + std::to_string(ids.back()) +
                                        " out of range");
        FanSet f;
        f.ids_ = std::move(ids);
        return f;
    }

    const std::vector<NodeId>& ids() const { return ids_; }
    std::size_t size() const { return ids_.size(); }

    bool contains(NodeId v) const {
        return std::binary_search(ids_.begin(), ids_.end(), v);
    }

    /// Dense membership mask of length node_count.
    std::vector<char> mask(NodeId node_count) const {
        std::vector<char> m(node_count, 0);
        for (NodeId v : ids_) m[v] = 1;
        return m;
    }

private:
    std::vector<NodeId> ids_;
};

/// Sum of degrees over the set.
inline std::size_t volume(const UndirectedGraph& g, const FanSet& set) {
    std::size_t vol = 0;
    for (NodeId v : set.ids()) vol += g.degree(v);
    return vol;
}

/// Smallest degree over the set.
inline std::size_t min_degree(const UndirectedGraph& g, const FanSet& set) {
    std::size_t best = g.degree(set.ids().front());
    for (NodeId v : set.ids()) best = std::min(best, g.degree(v));
    return best;
}

/// Number of edges with exactly one endpoint inside the set.
inline std::size_t edge_boundary(const UndirectedGraph& g, const FanSet& set) {
    auto inside = set.mask(g.node_count());
    std::size_t count = 0;
    for (NodeId v : set.ids())
        for (NodeId w : g.neighbors(v))
            if (!inside[w]) ++count;
    return count;
}

/// True when the graph is connected (a single node with no edges counts
/// as connected: one component).
inline bool validate_connected(const UndirectedGraph& g) {
    const NodeId n = g.node_count();
    std::vector<char> seen(n, 0);
    std::vector<NodeId> stack{0};
    seen[0] = 1;
    NodeId reached = 1;
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        for (NodeId w : g.neighbors(v))
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == n;
}

/// Connectivity of a bipartite graph, walking both sides.
inline bool validate_connected(const BipartiteGraph& g) {
    const NodeId nc = g.client_count(), ni = g.item_count();
    std::vector<char> seen_c(nc, 0), seen_i(ni, 0);
    // frontier entries: (is_item, id)
    std::vector<std::pair<bool, NodeId>> stack{{false, 0}};
    seen_c[0] = 1;
    std::size_t reached = 1;
    while (!stack.empty()) {
        auto [is_item, v] = stack.back();
        stack.pop_back();
        if (is_item) {
            for (NodeId c : g.clients_of(v))
                if (!seen_c[c]) {
                    seen_c[c] = 1;
                    ++reached;
                    stack.emplace_back(false, c);
                }
        } else {
            for (NodeId i : g.items_of(v))
                if (!seen_i[i]) {
                    seen_i[i] = 1;
                    ++reached;
                    stack.emplace_back(true, i);
                }
        }
    }
    return reached == static_cast<std::size_t>(nc) + ni;
}

}  // namespace rankcap
