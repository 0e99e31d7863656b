#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rankcap/graph.hpp"
#include "rankcap/teleport.hpp"

namespace rankcap {

namespace detail {

/// Strip comments ('#' to end of line) and surrounding whitespace; empty
/// result means the line carries no content.
inline std::string content_of(const std::string& line) {
    std::string out = line.substr(0, line.find('#'));
    const auto begin = out.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return {};
    const auto end = out.find_last_not_of(" \t\r\n");
    return out.substr(begin, end - begin + 1);
}

inline std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return in;
}

inline std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    return out;
}

}  // namespace detail

using AnyGraph = std::variant<UndirectedGraph, BipartiteGraph>;

/// Edge-list reader. Plain graphs are lines "u v"; bipartite graphs start
/// with a header "bipartite <client_count> <item_count>" and offset item
/// ids by client_count. '#' starts a comment; blank lines are skipped.
/// Node count of a plain graph is one past the largest id seen.
inline AnyGraph read_graph(std::istream& in) {
    std::string line;
    bool bipartite = false;
    NodeId client_count = 0, item_count = 0;
    bool saw_header_chance = true;
    std::vector<std::pair<NodeId, NodeId>> edges;
    NodeId max_id = 0;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = detail::content_of(line);
        if (content.empty()) continue;
        std::istringstream fields(content);
        if (saw_header_chance) {
            saw_header_chance = false;
            std::string word;
            fields >> word;
            if (word == "bipartite") {
                long long c = -1, i = -1;
                if (!(fields >> c >> i) || c <= 0 || i <= 0)
                    throw std::invalid_argument("line " + std::to_string(line_no) +
                                                ": bad bipartite header");
                bipartite = true;
                client_count = static_cast<NodeId>(c);
                item_count = static_cast<NodeId>(i);
                continue;
            }
            fields.clear();
            fields.seekg(0);
        }
        long long u = -1, v = -1;
        std::string trailing;
        if (!(fields >> u >> v) || (fields >> trailing) || u < 0 || v < 0)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'u v'");
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
        max_id = std::max({max_id, static_cast<NodeId>(u), static_cast<NodeId>(v)});
    }
    if (!bipartite) {
        if (edges.empty())
            throw std::invalid_argument("graph file contains no edges");
        return UndirectedGraph::from_edges(max_id + 1, edges);
    }
    // split each edge into (client, item - client_count), either order
    std::vector<std::pair<NodeId, NodeId>> pairs;
    pairs.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (v < client_count) std::swap(u, v);
        if (u >= client_count || v < client_count ||
            v >= client_count + item_count)
            throw std::invalid_argument(
                "bipartite edge (" + std::to_string(u) + ", " + std::to_string(v) +
                ") must join a client id to an offset item id");
        pairs.emplace_back(u, v - client_count);
    }
    return BipartiteGraph::from_edges(client_count, item_count, pairs);
}

inline UndirectedGraph read_undirected(std::istream& in) {
    AnyGraph g = read_graph(in);
    if (auto* u = std::get_if<UndirectedGraph>(&g)) return std::move(*u);
    throw std::invalid_argument("expected a plain graph, found a bipartite header");
}

inline BipartiteGraph read_bipartite(std::istream& in) {
    AnyGraph g = read_graph(in);
    if (auto* b = std::get_if<BipartiteGraph>(&g)) return std::move(*b);
    throw std::invalid_argument("expected a bipartite graph (missing header)");
}

inline void write_graph(std::ostream& out, const UndirectedGraph& g) {
    for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
}

inline void write_graph(std::ostream& out, const BipartiteGraph& g) {
    out << "bipartite " << g.client_count() << ' ' << g.item_count() << '\n';
    for (auto [c, i] : g.edges())
        out << c << ' ' << (g.client_count() + i) << '\n';
}

/// Fan-set files: one node id per line.
inline FanSet read_fan(std::istream& in, NodeId node_count) {
    std::string line;
    std::vector<NodeId> ids;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = detail::content_of(line);
        if (content.empty()) continue;
        std::istringstream fields(content);
        long long id = -1;
        std::string trailing;
        if (!(fields >> id) || (fields >> trailing) || id < 0)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected a node id");
        ids.push_back(static_cast<NodeId>(id));
    }
    return FanSet::from_ids(std::move(ids), node_count);
}

inline void write_fan(std::ostream& out, const FanSet& fan) {
    for (NodeId v : fan.ids()) out << v << '\n';
}

/// Teleport-weight files: lines "node_id weight".
inline std::vector<std::pair<NodeId, double>> read_teleport_weights(std::istream& in) {
    std::string line;
    std::vector<std::pair<NodeId, double>> weights;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string content = detail::content_of(line);
        if (content.empty()) continue;
        std::istringstream fields(content);
        long long id = -1;
        double w = 0.0;
        std::string trailing;
        if (!(fields >> id >> w) || (fields >> trailing) || id < 0)
            throw std::invalid_argument("line " + std::to_string(line_no) +
                                        ": expected 'node_id weight'");
        weights.emplace_back(static_cast<NodeId>(id), w);
    }
    if (weights.empty())
        throw std::invalid_argument("teleport file contains no weights");
    return weights;
}

}  // namespace rankcap
