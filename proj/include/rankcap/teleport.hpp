#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankcap/graph.hpp"

namespace rankcap {

/// How the teleport vector is derived from a fan set.
enum class FanKind {
    uniform,        // equal weight on every fan node
    preferential,   // weight proportional to degree within the fan
    custom,         // caller-supplied weights
};

inline const char* to_string(FanKind k) {
    switch (k) {
        case FanKind::uniform: return "uniform";
        case FanKind::preferential: return "preferential";
        case FanKind::custom: return "custom";
    }
    return "?";
}

/// A probability vector over the nodes: non-negative entries summing to 1.
class TeleportVector {
public:
    TeleportVector() = default;

    /// Validates non-negativity and normalization (within 1e-12).
    static TeleportVector from_values(std::vector<double> values) {
        double sum = 0.0, comp = 0.0;
        for (double v : values) {
            if (!(v >= 0.0))
                throw std::invalid_argument("teleport weights must be non-negative");
            // Kahan compensation keeps the normalization check meaningful
            // for very large supports.
            double y = v - comp;
            double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("teleport vector must sum to 1 (got " +
                                        std::to_string(sum) + ")");
        TeleportVector s;
        s.values_ = std::move(values);
        return s;
    }

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

namespace detail {

// Compensated (Kahan) sum; the teleport constructors normalize with it so
// supports in the millions of nodes still sum to 1 within 1e-12.
inline double kahan_sum(const std::vector<double>& xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        double y = x - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace detail

/// Equal weight 1/n on every node.
inline TeleportVector uniform_global(NodeId node_count) {
    if (node_count == 0) throw std::invalid_argument("empty graph");
    return TeleportVector::from_values(
        std::vector<double>(node_count, 1.0 / node_count));
}

/// All weight on a single node.
inline TeleportVector single_fan(NodeId node_count, NodeId target) {
    if (target >= node_count)
        throw std::invalid_argument("fan target out of range");
    std::vector<double> v(node_count, 0.0);
    v[target] = 1.0;
    return TeleportVector::from_values(std::move(v));
}

/// Equal weight 1/|U| on every fan node.
inline TeleportVector uniform_set_fan(NodeId node_count, const FanSet& fan) {
    if (!fan.ids().empty() && fan.ids().back() >= node_count)
        throw std::invalid_argument("fan set exceeds graph");
    std::vector<double> v(node_count, 0.0);
    const double w = 1.0 / static_cast<double>(fan.size());
    for (NodeId id : fan.ids()) v[id] = w;
    return TeleportVector::from_values(std::move(v));
}

/// Weight deg(j)/Vol(U) on every fan node j.
inline TeleportVector hub_set_fan(const UndirectedGraph& g, const FanSet& fan) {
    if (fan.ids().back() >= g.node_count())
        throw std::invalid_argument("fan set exceeds graph");
    const double vol = static_cast<double>(volume(g, fan));
    std::vector<double> v(g.node_count(), 0.0);
    for (NodeId id : fan.ids()) v[id] = static_cast<double>(g.degree(id)) / vol;
    return TeleportVector::from_values(std::move(v));
}

/// Caller-supplied positive weights on distinct nodes, normalized to sum 1.
inline TeleportVector custom_fan(NodeId node_count,
                                 const std::vector<std::pair<NodeId, double>>& weights) {
    if (weights.empty()) throw std::invalid_argument("custom fan must be non-empty");
    std::vector<double> v(node_count, 0.0);
    std::vector<double> raw;
    raw.reserve(weights.size());
    for (const auto& [id, w] : weights) {
        if (id >= node_count)
            throw std::invalid_argument("custom fan id " + std::to_string(id) +
                                        " out of range");
        if (!(w > 0.0))
            throw std::invalid_argument("custom fan weights must be positive");
        if (v[id] != 0.0)
            throw std::invalid_argument("custom fan repeats node " + std::to_string(id));
        v[id] = w;
        raw.push_back(w);
    }
    const double total = detail::kahan_sum(raw);
    for (double& x : v) x /= total;
    return TeleportVector::from_values(std::move(v));
}

/// Teleport vector for a (kind, fan) pair; `custom` requires the explicit
/// vector and is rejected here.
inline TeleportVector teleport_for(const UndirectedGraph& g, const FanSet& fan,
                                   FanKind kind) {
    switch (kind) {
        case FanKind::uniform: return uniform_set_fan(g.node_count(), fan);
        case FanKind::preferential: return hub_set_fan(g, fan);
        case FanKind::custom:
            throw std::invalid_argument("custom fan needs explicit weights");
    }
    throw std::invalid_argument("unknown fan kind");
}

}  // namespace rankcap
