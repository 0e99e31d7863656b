#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "rankcap/engine.hpp"
#include "rankcap/graph.hpp"
#include "rankcap/teleport.hpp"

namespace rankcap {

/// Two-channel boring factors for the bipartite walk: zeta_kp applies on
/// the client-to-item transfer, zeta_pk on the item-to-client transfer.
/// Zero is allowed (the pure degree-proportional fixed point); 1 pins a
/// side to its teleport vector.
struct BipartiteModel {
    double zeta_kp = 0.1;
    double zeta_pk = 0.1;

    void validate() const {
        if (!(zeta_kp >= 0.0 && zeta_kp <= 1.0) || !(zeta_pk >= 0.0 && zeta_pk <= 1.0))
            throw std::domain_error("bipartite boring factors must lie in [0, 1]");
    }
};

struct BipartiteRank {
    std::vector<double> client_values;
    std::vector<double> item_values;
    std::size_t iterations = 0;
    double residual = 0.0;
};

namespace detail {

/// y_items = P^kp x_clients (each client pushes x/deg to its items).
inline void apply_kp(const BipartiteGraph& g, const std::vector<double>& x,
                     std::vector<double>& y) {
    y.assign(g.item_count(), 0.0);
    for (NodeId c = 0; c < g.client_count(); ++c) {
        const double share = x[c] / static_cast<double>(g.client_degree(c));
        for (NodeId i : g.items_of(c)) y[i] += share;
    }
}

/// y_clients = P^pk x_items.
inline void apply_pk(const BipartiteGraph& g, const std::vector<double>& x,
                     std::vector<double>& y) {
    y.assign(g.client_count(), 0.0);
    for (NodeId i = 0; i < g.item_count(); ++i) {
        const double share = x[i] / static_cast<double>(g.item_degree(i));
        for (NodeId c : g.clients_of(i)) y[c] += share;
    }
}

}  // namespace detail

/// Alternating (Gauss-Seidel) iteration of the coupled system
///   r^p = (1 - zeta_kp) P^kp r^k + zeta_kp s^p
///   r^k = (1 - zeta_pk) P^pk r^p + zeta_pk s^k
/// starting from r^k = s^k, r^p = s^p. Each alternation refreshes the item
/// side first and feeds it straight into the client update; both sides stay
/// normalized to 1 throughout.
inline BipartiteRank bipartite_iterate(const BipartiteGraph& g,
                                       const TeleportVector& s_clients,
                                       const TeleportVector& s_items,
                                       const BipartiteModel& model,
                                       const SolveOptions& opts = {}) {
    model.validate();
    if (s_clients.size() != g.client_count() || s_items.size() != g.item_count())
        throw std::invalid_argument("teleport size mismatch");
    const double qkp = 1.0 - model.zeta_kp, qpk = 1.0 - model.zeta_pk;
    std::vector<double> rk(s_clients.values()), rp(s_items.values());
    std::vector<double> push_p(g.item_count()), push_k(g.client_count());
    double delta = 0.0;
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
        detail::apply_kp(g, rk, push_p);
        delta = 0.0;
        for (NodeId i = 0; i < g.item_count(); ++i) {
            const double next = qkp * push_p[i] + model.zeta_kp * s_items[i];
            delta += std::abs(next - rp[i]);
            rp[i] = next;
        }
        detail::apply_pk(g, rp, push_k);
        for (NodeId c = 0; c < g.client_count(); ++c) {
            const double next = qpk * push_k[c] + model.zeta_pk * s_clients[c];
            delta += std::abs(next - rk[c]);
            rk[c] = next;
        }
        if (delta <= opts.tolerance) {
            BipartiteRank out;
            out.client_values = std::move(rk);
            out.item_values = std::move(rp);
            out.iterations = it;
            out.residual = delta;
            return out;
        }
    }
    throw ConvergenceError(delta, opts.max_iterations);
}

/// Teleport vectors over a side's fan set: uniform or degree-proportional.
inline TeleportVector bipartite_client_fan(const BipartiteGraph& g, const FanSet& fan,
                                           FanKind kind) {
    if (kind == FanKind::uniform) return uniform_set_fan(g.client_count(), fan);
    if (kind != FanKind::preferential)
        throw std::invalid_argument("bipartite fans are uniform or preferential");
    double vol = 0.0;
    for (NodeId c : fan.ids()) vol += static_cast<double>(g.client_degree(c));
    std::vector<double> v(g.client_count(), 0.0);
    for (NodeId c : fan.ids()) v[c] = static_cast<double>(g.client_degree(c)) / vol;
    return TeleportVector::from_values(std::move(v));
}

inline TeleportVector bipartite_item_fan(const BipartiteGraph& g, const FanSet& fan,
                                         FanKind kind) {
    if (kind == FanKind::uniform) return uniform_set_fan(g.item_count(), fan);
    if (kind != FanKind::preferential)
        throw std::invalid_argument("bipartite fans are uniform or preferential");
    double vol = 0.0;
    for (NodeId i : fan.ids()) vol += static_cast<double>(g.item_degree(i));
    std::vector<double> v(g.item_count(), 0.0);
    for (NodeId i : fan.ids()) v[i] = static_cast<double>(g.item_degree(i)) / vol;
    return TeleportVector::from_values(std::move(v));
}

}  // namespace rankcap
