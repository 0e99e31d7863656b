#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "rankcap/bipartite.hpp"
#include "rankcap/engine.hpp"
#include "rankcap/graph.hpp"
#include "rankcap/teleport.hpp"

namespace rankcap {

/// Total rank sitting outside the set: sum over the complement (summed
/// directly rather than as 1 - inside, so tiny outside masses keep their
/// relative accuracy).
inline double outside_mass(const std::vector<double>& r, const FanSet& set) {
    const auto inside = set.mask(static_cast<NodeId>(r.size()));
    double sum = 0.0, comp = 0.0;
    for (std::size_t v = 0; v < r.size(); ++v) {
        if (inside[v]) continue;
        double y = r[v] - comp;
        double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

namespace detail {

inline void require_bound_inputs(const UndirectedGraph& g, const FanSet& set) {
    if (set.size() >= g.node_count())
        throw std::invalid_argument("fan set must be a proper subset of the nodes");
    if (!validate_connected(g))
        throw std::invalid_argument("capacity bounds require a connected graph");
}

/// max over the set of s_k / deg(k); the per-link escape cap is (1-zeta)
/// times this. The teleport must be supported inside the set.
inline double cap_term_general(const UndirectedGraph& g, const FanSet& set,
                               const TeleportVector& s) {
    if (s.size() != g.node_count())
        throw std::invalid_argument("teleport size mismatch");
    const auto inside = set.mask(g.node_count());
    double best = 0.0;
    for (NodeId v = 0; v < g.node_count(); ++v) {
        if (s[v] == 0.0) continue;
        if (!inside[v])
            throw std::invalid_argument("teleport support must lie inside the fan set");
        best = std::max(best, s[v] / static_cast<double>(g.degree(v)));
    }
    return best;
}

}  // namespace detail

/// Degree-proportional fan: outflow(zeta) <= (1-zeta) |boundary| / Vol(U).
inline double preferential_bound(const UndirectedGraph& g, const FanSet& set,
                                 double zeta) {
    detail::require_bound_inputs(g, set);
    return (1.0 - zeta) * static_cast<double>(edge_boundary(g, set)) /
           static_cast<double>(volume(g, set));
}

/// Uniform fan: outflow(zeta) <= (1-zeta) |boundary| / (|U| min deg).
inline double uniform_bound(const UndirectedGraph& g, const FanSet& set, double zeta) {
    detail::require_bound_inputs(g, set);
    return (1.0 - zeta) * static_cast<double>(edge_boundary(g, set)) /
           (static_cast<double>(set.size()) * static_cast<double>(min_degree(g, set)));
}

/// Arbitrary fan supported inside the set:
/// outflow(zeta) <= (1-zeta) |boundary| max_k s_k/deg(k).
inline double general_bound(const UndirectedGraph& g, const FanSet& set, double zeta,
                            const TeleportVector& s) {
    detail::require_bound_inputs(g, set);
    return (1.0 - zeta) * static_cast<double>(edge_boundary(g, set)) *
           detail::cap_term_general(g, set, s);
}

namespace detail {

/// Bound prefactor and the boring factor at which the outflow is
/// measured, per variant. The lazy family keeps its native zeta with a
/// shrunk prefactor; the backstep family transfers wholesale to the
/// equivalent boring factor.
inline std::pair<double, double> model_factor(const WalkModel& m) {
    switch (m.kind) {
        case WalkKind::traditional:
            return {1.0 - m.zeta, m.zeta};
        case WalkKind::lazy:
            return {(1.0 - m.zeta) / 2.0, m.zeta};
        case WalkKind::generalized_lazy:
            return {(1.0 - m.lambda) * (1.0 - m.zeta), m.zeta};
        case WalkKind::backstep_single:
        case WalkKind::backstep_multi: {
            const double zp = m.equivalent_boring_factor();
            return {1.0 - zp, zp};
        }
    }
    throw std::domain_error("unknown walk kind");
}

inline double cap_term(const UndirectedGraph& g, const FanSet& set, FanKind kind,
                       const TeleportVector* custom) {
    switch (kind) {
        case FanKind::uniform:
            return 1.0 / (static_cast<double>(set.size()) *
                          static_cast<double>(min_degree(g, set)));
        case FanKind::preferential:
            return 1.0 / static_cast<double>(volume(g, set));
        case FanKind::custom:
            if (!custom)
                throw std::invalid_argument("custom fan bound needs the teleport vector");
            return cap_term_general(g, set, *custom);
    }
    throw std::invalid_argument("unknown fan kind");
}

}  // namespace detail

/// Capacity bound for any walk variant and fan kind. The value caps the
/// variant's outflow measured at the boring factor model_factor reports
/// (native zeta for the lazy family, the equivalent boring factor for the
/// backstep family).
inline double model_bound(const UndirectedGraph& g, const FanSet& set,
                          const WalkModel& model, FanKind kind,
                          const TeleportVector* custom = nullptr) {
    model.validate();
    detail::require_bound_inputs(g, set);
    const auto [factor, _] = detail::model_factor(model);
    return factor * static_cast<double>(edge_boundary(g, set)) *
           detail::cap_term(g, set, kind, custom);
}

/// Everything one wants to know about how tight the bound is on a concrete
/// instance: the solved outflow, the bound, their gap, and the structural
/// quantities the bound is made of.
struct BoundReport {
    WalkModel model;
    FanKind fan_kind = FanKind::uniform;
    std::size_t set_size = 0;
    std::size_t boundary = 0;
    std::size_t set_volume = 0;
    std::size_t set_min_degree = 0;
    double outflow_zeta = 0.0;  // boring factor the outflow is measured at
    double factor = 0.0;        // bound prefactor
    double per_link_cap = 0.0;  // bound contributed by each boundary edge
    double bound = 0.0;
    double outside = 0.0;       // rank mass outside the set
    double outflow = 0.0;       // outside * outflow_zeta
    std::optional<double> rel_left;  // 1 - outflow/bound (absent when bound = 0)
    std::size_t iterations = 0;
    bool compliant = true;      // outflow <= bound + 1e-12
};

/// Solve the variant on the graph with the requested fan and measure the
/// bound's tightness. For uniform/preferential the teleport vector is
/// derived from the set; custom requires an explicit vector supported
/// inside the set.
inline BoundReport tightness_report(const UndirectedGraph& g, const FanSet& set,
                                    const WalkModel& model, FanKind kind,
                                    const TeleportVector* custom = nullptr,
                                    const SolveOptions& opts = {}) {
    model.validate();
    detail::require_bound_inputs(g, set);
    TeleportVector s = kind == FanKind::custom
                           ? (custom ? *custom
                                     : throw std::invalid_argument(
                                           "custom fan needs explicit weights"))
                           : teleport_for(g, set, kind);
    const RankVector r = rank(g, s, model, opts);

    BoundReport rep;
    rep.model = model;
    rep.fan_kind = kind;
    rep.set_size = set.size();
    rep.boundary = edge_boundary(g, set);
    rep.set_volume = volume(g, set);
    rep.set_min_degree = min_degree(g, set);
    auto [factor, zeta_out] = detail::model_factor(model);
    rep.factor = factor;
    rep.outflow_zeta = zeta_out;
    rep.per_link_cap = factor * detail::cap_term(g, set, kind, &s);
    rep.bound = rep.per_link_cap * static_cast<double>(rep.boundary);
    rep.outside = outside_mass(r.values, set);
    rep.outflow = rep.outside * zeta_out;
    if (rep.bound > 0.0) rep.rel_left = 1.0 - rep.outflow / rep.bound;
    rep.iterations = r.iterations;
    rep.compliant = rep.outflow <= rep.bound + 1e-12;
    return rep;
}

// ---------------------------------------------------------------------------
// Bipartite capacity bounds
// ---------------------------------------------------------------------------

/// Shared per-link cap d = 1 / min(|U^k| min deg(U^k), |U^p| min deg(U^p)).
inline double bipartite_channel_cap(const BipartiteGraph& g, const FanSet& client_set,
                                    const FanSet& item_set) {
    std::size_t min_ck = g.client_degree(client_set.ids().front());
    for (NodeId c : client_set.ids()) min_ck = std::min(min_ck, g.client_degree(c));
    std::size_t min_ip = g.item_degree(item_set.ids().front());
    for (NodeId i : item_set.ids()) min_ip = std::min(min_ip, g.item_degree(i));
    const double denom = static_cast<double>(
        std::min(client_set.size() * min_ck, item_set.size() * min_ip));
    return 1.0 / denom;
}

/// |boundary(U^p / U^k)|: edges joining an item inside U^p to a client
/// outside U^k.
inline std::size_t item_cross_boundary(const BipartiteGraph& g, const FanSet& item_set,
                                       const FanSet& client_set) {
    const auto in_k = client_set.mask(g.client_count());
    std::size_t count = 0;
    for (NodeId i : item_set.ids())
        for (NodeId c : g.clients_of(i))
            if (!in_k[c]) ++count;
    return count;
}

/// |boundary(U^k / U^p)|: edges joining a client inside U^k to an item
/// outside U^p.
inline std::size_t client_cross_boundary(const BipartiteGraph& g,
                                         const FanSet& client_set,
                                         const FanSet& item_set) {
    const auto in_p = item_set.mask(g.item_count());
    std::size_t count = 0;
    for (NodeId c : client_set.ids())
        for (NodeId i : g.items_of(c))
            if (!in_p[i]) ++count;
    return count;
}

/// The displayed per-side capacity bounds:
///   p_{k,o} zeta_kp <= (1 - zeta_pk) |boundary(U^p/U^k)| d
///   p_{p,o} zeta_pk <= (1 - zeta_kp) |boundary(U^k/U^p)| d
/// Empirical rather than airtight: instances exist where a side's displayed
/// bound is exceeded, so reports carry violation flags. The summed form
/// (see BipartiteBoundReport::combined_*) has never been observed violated.
inline std::pair<double, double> bipartite_bounds(const BipartiteGraph& g,
                                                  const FanSet& client_set,
                                                  const FanSet& item_set,
                                                  const BipartiteModel& model) {
    model.validate();
    if (client_set.size() >= g.client_count() || item_set.size() >= g.item_count())
        throw std::invalid_argument("fan sets must be proper subsets of their sides");
    const double d = bipartite_channel_cap(g, client_set, item_set);
    const double bound_k = (1.0 - model.zeta_pk) *
                           static_cast<double>(item_cross_boundary(g, item_set, client_set)) * d;
    const double bound_p = (1.0 - model.zeta_kp) *
                           static_cast<double>(client_cross_boundary(g, client_set, item_set)) * d;
    return {bound_k, bound_p};
}

struct BipartiteBoundReport {
    BipartiteModel model;
    double channel_cap = 0.0;             // d
    std::size_t boundary_pk = 0;          // |boundary(U^p/U^k)|
    std::size_t boundary_kp = 0;          // |boundary(U^k/U^p)|
    double bound_k = 0.0, bound_p = 0.0;
    double outside_k = 0.0, outside_p = 0.0;
    double outflow_k = 0.0, outflow_p = 0.0;
    std::optional<double> rel_left_k, rel_left_p;
    bool violated_k = false, violated_p = false, violated = false;
    // Summed two-sided form: min(zeta_kp, zeta_pk) (p_{k,o} + p_{p,o})
    // against the sum of both right-hand sides.
    double combined_outflow = 0.0, combined_bound = 0.0;
    bool combined_violated = false;
    std::size_t iterations = 0;
};

/// Solve the bipartite walk with fans over the two sets and measure both
/// displayed bounds plus the summed form.
inline BipartiteBoundReport bipartite_tightness_report(
    const BipartiteGraph& g, const FanSet& client_set, const FanSet& item_set,
    const BipartiteModel& model, FanKind kind, const SolveOptions& opts = {}) {
    model.validate();
    if (!validate_connected(g))
        throw std::invalid_argument("capacity bounds require a connected graph");
    if (client_set.size() >= g.client_count() || item_set.size() >= g.item_count())
        throw std::invalid_argument("fan sets must be proper subsets of their sides");
    const TeleportVector s_k = bipartite_client_fan(g, client_set, kind);
    const TeleportVector s_p = bipartite_item_fan(g, item_set, kind);
    const BipartiteRank r = bipartite_iterate(g, s_k, s_p, model, opts);

    BipartiteBoundReport rep;
    rep.model = model;
    rep.channel_cap = bipartite_channel_cap(g, client_set, item_set);
    rep.boundary_pk = item_cross_boundary(g, item_set, client_set);
    rep.boundary_kp = client_cross_boundary(g, client_set, item_set);
    rep.bound_k = (1.0 - model.zeta_pk) * static_cast<double>(rep.boundary_pk) *
                  rep.channel_cap;
    rep.bound_p = (1.0 - model.zeta_kp) * static_cast<double>(rep.boundary_kp) *
                  rep.channel_cap;
    rep.outside_k = outside_mass(r.client_values, client_set);
    rep.outside_p = outside_mass(r.item_values, item_set);
    rep.outflow_k = rep.outside_k * model.zeta_kp;
    rep.outflow_p = rep.outside_p * model.zeta_pk;
    if (rep.bound_k > 0.0) rep.rel_left_k = 1.0 - rep.outflow_k / rep.bound_k;
    if (rep.bound_p > 0.0) rep.rel_left_p = 1.0 - rep.outflow_p / rep.bound_p;
    rep.violated_k = rep.outflow_k > rep.bound_k + 1e-12;
    rep.violated_p = rep.outflow_p > rep.bound_p + 1e-12;
    rep.violated = rep.violated_k || rep.violated_p;
    rep.combined_outflow =
        std::min(model.zeta_kp, model.zeta_pk) * (rep.outside_k + rep.outside_p);
    rep.combined_bound = rep.bound_k + rep.bound_p;
    rep.combined_violated = rep.combined_outflow > rep.combined_bound + 1e-12;
    rep.iterations = r.iterations;
    return rep;
}

}  // namespace rankcap
