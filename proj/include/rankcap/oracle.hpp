#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "rankcap/bipartite.hpp"
#include "rankcap/engine.hpp"
#include "rankcap/graph.hpp"
#include "rankcap/netgen.hpp"
#include "rankcap/teleport.hpp"

namespace rankcap {

namespace detail {

/// In-place partial-pivot LU solve of A x = b (A row-major n x n,
/// overwritten). Good enough for the verification-sized systems this
/// oracle handles.
inline std::vector<double> lu_solve(std::vector<double>& A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(A[col * n + col]);
        for (std::size_t r = col + 1; r < n; ++r) {
            const double mag = std::abs(A[r * n + col]);
            if (mag > best) {
                best = mag;
                piv = r;
            }
        }
        if (best < 1e-300) throw std::runtime_error("singular linear system");
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c)
                std::swap(A[col * n + c], A[piv * n + c]);
            std::swap(b[col], b[piv]);
        }
        const double inv = 1.0 / A[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const double f = A[r * n + col] * inv;
            if (f == 0.0) continue;
            A[r * n + col] = 0.0;
            for (std::size_t c = col + 1; c < n; ++c) A[r * n + c] -= f * A[col * n + c];
            b[r] -= f * b[col];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double acc = b[r];
        for (std::size_t c = r + 1; c < n; ++c) acc -= A[r * n + c] * x[c];
        x[r] = acc / A[r * n + r];
    }
    return x;
}

}  // namespace detail

/// Direct dense solve of the variant's own update equation
/// (1 - self) r - move P r = tp s, independent of the iterative engine.
inline std::vector<double> dense_solve(const TransitionOperator& P,
                                       const TeleportVector& s, const WalkModel& model) {
    model.validate();
    const std::size_t n = P.node_count();
    if (s.size() != n) throw std::invalid_argument("teleport size mismatch");
    const auto [self, move, tp] = detail::direct_coefficients(model);
    std::vector<double> A(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) A[i * n + i] = 1.0 - self;
    for (NodeId j = 0; j < n; ++j) {
        const std::size_t deg = P.out_degree(j);
        if (deg == 0) {
            A[static_cast<std::size_t>(j) * n + j] -= move;  // degenerate: mass stays
            continue;
        }
        const double w = move / static_cast<double>(deg);
        for (NodeId i : P.targets(j)) A[static_cast<std::size_t>(i) * n + j] -= w;
    }
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) b[i] = tp * s[i];
    return detail::lu_solve(A, std::move(b));
}

inline std::vector<double> dense_solve(const UndirectedGraph& g, const TeleportVector& s,
                                       const WalkModel& model) {
    return dense_solve(TransitionOperator::from_undirected(g), s, model);
}

/// Dense solve of the coupled bipartite system (both sides stacked).
/// Singular only when both boring factors are zero.
inline BipartiteRank bipartite_dense_solve(const BipartiteGraph& g,
                                           const TeleportVector& s_clients,
                                           const TeleportVector& s_items,
                                           const BipartiteModel& model) {
    model.validate();
    const std::size_t nc = g.client_count(), ni = g.item_count(), n = nc + ni;
    std::vector<double> A(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) A[i * n + i] = 1.0;
    // r^k rows: r^k - (1 - zeta_pk) P^pk r^p = zeta_pk s^k
    const double qpk = 1.0 - model.zeta_pk;
    for (NodeId i = 0; i < ni; ++i) {
        const double w = qpk / static_cast<double>(g.item_degree(i));
        for (NodeId c : g.clients_of(i)) A[static_cast<std::size_t>(c) * n + nc + i] -= w;
    }
    // r^p rows: r^p - (1 - zeta_kp) P^kp r^k = zeta_kp s^p
    const double qkp = 1.0 - model.zeta_kp;
    for (NodeId c = 0; c < nc; ++c) {
        const double w = qkp / static_cast<double>(g.client_degree(c));
        for (NodeId i : g.items_of(c))
            A[(nc + static_cast<std::size_t>(i)) * n + c] -= w;
    }
    std::vector<double> b(n);
    for (std::size_t c = 0; c < nc; ++c) b[c] = model.zeta_pk * s_clients[c];
    for (std::size_t i = 0; i < ni; ++i) b[nc + i] = model.zeta_kp * s_items[i];
    const auto x = detail::lu_solve(A, std::move(b));
    BipartiteRank out;
    out.client_values.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(nc));
    out.item_values.assign(x.begin() + static_cast<std::ptrdiff_t>(nc), x.end());
    return out;
}

/// Per-zone solution of the five-variable zone system, plus the outflow and
/// its capacity limit for the canonical region U = {d} ∪ e.
struct ZoneSolution {
    ZoneSpec spec;
    FanKind mode = FanKind::uniform;
    double zeta = 0.1;
    double r_a = 0, r_b = 0, r_c = 0, r_d = 0, r_e = 0;  // per-node values
    double outflow = 0;   // zeta * (mass outside U)
    double limit = 0;     // capacity bound for U
    double rel_left = 0;  // 1 - outflow/limit

    /// Per-node values expanded to the explicit graph's node order.
    std::vector<double> expand() const {
        std::vector<double> r;
        r.reserve(spec.a_count + spec.b_count + 2 + spec.e_count);
        r.insert(r.end(), spec.a_count, r_a);
        r.insert(r.end(), spec.b_count, r_b);
        r.push_back(r_c);
        r.push_back(r_d);
        r.insert(r.end(), spec.e_count, r_e);
        return r;
    }
};

/// Exact solve of the zone system by algebraic elimination. The chain
/// a <- b <- c <- d <-> e reduces to a 2x2 system in (r_d, r_e) whose
/// Cramer solution involves only sums of positive terms, so every component
/// keeps full relative accuracy even at the 1e-20 scale the large factors
/// produce.
inline ZoneSolution zone_solve(const ZoneSpec& spec, FanKind mode, double zeta) {
    spec.validate();
    if (!(zeta > 0.0 && zeta <= 1.0))
        throw std::domain_error("zeta must lie in (0, 1]");
    if (mode != FanKind::uniform && mode != FanKind::preferential)
        throw std::invalid_argument("zone fans are uniform or preferential");
    const double q = 1.0 - zeta;
    const double leaves = static_cast<double>(spec.leaves_per_hub());
    const double deg_b = leaves + 1.0;
    const double deg_c = static_cast<double>(spec.b_count) + 1.0;
    const double deg_d = static_cast<double>(spec.e_count) + 1.0;
    const double deg_e = static_cast<double>(spec.e_total_degree);
    const double set_size = static_cast<double>(spec.e_count) + 1.0;
    const double vol = deg_d + static_cast<double>(spec.e_count) * deg_e;
    const double s_d = mode == FanKind::uniform ? 1.0 / set_size : deg_d / vol;
    const double s_e = mode == FanKind::uniform ? 1.0 / set_size : deg_e / vol;

    ZoneSolution sol;
    sol.spec = spec;
    sol.mode = mode;
    sol.zeta = zeta;
    const double k_b = (q / deg_c) / (1.0 - q * q * leaves / deg_b);
    const double k_c =
        (q / deg_d) / (1.0 - q * static_cast<double>(spec.b_count) * k_b / deg_b);
    const double alpha = 1.0 - q * k_c / deg_c;
    const double beta = q * static_cast<double>(spec.e_count) / deg_e;
    const double gamma = q / deg_d;
    const double delta = 1.0 - q * (deg_e - 1.0) / deg_e;
    const double det = alpha * delta - beta * gamma;
    sol.r_d = (zeta * s_d * delta + beta * zeta * s_e) / det;
    sol.r_e = (alpha * zeta * s_e + gamma * zeta * s_d) / det;
    sol.r_c = k_c * sol.r_d;
    sol.r_b = k_b * sol.r_c;
    sol.r_a = q * sol.r_b / deg_b;
    sol.outflow = zeta * (static_cast<double>(spec.a_count) * sol.r_a +
                          static_cast<double>(spec.b_count) * sol.r_b + sol.r_c);
    sol.limit = mode == FanKind::uniform
                    ? q / (set_size * std::min(deg_d, deg_e))
                    : q / vol;
    sol.rel_left = 1.0 - sol.outflow / sol.limit;
    return sol;
}

/// Empirical visit distribution of a simulated browser.
struct WalkResult {
    std::vector<double> empirical;
    std::size_t steps = 0;
    std::size_t burn_in = 0;
    std::uint64_t seed = 0;
    const char* prng = "mt19937_64";
};

/// Simulate the browser the walk variants model: teleport with probability
/// zeta (clearing any history), otherwise stay/step/back per the variant.
/// The history-based variants are a faithful browser, not a sampler for the
/// variant's update equation -- their visit law genuinely differs from it
/// (by an L1 gap of order beta), so comparisons against solved ranks are
/// sanity checks for them and tight only for the memoryless variants.
inline WalkResult simulate_walker(const UndirectedGraph& g, const TeleportVector& s,
                                  const WalkModel& model, std::size_t steps,
                                  std::uint64_t seed) {
    model.validate();
    const NodeId n = g.node_count();
    if (s.size() != n) throw std::invalid_argument("teleport size mismatch");
    if (steps == 0) throw std::invalid_argument("need at least one step");

    // cumulative teleport distribution for O(log n) sampling
    std::vector<double> cum(n);
    double acc = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        acc += s[v];
        cum[v] = acc;
    }
    cum[n - 1] = 1.0;

    std::mt19937_64 rng(seed);
    auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto sample_s = [&]() {
        const double x = unit();
        return static_cast<NodeId>(
            std::lower_bound(cum.begin(), cum.end(), x) - cum.begin());
    };
    auto step_to_neighbor = [&](NodeId v) {
        const auto nb = g.neighbors(v);
        return nb.empty() ? v : nb[detail::bounded(rng, nb.size())];
    };

    WalkResult out;
    out.steps = steps;
    out.burn_in = steps / 10;
    out.seed = seed;
    std::vector<double> counts(n, 0.0);
    std::vector<NodeId> history;  // backstep_single uses at most one slot
    NodeId cur = sample_s();
    const double stay =
        model.kind == WalkKind::lazy
            ? 0.5
            : (model.kind == WalkKind::generalized_lazy ? model.lambda : 0.0);
    for (std::size_t t = 0; t < steps; ++t) {
        const double x = unit();
        switch (model.kind) {
            case WalkKind::traditional:
                cur = x < model.zeta ? sample_s() : step_to_neighbor(cur);
                break;
            case WalkKind::lazy:
            case WalkKind::generalized_lazy:
                if (x < model.zeta)
                    cur = sample_s();
                else if (x >= model.zeta + (1.0 - model.zeta) * stay)
                    cur = step_to_neighbor(cur);
                break;
            case WalkKind::backstep_single:
            case WalkKind::backstep_multi:
                if (x < model.zeta) {
                    cur = sample_s();
                    history.clear();
                } else if (x < model.zeta + model.beta && !history.empty()) {
                    cur = history.back();
                    history.pop_back();
                } else {
                    if (model.kind == WalkKind::backstep_single)
                        history.assign(1, cur);
                    else
                        history.push_back(cur);
                    cur = step_to_neighbor(cur);
                }
                break;
        }
        if (t >= out.burn_in) counts[cur] += 1.0;
    }
    const double total = static_cast<double>(steps - out.burn_in);
    out.empirical.resize(n);
    for (NodeId v = 0; v < n; ++v) out.empirical[v] = counts[v] / total;
    return out;
}

}  // namespace rankcap
