#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rankcap/graph.hpp"
#include "rankcap/teleport.hpp"

namespace rankcap {

/// The five random-walk variants. Every variant reduces to the traditional
/// walk at an adjusted boring factor (see equivalent_boring_factor), which
/// is what makes a single bound family cover all of them.
enum class WalkKind {
    traditional,      // move to a uniform random neighbor
    lazy,             // stay put with probability 1/2
    generalized_lazy, // stay put with probability lambda
    backstep_single,  // may step back to the previous node (one-slot history)
    backstep_multi,   // may walk back down a full history stack
};

inline const char* to_string(WalkKind k) {
    switch (k) {
        case WalkKind::traditional: return "traditional";
        case WalkKind::lazy: return "lazy";
        case WalkKind::generalized_lazy: return "generalized_lazy";
        case WalkKind::backstep_single: return "backstep_single";
        case WalkKind::backstep_multi: return "backstep_multi";
    }
    return "?";
}

/// A walk variant with its parameters. `zeta` is the boring factor (the
/// per-step teleport probability); `lambda` is the lazy stay probability;
/// `beta` is the backstep probability.
struct WalkModel {
    WalkKind kind = WalkKind::traditional;
    double zeta = 0.1;
    double lambda = 0.0;
    double beta = 0.0;

    static WalkModel traditional(double zeta) { return {WalkKind::traditional, zeta, 0, 0}; }
    static WalkModel lazy(double zeta) { return {WalkKind::lazy, zeta, 0.5, 0}; }
    static WalkModel generalized_lazy(double zeta, double lambda) {
        return {WalkKind::generalized_lazy, zeta, lambda, 0};
    }
    static WalkModel backstep_single(double zeta, double beta) {
        return {WalkKind::backstep_single, zeta, 0, beta};
    }
    static WalkModel backstep_multi(double zeta, double beta) {
        return {WalkKind::backstep_multi, zeta, 0, beta};
    }

    /// Throws std::domain_error when the parameters leave the regime in
    /// which the variant is a well-posed contraction.
    void validate() const {
        if (!(zeta > 0.0 && zeta <= 1.0))
            throw std::domain_error("zeta must lie in (0, 1]");
        switch (kind) {
            case WalkKind::traditional:
            case WalkKind::lazy:
                break;
            case WalkKind::generalized_lazy:
                if (!(lambda >= 0.0 && lambda < 1.0))
                    throw std::domain_error("lambda must lie in [0, 1)");
                break;
            case WalkKind::backstep_single:
                if (!(beta >= 0.0))
                    throw std::domain_error("beta must be non-negative");
                if (!(1.0 / (1.0 + beta) > zeta))
                    throw std::domain_error(
                        "backstep_single requires 1/(1+beta) > zeta");
                break;
            case WalkKind::backstep_multi:
                if (!(beta >= 0.0 && beta < 0.5))
                    throw std::domain_error("beta must lie in [0, 1/2)");
                if (!(1.0 - zeta - beta > 0.0))
                    throw std::domain_error(
                        "backstep_multi requires zeta + beta < 1");
                break;
        }
    }

    /// The boring factor at which the traditional walk has the same
    /// stationary distribution as this variant.
    double equivalent_boring_factor() const {
        switch (kind) {
            case WalkKind::traditional: return zeta;
            case WalkKind::lazy: return 2.0 * zeta / (1.0 + zeta);
            case WalkKind::generalized_lazy:
                return zeta / (1.0 - lambda + zeta * lambda);
            case WalkKind::backstep_single: return zeta * (1.0 + beta);
            case WalkKind::backstep_multi: return zeta / (1.0 - beta);
        }
        throw std::domain_error("unknown walk kind");
    }
};

/// Column-stochastic transition action p_ij = 1/outdeg(j). Owns a CSR copy
/// so it can represent either an undirected graph's walk or a repaired
/// directed adjacency. An out-degree-zero node (reachable only for the
/// degenerate single-node graph) keeps its mass.
class TransitionOperator {
public:
    static TransitionOperator from_undirected(const UndirectedGraph& g) {
        TransitionOperator p;
        const NodeId n = g.node_count();
        p.offsets_.resize(n + 1, 0);
        for (NodeId v = 0; v < n; ++v) p.offsets_[v + 1] = p.offsets_[v] + g.degree(v);
        p.targets_.reserve(p.offsets_[n]);
        for (NodeId v = 0; v < n; ++v)
            for (NodeId w : g.neighbors(v)) p.targets_.push_back(w);
        return p;
    }

    /// Directed out-adjacency; throws on dangling nodes unless the graph is
    /// the degenerate single node (run repair_dangling first).
    static TransitionOperator from_directed(const std::vector<std::vector<NodeId>>& adj) {
        TransitionOperator p;
        const std::size_t n = adj.size();
        if (n == 0) throw std::invalid_argument("empty adjacency");
        p.offsets_.resize(n + 1, 0);
        for (std::size_t v = 0; v < n; ++v) {
            if (adj[v].empty() && n >= 2)
                throw std::invalid_argument("dangling node " + std::to_string(v) +
                                            "; repair_dangling first");
            p.offsets_[v + 1] = p.offsets_[v] + adj[v].size();
        }
        p.targets_.reserve(p.offsets_[n]);
        for (const auto& out : adj)
            for (NodeId w : out) {
                if (w >= n) throw std::invalid_argument("edge target out of range");
                p.targets_.push_back(w);
            }
        return p;
    }

    std::size_t node_count() const { return offsets_.size() - 1; }

    std::size_t out_degree(NodeId j) const { return offsets_[j + 1] - offsets_[j]; }

    std::span<const NodeId> targets(NodeId j) const {
        return {targets_.data() + offsets_[j], targets_.data() + offsets_[j + 1]};
    }

    /// y = P x (scatter form: each node pushes x[j]/outdeg(j) to its targets).
    void apply(const std::vector<double>& x, std::vector<double>& y) const {
        const std::size_t n = node_count();
        y.assign(n, 0.0);
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t begin = offsets_[j], end = offsets_[j + 1];
            if (begin == end) {
                y[j] += x[j];  // degenerate single node: mass stays put
                continue;
            }
            const double share = x[j] / static_cast<double>(end - begin);
            for (std::size_t e = begin; e < end; ++e) y[targets_[e]] += share;
        }
    }

private:
    std::vector<std::size_t> offsets_{0};
    std::vector<NodeId> targets_;
};

/// Give every dangling node (out-degree 0) an edge to all other nodes.
/// A single-node adjacency is returned unchanged (degenerate case: the
/// transition operator keeps its mass in place).
inline std::vector<std::vector<NodeId>> repair_dangling(
    std::vector<std::vector<NodeId>> adj) {
    const std::size_t n = adj.size();
    for (std::size_t v = 0; v < n; ++v) {
        if (!adj[v].empty() || n == 1) continue;
        adj[v].reserve(n - 1);
        for (std::size_t w = 0; w < n; ++w)
            if (w != v) adj[v].push_back(static_cast<NodeId>(w));
    }
    return adj;
}

/// Which linear system the solver iterated: the traditional walk at the
/// equivalent boring factor, or the variant's own update equation.
enum class SolvePath { transform, direct };

struct SolveOptions {
    double tolerance = 1e-12;      // L1 change between successive iterates
    std::size_t max_iterations = 100000;
    SolvePath path = SolvePath::transform;
};

struct RankVector {
    std::vector<double> values;
    std::size_t iterations = 0;
    double residual = 0.0;  // final L1 change; bounds the fixed-point residual
    SolvePath path = SolvePath::transform;
};

class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(double residual, std::size_t iterations)
        : std::runtime_error("no convergence after " + std::to_string(iterations) +
                             " iterations (residual " + std::to_string(residual) + ")"),
          residual(residual),
          iterations(iterations) {}
    double residual;
    std::size_t iterations;
};

namespace detail {

/// Shared fixed-point loop: r <- self*r + move*P r + tp*s, starting at s.
/// The coefficients of every variant sum to 1, so mass is conserved.
inline RankVector affine_iterate(const TransitionOperator& P, const TeleportVector& s,
                                 double self, double move, double tp,
                                 const SolveOptions& opts) {
    const std::size_t n = P.node_count();
    if (s.size() != n) throw std::invalid_argument("teleport size mismatch");
    std::vector<double> r(s.values()), push(n), next(n);
    double delta = 0.0;
    for (std::size_t it = 1; it <= opts.max_iterations; ++it) {
        P.apply(r, push);
        delta = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            next[v] = self * r[v] + move * push[v] + tp * s[v];
            delta += std::abs(next[v] - r[v]);
        }
        r.swap(next);
        if (delta <= opts.tolerance) {
            RankVector out;
            out.values = std::move(r);
            out.iterations = it;
            out.residual = delta;
            return out;
        }
    }
    throw ConvergenceError(delta, opts.max_iterations);
}

/// Direct-path coefficients (self, move, teleport) for a variant's own
/// update equation.
inline std::array<double, 3> direct_coefficients(const WalkModel& m) {
    switch (m.kind) {
        case WalkKind::traditional:
            return {0.0, 1.0 - m.zeta, m.zeta};
        case WalkKind::lazy:
            return {(1.0 - m.zeta) / 2.0, (1.0 - m.zeta) / 2.0, m.zeta};
        case WalkKind::generalized_lazy:
            return {(1.0 - m.zeta) * m.lambda, (1.0 - m.zeta) * (1.0 - m.lambda), m.zeta};
        case WalkKind::backstep_single:
            return {m.beta / (1.0 + m.beta), 1.0 / (1.0 + m.beta) - m.zeta, m.zeta};
        case WalkKind::backstep_multi:
            return {m.beta, 1.0 - m.zeta - m.beta, m.zeta};
    }
    throw std::domain_error("unknown walk kind");
}

}  // namespace detail

/// Traditional power iteration: r = (1-zeta) P r + zeta s, from r0 = s.
inline RankVector power_iterate(const TransitionOperator& P, const TeleportVector& s,
                                double zeta, const SolveOptions& opts = {}) {
    if (!(zeta > 0.0 && zeta <= 1.0))
        throw std::domain_error("zeta must lie in (0, 1]");
    return detail::affine_iterate(P, s, 0.0, 1.0 - zeta, zeta, opts);
}

/// Solve a variant against a prebuilt transition operator.
inline RankVector rank(const TransitionOperator& P, const TeleportVector& s,
                       const WalkModel& model, const SolveOptions& opts = {}) {
    model.validate();
    RankVector out;
    if (opts.path == SolvePath::transform) {
        out = power_iterate(P, s, model.equivalent_boring_factor(), opts);
    } else {
        auto [self, move, tp] = detail::direct_coefficients(model);
        out = detail::affine_iterate(P, s, self, move, tp, opts);
    }
    out.path = opts.path;
    return out;
}

/// Solve a variant on an undirected graph. The default path solves the
/// traditional system at the equivalent boring factor (fewer iterations);
/// the direct path iterates the variant's own equation and is kept for
/// cross-validation.
inline RankVector rank(const UndirectedGraph& g, const TeleportVector& s,
                       const WalkModel& model, const SolveOptions& opts = {}) {
    return rank(TransitionOperator::from_undirected(g), s, model, opts);
}

}  // namespace rankcap
