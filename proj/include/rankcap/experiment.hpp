#pragma once

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "rankcap/bounds.hpp"
#include "rankcap/engine.hpp"
#include "rankcap/netgen.hpp"
#include "rankcap/oracle.hpp"
#include "rankcap/teleport.hpp"

namespace rankcap {

/// One benchmark row: the per-zone ranks of a zone network, the outflow of
/// the canonical region U = {d} ∪ e, and its capacity limit.
struct ExperimentRow {
    int table = 0;
    std::string label;
    std::string mode;     // "uniform" | "preferential"
    std::string solver;   // "iterate" | "zone"
    std::size_t factor = 0;  // 0 for structure-sweep rows
    std::size_t e_degree = 0;
    std::size_t e_count = 0;
    double r_a = 0, r_b = 0, r_c = 0, r_d = 0, r_e = 0;
    double outflow = 0, limit = 0, rel_left = 0;
    bool dual_checked = false;   // explicit iterate cross-checked vs zone solver
    double dual_max_rel = 0.0;   // largest relative gap between the two solvers
    bool compliant = true;       // outflow <= limit + 1e-12
};

struct ExperimentConfig {
    std::size_t max_explicit_factor = 100;  // larger factors go zone-only
    double zeta = 0.1;
    SolveOptions solve;
    unsigned threads = 0;  // 0: RANKCAP_THREADS env var, else hardware
};

inline unsigned experiment_threads(const ExperimentConfig& cfg) {
    if (cfg.threads > 0) return cfg.threads;
    if (const char* env = std::getenv("RANKCAP_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

namespace detail {

inline double rel_gap(double a, double b) {
    const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
    return std::abs(a - b) / scale;
}

/// Compute one row. The zone solver always runs; the explicit graph is
/// additionally built and iterated when requested and realizable, in which
/// case the row reports the iterated values and the zone solution becomes
/// the cross-check.
inline ExperimentRow zone_row(int table, std::string label, const ZoneSpec& spec,
                              FanKind mode, bool want_explicit,
                              const ExperimentConfig& cfg) {
    ExperimentRow row;
    row.table = table;
    row.label = std::move(label);
    row.mode = to_string(mode);
    row.e_degree = spec.e_total_degree;
    row.e_count = spec.e_count;

    const ZoneSolution zone = zone_solve(spec, mode, cfg.zeta);
    row.r_a = zone.r_a;
    row.r_b = zone.r_b;
    row.r_c = zone.r_c;
    row.r_d = zone.r_d;
    row.r_e = zone.r_e;
    row.outflow = zone.outflow;
    row.limit = zone.limit;
    row.rel_left = zone.rel_left;
    row.solver = "zone";

    const bool realizable =
        spec.internal_degree() % 2 == 0 || spec.e_count % 2 == 0;
    if (want_explicit && realizable) {
        const ZoneNetwork net = zone_graph(spec);
        const TeleportVector s = teleport_for(net.graph, net.fan, mode);
        const RankVector r =
            power_iterate(TransitionOperator::from_undirected(net.graph), s,
                          cfg.zeta, cfg.solve);
        ExperimentRow it = row;
        it.r_a = r.values[net.rep_a];
        it.r_b = r.values[net.rep_b];
        it.r_c = r.values[net.rep_c];
        it.r_d = r.values[net.rep_d];
        it.r_e = r.values[net.rep_e];
        it.outflow = cfg.zeta * outside_mass(r.values, net.fan);
        it.limit = row.limit;
        it.rel_left = 1.0 - it.outflow / it.limit;
        it.solver = "iterate";
        it.dual_checked = true;
        double gap = 0.0;
        gap = std::max(gap, rel_gap(it.r_a, row.r_a));
        gap = std::max(gap, rel_gap(it.r_b, row.r_b));
        gap = std::max(gap, rel_gap(it.r_c, row.r_c));
        gap = std::max(gap, rel_gap(it.r_d, row.r_d));
        gap = std::max(gap, rel_gap(it.r_e, row.r_e));
        gap = std::max(gap, rel_gap(it.outflow, row.outflow));
        it.dual_max_rel = gap;
        row = it;
    }
    row.compliant = row.outflow <= row.limit + 1e-12;
    return row;
}

}  // namespace detail

/// The benchmark tables:
///   1: zone F=1, tree e-zone, uniform + preferential fans
///   2: zone F=1, complex e-zone, uniform + preferential fans
///   3: scaled complex zones, preferential, F = 10 .. 100000
///   4: scaled complex zones, uniform, F = 10 .. 1000000
///   5: F = 1000000 with densified e-zones, uniform
///   6: structure sweep at constant preferential limit (60000-hub periphery)
///   7: structure sweep at constant uniform limit (60000-hub periphery)
inline std::vector<ExperimentRow> run_table(int table,
                                            const ExperimentConfig& cfg = {}) {
    struct Job {
        std::string label;
        ZoneSpec spec;
        FanKind mode;
        bool want_explicit;
        std::size_t factor;
    };
    std::vector<Job> jobs;
    auto scaled = [&](std::size_t factor, FanKind mode) {
        jobs.push_back({"F=" + std::to_string(factor),
                        zone_spec(factor, ZoneVariant::complex), mode,
                        factor <= cfg.max_explicit_factor, factor});
    };
    switch (table) {
        case 1:
            for (FanKind mode : {FanKind::uniform, FanKind::preferential})
                jobs.push_back({"tree", zone_spec(1, ZoneVariant::tree), mode,
                                1 <= cfg.max_explicit_factor, 1});
            break;
        case 2:
            for (FanKind mode : {FanKind::uniform, FanKind::preferential})
                jobs.push_back({"complex", zone_spec(1, ZoneVariant::complex), mode,
                                1 <= cfg.max_explicit_factor, 1});
            break;
        case 3:
            for (std::size_t f : {10, 100, 1000, 10000, 100000})
                scaled(f, FanKind::preferential);
            break;
        case 4:
            for (std::size_t f : {10, 100, 1000, 10000, 100000, 1000000})
                scaled(f, FanKind::uniform);
            break;
        case 5:
            for (std::size_t dg : {5000000, 5500000, 5900000, 5990000, 5999000, 5999900}) {
                ZoneSpec spec = zone_spec(1000000, ZoneVariant::complex);
                spec.e_total_degree = dg;
                jobs.push_back({"deg=" + std::to_string(dg), spec, FanKind::uniform,
                                false, 1000000});
            }
            break;
        case 6:
            for (auto [dg, cnt] :
                 std::vector<std::pair<std::size_t, std::size_t>>{
                     {511, 1024}, {255, 2048}, {127, 4096}, {63, 8192}, {31, 16384},
                     {15, 32768}, {7, 65536}, {3, 131072}, {1, 262144}})
                jobs.push_back({"deg=" + std::to_string(dg) +
                                    " count=" + std::to_string(cnt),
                                table67_zone_spec(dg, cnt), FanKind::preferential,
                                false, 0});
            break;
        case 7:
            for (auto [dg, cnt] :
                 std::vector<std::pair<std::size_t, std::size_t>>{
                     {4, 131071}, {8, 65535}, {16, 32767}, {32, 16383}, {64, 8191},
                     {128, 4095}, {256, 2047}, {512, 1023}})
                jobs.push_back({"deg=" + std::to_string(dg) +
                                    " count=" + std::to_string(cnt),
                                table67_zone_spec(dg, cnt), FanKind::uniform, false, 0});
            break;
        default:
            throw std::invalid_argument("table id must lie in 1..7");
    }

    std::vector<ExperimentRow> rows(jobs.size());
    auto compute = [&](std::size_t j) {
        rows[j] = detail::zone_row(table, jobs[j].label, jobs[j].spec, jobs[j].mode,
                                   jobs[j].want_explicit, cfg);
        rows[j].factor = jobs[j].factor;
    };
    const unsigned threads =
        std::min<unsigned>(experiment_threads(cfg), static_cast<unsigned>(jobs.size()));
    if (threads <= 1) {
        for (std::size_t j = 0; j < jobs.size(); ++j) compute(j);
        return rows;
    }
    std::vector<std::future<void>> workers;
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < threads; ++w)
        workers.push_back(std::async(std::launch::async, [&] {
            for (std::size_t j = next.fetch_add(1); j < jobs.size();
                 j = next.fetch_add(1))
                compute(j);
        }));
    for (auto& w : workers) w.get();
    return rows;
}

inline std::vector<ExperimentRow> run_all_tables(const ExperimentConfig& cfg = {}) {
    std::vector<ExperimentRow> rows;
    for (int t = 1; t <= 7; ++t) {
        auto part = run_table(t, cfg);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

inline bool all_compliant(const std::vector<ExperimentRow>& rows) {
    for (const auto& r : rows)
        if (!r.compliant) return false;
    return true;
}

namespace detail {

inline std::string fmt12(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

}  // namespace detail

inline void emit_csv(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    out << "table,label,mode,solver,factor,e_degree,e_count,"
           "r_a,r_b,r_c,r_d,r_e,outflow,limit,rel_left,"
           "dual_checked,dual_max_rel,compliant\n";
    for (const auto& r : rows) {
        out << r.table << ',' << r.label << ',' << r.mode << ',' << r.solver << ','
            << r.factor << ',' << r.e_degree << ',' << r.e_count << ','
            << detail::fmt12(r.r_a) << ',' << detail::fmt12(r.r_b) << ','
            << detail::fmt12(r.r_c) << ',' << detail::fmt12(r.r_d) << ','
            << detail::fmt12(r.r_e) << ',' << detail::fmt12(r.outflow) << ','
            << detail::fmt12(r.limit) << ',' << detail::fmt12(r.rel_left) << ','
            << (r.dual_checked ? "true" : "false") << ','
            << detail::fmt12(r.dual_max_rel) << ','
            << (r.compliant ? "true" : "false") << '\n';
    }
}

inline void emit_json(const std::vector<ExperimentRow>& rows, std::ostream& out) {
    out << "[\n";
    for (std::size_t j = 0; j < rows.size(); ++j) {
        const auto& r = rows[j];
        out << "  {\"table\": " << r.table << ", \"label\": \"" << r.label
            << "\", \"mode\": \"" << r.mode << "\", \"solver\": \"" << r.solver
            << "\", \"factor\": " << r.factor << ", \"e_degree\": " << r.e_degree
            << ", \"e_count\": " << r.e_count << ", \"r_a\": " << detail::fmt12(r.r_a)
            << ", \"r_b\": " << detail::fmt12(r.r_b)
            << ", \"r_c\": " << detail::fmt12(r.r_c)
            << ", \"r_d\": " << detail::fmt12(r.r_d)
            << ", \"r_e\": " << detail::fmt12(r.r_e)
            << ", \"outflow\": " << detail::fmt12(r.outflow)
            << ", \"limit\": " << detail::fmt12(r.limit)
            << ", \"rel_left\": " << detail::fmt12(r.rel_left)
            << ", \"dual_checked\": " << (r.dual_checked ? "true" : "false")
            << ", \"dual_max_rel\": " << detail::fmt12(r.dual_max_rel)
            << ", \"compliant\": " << (r.compliant ? "true" : "false") << "}"
            << (j + 1 < rows.size() ? "," : "") << "\n";
    }
    out << "]\n";
}

}  // namespace rankcap
