// Command-line front end: rank computation, bipartite ranking, capacity
// bounds, graph generation, verification oracles, and the benchmark-table
// harness, all built on the header-only library.

#include <rankcap/rankcap.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace {

using namespace rankcap;

// ---------------------------------------------------------------------------
// Small helpers
// ---------------------------------------------------------------------------

std::string full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string fixed12(double x) { return detail::fmt12(x); }

enum class OutFormat { csv, json };

OutFormat format_of(const std::string& path) {
    if (path.size() > 4 && path.ends_with(".csv")) return OutFormat::csv;
    if (path.size() > 5 && path.ends_with(".json")) return OutFormat::json;
    throw std::invalid_argument("output path must end in .csv or .json: " + path);
}

FanKind parse_mode(const std::string& mode) {
    if (mode == "uniform") return FanKind::uniform;
    if (mode == "preferential") return FanKind::preferential;
    if (mode == "custom") return FanKind::custom;
    throw std::invalid_argument("unknown mode: " + mode);
}

// Model flags shared by the rank, bound, and oracle subcommands.
struct ModelArgs {
    std::string name = "trad";
    double zeta = 0.1;
    std::optional<double> lambda;
    std::optional<double> beta;

    void attach(CLI::App* cmd) {
        cmd->add_option("--model", name, "walk variant: trad|lazy|genlazy|bs1|bs")
            ->check(CLI::IsMember({"trad", "lazy", "genlazy", "bs1", "bs"}));
        cmd->add_option("--zeta", zeta, "boring factor in (0, 1]")->required();
        cmd->add_option("--lambda", lambda, "stay probability (genlazy only)");
        cmd->add_option("--beta", beta, "backstep probability (bs1/bs only)");
    }

    WalkModel build() const {
        if (name == "genlazy") {
            if (!lambda) throw std::invalid_argument("genlazy requires --lambda");
            if (beta) throw std::invalid_argument("--beta does not apply to genlazy");
            return WalkModel::generalized_lazy(zeta, *lambda);
        }
        if (name == "bs1" || name == "bs") {
            if (!beta) throw std::invalid_argument(name + " requires --beta");
            if (lambda) throw std::invalid_argument("--lambda does not apply to " + name);
            return name == "bs1" ? WalkModel::backstep_single(zeta, *beta)
                                 : WalkModel::backstep_multi(zeta, *beta);
        }
        if (lambda || beta)
            throw std::invalid_argument("--lambda/--beta do not apply to " + name);
        return name == "lazy" ? WalkModel::lazy(zeta) : WalkModel::traditional(zeta);
    }
};

// The teleport inputs of a subcommand: a fan-set file for the derived modes,
// a weight file for custom mode.
struct FanArgs {
    std::string path;
    std::string mode = "uniform";

    void attach(CLI::App* cmd, bool allow_custom) {
        cmd->add_option("--fan", path,
                        allow_custom
                            ? "fan file: node ids, or 'node weight' lines with "
                              "--mode custom"
                            : "fan file: one node id per line")
            ->required();
        cmd->add_option("--mode", mode,
                        allow_custom ? "uniform|preferential|custom"
                                     : "uniform|preferential")
            ->check(allow_custom
                        ? CLI::IsMember({"uniform", "preferential", "custom"})
                        : CLI::IsMember({"uniform", "preferential"}));
    }

    FanKind kind() const { return parse_mode(mode); }

    // Returns the teleport vector plus the fan set (the support in custom
    // mode).
    std::pair<TeleportVector, FanSet> load(const UndirectedGraph& g) const {
        auto in = detail::open_input(path);
        if (kind() == FanKind::custom) {
            const auto weights = read_teleport_weights(in);
            std::vector<NodeId> ids;
            ids.reserve(weights.size());
            for (const auto& [id, w] : weights) ids.push_back(id);
            return {custom_fan(g.node_count(), weights),
                    FanSet::from_ids(std::move(ids), g.node_count())};
        }
        FanSet set = read_fan(in, g.node_count());
        return {teleport_for(g, set, kind()), std::move(set)};
    }
};

UndirectedGraph load_undirected(const std::string& path) {
    auto in = detail::open_input(path);
    return read_undirected(in);
}

void write_values_csv(std::ostream& out, const std::vector<double>& values) {
    out << "node,rank\n";
    for (std::size_t v = 0; v < values.size(); ++v)
        out << v << ',' << full(values[v]) << '\n';
}

void write_values_json_array(std::ostream& out, const std::vector<double>& values) {
    out << '[';
    for (std::size_t v = 0; v < values.size(); ++v)
        out << (v ? "," : "") << full(values[v]);
    out << ']';
}

std::ostream& open_sink(const std::string& path, std::ofstream& file) {
    if (path.empty() || path == "-") return std::cout;
    file = detail::open_output(path);
    return file;
}

// ---------------------------------------------------------------------------
// rank
// ---------------------------------------------------------------------------

struct RankCmd {
    std::string graph_path, out_path;
    FanArgs fan;
    ModelArgs model;
    std::string path_name = "transform";
    double tolerance = 1e-12;
    std::size_t max_iterations = 100000;

    void attach(CLI::App& app) {
        CLI::App* cmd = app.add_subcommand("rank", "personalized rank of every node");
        cmd->add_option("--graph", graph_path, "edge-list file")->required();
        fan.attach(cmd, /*allow_custom=*/true);
        model.attach(cmd);
        cmd->add_option("--out", out_path, "output file (.csv or .json)")->required();
        cmd->add_option("--path", path_name, "solve path: transform|direct")
            ->check(CLI::IsMember({"transform", "direct"}));
        cmd->add_option("--tolerance", tolerance, "L1 convergence tolerance");
        cmd->add_option("--max-iterations", max_iterations, "iteration cap");
        cmd->callback([this] { run(); });
    }

    void run() const {
        const UndirectedGraph g = load_undirected(graph_path);
        const auto [s, set] = fan.load(g);
        const WalkModel m = model.build();
        SolveOptions opts;
        opts.tolerance = tolerance;
        opts.max_iterations = max_iterations;
        opts.path = path_name == "direct" ? SolvePath::direct : SolvePath::transform;
        const RankVector r = rank(g, s, m, opts);

        auto out = detail::open_output(out_path);
        if (format_of(out_path) == OutFormat::csv) {
            write_values_csv(out, r.values);
            return;
        }
        out << "{\"model\":\"" << to_string(m.kind) << "\",\"zeta\":" << full(m.zeta)
            << ",\"lambda\":" << full(m.lambda) << ",\"beta\":" << full(m.beta)
            << ",\"mode\":\"" << fan.mode << "\",\"path\":\""
            << (r.path == SolvePath::direct ? "direct" : "transform")
            << "\",\"iterations\":" << r.iterations
            << ",\"residual\":" << full(r.residual) << ",\"values\":";
        write_values_json_array(out, r.values);
        out << "}\n";
    }
};

// ---------------------------------------------------------------------------
// birank
// ---------------------------------------------------------------------------

struct BirankCmd {
    std::string graph_path, out_path, fan_clients, fan_items;
    std::string mode = "uniform";
    double zeta_kp = 0.1, zeta_pk = 0.1;
    double tolerance = 1e-12;
    std::size_t max_iterations = 100000;

    void attach(CLI::App& app) {
        CLI::App* cmd =
            app.add_subcommand("birank", "coupled client/item rank on a bipartite graph");
        cmd->add_option("--graph", graph_path,
                        "edge-list file with a 'bipartite K P' header")
            ->required();
        cmd->add_option("--zeta-kp", zeta_kp, "boring factor of the client->item pass")
            ->required();
        cmd->add_option("--zeta-pk", zeta_pk, "boring factor of the item->client pass")
            ->required();
        cmd->add_option("--fan-clients", fan_clients, "client-side fan ids (0..K-1)")
            ->required();
        cmd->add_option("--fan-items", fan_items,
                        "item-side fan ids, offset by K as in the graph file")
            ->required();
        cmd->add_option("--mode", mode, "uniform|preferential")
            ->check(CLI::IsMember({"uniform", "preferential"}));
        cmd->add_option("--out", out_path, "output file (.csv or .json)")->required();
        cmd->add_option("--tolerance", tolerance, "L1 convergence tolerance");
        cmd->add_option("--max-iterations", max_iterations, "iteration cap");
        cmd->callback([this] { run(); });
    }

    void run() const {
        auto gin = detail::open_input(graph_path);
        const BipartiteGraph g = read_bipartite(gin);
        auto cin_ = detail::open_input(fan_clients);
        const FanSet clients = read_fan(cin_, g.client_count());
        auto iin = detail::open_input(fan_items);
        const FanSet items_offset =
            read_fan(iin, g.client_count() + g.item_count());
        std::vector<NodeId> item_ids;
        for (NodeId v : items_offset.ids()) {
            if (v < g.client_count())
                throw std::invalid_argument(
                    "item fan id " + std::to_string(v) +
                    " lies in the client range; item ids start at " +
                    std::to_string(g.client_count()));
            item_ids.push_back(v - g.client_count());
        }
        const FanSet items = FanSet::from_ids(std::move(item_ids), g.item_count());

        const FanKind kind = parse_mode(mode);
        const TeleportVector sk = bipartite_client_fan(g, clients, kind);
        const TeleportVector sp = bipartite_item_fan(g, items, kind);
        const BipartiteModel m{zeta_kp, zeta_pk};
        SolveOptions opts;
        opts.tolerance = tolerance;
        opts.max_iterations = max_iterations;
        const BipartiteRank r = bipartite_iterate(g, sk, sp, m, opts);

        auto out = detail::open_output(out_path);
        if (format_of(out_path) == OutFormat::csv) {
            out << "side,node,rank\n";
            for (NodeId c = 0; c < g.client_count(); ++c)
                out << "client," << c << ',' << full(r.client_values[c]) << '\n';
            for (NodeId i = 0; i < g.item_count(); ++i)
                out << "item," << (g.client_count() + i) << ','
                    << full(r.item_values[i]) << '\n';
            return;
        }
        out << "{\"zeta_kp\":" << full(zeta_kp) << ",\"zeta_pk\":" << full(zeta_pk)
            << ",\"mode\":\"" << mode << "\",\"iterations\":" << r.iterations
            << ",\"residual\":" << full(r.residual) << ",\"clients\":";
        write_values_json_array(out, r.client_values);
        out << ",\"items\":";
        write_values_json_array(out, r.item_values);
        out << "}\n";
    }
};

// ---------------------------------------------------------------------------
// bound
// ---------------------------------------------------------------------------

struct BoundCmd {
    std::string graph_path, report_path;
    FanArgs fan;
    ModelArgs model;

    void attach(CLI::App& app) {
        CLI::App* cmd = app.add_subcommand(
            "bound", "capacity bound for a fan set, with measured tightness");
        cmd->add_option("--graph", graph_path, "edge-list file")->required();
        fan.attach(cmd, /*allow_custom=*/true);
        model.attach(cmd);
        cmd->add_option("--report", report_path, "JSON report path")->required();
        cmd->callback([this] { run(); });
    }

    void run() const {
        const UndirectedGraph g = load_undirected(graph_path);
        const auto [s, set] = fan.load(g);
        const WalkModel m = model.build();
        const TeleportVector* custom = fan.kind() == FanKind::custom ? &s : nullptr;
        const BoundReport rep = tightness_report(g, set, m, fan.kind(), custom);

        auto out = detail::open_output(report_path);
        out << "{\n"
            << "  \"model\": \"" << to_string(m.kind) << "\",\n"
            << "  \"zeta\": " << fixed12(m.zeta) << ",\n"
            << "  \"lambda\": " << fixed12(m.lambda) << ",\n"
            << "  \"beta\": " << fixed12(m.beta) << ",\n"
            << "  \"mode\": \"" << to_string(rep.fan_kind) << "\",\n"
            << "  \"set_size\": " << rep.set_size << ",\n"
            << "  \"boundary\": " << rep.boundary << ",\n"
            << "  \"set_volume\": " << rep.set_volume << ",\n"
            << "  \"set_min_degree\": " << rep.set_min_degree << ",\n"
            << "  \"outflow_zeta\": " << fixed12(rep.outflow_zeta) << ",\n"
            << "  \"factor\": " << fixed12(rep.factor) << ",\n"
            << "  \"per_link_cap\": " << fixed12(rep.per_link_cap) << ",\n"
            << "  \"bound\": " << fixed12(rep.bound) << ",\n"
            << "  \"outside\": " << fixed12(rep.outside) << ",\n"
            << "  \"outflow\": " << fixed12(rep.outflow) << ",\n"
            << "  \"rel_left\": "
            << (rep.rel_left ? fixed12(*rep.rel_left) : std::string("null")) << ",\n"
            << "  \"iterations\": " << rep.iterations << ",\n"
            << "  \"compliant\": " << (rep.compliant ? "true" : "false") << "\n"
            << "}\n";
        if (!rep.compliant)
            std::cerr << "warning: measured outflow exceeds the bound\n";
    }
};

// ---------------------------------------------------------------------------
// generate
// ---------------------------------------------------------------------------

struct GenerateCmd {
    bool zone = false;
    std::size_t factor = 1;
    std::string variant = "tree";
    std::optional<std::size_t> e_count, e_degree;
    std::optional<NodeId> random_n;
    std::size_t extra = 0;
    std::vector<NodeId> random_bipartite_sides;
    std::optional<std::size_t> edges;
    std::uint64_t seed = 1;
    std::string out_path;

    void attach(CLI::App& app) {
        CLI::App* cmd = app.add_subcommand(
            "generate", "write a benchmark or random graph plus its fan-set sidecar");
        cmd->add_flag("--zone", zone, "benchmark zone network");
        cmd->add_option("--factor", factor, "zone scale factor");
        cmd->add_option("--variant", variant, "tree|complex")
            ->check(CLI::IsMember({"tree", "complex"}));
        cmd->add_option("--e-count", e_count, "override the e-zone size");
        cmd->add_option("--e-degree", e_degree, "override the e-zone total degree");
        cmd->add_option("--random", random_n, "random connected graph on N nodes");
        cmd->add_option("--extra", extra, "extra edges beyond the spanning tree");
        cmd->add_option("--random-bipartite", random_bipartite_sides,
                        "random connected bipartite graph: K P")
            ->expected(2);
        cmd->add_option("--edges", edges, "bipartite edge count");
        cmd->add_option("--seed", seed, "generator seed");
        cmd->add_option("--out", out_path, "edge-list output path")->required();
        cmd->callback([this] { run(); });
    }

    void run() const {
        const int chosen = (zone ? 1 : 0) + (random_n ? 1 : 0) +
                           (random_bipartite_sides.empty() ? 0 : 1);
        if (chosen != 1)
            throw std::invalid_argument(
                "choose exactly one of --zone, --random, --random-bipartite");

        if (zone) {
            ZoneSpec spec = zone_spec(
                factor, variant == "tree" ? ZoneVariant::tree : ZoneVariant::complex);
            if (e_count) spec.e_count = *e_count;
            if (e_degree) spec.e_total_degree = *e_degree;
            const ZoneNetwork net = zone_graph(spec);
            auto out = detail::open_output(out_path);
            write_graph(out, net.graph);
            auto fan_out = detail::open_output(out_path + ".fan");
            write_fan(fan_out, net.fan);
            return;
        }
        if (random_n) {
            const UndirectedGraph g = random_connected_graph(*random_n, extra, seed);
            auto out = detail::open_output(out_path);
            write_graph(out, g);
            auto fan_out = detail::open_output(out_path + ".fan");
            write_fan(fan_out, random_fan_set(g.node_count(), seed + 1));
            return;
        }
        const NodeId nc = random_bipartite_sides[0], ni = random_bipartite_sides[1];
        const std::size_t want =
            edges ? *edges : static_cast<std::size_t>(nc) + ni - 1 + extra;
        const BipartiteGraph g = random_bipartite(nc, ni, want, seed);
        auto out = detail::open_output(out_path);
        write_graph(out, g);
        auto cfan = detail::open_output(out_path + ".fan-clients");
        write_fan(cfan, random_fan_set(nc, seed + 1));
        auto ifan = detail::open_output(out_path + ".fan-items");
        FanSet items = random_fan_set(ni, seed + 2);
        std::vector<NodeId> offset;
        for (NodeId v : items.ids()) offset.push_back(nc + v);
        write_fan(ifan, FanSet::from_ids(std::move(offset), nc + ni));
    }
};

// ---------------------------------------------------------------------------
// oracle zone | dense | walk
// ---------------------------------------------------------------------------

struct OracleZoneCmd {
    std::size_t factor = 1;
    std::string variant = "tree";
    std::string mode = "uniform";
    double zeta = 0.1;
    std::optional<std::size_t> a_count, b_count, e_count, e_degree;
    std::string out_path;

    void attach(CLI::App* oracle) {
        CLI::App* cmd = oracle->add_subcommand(
            "zone", "closed-form solve of a zone network (no graph built)");
        cmd->add_option("--factor", factor, "zone scale factor");
        cmd->add_option("--variant", variant, "tree|complex")
            ->check(CLI::IsMember({"tree", "complex"}));
        cmd->add_option("--mode", mode, "uniform|preferential")
            ->check(CLI::IsMember({"uniform", "preferential"}));
        cmd->add_option("--zeta", zeta, "boring factor");
        cmd->add_option("--a-count", a_count, "override the a-zone size");
        cmd->add_option("--b-count", b_count, "override the b-zone size");
        cmd->add_option("--e-count", e_count, "override the e-zone size");
        cmd->add_option("--e-degree", e_degree, "override the e-zone total degree");
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->callback([this] { run(); });
    }

    void run() const {
        ZoneSpec spec = zone_spec(
            factor, variant == "tree" ? ZoneVariant::tree : ZoneVariant::complex);
        if (a_count) spec.a_count = *a_count;
        if (b_count) spec.b_count = *b_count;
        if (e_count) spec.e_count = *e_count;
        if (e_degree) spec.e_total_degree = *e_degree;
        const ZoneSolution sol = zone_solve(spec, parse_mode(mode), zeta);

        std::ofstream file;
        std::ostream& out = open_sink(out_path, file);
        out << "{\"a_count\":" << spec.a_count << ",\"b_count\":" << spec.b_count
            << ",\"e_count\":" << spec.e_count
            << ",\"e_total_degree\":" << spec.e_total_degree << ",\"mode\":\"" << mode
            << "\",\"zeta\":" << full(zeta) << ",\"r_a\":" << full(sol.r_a)
            << ",\"r_b\":" << full(sol.r_b) << ",\"r_c\":" << full(sol.r_c)
            << ",\"r_d\":" << full(sol.r_d) << ",\"r_e\":" << full(sol.r_e)
            << ",\"outflow\":" << full(sol.outflow) << ",\"limit\":" << full(sol.limit)
            << ",\"rel_left\":" << full(sol.rel_left) << "}\n";
    }
};

struct OracleDenseCmd {
    std::string graph_path, out_path;
    FanArgs fan;
    ModelArgs model;

    void attach(CLI::App* oracle) {
        CLI::App* cmd =
            oracle->add_subcommand("dense", "direct linear solve of the walk equations");
        cmd->add_option("--graph", graph_path, "edge-list file")->required();
        fan.attach(cmd, /*allow_custom=*/true);
        model.attach(cmd);
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->callback([this] { run(); });
    }

    void run() const {
        const UndirectedGraph g = load_undirected(graph_path);
        const auto [s, set] = fan.load(g);
        const WalkModel m = model.build();
        const std::vector<double> values = dense_solve(g, s, m);
        std::ofstream file;
        std::ostream& out = open_sink(out_path, file);
        out << "{\"model\":\"" << to_string(m.kind) << "\",\"zeta\":" << full(m.zeta)
            << ",\"lambda\":" << full(m.lambda) << ",\"beta\":" << full(m.beta)
            << ",\"values\":";
        write_values_json_array(out, values);
        out << "}\n";
    }
};

struct OracleWalkCmd {
    std::string graph_path, out_path;
    FanArgs fan;
    ModelArgs model;
    std::size_t steps = 1000000;
    std::uint64_t seed = 1;

    void attach(CLI::App* oracle) {
        CLI::App* cmd = oracle->add_subcommand(
            "walk", "empirical visit distribution of a simulated browser");
        cmd->add_option("--graph", graph_path, "edge-list file")->required();
        fan.attach(cmd, /*allow_custom=*/true);
        model.attach(cmd);
        cmd->add_option("--steps", steps, "number of recorded steps")->required();
        cmd->add_option("--seed", seed, "PRNG seed")->required();
        cmd->add_option("--out", out_path, "output path (default: stdout)");
        cmd->callback([this] { run(); });
    }

    void run() const {
        const UndirectedGraph g = load_undirected(graph_path);
        const auto [s, set] = fan.load(g);
        const WalkModel m = model.build();
        const WalkResult r = simulate_walker(g, s, m, steps, seed);
        std::ofstream file;
        std::ostream& out = open_sink(out_path, file);
        out << "{\"model\":\"" << to_string(m.kind) << "\",\"zeta\":" << full(m.zeta)
            << ",\"lambda\":" << full(m.lambda) << ",\"beta\":" << full(m.beta)
            << ",\"steps\":" << r.steps << ",\"burn_in\":" << r.burn_in
            << ",\"seed\":" << r.seed << ",\"prng\":\"" << r.prng
            << "\",\"empirical\":";
        write_values_json_array(out, r.empirical);
        out << "}\n";
    }
};

// ---------------------------------------------------------------------------
// experiment
// ---------------------------------------------------------------------------

struct ExperimentCmd {
    int table = 0;
    bool all = false;
    std::string format = "csv";
    std::string out_path;
    ExperimentConfig cfg;

    void attach(CLI::App& app) {
        CLI::App* cmd = app.add_subcommand(
            "experiment", "reproduce the benchmark tables and check every bound");
        cmd->add_option("--table", table, "table number 1..7");
        cmd->add_flag("--all", all, "run every table into the --out directory");
        cmd->add_option("--max-explicit-factor", cfg.max_explicit_factor,
                        "largest factor for which the explicit graph is also built");
        cmd->add_option("--format", format, "csv|json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", out_path, "output file (directory with --all)")
            ->required();
        cmd->callback([this] { run(); });
    }

    void run() const {
        if (all == (table != 0))
            throw std::invalid_argument("choose either --table N or --all");
        bool compliant = true;
        if (all) {
            std::filesystem::create_directories(out_path);
            for (int t = 1; t <= 7; ++t) {
                const std::vector<ExperimentRow> rows = run_table(t, cfg);
                compliant = compliant && all_compliant(rows);
                const std::string file = out_path + "/table" + std::to_string(t) +
                                         (format == "csv" ? ".csv" : ".json");
                auto out = detail::open_output(file);
                format == "csv" ? emit_csv(rows, out) : emit_json(rows, out);
            }
        } else {
            const std::vector<ExperimentRow> rows = run_table(table, cfg);
            compliant = all_compliant(rows);
            auto out = detail::open_output(out_path);
            format == "csv" ? emit_csv(rows, out) : emit_json(rows, out);
        }
        if (!compliant) {
            std::cerr << "error: at least one row violates its capacity bound\n";
            std::exit(3);
        }
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Personalized-rank toolkit: walk variants, capacity bounds, zone "
        "networks, and verification oracles"};
    app.require_subcommand(1);

    RankCmd rank_cmd;
    BirankCmd birank_cmd;
    BoundCmd bound_cmd;
    GenerateCmd generate_cmd;
    ExperimentCmd experiment_cmd;
    OracleZoneCmd oracle_zone;
    OracleDenseCmd oracle_dense;
    OracleWalkCmd oracle_walk;

    rank_cmd.attach(app);
    birank_cmd.attach(app);
    bound_cmd.attach(app);
    generate_cmd.attach(app);
    CLI::App* oracle =
        app.add_subcommand("oracle", "independent verification oracles");
    oracle->require_subcommand(1);
    oracle_zone.attach(oracle);
    oracle_dense.attach(oracle);
    oracle_walk.attach(oracle);
    experiment_cmd.attach(app);

    try {
        CLI11_PARSE(app, argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
