#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "syncpersist/bounds.hpp"
#include "syncpersist/csv.hpp"
#include "syncpersist/experiments.hpp"
#include "syncpersist/graph.hpp"
#include "syncpersist/rng.hpp"
#include "syncpersist/spectra.hpp"

namespace fs = std::filesystem;

namespace syncpersist::cli {
namespace {

constexpr const char* usage_text =
    "usage: syncpersist <subcommand> [options]\n"
    "\n"
    "subcommands:\n"
    "  gen-graph     write an edge list (complete, path, star, er, ba)\n"
    "  spectra       print \"n lambda2 opnorm g_min g_max\" for an edge list\n"
    "  bounds        coupling threshold, perturbation bound and decay rate table\n"
    "  tongue        (alpha, delta) sweep of the synchronization error\n"
    "  fastlimit     the same sweep under fast forcing (omega = 1000 by default)\n"
    "  scaling       delta_max against network size\n"
    "  fit-boundary  fit delta = c1 - c2/alpha to a tongue CSV\n"
    "\n"
    "Run `syncpersist <subcommand> --help` for the options of one subcommand.\n";

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fixed6(double v) {
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, 6);
    return {buf.data(), res.ptr};
}

// Manifest lines use the config-file syntax, so a manifest can be fed back
// through --config.
class Manifest {
public:
    explicit Manifest(std::string subcommand) { text_ << "# syncpersist " << subcommand << " manifest\n"; }
    void add(const std::string& key, const std::string& value) { text_ << key << " = \"" << value << "\"\n"; }
    void add(const std::string& key, double value) { text_ << key << " = " << format_double(value) << '\n'; }
    void add(const std::string& key, std::uint64_t value) { text_ << key << " = " << value << '\n'; }
    void add(const std::string& key, bool value) { text_ << key << " = " << (value ? "true" : "false") << '\n'; }
    std::string str() const { return text_.str(); }

private:
    std::ostringstream text_;
};

Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open graph file " + path);
    }
    return read_edge_list(in);
}

RkMethod parse_method(const std::string& name) {
    if (name == "rk6") {
        return RkMethod::rk6;
    }
    if (name == "rk4") {
        return RkMethod::rk4;
    }
    throw UsageError("unknown method \"" + name + "\" (expected rk4 or rk6)");
}

struct Common {
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    std::string out_dir;
};

void add_common(CLI::App& app, Common& c, const std::string& default_out) {
    c.out_dir = default_out;
    app.add_option("--seed", c.seed, "master seed")->envname("SYNCPERSIST_SEED");
    app.add_option("--workers", c.workers, "worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", c.out_dir, "output directory");
}

// Synchronization-error settings shared by the experiment subcommands. Unset
// values fall back to the desk or full-scale preset.
struct SyncFlags {
    std::optional<double> tau;
    std::optional<double> horizon;
    std::optional<std::size_t> ensemble;
    double ic_jitter = 0.1;
    double loss_threshold = 10.0;
    double sync_threshold = 1.0;
    double dt = 0.01;
    std::string method = "rk6";
    bool fixed_step = false;
    bool symmetric_mismatch = false;
    bool paper_scale = false;

    void add(CLI::App& app) {
        app.add_option("--tau", tau, "start of the averaging window");
        app.add_option("--horizon", horizon, "end of each run (T)");
        app.add_option("--ensemble", ensemble, "initial conditions per cell");
        app.add_option("--ic-jitter", ic_jitter, "uniform jitter added to each initial component");
        app.add_option("--loss-threshold", loss_threshold, "E_a above this counts as lost synchronization");
        app.add_option("--sync-threshold", sync_threshold, "E_a below this counts as synchronized");
        app.add_option("--dt", dt, "largest integration step");
        app.add_option("--method", method, "rk6 or rk4");
        app.add_flag("--fixed-step", fixed_step, "never shrink the step below --dt");
        app.add_flag("--symmetric-mismatch", symmetric_mismatch, "use R_ji = R_ij");
        app.add_flag("--paper-scale", paper_scale, "tau 1000, T 2000, 20 members, 201 x 101 grid");
    }

    SyncErrorConfig resolve() const {
        SyncErrorConfig cfg = paper_scale ? SyncErrorConfig::paper() : SyncErrorConfig::desk();
        if (tau) {
            cfg.transient = *tau;
        }
        if (horizon) {
            cfg.horizon = *horizon;
        }
        if (ensemble) {
            cfg.ensemble_size = *ensemble;
        }
        cfg.ic_jitter = ic_jitter;
        cfg.loss_threshold = loss_threshold;
        cfg.sync_threshold = sync_threshold;
        cfg.integrator.step = dt;
        cfg.integrator.method = parse_method(method);
        cfg.auto_step = !fixed_step;
        cfg.validate();
        if (!(dt > 0.0)) {
            throw std::invalid_argument("--dt must be positive");
        }
        return cfg;
    }

    void record(Manifest& m, const SyncErrorConfig& cfg) const {
        m.add("tau", cfg.transient);
        m.add("horizon", cfg.horizon);
        m.add("ensemble", static_cast<std::uint64_t>(cfg.ensemble_size));
        m.add("ic-jitter", cfg.ic_jitter);
        m.add("loss-threshold", cfg.loss_threshold);
        m.add("sync-threshold", cfg.sync_threshold);
        m.add("dt", cfg.integrator.step);
        m.add("method", method);
        m.add("fixed-step", fixed_step);
        m.add("symmetric-mismatch", symmetric_mismatch);
    }
};

void write_fit_file(const fs::path& path, const BoundaryFit& fit) {
    std::ostringstream os;
    os << "c1,c2,eta,K,r_squared,rms\n"
       << format_double(fit.c1) << ',' << format_double(fit.c2) << ',' << format_double(fit.constants.eta) << ','
       << format_double(fit.constants.K) << ',' << format_double(fit.r_squared) << ',' << format_double(fit.rms)
       << '\n';
    atomic_write(path, os.str());
}

void print_fit(std::ostream& out, const BoundaryFit& fit, std::size_t points) {
    out << "boundary points: " << points << '\n'
        << "c1 = " << format_double(fit.c1) << ", c2 = " << format_double(fit.c2)
        << ", r_squared = " << format_double(fit.r_squared) << '\n'
        << "constants: " << to_string(fit.constants.source) << " (eta = " << format_double(fit.constants.eta)
        << ", K = " << format_double(fit.constants.K) << ")\n";
}

int cmd_gen_graph(CLI::App& app, std::vector<std::string>& args, std::ostream& out) {
    std::string kind = "complete";
    std::size_t n = 2;
    double p = 0.3;
    std::size_t m0 = 2;
    std::uint64_t seed = 0;
    std::string path;
    app.add_option("--kind", kind, "complete, path, star, er or ba")
        ->check(CLI::IsMember({"complete", "path", "star", "er", "ba"}));
    app.add_option("--n", n, "number of nodes");
    app.add_option("--p", p, "edge probability (er)");
    app.add_option("--m0", m0, "edges per new node (ba)");
    app.add_option("--seed", seed, "graph seed")->envname("SYNCPERSIST_SEED");
    app.add_option("--out", path, "edge-list file (default: stdout)");
    app.parse(args);

    GraphKind k = CompleteGraph{};
    if (kind == "path") {
        k = PathGraph{};
    } else if (kind == "star") {
        k = StarGraph{};
    } else if (kind == "er") {
        k = ErdosRenyi{p};
    } else if (kind == "ba") {
        k = BarabasiAlbert{m0};
    }
    const Graph g = generate({k, n, derive_seed(seed, {static_cast<std::uint64_t>(Stream::graph)})});
    std::ostringstream os;
    write_edge_list(os, g);
    if (path.empty()) {
        out << os.str();
    } else {
        atomic_write(path, os.str());
    }
    return 0;
}

int cmd_spectra(CLI::App& app, std::vector<std::string>& args, std::ostream& out) {
    std::string path;
    app.add_option("--graph", path, "edge-list file")->required();
    app.parse(args);
    const SpectralSummary s = summarize(load_graph(path));
    out << s.n << ' ' << fixed6(s.lambda2) << ' ' << format_double(s.opnorm) << ' ' << s.g_min << ' ' << s.g_max
        << '\n';
    return 0;
}

BoundaryFit read_fit_file(const std::string& path) {
    std::istringstream in(read_file(path));
    const auto rows = read_csv(in, "c1,c2,eta,K,r_squared,rms");
    if (rows.size() != 1) {
        throw std::runtime_error("fit file " + path + " must hold exactly one row");
    }
    BoundaryFit fit;
    fit.c1 = parse_double(rows[0][0]);
    fit.c2 = parse_double(rows[0][1]);
    fit.r_squared = parse_double(rows[0][4]);
    fit.rms = parse_double(rows[0][5]);
    return fit;
}

int cmd_bounds(CLI::App& app, std::vector<std::string>& args, std::ostream& out) {
    std::optional<double> lambda2;
    std::optional<double> opnorm;
    double gamma = 1.0;
    std::string graph_path;
    std::optional<double> eta;
    std::optional<double> K;
    std::optional<double> c1;
    std::optional<double> c2;
    std::string fit_path;
    std::string alpha_text;
    double delta = 0.0;
    app.add_option("--lambda2", lambda2, "algebraic connectivity");
    app.add_option("--opnorm", opnorm, "Laplacian max-row-sum norm");
    app.add_option("--graph", graph_path, "edge-list file (instead of --lambda2/--opnorm)");
    app.add_option("--gamma", gamma, "smallest real part of the eigenvalues of Gamma");
    app.add_option("--eta", eta, "dichotomy rate constant");
    app.add_option("--K", K, "dichotomy gain constant");
    app.add_option("--c1", c1, "fitted boundary intercept");
    app.add_option("--c2", c2, "fitted boundary 1/alpha coefficient");
    app.add_option("--fit", fit_path, "fit file written by tongue or fit-boundary");
    app.add_option("--alpha", alpha_text, "coupling strength or start:stop:count")->required();
    app.add_option("--delta", delta, "perturbation amplitude used for the nu column");
    app.parse(args);

    if (!graph_path.empty()) {
        const SpectralSummary s = summarize(load_graph(graph_path));
        lambda2 = lambda2.value_or(s.lambda2);
        opnorm = opnorm.value_or(s.opnorm);
    }
    if (!lambda2 || !opnorm) {
        throw UsageError("bounds needs --lambda2 and --opnorm, or --graph");
    }
    if (!fit_path.empty()) {
        const BoundaryFit fit = read_fit_file(fit_path);
        c1 = c1.value_or(fit.c1);
        c2 = c2.value_or(fit.c2);
    }
    DichotomyConstants constants;
    if (c1 || c2) {
        if (!c1 || !c2 || eta || K) {
            throw UsageError("give both --c1 and --c2 (or --fit), or both --eta and --K");
        }
        constants = constants_from_boundary(*c1, *c2, *lambda2, *opnorm, gamma);
    } else {
        if (!eta || !K) {
            throw UsageError("bounds needs --eta and --K, or --c1 and --c2");
        }
        constants.eta = *eta;
        constants.K = *K;
    }
    const BoundReport report(*lambda2, *opnorm, gamma, constants);
    out << "constants: " << to_string(constants.source) << " (eta = " << format_double(constants.eta)
        << ", K = " << format_double(constants.K) << ")\n";
    out << "alpha,alpha_star,delta_star,delta,nu\n";
    for (const double alpha : parse_range(alpha_text)) {
        out << format_double(alpha) << ',' << format_double(report.alpha_threshold()) << ','
            << format_double(report.delta_threshold(alpha)) << ',' << format_double(delta) << ','
            << format_double(report.nu(alpha, delta)) << '\n';
    }
    return 0;
}

int cmd_sweep(CLI::App& app, std::vector<std::string>& args, std::ostream& out, std::ostream& err,
              bool fast) {
    const std::string name = fast ? "fastlimit" : "tongue";
    Common common;
    SyncFlags sync;
    std::size_t n = 2;
    std::string graph_path;
    std::optional<std::string> alpha_text;
    std::optional<std::string> delta_text;
    double omega = fast ? 1000.0 : 1.0;
    double boundary_threshold = 1.0;
    std::size_t checkpoint_every = 64;
    bool resume = false;
    bool dry_run = false;
    add_common(app, common, "out/" + name);
    sync.add(app);
    app.add_option("--n", n, "nodes of a complete graph (ignored with --graph)");
    app.add_option("--graph", graph_path, "edge-list file");
    app.add_option("--alpha", alpha_text, "alpha grid start:stop:count");
    app.add_option("--delta", delta_text, "delta grid start:stop:count");
    app.add_option("--omega", omega, "forcing frequency");
    app.add_option("--boundary-threshold", boundary_threshold, "E_a level that marks the tongue boundary");
    app.add_option("--checkpoint-every", checkpoint_every, "cells between CSV checkpoints");
    app.add_flag("--resume", resume, "keep cells already present in the output CSV");
    app.add_flag("--dry-run", dry_run, "print the manifest and cell count, run nothing");
    app.parse(args);

    const SyncErrorConfig cfg = sync.resolve();
    const std::string alphas_s = alpha_text.value_or(sync.paper_scale ? "0.05:2.05:201" : "0.05:2.05:41");
    const std::string deltas_s = delta_text.value_or(sync.paper_scale ? "0:5:101" : "0:5:26");
    const auto alphas = parse_range(alphas_s);
    const auto deltas = parse_range(deltas_s);
    if (!std::is_sorted(alphas.begin(), alphas.end()) || !std::is_sorted(deltas.begin(), deltas.end())) {
        throw std::invalid_argument("grids must be ascending");
    }
    if (!(omega > 0.0)) {
        throw std::invalid_argument("--omega must be positive");
    }
    const Graph graph = graph_path.empty() ? generate({CompleteGraph{}, n, 0}) : load_graph(graph_path);

    Manifest manifest(name);
    if (graph_path.empty()) {
        manifest.add("n", static_cast<std::uint64_t>(n));
    } else {
        manifest.add("graph", graph_path);
    }
    manifest.add("alpha", alphas_s);
    manifest.add("delta", deltas_s);
    manifest.add("omega", omega);
    manifest.add("seed", common.seed);
    manifest.add("boundary-threshold", boundary_threshold);
    sync.record(manifest, cfg);

    if (dry_run) {
        out << manifest.str() << "cells " << alphas.size() * deltas.size() << '\n';
        return 0;
    }

    SweepOptions options;
    options.sync = cfg;
    options.omega = omega;
    options.seed = common.seed;
    options.workers = common.workers;
    options.symmetric_mismatch = sync.symmetric_mismatch;
    options.checkpoint_every = checkpoint_every;

    const fs::path dir = common.out_dir;
    const fs::path csv_path = dir / (name + ".csv");
    std::optional<SweepResult> previous;
    if (resume && fs::exists(csv_path)) {
        previous.emplace(alphas, deltas);
        std::istringstream in(read_file(csv_path));
        merge_sweep_csv(in, *previous);
    }
    atomic_write(dir / "manifest.txt", manifest.str());
    auto checkpoint = [&csv_path](const SweepResult& partial) {
        std::ostringstream os;
        write_sweep_csv(os, partial);
        atomic_write(csv_path, os.str());
    };
    const SweepResult result = fast ? fast_limit_sweep(graph, alphas, deltas, options,
                                                       previous ? &*previous : nullptr, checkpoint)
                                    : tongue_sweep(graph, alphas, deltas, options, previous ? &*previous : nullptr,
                                                   checkpoint);
    checkpoint(result);

    std::size_t blowups = 0;
    for (const std::size_t b : result.blowups) {
        blowups += b;
    }
    out << name << ": " << result.cell_count() << " cells, " << blowups << " blown-up runs -> " << csv_path.string()
        << '\n';

    const auto points = extract_boundary(result, boundary_threshold);
    const SpectralSummary spec = summarize(graph);
    try {
        const BoundaryFit fit = fit_constants(points, spec.lambda2, spec.opnorm, 1.0);
        write_fit_file(dir / (name + "_fit.txt"), fit);
        print_fit(out, fit, points.size());
    } catch (const std::invalid_argument& e) {
        err << "boundary fit skipped: " << e.what() << " (" << points.size() << " boundary points)\n";
    }
    return 0;
}

int cmd_scaling(CLI::App& app, std::vector<std::string>& args, std::ostream& out) {
    Common common;
    SyncFlags sync;
    std::string family = "ba";
    double p = 0.3;
    std::size_t m0 = 2;
    std::vector<std::size_t> n_list{50, 100, 200, 400, 800};
    std::size_t graph_seeds = 5;
    double alpha = 5.0;
    double delta_step = 0.05;
    double delta_cap = 20.0;
    double omega = 1.0;
    std::string strategy = "linear";
    bool dry_run = false;
    add_common(app, common, "out/scaling");
    sync.add(app);
    app.add_option("--family", family, "er or ba")->check(CLI::IsMember({"er", "ba"}));
    app.add_option("--p", p, "edge probability (er)");
    app.add_option("--m0", m0, "edges per new node (ba)");
    app.add_option("--n-list", n_list, "network sizes")->delimiter(',');
    app.add_option("--graph-seeds", graph_seeds, "graphs per size");
    app.add_option("--alpha", alpha, "coupling strength");
    app.add_option("--delta-step", delta_step, "delta grid spacing");
    app.add_option("--delta-cap", delta_cap, "largest delta tried");
    app.add_option("--omega", omega, "forcing frequency");
    app.add_option("--strategy", strategy, "linear or bracketing")->check(CLI::IsMember({"linear", "bracketing"}));
    app.add_flag("--dry-run", dry_run, "print the manifest, run nothing");
    app.parse(args);

    ScalingOptions options;
    options.family = family == "er" ? GraphKind{ErdosRenyi{p}} : GraphKind{BarabasiAlbert{m0}};
    options.n_list = n_list;
    options.graph_seeds = graph_seeds;
    options.seed = common.seed;
    options.workers = common.workers;
    options.search.alpha = alpha;
    options.search.step = delta_step;
    options.search.delta_cap = delta_cap;
    options.search.omega = omega;
    options.search.sync = sync.resolve();
    options.search.symmetric_mismatch = sync.symmetric_mismatch;
    options.search.strategy = strategy == "linear" ? SearchStrategy::linear : SearchStrategy::bracketing;

    Manifest manifest("scaling");
    manifest.add("family", family);
    manifest.add("p", p);
    manifest.add("m0", static_cast<std::uint64_t>(m0));
    std::string joined;
    for (const std::size_t v : n_list) {
        joined += (joined.empty() ? "" : ",") + std::to_string(v);
    }
    manifest.add("n-list", joined);
    manifest.add("graph-seeds", static_cast<std::uint64_t>(graph_seeds));
    manifest.add("alpha", alpha);
    manifest.add("delta-step", delta_step);
    manifest.add("delta-cap", delta_cap);
    manifest.add("omega", omega);
    manifest.add("strategy", strategy);
    manifest.add("seed", common.seed);
    sync.record(manifest, options.search.sync);
    if (dry_run) {
        out << manifest.str();
        return 0;
    }

    const fs::path dir = common.out_dir;
    atomic_write(dir / "manifest.txt", manifest.str());
    const ScalingResult result = scaling_study(options);
    std::ostringstream rows;
    std::ostringstream summary;
    std::ostringstream fit;
    write_scaling_csv(rows, result);
    write_scaling_summary_csv(summary, result);
    write_scaling_fit(fit, result);
    atomic_write(dir / "scaling.csv", rows.str());
    atomic_write(dir / "scaling_summary.csv", summary.str());
    atomic_write(dir / "scaling_fit.txt", fit.str());

    out << summary.str();
    for (const std::size_t flagged : result.flagged_n) {
        out << "flagged n = " << flagged << " (alpha below threshold at delta = 0)\n";
    }
    out << "beta = " << format_double(result.fit.beta) << " +- " << format_double(result.fit.stderr_beta) << '\n';
    return 0;
}

int cmd_fit_boundary(CLI::App& app, std::vector<std::string>& args, std::ostream& out) {
    std::string csv;
    std::string path;
    double threshold = 1.0;
    std::optional<double> lambda2;
    std::optional<double> opnorm;
    std::string graph_path;
    double gamma = 1.0;
    app.add_option("--csv", csv, "tongue CSV")->required();
    app.add_option("--out", path, "fit file (default: <csv dir>/tongue_fit.txt)");
    app.add_option("--threshold", threshold, "E_a level that marks the boundary");
    app.add_option("--lambda2", lambda2, "algebraic connectivity (default: two nodes, 2)");
    app.add_option("--opnorm", opnorm, "Laplacian norm (default: two nodes, 2)");
    app.add_option("--graph", graph_path, "edge-list file of the swept network");
    app.add_option("--gamma", gamma, "smallest real part of the eigenvalues of Gamma");
    app.parse(args);

    if (!graph_path.empty()) {
        const SpectralSummary s = summarize(load_graph(graph_path));
        lambda2 = lambda2.value_or(s.lambda2);
        opnorm = opnorm.value_or(s.opnorm);
    }
    std::istringstream in(read_file(csv));
    const SweepResult result = read_sweep_csv(in);
    const auto points = extract_boundary(result, threshold);
    const BoundaryFit fit = fit_constants(points, lambda2.value_or(2.0), opnorm.value_or(2.0), gamma);
    const fs::path target = path.empty() ? fs::path(csv).parent_path() / "tongue_fit.txt" : fs::path(path);
    write_fit_file(target, fit);
    print_fit(out, fit, points.size());
    return 0;
}

} // namespace

std::vector<double> parse_range(const std::string& text) {
    const auto parts = split(text, ':');
    if (parts.size() == 1) {
        return {parse_double(parts[0])};
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("range \"" + text + "\" is not start:stop:count");
    }
    const double start = parse_double(parts[0]);
    const double stop = parse_double(parts[1]);
    const double count_d = parse_double(parts[2]);
    if (!(count_d >= 1.0) || count_d != std::floor(count_d)) {
        throw std::invalid_argument("range \"" + text + "\": count must be a positive integer");
    }
    const auto count = static_cast<std::size_t>(count_d);
    if (count == 1) {
        if (start != stop) {
            throw std::invalid_argument("range \"" + text + "\": one point needs start == stop");
        }
        return {start};
    }
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        v[i] = start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1);
    }
    v.back() = stop;
    return v;
}

int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << usage_text;
        return 1;
    }
    const std::string sub = args.front();
    if (sub == "--help" || sub == "-h" || sub == "help") {
        out << usage_text;
        return 0;
    }
    args.erase(args.begin());
    std::reverse(args.begin(), args.end());  // CLI11 consumes vectors from the back

    CLI::App app("syncpersist " + sub, "syncpersist " + sub);
    app.allow_config_extras(CLI::config_extras_mode::error);
    if (sub != "gen-graph" && sub != "spectra") {
        app.set_config("--config", "", "key = value file; flags take precedence");
    }
    try {
        if (sub == "gen-graph") {
            return cmd_gen_graph(app, args, out);
        }
        if (sub == "spectra") {
            return cmd_spectra(app, args, out);
        }
        if (sub == "bounds") {
            return cmd_bounds(app, args, out);
        }
        if (sub == "tongue" || sub == "fastlimit") {
            return cmd_sweep(app, args, out, err, sub == "fastlimit");
        }
        if (sub == "scaling") {
            return cmd_scaling(app, args, out);
        }
        if (sub == "fit-boundary") {
            return cmd_fit_boundary(app, args, out);
        }
        err << "unknown subcommand \"" << sub << "\"\n\n" << usage_text;
        return 1;
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n\n" << app.help();
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
}

} // namespace syncpersist::cli
