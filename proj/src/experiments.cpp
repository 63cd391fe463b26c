#include "syncpersist/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <ostream>

#include "syncpersist/csv.hpp"
#include "syncpersist/parallel.hpp"
#include "syncpersist/rng.hpp"

namespace syncpersist {

SyncErrorConfig SyncErrorConfig::desk() { return SyncErrorConfig{}; }

SyncErrorConfig SyncErrorConfig::paper() {
    SyncErrorConfig c;
    c.transient = 1000.0;
    c.horizon = 2000.0;
    c.ensemble_size = 20;
    return c;
}

void SyncErrorConfig::validate() const {
    if (!(transient >= 0.0) || !(horizon > transient)) {
        throw std::invalid_argument("sync error: need 0 <= tau < T");
    }
    if (ensemble_size < 1) {
        throw std::invalid_argument("sync error: ensemble size must be >= 1");
    }
    if (!(ic_jitter >= 0.0)) {
        throw std::invalid_argument("sync error: jitter must be >= 0");
    }
    if (ic_base.empty() || ic_base.size() > max_node_dim) {
        throw std::invalid_argument("sync error: bad initial-condition base");
    }
}

double sync_error_sample(std::span<const double> x, std::size_t n, std::size_t q) {
    if (n == 2) {
        double worst = 0.0;
        for (std::size_t a = 0; a < q; ++a) {
            worst = std::max(worst, std::abs(x[q + a] - x[a]));
        }
        return worst;
    }
    std::array<double, max_node_dim> mean{};
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < q; ++a) {
            mean[a] += x[i * q + a];
        }
    }
    for (std::size_t a = 0; a < q; ++a) {
        mean[a] /= static_cast<double>(n);
    }
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double worst = 0.0;
        for (std::size_t a = 0; a < q; ++a) {
            worst = std::max(worst, std::abs(x[i * q + a] - mean[a]));
        }
        total += worst;
    }
    return total / static_cast<double>(n);
}

SyncErrorAccumulator::SyncErrorAccumulator(std::size_t n, std::size_t q, double transient, double horizon)
    : n_(n), q_(q), transient_(transient), horizon_(horizon) {
    if (!(horizon > transient)) {
        throw std::invalid_argument("sync error: need tau < T");
    }
}

void SyncErrorAccumulator::observe(double t, std::span<const double> x) {
    if (last_time_) {
        const double lo = std::max(*last_time_, transient_);
        const double hi = std::min(t, horizon_);
        if (hi > lo) {
            integral_ += last_value_ * (hi - lo);
            covered_ += hi - lo;
        }
    }
    last_time_ = t;
    last_value_ = t < horizon_ ? sync_error_sample(x, n_, q_) : 0.0;
}

double SyncErrorAccumulator::partial() const noexcept { return covered_ > 0.0 ? integral_ / covered_ : 0.0; }

double SyncErrorAccumulator::value() const noexcept { return integral_ / (horizon_ - transient_); }

double blowup_sentinel(double loss_threshold, double attained) { return std::max(10.0 * loss_threshold, attained); }

double sync_error(const Trajectory& traj, std::size_t n, std::size_t q, const SyncErrorConfig& cfg) {
    SyncErrorAccumulator acc(n, q, cfg.transient, cfg.horizon);
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        acc.observe(traj.times[k], traj.states[k]);
    }
    if (traj.terminated_at) {
        return blowup_sentinel(cfg.loss_threshold, acc.partial());
    }
    return acc.value();
}

double effective_step(const NetworkSystem& sys, const SyncErrorConfig& cfg) {
    double h = cfg.integrator.step;
    if (!cfg.auto_step) {
        return h;
    }
    h = std::min(h, cfg.stability_limit / stiffness_bound(sys));
    if (sys.coupling().delta > 0.0) {
        h = std::min(h, 2.0 * std::numbers::pi / (sys.coupling().omega * cfg.steps_per_period));
    }
    return h;
}

std::vector<double> initial_state(std::size_t n, const SyncErrorConfig& cfg, std::uint64_t seed) {
    Rng rng = make_rng(seed);
    std::uniform_real_distribution<double> jitter(0.0, cfg.ic_jitter);
    const std::size_t q = cfg.ic_base.size();
    std::vector<double> x(n * q);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < q; ++a) {
            x[i * q + a] = cfg.ic_base[a] + (cfg.ic_jitter > 0.0 ? jitter(rng) : 0.0);
        }
    }
    return x;
}

MemberResult run_member(const std::shared_ptr<const Graph>& graph, const CellParams& params,
                        const SyncErrorConfig& cfg, std::uint64_t seed, bool symmetric_mismatch) {
    const OscillatorModel model = lorenz_model();
    const std::size_t q = model.dim;
    if (cfg.ic_base.size() != q) {
        throw std::invalid_argument("run_member: initial-condition base must match the node dimension");
    }
    CouplingSpec coupling = CouplingSpec::identity(*graph, q, params.delta, params.omega,
                                                   derive_seed(seed, {static_cast<std::uint64_t>(Stream::perturbations)}),
                                                   symmetric_mismatch);
    const NetworkSystem sys(graph, model, std::move(coupling), params.alpha);

    IntegratorConfig icfg = cfg.integrator;
    icfg.step = effective_step(sys, cfg);
    auto x0 = initial_state(graph->size(), cfg,
                            derive_seed(seed, {static_cast<std::uint64_t>(Stream::initial_conditions)}));

    SyncErrorAccumulator acc(graph->size(), q, cfg.transient, cfg.horizon);
    const auto res = integrate_streaming(sys, std::move(x0), 0.0, cfg.horizon, icfg,
                                         [&acc](double t, std::span<const double> x) { acc.observe(t, x); });
    MemberResult out;
    out.step = icfg.step;
    out.blew_up = res.terminated_at.has_value();
    out.error = out.blew_up ? blowup_sentinel(cfg.loss_threshold, acc.partial()) : acc.value();
    return out;
}

std::uint64_t member_seed(std::uint64_t master, ExperimentId id, std::uint64_t cell, std::uint64_t member) {
    return derive_seed(master, {static_cast<std::uint64_t>(id), cell, member});
}

CellResult evaluate_cell(const std::shared_ptr<const Graph>& graph, const CellParams& params,
                         const SyncErrorConfig& cfg, std::uint64_t master_seed, ExperimentId id,
                         std::uint64_t cell_index, bool symmetric_mismatch) {
    cfg.validate();
    CellResult cell;
    double total = 0.0;
    for (std::size_t m = 0; m < cfg.ensemble_size; ++m) {
        const MemberResult r =
            run_member(graph, params, cfg, member_seed(master_seed, id, cell_index, m), symmetric_mismatch);
        total += r.error;
        cell.blowups += r.blew_up ? 1 : 0;
        cell.members.push_back(r);
    }
    cell.Ea = total / static_cast<double>(cfg.ensemble_size);
    return cell;
}

SweepResult::SweepResult(std::vector<double> alphas, std::vector<double> deltas)
    : alpha_grid(std::move(alphas)), delta_grid(std::move(deltas)) {
    Ea.assign(cell_count(), 0.0);
    blowups.assign(cell_count(), 0);
    computed.assign(cell_count(), 0);
}

bool SweepResult::complete() const noexcept {
    return std::all_of(computed.begin(), computed.end(), [](char c) { return c != 0; });
}

namespace {

SweepResult run_sweep(const Graph& graph, std::vector<double> alpha_grid, std::vector<double> delta_grid,
                      const SweepOptions& options, ExperimentId id, const SweepResult* resume,
                      const CheckpointFn& checkpoint) {
    options.sync.validate();
    if (!is_connected(graph)) {
        throw std::invalid_argument("sweep: graph must be connected");
    }
    SweepResult result(std::move(alpha_grid), std::move(delta_grid));
    if (resume) {
        if (resume->alpha_grid != result.alpha_grid || resume->delta_grid != result.delta_grid) {
            throw std::invalid_argument("sweep: resume data was produced on different grids");
        }
        result = *resume;
    }
    auto shared = std::make_shared<const Graph>(graph);

    std::vector<std::size_t> pending;
    for (std::size_t c = 0; c < result.cell_count(); ++c) {
        if (!result.computed[c]) {
            pending.push_back(c);
        }
    }
    const std::size_t batch = std::max<std::size_t>(1, options.checkpoint_every);
    for (std::size_t start = 0; start < pending.size(); start += batch) {
        const std::size_t stop = std::min(pending.size(), start + batch);
        parallel_for(stop - start, options.workers, [&](std::size_t k) {
            const std::size_t c = pending[start + k];
            const std::size_t ia = c / result.delta_grid.size();
            const std::size_t id_ = c % result.delta_grid.size();
            const CellParams params{result.alpha_grid[ia], result.delta_grid[id_], options.omega};
            const CellResult cell =
                evaluate_cell(shared, params, options.sync, options.seed, id, c, options.symmetric_mismatch);
            result.Ea[c] = cell.Ea;
            result.blowups[c] = cell.blowups;
            result.computed[c] = 1;
        });
        if (checkpoint) {
            checkpoint(result);
        }
    }
    return result;
}

} // namespace

SweepResult tongue_sweep(const Graph& graph, std::vector<double> alpha_grid, std::vector<double> delta_grid,
                         const SweepOptions& options, const SweepResult* resume, const CheckpointFn& checkpoint) {
    return run_sweep(graph, std::move(alpha_grid), std::move(delta_grid), options, ExperimentId::tongue, resume,
                     checkpoint);
}

SweepResult fast_limit_sweep(const Graph& graph, std::vector<double> alpha_grid, std::vector<double> delta_grid,
                             const SweepOptions& options, const SweepResult* resume, const CheckpointFn& checkpoint) {
    return run_sweep(graph, std::move(alpha_grid), std::move(delta_grid), options, ExperimentId::fast_limit, resume,
                     checkpoint);
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
    os << "alpha,delta,Ea,blowups\n";
    for (std::size_t ia = 0; ia < result.alpha_grid.size(); ++ia) {
        for (std::size_t id = 0; id < result.delta_grid.size(); ++id) {
            const std::size_t c = result.index(ia, id);
            if (!result.computed[c]) {
                continue;
            }
            os << format_double(result.alpha_grid[ia]) << ',' << format_double(result.delta_grid[id]) << ','
               << format_double(result.Ea[c]) << ',' << result.blowups[c] << '\n';
        }
    }
}

void merge_sweep_csv(std::istream& is, SweepResult& into) {
    std::map<double, std::size_t> alpha_index;
    std::map<double, std::size_t> delta_index;
    for (std::size_t i = 0; i < into.alpha_grid.size(); ++i) {
        alpha_index[into.alpha_grid[i]] = i;
    }
    for (std::size_t i = 0; i < into.delta_grid.size(); ++i) {
        delta_index[into.delta_grid[i]] = i;
    }
    for (const auto& row : read_csv(is, "alpha,delta,Ea,blowups")) {
        const auto a = alpha_index.find(parse_double(row[0]));
        const auto d = delta_index.find(parse_double(row[1]));
        if (a == alpha_index.end() || d == delta_index.end()) {
            throw std::runtime_error("resume: CSV cell (" + row[0] + ", " + row[1] + ") is not on the requested grid");
        }
        const std::size_t c = into.index(a->second, d->second);
        into.Ea[c] = parse_double(row[2]);
        into.blowups[c] = static_cast<std::size_t>(parse_double(row[3]));
        into.computed[c] = 1;
    }
}

SweepResult read_sweep_csv(std::istream& is) {
    const auto rows = read_csv(is, "alpha,delta,Ea,blowups");
    std::vector<double> alphas;
    std::vector<double> deltas;
    for (const auto& row : rows) {
        alphas.push_back(parse_double(row[0]));
        deltas.push_back(parse_double(row[1]));
    }
    std::sort(alphas.begin(), alphas.end());
    alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
    std::sort(deltas.begin(), deltas.end());
    deltas.erase(std::unique(deltas.begin(), deltas.end()), deltas.end());
    SweepResult result(alphas, deltas);
    for (const auto& row : rows) {
        const std::size_t ia = static_cast<std::size_t>(
            std::lower_bound(alphas.begin(), alphas.end(), parse_double(row[0])) - alphas.begin());
        const std::size_t id = static_cast<std::size_t>(
            std::lower_bound(deltas.begin(), deltas.end(), parse_double(row[1])) - deltas.begin());
        const std::size_t c = result.index(ia, id);
        result.Ea[c] = parse_double(row[2]);
        result.blowups[c] = static_cast<std::size_t>(parse_double(row[3]));
        result.computed[c] = 1;
    }
    if (!result.complete()) {
        throw std::runtime_error("tongue CSV does not cover a full rectangular grid");
    }
    return result;
}

std::vector<BoundaryPoint> extract_boundary(const SweepResult& result, double threshold) {
    std::vector<BoundaryPoint> points;
    const std::size_t nd = result.delta_grid.size();
    for (std::size_t ia = 0; ia < result.alpha_grid.size(); ++ia) {
        if (nd < 2 || result.at(ia, 0) >= threshold) {
            continue;
        }
        for (std::size_t id = 1; id < nd; ++id) {
            if (result.at(ia, id) >= threshold) {
                points.push_back(
                    {result.alpha_grid[ia], 0.5 * (result.delta_grid[id - 1] + result.delta_grid[id])});
                break;
            }
        }
    }
    return points;
}

DeltaMaxResult delta_max_scan(const std::function<double(double)>& ea_of_delta, double step, double loss_threshold,
                              double sync_threshold, double delta_cap, SearchStrategy strategy) {
    if (!(step > 0.0)) {
        throw std::invalid_argument("delta_max: step must be positive");
    }
    DeltaMaxResult out;
    std::map<std::size_t, bool> lost_at;
    auto lost = [&](std::size_t k) {
        if (auto it = lost_at.find(k); it != lost_at.end()) {
            return it->second;
        }
        const double delta = static_cast<double>(k) * step;
        const double ea = ea_of_delta(delta);
        ++out.evaluations;
        out.trace.emplace_back(delta, ea);
        const bool l = ea >= loss_threshold;
        lost_at[k] = l;
        return l;
    };

    const double e0 = ea_of_delta(0.0);
    ++out.evaluations;
    out.trace.emplace_back(0.0, e0);
    if (!(e0 < sync_threshold)) {
        throw AlphaBelowThreshold("alpha below threshold: E_a = " + format_double(e0) + " at delta = 0");
    }
    lost_at[0] = false;
    const auto k_cap = static_cast<std::size_t>(std::floor(delta_cap / step + 1e-9));

    std::size_t first_lost = 0;
    if (strategy == SearchStrategy::linear) {
        for (std::size_t k = 1; k <= k_cap; ++k) {
            if (lost(k)) {
                first_lost = k;
                break;
            }
        }
    } else {
        std::size_t lo = 0;
        std::size_t hi = 0;
        for (std::size_t k = 1;; k *= 2) {
            const std::size_t probe = std::min(k, k_cap);
            if (probe == 0) {
                break;
            }
            if (lost(probe)) {
                hi = probe;
                break;
            }
            lo = probe;
            if (probe == k_cap) {
                break;
            }
        }
        if (hi != 0) {
            while (hi - lo > 1) {
                const std::size_t mid = lo + (hi - lo) / 2;
                if (lost(mid)) {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            first_lost = hi;
        }
    }

    if (first_lost == 0) {
        out.capped = true;
        out.delta_max = static_cast<double>(k_cap) * step;
    } else {
        out.delta_max = static_cast<double>(first_lost - 1) * step;
    }
    return out;
}

DeltaMaxResult delta_max_search(const std::shared_ptr<const Graph>& graph, const DeltaMaxOptions& options) {
    options.sync.validate();
    auto ea = [&](double delta) {
        const CellParams params{options.alpha, delta, options.omega};
        // The cell index is fixed, so every delta sees the same ICs and R matrices.
        return evaluate_cell(graph, params, options.sync, options.seed, ExperimentId::delta_max, 0,
                             options.symmetric_mismatch)
            .Ea;
    };
    return delta_max_scan(ea, options.step, options.sync.loss_threshold, options.sync.sync_threshold,
                          options.delta_cap, options.strategy);
}

PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> values) {
    if (n.size() != values.size() || n.size() < 2) {
        throw std::invalid_argument("fit_power_law: need two or more matching points");
    }
    const std::size_t m = n.size();
    double mx = 0.0;
    double my = 0.0;
    std::vector<double> xs(m);
    std::vector<double> ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        if (!(n[i] > 0.0) || !(values[i] > 0.0)) {
            throw std::invalid_argument("fit_power_law: values must be positive");
        }
        xs[i] = std::log10(n[i]);
        ys[i] = std::log10(values[i]);
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw std::invalid_argument("fit_power_law: all n are equal");
    }
    PowerLawFit fit;
    const double slope = sxy / sxx;
    fit.beta = -slope;
    fit.intercept = my - slope * mx;
    double sse = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double r = ys[i] - (fit.intercept + slope * xs[i]);
        sse += r * r;
    }
    fit.r_squared = syy > 0.0 ? 1.0 - sse / syy : 1.0;
    fit.stderr_beta = m > 2 ? std::sqrt(sse / static_cast<double>(m - 2) / sxx) : 0.0;
    return fit;
}

ScalingResult scaling_study(const ScalingOptions& options) {
    if (options.n_list.empty() || options.graph_seeds < 1) {
        throw std::invalid_argument("scaling: need at least one n and one graph seed");
    }
    ScalingResult result;
    result.n_list = options.n_list;
    const std::size_t jobs = options.n_list.size() * options.graph_seeds;
    result.rows.resize(jobs);

    parallel_for(jobs, options.workers, [&](std::size_t job) {
        const std::size_t ni = job / options.graph_seeds;
        const std::size_t gi = job % options.graph_seeds;
        ScalingRow& row = result.rows[job];
        row.n = options.n_list[ni];
        row.graph_index = gi;
        row.graph_seed = derive_seed(options.seed, {static_cast<std::uint64_t>(ExperimentId::scaling),
                                                    static_cast<std::uint64_t>(Stream::graph), row.n, gi});
        GraphRecipe recipe{options.family, row.n, row.graph_seed};
        auto graph = std::make_shared<const Graph>(generate(recipe));

        DeltaMaxOptions search = options.search;
        search.seed = derive_seed(options.seed, {static_cast<std::uint64_t>(ExperimentId::scaling), row.n, gi});
        try {
            const DeltaMaxResult r = delta_max_search(graph, search);
            row.delta_max = r.delta_max;
            row.capped = r.capped;
        } catch (const AlphaBelowThreshold&) {
            row.flagged = true;
        }
    });

    std::vector<double> fit_n;
    std::vector<double> fit_v;
    for (std::size_t ni = 0; ni < options.n_list.size(); ++ni) {
        std::vector<double> values;
        bool flagged = false;
        for (std::size_t gi = 0; gi < options.graph_seeds; ++gi) {
            const ScalingRow& row = result.rows[ni * options.graph_seeds + gi];
            flagged = flagged || row.flagged;
            values.push_back(row.delta_max);
        }
        std::sort(values.begin(), values.end());
        const std::size_t m = values.size();
        const double median = m % 2 == 1 ? values[m / 2] : 0.5 * (values[m / 2 - 1] + values[m / 2]);
        result.median_delta_max.push_back(median);
        if (flagged) {
            result.flagged_n.push_back(options.n_list[ni]);
        } else if (median > 0.0) {
            fit_n.push_back(static_cast<double>(options.n_list[ni]));
            fit_v.push_back(median);
        }
    }
    if (fit_n.size() >= 2) {
        result.fit = fit_power_law(fit_n, fit_v);
    }
    return result;
}

void write_scaling_csv(std::ostream& os, const ScalingResult& result) {
    os << "n,graph_seed,delta_max\n";
    for (const ScalingRow& row : result.rows) {
        if (row.flagged) {
            continue;
        }
        os << row.n << ',' << row.graph_seed << ',' << format_double(row.delta_max) << '\n';
    }
}

void write_scaling_summary_csv(std::ostream& os, const ScalingResult& result) {
    os << "n,delta_max_median\n";
    for (std::size_t i = 0; i < result.n_list.size(); ++i) {
        if (std::find(result.flagged_n.begin(), result.flagged_n.end(), result.n_list[i]) != result.flagged_n.end()) {
            continue;
        }
        os << result.n_list[i] << ',' << format_double(result.median_delta_max[i]) << '\n';
    }
}

void write_scaling_fit(std::ostream& os, const ScalingResult& result) {
    os << "beta,stderr\n" << format_double(result.fit.beta) << ',' << format_double(result.fit.stderr_beta) << '\n';
}

double transient_decay_slope(const std::shared_ptr<const Graph>& graph, const CellParams& params,
                             const SyncErrorConfig& cfg, std::uint64_t seed, double t_begin, double t_end,
                             double floor) {
    const OscillatorModel model = lorenz_model();
    const std::size_t q = model.dim;
    CouplingSpec coupling = CouplingSpec::identity(*graph, q, params.delta, params.omega,
                                                   derive_seed(seed, {static_cast<std::uint64_t>(Stream::perturbations)}));
    const NetworkSystem sys(graph, model, std::move(coupling), params.alpha);
    IntegratorConfig icfg = cfg.integrator;
    icfg.step = effective_step(sys, cfg);
    auto x0 = initial_state(graph->size(), cfg,
                            derive_seed(seed, {static_cast<std::uint64_t>(Stream::initial_conditions)}));

    double st = 0.0;
    double sy = 0.0;
    double stt = 0.0;
    double sty = 0.0;
    double count = 0.0;
    integrate_streaming(sys, std::move(x0), 0.0, t_end, icfg, [&](double t, std::span<const double> x) {
        if (t < t_begin) {
            return;
        }
        const double e = sync_error_sample(x, graph->size(), q);
        if (e <= floor) {
            return;
        }
        const double y = std::log(e);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        count += 1.0;
    });
    const double denom = count * stt - st * st;
    if (count < 2.0 || !(denom > 0.0)) {
        throw std::runtime_error("transient_decay_slope: not enough samples above the floor");
    }
    return (count * sty - st * sy) / denom;
}

} // namespace syncpersist
