#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncpersist/bounds.hpp"
#include "syncpersist/dynamics.hpp"
#include "syncpersist/graph.hpp"
#include "syncpersist/integrate.hpp"

namespace syncpersist {

/// Experiment identifiers mixed into every derived seed.
enum class ExperimentId : std::uint64_t {
    tongue = 1,
    fast_limit = 2,
    delta_max = 3,
    scaling = 4,
};

struct SyncErrorConfig {
    double transient = 100.0;  // tau: start of the averaging window
    double horizon = 300.0;    // T: end of the run
    std::size_t ensemble_size = 5;
    std::vector<double> ic_base{-7.0, -10.0, 5.0};
    /// Each initial component is ic_base + U(0, ic_jitter).
    double ic_jitter = 0.1;
    /// E_a above this counts as lost synchronization.
    double loss_threshold = 10.0;
    /// E_a below this counts as synchronized (tongue boundary, delta_max precheck).
    double sync_threshold = 1.0;
    IntegratorConfig integrator{};
    /// Shrink the step below integrator.step when the coupling is stiff or the
    /// forcing is fast (see effective_step).
    bool auto_step = true;
    /// h * stiffness_bound stays below this (RK4/RK6 real stability ends near 2.8).
    double stability_limit = 2.0;
    /// Minimum number of steps per forcing period 2 pi / omega.
    double steps_per_period = 32.0;

    /// tau = 100, T = 300, five members.
    static SyncErrorConfig desk();
    /// tau = 1000, T = 2000, twenty members.
    static SyncErrorConfig paper();

    void validate() const;
};

/// Instantaneous synchronization error. For two nodes ||x_2 - x_1||_inf; for
/// n > 2 the node mean of ||x_i - xbar||_inf with xbar the node average.
double sync_error_sample(std::span<const double> x, std::size_t n, std::size_t q);

/// Online time average of sync_error_sample over [tau, T] by the left
/// rectangle rule on the observed samples.
class SyncErrorAccumulator {
public:
    SyncErrorAccumulator(std::size_t n, std::size_t q, double transient, double horizon);

    void observe(double t, std::span<const double> x);
    /// Average over the window covered so far.
    double partial() const noexcept;
    /// (1 / (T - tau)) * integral over [tau, T].
    double value() const noexcept;

private:
    std::size_t n_;
    std::size_t q_;
    double transient_;
    double horizon_;
    double integral_ = 0.0;
    double covered_ = 0.0;
    std::optional<double> last_time_;
    double last_value_ = 0.0;
};

/// Sentinel reported for a run that blew up.
double blowup_sentinel(double loss_threshold, double attained);

/// E for a stored trajectory of an n-node system. Blown-up runs get the sentinel.
double sync_error(const Trajectory& traj, std::size_t n, std::size_t q, const SyncErrorConfig& cfg);

struct CellParams {
    double alpha = 0.0;
    double delta = 0.0;
    double omega = 1.0;
};

struct MemberResult {
    double error = 0.0;
    bool blew_up = false;
    double step = 0.0;
};

struct CellResult {
    double Ea = 0.0;
    std::size_t blowups = 0;
    std::vector<MemberResult> members;
};

/// Step used for one run: integrator.step, capped by stability_limit /
/// stiffness_bound(sys) and, for delta > 0, by one steps_per_period-th of the
/// forcing period.
double effective_step(const NetworkSystem& sys, const SyncErrorConfig& cfg);

/// Initial condition for n nodes drawn from seed.
std::vector<double> initial_state(std::size_t n, const SyncErrorConfig& cfg, std::uint64_t seed);

/// One ensemble member: Lorenz nodes, Gamma = I, ICs and R drawn from member_seed.
MemberResult run_member(const std::shared_ptr<const Graph>& graph, const CellParams& params,
                        const SyncErrorConfig& cfg, std::uint64_t member_seed, bool symmetric_mismatch = false);

/// Seed of member `member` of cell `cell` within an experiment.
std::uint64_t member_seed(std::uint64_t master, ExperimentId id, std::uint64_t cell, std::uint64_t member);

/// Ensemble average over cfg.ensemble_size members.
CellResult evaluate_cell(const std::shared_ptr<const Graph>& graph, const CellParams& params,
                         const SyncErrorConfig& cfg, std::uint64_t master_seed, ExperimentId id,
                         std::uint64_t cell_index, bool symmetric_mismatch = false);

struct SweepOptions {
    SyncErrorConfig sync = SyncErrorConfig::desk();
    double omega = 1.0;
    std::uint64_t seed = 0;
    std::size_t workers = 1;
    bool symmetric_mismatch = false;
    /// Cells per batch between checkpoint callbacks.
    std::size_t checkpoint_every = 64;
};

/// (alpha, delta) grid of ensemble-averaged errors. Cell (ia, id) has index
/// ia * delta_grid.size() + id.
struct SweepResult {
    std::vector<double> alpha_grid;
    std::vector<double> delta_grid;
    std::vector<double> Ea;
    std::vector<std::size_t> blowups;
    std::vector<char> computed;

    SweepResult() = default;
    SweepResult(std::vector<double> alphas, std::vector<double> deltas);

    std::size_t cell_count() const noexcept { return alpha_grid.size() * delta_grid.size(); }
    std::size_t index(std::size_t ia, std::size_t id) const noexcept { return ia * delta_grid.size() + id; }
    double at(std::size_t ia, std::size_t id) const noexcept { return Ea[index(ia, id)]; }
    bool complete() const noexcept;
};

using CheckpointFn = std::function<void(const SweepResult&)>;

/// Every cell is computed independently from (seed, cell index, member index),
/// so the result does not depend on worker count or order. Cells already
/// marked computed in `resume` are kept as they are.
SweepResult tongue_sweep(const Graph& graph, std::vector<double> alpha_grid, std::vector<double> delta_grid,
                         const SweepOptions& options, const SweepResult* resume = nullptr,
                         const CheckpointFn& checkpoint = {});

/// tongue_sweep with its own experiment id; options.omega is the forcing
/// frequency (1000 in the fast-oscillation study).
SweepResult fast_limit_sweep(const Graph& graph, std::vector<double> alpha_grid, std::vector<double> delta_grid,
                             const SweepOptions& options, const SweepResult* resume = nullptr,
                             const CheckpointFn& checkpoint = {});

/// "alpha,delta,Ea,blowups", one row per computed cell, in cell-index order.
void write_sweep_csv(std::ostream& os, const SweepResult& result);
/// Reads rows back onto the given grids, marking matching cells computed.
void merge_sweep_csv(std::istream& is, SweepResult& into);
/// Rebuilds grids and values from a complete tongue CSV.
SweepResult read_sweep_csv(std::istream& is);

/// Per alpha column: skip columns already desynchronized at delta = 0 or never
/// desynchronized; otherwise the midpoint between the last cell below
/// `threshold` and the first one at or above it.
std::vector<BoundaryPoint> extract_boundary(const SweepResult& result, double threshold);

enum class SearchStrategy {
    linear,      // delta = 0, step, 2 step, ... until loss
    bracketing,  // doubling then bisection over the same grid
};

struct DeltaMaxOptions {
    double alpha = 5.0;
    double step = 0.05;
    double omega = 1.0;
    /// Scan stops here; a result at the cap is flagged.
    double delta_cap = 20.0;
    SyncErrorConfig sync = SyncErrorConfig::desk();
    std::uint64_t seed = 0;
    bool symmetric_mismatch = false;
    SearchStrategy strategy = SearchStrategy::linear;
};

struct DeltaMaxResult {
    double delta_max = 0.0;
    bool capped = false;
    std::size_t evaluations = 0;
    /// (delta, E_a) pairs in evaluation order.
    std::vector<std::pair<double, double>> trace;
};

class AlphaBelowThreshold : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Threshold search over delta_k = k * step on a caller-supplied E_a(delta).
/// Returns the smallest grid delta with E_a >= loss_threshold, minus step. The
/// delta = 0 value must be below sync_threshold. Bracketing evaluates
/// O(log k) points and agrees with the linear scan when E_a crosses the loss
/// threshold once.
DeltaMaxResult delta_max_scan(const std::function<double(double)>& ea_of_delta, double step, double loss_threshold,
                              double sync_threshold, double delta_cap, SearchStrategy strategy);

/// delta_max of a network; R and the initial conditions stay fixed across the
/// delta scan (they depend only on the seed and member index).
DeltaMaxResult delta_max_search(const std::shared_ptr<const Graph>& graph, const DeltaMaxOptions& options);

struct PowerLawFit {
    double beta = 0.0;       // values ~ n^(-beta)
    double intercept = 0.0;  // log10 prefactor
    double stderr_beta = 0.0;
    double r_squared = 0.0;
};

/// Least squares of log10(value) on log10(n).
PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> values);

struct ScalingOptions {
    GraphKind family = BarabasiAlbert{2};
    std::vector<std::size_t> n_list{50, 100, 200, 400, 800};
    std::size_t graph_seeds = 5;
    DeltaMaxOptions search{};
    std::uint64_t seed = 0;
    std::size_t workers = 1;
};

struct ScalingRow {
    std::size_t n = 0;
    std::size_t graph_index = 0;
    std::uint64_t graph_seed = 0;
    double delta_max = 0.0;
    bool flagged = false;
    bool capped = false;
};

struct ScalingResult {
    std::vector<ScalingRow> rows;
    std::vector<std::size_t> n_list;
    std::vector<double> median_delta_max;
    std::vector<std::size_t> flagged_n;
    PowerLawFit fit;
};

/// delta_max over a fresh graph per (n, graph seed); per-n medians; power-law
/// fit over the unflagged n. An n whose graphs fail the delta = 0 precheck is
/// flagged and left out of the fit.
ScalingResult scaling_study(const ScalingOptions& options);

void write_scaling_csv(std::ostream& os, const ScalingResult& result);
void write_scaling_summary_csv(std::ostream& os, const ScalingResult& result);
void write_scaling_fit(std::ostream& os, const ScalingResult& result);

/// Least-squares slope of log ||x_2 - x_1||_inf against t over [t_begin, t_end],
/// ignoring samples below `floor` (roundoff). Two-node systems only.
double transient_decay_slope(const std::shared_ptr<const Graph>& graph, const CellParams& params,
                             const SyncErrorConfig& cfg, std::uint64_t seed, double t_begin, double t_end,
                             double floor = 1e-11);

} // namespace syncpersist
