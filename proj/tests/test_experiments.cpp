#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "support.hpp"
#include "syncpersist/experiments.hpp"
#include "syncpersist/rng.hpp"

using namespace syncpersist;

namespace {

std::shared_ptr<const Graph> pair_graph() { return std::make_shared<const Graph>(generate({CompleteGraph{}, 2, 0})); }

SyncErrorConfig short_config(double tau, double horizon, std::size_t members) {
    SyncErrorConfig cfg;
    cfg.transient = tau;
    cfg.horizon = horizon;
    cfg.ensemble_size = members;
    return cfg;
}

} // namespace

TEST_CASE("sync error samples") {
    const std::vector<double> two{1.0, 2.0, 3.0, 1.5, 0.0, 3.25};
    CHECK(sync_error_sample(two, 2, 3) == 2.0);

    // Three nodes on a line: mean (1, 0), deviations 1, 0, 1 in the max norm.
    const std::vector<double> three{0.0, 0.0, 1.0, 0.0, 2.0, 0.0};
    CHECK(sync_error_sample(three, 3, 2) == doctest::Approx(2.0 / 3.0));

    testsupport::Gen gen(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = testsupport::uniform_size(gen, 3, 10);
        std::vector<double> x(3 * n);
        const double s[3] = {testsupport::uniform(gen, -5, 5), 1.0, 2.0};
        for (std::size_t i = 0; i < n; ++i) {
            std::copy(s, s + 3, x.begin() + 3 * i);
        }
        CHECK(sync_error_sample(x, n, 3) <= 1e-14);
    }
}

TEST_CASE("time average by the left rectangle rule over [tau, T]") {
    // Constant offset (1, 0, 0) between two nodes gives E = 1 on any grid.
    Trajectory traj;
    for (int k = 0; k <= 300; ++k) {
        traj.times.push_back(0.1 * k);
        traj.states.push_back({0.0, 0.0, 0.0, 1.0, 0.0, 0.0});
    }
    const SyncErrorConfig cfg = short_config(10.0, 30.0, 1);
    CHECK(sync_error(traj, 2, 3, cfg) == doctest::Approx(1.0).epsilon(1e-12));

    // Uneven samples with values 1, 2, 4 at t = 0, 1, 3; window [0.5, 3].
    SyncErrorAccumulator acc(2, 1, 0.5, 3.0);
    acc.observe(0.0, std::vector<double>{0.0, 1.0});
    acc.observe(1.0, std::vector<double>{0.0, 2.0});
    acc.observe(3.0, std::vector<double>{0.0, 4.0});
    CHECK(acc.value() == doctest::Approx((1.0 * 0.5 + 2.0 * 2.0) / 2.5));

    CHECK_THROWS_AS(SyncErrorAccumulator(2, 3, 5.0, 5.0), std::invalid_argument);
    CHECK_THROWS_AS(short_config(300.0, 100.0, 1).validate(), std::invalid_argument);
    CHECK_THROWS_AS(short_config(1.0, 2.0, 0).validate(), std::invalid_argument);
}

TEST_CASE("blown-up runs report the sentinel") {
    CHECK(blowup_sentinel(10.0, 3.0) == 100.0);
    CHECK(blowup_sentinel(10.0, 250.0) == 250.0);
    Trajectory traj;
    traj.times = {0.0, 1.0};
    traj.states = {{0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0}};
    traj.terminated_at = 1.5;
    CHECK(sync_error(traj, 2, 3, short_config(0.5, 3.0, 1)) == 100.0);
}

TEST_CASE("two decoupled Lorenz systems do not synchronize") {
    const MemberResult r = run_member(pair_graph(), {0.0, 0.0, 1.0}, short_config(50.0, 150.0, 1), 5);
    CHECK(r.error > 1.0);
    CHECK_FALSE(r.blew_up);
    CHECK(r.step == 0.01);
}

TEST_CASE("initial conditions: base plus per-component jitter in [0, 0.1)") {
    SyncErrorConfig cfg;
    const auto x = initial_state(50, cfg, 8);
    const double base[3] = {-7.0, -10.0, 5.0};
    bool any_differs = false;
    for (std::size_t i = 0; i < 50; ++i) {
        for (std::size_t a = 0; a < 3; ++a) {
            const double e = x[3 * i + a] - base[a];
            CHECK(e >= 0.0);
            CHECK(e < 0.1 + 1e-12);
            any_differs = any_differs || x[3 * i + a] != x[a];
        }
    }
    CHECK(any_differs);
    CHECK(initial_state(50, cfg, 8) == x);
}

TEST_CASE("delta_max scan on synthetic error curves") {
    auto linear = [](double d) { return 20.0 * d; };
    for (SearchStrategy s : {SearchStrategy::linear, SearchStrategy::bracketing}) {
        const DeltaMaxResult r = delta_max_scan(linear, 0.05, 10.0, 1.0, 20.0, s);
        CHECK(r.delta_max == doctest::Approx(0.45));
        CHECK_FALSE(r.capped);
    }
    CHECK_THROWS_AS(delta_max_scan([](double) { return 3.0; }, 0.05, 10.0, 1.0, 20.0, SearchStrategy::linear),
                    AlphaBelowThreshold);
    const DeltaMaxResult capped =
        delta_max_scan([](double) { return 0.0; }, 0.5, 10.0, 1.0, 3.0, SearchStrategy::bracketing);
    CHECK(capped.capped);
    CHECK(capped.delta_max == 3.0);
    CHECK_THROWS_AS(delta_max_scan(linear, 0.0, 10.0, 1.0, 1.0, SearchStrategy::linear), std::invalid_argument);
}

TEST_CASE("bracketing agrees with the linear scan on single-crossing curves") {
    testsupport::Gen gen(19);
    for (int trial = 0; trial < 200; ++trial) {
        const double crossing = testsupport::uniform(gen, 0.0, 25.0);
        const double step = testsupport::uniform(gen, 0.01, 0.3);
        auto f = [crossing](double d) { return d > crossing ? 50.0 : 0.01; };
        const DeltaMaxResult lin = delta_max_scan(f, step, 10.0, 1.0, 20.0, SearchStrategy::linear);
        const DeltaMaxResult br = delta_max_scan(f, step, 10.0, 1.0, 20.0, SearchStrategy::bracketing);
        CHECK(lin.delta_max == br.delta_max);
        CHECK(lin.capped == br.capped);
        CHECK(br.evaluations <= lin.evaluations + 1);
    }
}

TEST_CASE("halving the delta step moves delta_max by at most one step") {
    testsupport::Gen gen(23);
    for (int trial = 0; trial < 100; ++trial) {
        const double crossing = testsupport::uniform(gen, 0.1, 10.0);
        auto f = [crossing](double d) { return d > crossing ? 20.0 : 0.0; };
        const double step = 0.05;
        const double coarse = delta_max_scan(f, step, 10.0, 1.0, 20.0, SearchStrategy::linear).delta_max;
        const double fine = delta_max_scan(f, step / 2, 10.0, 1.0, 20.0, SearchStrategy::linear).delta_max;
        CHECK(std::abs(coarse - fine) <= step + 1e-12);
    }
}

TEST_CASE("power-law fit") {
    std::vector<double> n{50, 100, 200, 400, 800};
    std::vector<double> v;
    for (double x : n) {
        v.push_back(3.0 / std::sqrt(x));
    }
    const PowerLawFit fit = fit_power_law(n, v);
    CHECK(std::abs(fit.beta - 0.5) <= 1e-10);
    CHECK(fit.stderr_beta <= 1e-10);
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK(fit.intercept == doctest::Approx(std::log10(3.0)));
    CHECK_THROWS_AS(fit_power_law(std::vector<double>{1.0}, std::vector<double>{1.0}), std::invalid_argument);
    CHECK_THROWS_AS(fit_power_law(std::vector<double>{1.0, 2.0}, std::vector<double>{1.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("sweeps: worker count, cell independence, resume and CSV round trip") {
    const Graph g = generate({CompleteGraph{}, 2, 0});
    SweepOptions options;
    options.sync = short_config(5.0, 15.0, 2);
    options.seed = 77;
    options.checkpoint_every = 3;
    const std::vector<double> alphas{0.2, 0.7, 1.2};
    const std::vector<double> deltas{0.0, 2.5, 5.0};

    std::size_t checkpoints = 0;
    const SweepResult serial =
        tongue_sweep(g, alphas, deltas, options, nullptr, [&checkpoints](const SweepResult&) { ++checkpoints; });
    CHECK(checkpoints == 3);
    CHECK(serial.complete());
    options.workers = 4;
    const SweepResult parallel = tongue_sweep(g, alphas, deltas, options);
    CHECK(serial.Ea == parallel.Ea);
    CHECK(serial.blowups == parallel.blowups);

    const auto shared = std::make_shared<const Graph>(g);
    for (std::size_t c = 0; c < serial.cell_count(); ++c) {
        const CellParams params{alphas[c / 3], deltas[c % 3], 1.0};
        CHECK(evaluate_cell(shared, params, options.sync, 77, ExperimentId::tongue, c).Ea == serial.Ea[c]);
    }

    std::ostringstream os;
    write_sweep_csv(os, serial);
    std::istringstream back(os.str());
    const SweepResult reread = read_sweep_csv(back);
    CHECK(reread.alpha_grid == alphas);
    CHECK(reread.delta_grid == deltas);
    CHECK(reread.Ea == serial.Ea);

    // Resume from the first four rows; the rest is recomputed identically.
    std::string partial = os.str();
    std::size_t pos = 0;
    for (int line = 0; line < 5; ++line) {
        pos = partial.find('\n', pos) + 1;
    }
    partial.resize(pos);
    SweepResult seed_result(alphas, deltas);
    std::istringstream partial_in(partial);
    merge_sweep_csv(partial_in, seed_result);
    CHECK(std::count(seed_result.computed.begin(), seed_result.computed.end(), 1) == 4);
    const SweepResult resumed = tongue_sweep(g, alphas, deltas, options, &seed_result);
    CHECK(resumed.Ea == serial.Ea);

    std::istringstream off_grid("alpha,delta,Ea,blowups\n9,0,1,0\n");
    SweepResult target(alphas, deltas);
    CHECK_THROWS_AS(merge_sweep_csv(off_grid, target), std::runtime_error);
    std::istringstream ragged("alpha,delta,Ea,blowups\n0.2,0,1,0\n0.7,1,1,0\n");
    CHECK_THROWS_AS(read_sweep_csv(ragged), std::runtime_error);

    // Fast-limit cells draw from their own experiment stream.
    const SweepResult fast = fast_limit_sweep(g, alphas, deltas, options);
    CHECK_FALSE(fast.Ea == serial.Ea);
}

TEST_CASE("boundary extraction on a synthetic grid") {
    SweepResult r({0.2, 1.0, 2.0, 3.0}, {0.0, 1.0, 2.0, 3.0});
    const double grid[4][4] = {
        {5, 5, 5, 5},      // desynchronized at delta = 0: skipped
        {0, 0, 5, 5},      // boundary between 1 and 2
        {0, 0, 0, 5},      // between 2 and 3
        {0, 0, 0, 0.5},    // never reaches the threshold: skipped
    };
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t d = 0; d < 4; ++d) {
            r.Ea[r.index(a, d)] = grid[a][d];
        }
    }
    const auto pts = extract_boundary(r, 1.0);
    REQUIRE(pts.size() == 2);
    CHECK(pts[0].alpha == 1.0);
    CHECK(pts[0].delta == 1.5);
    CHECK(pts[1].alpha == 2.0);
    CHECK(pts[1].delta == 2.5);
}

TEST_CASE("sync error is invariant under node relabeling") {
    testsupport::Gen gen(41);
    const std::size_t n = 5;
    const Graph g = testsupport::random_connected_graph(gen, n, 0.3);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<std::size_t> inverse(n);
    for (std::size_t i = 0; i < n; ++i) {
        inverse[perm[i]] = i;
    }
    std::vector<Edge> relabeled;
    for (const Edge& e : g.edges()) {
        relabeled.push_back({perm[e.u], perm[e.v]});
    }
    const auto ga = std::make_shared<const Graph>(g);
    const auto gb = std::make_shared<const Graph>(Graph::from_edges(n, relabeled));
    CouplingSpec ca = CouplingSpec::identity(*ga, 3, 1.0, 1.0, 3);
    CouplingSpec cb = CouplingSpec::identity(*gb, 3, 1.0, 1.0, 3);
    cb.perturbations = PerturbationMap::from_function(*gb, 3, [&](std::size_t i, std::size_t j) {
        return ca.perturbations.matrix(g.slot(inverse[i], inverse[j]));
    });
    const NetworkSystem sa(ga, lorenz_model(), ca, 2.0);
    const NetworkSystem sb(gb, lorenz_model(), cb, 2.0);
    const SyncErrorConfig cfg = short_config(1.0, 6.0, 1);
    const auto xa = initial_state(n, cfg, 12);
    std::vector<double> xb(xa.size());
    for (std::size_t i = 0; i < n; ++i) {
        std::copy_n(xa.begin() + 3 * i, 3, xb.begin() + 3 * perm[i]);
    }
    const Trajectory ta = integrate(sa, xa, 0.0, cfg.horizon, cfg.integrator);
    const Trajectory tb = integrate(sb, xb, 0.0, cfg.horizon, cfg.integrator);
    const double ea = sync_error(ta, n, 3, cfg);
    const double eb = sync_error(tb, n, 3, cfg);
    CHECK(ea > 0.0);
    CHECK(eb == doctest::Approx(ea).epsilon(1e-8));
}

TEST_CASE("fast forcing leaves the decay rate unchanged") {
    const auto g = pair_graph();
    const SyncErrorConfig cfg = short_config(1.0, 2.0, 1);
    std::vector<double> calm;
    std::vector<double> forced;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        calm.push_back(transient_decay_slope(g, {2.0, 0.0, 1000.0}, cfg, seed, 0.0, 8.0));
        forced.push_back(transient_decay_slope(g, {2.0, 5.0, 1000.0}, cfg, seed, 0.0, 8.0));
    }
    const double a = testsupport::median(calm);
    const double b = testsupport::median(forced);
    CHECK(a < 0.0);
    CHECK(std::abs(a - b) < 0.2 * std::abs(a));
}

TEST_CASE("scaling study on a tiny instance") {
    ScalingOptions o;
    o.family = BarabasiAlbert{2};
    o.n_list = {10, 20};
    o.graph_seeds = 2;
    o.seed = 5;
    o.search.sync = short_config(3.0, 6.0, 1);
    o.search.step = 0.5;
    o.search.delta_cap = 4.0;
    o.search.strategy = SearchStrategy::bracketing;
    const ScalingResult r = scaling_study(o);
    REQUIRE(r.rows.size() == 4);
    REQUIRE(r.median_delta_max.size() == 2);
    for (const ScalingRow& row : r.rows) {
        CHECK_FALSE(row.flagged);
        CHECK(row.delta_max >= 0.0);
        CHECK(std::abs(row.delta_max / 0.5 - std::round(row.delta_max / 0.5)) < 1e-12);
    }
    o.workers = 3;
    const ScalingResult again = scaling_study(o);
    CHECK(again.median_delta_max == r.median_delta_max);
    CHECK(again.fit.beta == r.fit.beta);

    std::ostringstream rows;
    std::ostringstream summary;
    std::ostringstream fit;
    write_scaling_csv(rows, r);
    write_scaling_summary_csv(summary, r);
    write_scaling_fit(fit, r);
    CHECK(rows.str().rfind("n,graph_seed,delta_max\n", 0) == 0);
    CHECK(summary.str().rfind("n,delta_max_median\n", 0) == 0);
    CHECK(fit.str().rfind("beta,stderr\n", 0) == 0);

    // Too weak a coupling fails the delta = 0 precheck and flags every n.
    o.search.alpha = 0.0;
    o.search.sync = short_config(30.0, 40.0, 1);
    const ScalingResult weak = scaling_study(o);
    CHECK(weak.flagged_n == std::vector<std::size_t>{10, 20});
}
