#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "syncpersist/bounds.hpp"

using namespace syncpersist;

namespace {

DichotomyConstants config_constants(double eta, double K) {
    DichotomyConstants c;
    c.eta = eta;
    c.K = K;
    return c;
}

} // namespace

TEST_CASE("threshold, bound and decay rate by hand") {
    // lambda2 = 2, ||L|| = 2, gamma = 1, eta = 1, K = 1/8.
    const BoundReport r(2.0, 2.0, 1.0, config_constants(1.0, 0.125));
    CHECK(r.alpha_threshold() == 0.5);
    CHECK(r.delta_threshold(1.0) == 4.0);
    CHECK(r.c1() == 8.0);
    CHECK(r.c2() == 4.0);
    CHECK(r.nu(1.0, 0.0) == 1.0);
    CHECK(r.nu(1.0, 4.0) == 0.0);
    CHECK(r.delta_threshold(2.0) == 6.0);
    CHECK(r.nu(2.0, 0.0) == 3.0);
    CHECK(r.nu(2.0, 6.0) == 0.0);
    CHECK(r.nu(2.0, 1.0) == 2.5);
    CHECK(r.constants().source == DichotomyConstants::Source::config);
}

TEST_CASE("nu vanishes on the bound and the bound is positive exactly above threshold") {
    testsupport::Gen gen(1);
    for (int draw = 0; draw < 1000; ++draw) {
        const double lambda2 = testsupport::uniform(gen, 0.01, 50.0);
        const double opnorm = lambda2 * testsupport::uniform(gen, 1.0, 10.0);
        const double gamma = testsupport::uniform(gen, 0.1, 5.0);
        const BoundReport r(lambda2, opnorm, gamma,
                            config_constants(testsupport::uniform(gen, 0.01, 5.0), testsupport::uniform(gen, 0.1, 10.0)));
        const double alpha = r.alpha_threshold() * testsupport::uniform(gen, 0.2, 5.0);
        const double d = r.delta_threshold(alpha);
        const double scale = alpha * lambda2 * gamma;
        CHECK(std::abs(r.nu(alpha, d)) <= 1e-12 * scale);
        CHECK((d > 0.0) == (alpha > r.alpha_threshold()));
        CHECK(r.delta_threshold(alpha) == doctest::Approx(r.c1() - r.c2() / alpha).epsilon(1e-12).scale(r.c1()));
    }
}

TEST_CASE("constants recovered from a boundary reproduce it") {
    const DichotomyConstants c = constants_from_boundary(8.0, 4.0, 2.0, 2.0, 1.0);
    CHECK(c.source == DichotomyConstants::Source::fitted);
    CHECK(to_string(c.source) == "fitted");
    const BoundReport r(2.0, 2.0, 1.0, c);
    CHECK(r.delta_threshold(1.0) == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(r.alpha_threshold() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(constants_from_boundary(-1.0, 4.0, 2.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(BoundReport(0.0, 2.0, 1.0, config_constants(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(BoundReport(2.0, 2.0, 1.0, config_constants(0, 1)), std::invalid_argument);
    const BoundReport r(2.0, 2.0, 1.0, config_constants(1, 1));
    CHECK_THROWS_AS(r.delta_threshold(0.0), std::invalid_argument);
}

TEST_CASE("boundary fit recovers noiseless coefficients") {
    testsupport::Gen gen(4);
    for (int trial = 0; trial < 50; ++trial) {
        const double c1 = testsupport::uniform(gen, 1.0, 15.0);
        const double c2 = testsupport::uniform(gen, 0.5, 8.0);
        std::vector<BoundaryPoint> pts;
        const std::size_t m = testsupport::uniform_size(gen, 2, 30);
        for (std::size_t k = 0; k < m; ++k) {
            const double a = 0.3 + 0.1 * static_cast<double>(k);
            pts.push_back({a, c1 - c2 / a});
        }
        const BoundaryFit fit = fit_constants(pts, 2.0, 2.0, 1.0);
        CHECK(fit.c1 == doctest::Approx(c1).epsilon(1e-10));
        CHECK(fit.c2 == doctest::Approx(c2).epsilon(1e-10));
        CHECK(fit.rms <= 1e-10);
        if (m > 2) {
            CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
    const BoundaryFit two = fit_constants(std::vector<BoundaryPoint>{{0.5, 0.0}, {1.0, 4.0}}, 2.0, 2.0, 1.0);
    CHECK(two.c1 == doctest::Approx(8.0));
    CHECK(two.c2 == doctest::Approx(4.0));
    CHECK(two.constants.source == DichotomyConstants::Source::fitted);
    CHECK_THROWS_AS(fit_constants(std::vector<BoundaryPoint>{{1.0, 1.0}}, 2, 2, 1), std::invalid_argument);
    CHECK_THROWS_AS(fit_constants(std::vector<BoundaryPoint>{{1.0, 1.0}, {1.0, 2.0}}, 2, 2, 1),
                    std::invalid_argument);
}

TEST_CASE("network-family bounds") {
    CorollaryInputs in;
    in.gamma = 2.0;
    in.K = 4.0;
    CHECK(corollary_bound(NetworkFamily::erdos_renyi, in) == 0.5);
    in.n = 400;
    in.mu = 0.5;
    in.m_tilde = 3.0;
    // gamma m~ / (2 mu K) = 1.5, times n^(-1/2).
    CHECK(corollary_bound(NetworkFamily::barabasi_albert, in) == doctest::Approx(1.5 / 20.0));
    in.mu = 0.0;
    CHECK_THROWS_AS(corollary_bound(NetworkFamily::barabasi_albert, in), std::invalid_argument);
    CHECK(fiedler_ceiling(5, 4.0) == 5.0);
}

TEST_CASE("fast-oscillation quantities") {
    CHECK(fast_omega0(5.0, 0.01) == doctest::Approx(1000.0));
    CHECK(fast_omega0(-5.0, 0.01) == doctest::Approx(1000.0));
    CHECK_THROWS_AS(fast_omega0(1.0, 0.0), std::invalid_argument);
    CHECK(fast_integral_bound(5.0, 1000.0) == doctest::Approx(0.01));
    CHECK_THROWS_AS(fast_integral_bound(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("integral of the oscillating perturbation never exceeds 2 delta / omega") {
    // Trapezoid quadrature of delta cos(omega t) R over random windows; with
    // ||R|| = 1 the norm of the integral is |integral of delta cos(omega t)|.
    testsupport::Gen gen(2);
    std::size_t violations = 0;
    for (int trial = 0; trial < 100; ++trial) {
        const double delta = testsupport::uniform(gen, 0.0, 10.0);
        const double omega = std::pow(10.0, testsupport::uniform(gen, 0.0, 3.0));
        const double t1 = testsupport::uniform(gen, 0.0, 100.0);
        // At most ten periods, so 10^4 points resolve every oscillation.
        const double t2 = t1 + testsupport::uniform(gen, 0.0, 10.0) * 2.0 * std::numbers::pi / omega;
        const int points = 10000;
        const double h = (t2 - t1) / points;
        double integral = 0.0;
        for (int k = 0; k <= points; ++k) {
            const double w = (k == 0 || k == points) ? 0.5 : 1.0;
            integral += w * delta * std::cos(omega * (t1 + k * h));
        }
        integral *= h;
        if (std::abs(integral) > fast_integral_bound(delta, omega) + 1e-8) {
            ++violations;
        }
    }
    CHECK(violations == 0);
}
