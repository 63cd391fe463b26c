#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "support.hpp"
#include "syncpersist/bounds.hpp"
#include "syncpersist/spectra.hpp"

using namespace syncpersist;

TEST_CASE("Jacobi eigenvalues are the roots of the characteristic polynomial (n <= 4)") {
    testsupport::Gen gen(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = testsupport::uniform_size(gen, 2, 4);
        const Matrix m = testsupport::random_symmetric(gen, n, 3.0);
        const auto ev = eigenvalues_symmetric(m);
        const auto roots = testsupport::real_roots(testsupport::characteristic_polynomial(m), 13.0);
        REQUIRE(roots.size() == n);
        for (std::size_t k = 0; k < n; ++k) {
            CHECK(ev[k] == doctest::Approx(roots[k]).epsilon(1e-9).scale(1.0));
        }
    }
}

TEST_CASE("Jacobi on closed-form spectra") {
    // Path P_n: 2 - 2 cos(k pi / n), k = 0..n-1.
    const std::size_t n = 9;
    const auto path = eigenvalues_symmetric(laplacian(generate({PathGraph{}, n, 0})));
    for (std::size_t k = 0; k < n; ++k) {
        const double expected = 2.0 - 2.0 * std::cos(static_cast<double>(k) * std::numbers::pi / static_cast<double>(n));
        CHECK(path[k] == doctest::Approx(expected).epsilon(1e-12).scale(1.0));
    }
    // Star S_n: 0, 1 (n - 2 times), n.
    const auto star = eigenvalues_symmetric(laplacian(generate({StarGraph{}, n, 0})));
    CHECK(std::abs(star.front()) < 1e-12);
    for (std::size_t k = 1; k + 1 < n; ++k) {
        CHECK(star[k] == doctest::Approx(1.0).epsilon(1e-12));
    }
    CHECK(star.back() == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    // [[a, b], [b, c]].
    const Matrix two{{1.5, 0.5}, {0.5, -2.0}};
    const double mean = -0.25;
    const double r = std::sqrt(1.75 * 1.75 + 0.25);
    const auto ev = eigenvalues_symmetric(two);
    CHECK(ev[0] == doctest::Approx(mean - r).epsilon(1e-14));
    CHECK(ev[1] == doctest::Approx(mean + r).epsilon(1e-14));
}

TEST_CASE("Jacobi rejects non-symmetric input") {
    CHECK_THROWS_AS(eigenvalues_symmetric(Matrix{{1, 2}, {0, 1}}), SpectralError);
    CHECK_THROWS_AS(eigenvalues_symmetric(Matrix(2, 3)), SpectralError);
}

TEST_CASE("spectral identities on random graphs") {
    testsupport::Gen gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = testsupport::uniform_size(gen, 2, 30);
        const Graph g = testsupport::random_connected_graph(gen, n, testsupport::uniform(gen, 0.0, 0.6));
        const SpectralSummary s = summarize(g);
        double trace = 0.0;
        for (double v : s.eigenvalues) {
            trace += v;
        }
        CHECK(trace == doctest::Approx(2.0 * static_cast<double>(g.edge_count())).epsilon(1e-10));
        CHECK(std::abs(s.eigenvalues.front()) < 1e-9);
        CHECK(s.lambda2 > 0.0);
        CHECK(s.opnorm == 2.0 * static_cast<double>(g.max_degree()));
        CHECK(s.opnorm == max_row_sum_norm(laplacian(g)));
        CHECK(s.lambda2 <= fiedler_ceiling(n, static_cast<double>(s.g_min)) + 1e-9);
    }
}

TEST_CASE("lambda2 of complete graphs equals n") {
    for (std::size_t n = 2; n <= 40; n += 3) {
        const SpectralSummary s = summarize(generate({CompleteGraph{}, n, 0}));
        CHECK(s.lambda2 == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
        CHECK(s.opnorm == 2.0 * static_cast<double>(n - 1));
        CHECK(s.g_min == n - 1);
    }
}

TEST_CASE("summarize refuses disconnected graphs") {
    const Graph g = Graph::from_edges(4, {{0, 1}, {2, 3}});
    CHECK_THROWS_WITH_AS(summarize(g), "lambda2 undefined/zero: graph is not connected", SpectralError);
}

TEST_CASE("a(p0) solves p0 - 1 = a p0 (1 - log a)") {
    double previous = 0.0;
    for (double p0 : {1.01, 2.0, 10.0, 100.0}) {
        const double a = er_a_of_p0(p0);
        CHECK(a > 0.0);
        CHECK(a < 1.0);
        CHECK(std::abs(p0 - 1.0 - a * p0 * (1.0 - std::log(a))) <= 1e-10);
        CHECK(a > previous);
        previous = a;
    }
    CHECK_THROWS_AS(er_a_of_p0(1.0), std::invalid_argument);
    CHECK(predicted_ratio_er(10, 0.1) == 0.0);
}

TEST_CASE("Erdos-Renyi lambda2 / (n p) tracks a(p0) at moderate n") {
    const std::size_t n = 400;
    const double p = 0.3;
    const SpectralSummary s = summarize(generate({ErdosRenyi{p}, n, 9}));
    const double measured = s.lambda2 / (static_cast<double>(n) * p);
    CHECK(measured == doctest::Approx(predicted_ratio_er(n, p)).epsilon(0.15));
}

TEST_CASE("BA scale is n^(-1/2)") {
    CHECK(predicted_delta_scale_ba(400) == doctest::Approx(0.05).epsilon(1e-15));
    CHECK_THROWS_AS(predicted_delta_scale_ba(1), std::invalid_argument);
}

TEST_CASE("power iteration agrees with the largest |eigenvalue| of a symmetric matrix") {
    testsupport::Gen gen(77);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = testsupport::uniform_size(gen, 3, 12);
        Matrix m = testsupport::random_symmetric(gen, n);
        m(0, 0) += 5.0;  // keep a clear spectral gap
        const auto ev = eigenvalues_symmetric(m);
        const double expected = std::max(std::abs(ev.front()), std::abs(ev.back()));
        auto apply = [&m](std::span<const double> x, std::span<double> y) {
            const auto r = m * x;
            std::copy(r.begin(), r.end(), y.begin());
        };
        const double est = estimate_spectral_norm(apply, apply, n, 200);
        CHECK(est == doctest::Approx(expected).epsilon(1e-6));
    }
}
