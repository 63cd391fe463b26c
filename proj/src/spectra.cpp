#include "syncpersist/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "syncpersist/rng.hpp"

namespace syncpersist {

namespace {

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) {
                s += a(i, j) * a(i, j);
            }
        }
    }
    return std::sqrt(s);
}

// Zero a(p, q) with a rotation in the (p, q) plane, applied from both sides.
void rotate(Matrix& a, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    if (apq == 0.0) {
        return;
    }
    const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
    const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;
    const std::size_t n = a.rows();

    for (std::size_t k = 0; k < n; ++k) {
        const double akp = a(k, p);
        const double akq = a(k, q);
        a(k, p) = c * akp - s * akq;
        a(k, q) = s * akp + c * akq;
    }
    for (std::size_t k = 0; k < n; ++k) {
        const double apk = a(p, k);
        const double aqk = a(q, k);
        a(p, k) = c * apk - s * aqk;
        a(q, k) = s * apk + c * aqk;
    }
    a(p, q) = 0.0;
    a(q, p) = 0.0;
}

} // namespace

std::vector<double> eigenvalues_symmetric(const Matrix& m, const JacobiOptions& options) {
    if (!m.square()) {
        throw SpectralError("eigenvalues_symmetric: matrix is not square");
    }
    if (asymmetry(m) > options.symmetry_tolerance) {
        throw SpectralError("eigenvalues_symmetric: matrix is not symmetric");
    }
    Matrix a = m;
    const std::size_t n = a.rows();
    const double threshold = options.relative_tolerance * frobenius_norm(m);

    for (int sweep = 0; sweep < options.max_sweeps && off_diagonal_norm(a) > threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                rotate(a, p, q);
            }
        }
    }
    if (off_diagonal_norm(a) > threshold) {
        throw SpectralError("eigenvalues_symmetric: no convergence after " + std::to_string(options.max_sweeps) +
                            " sweeps");
    }

    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = a(i, i);
    }
    std::sort(values.begin(), values.end());
    return values;
}

SpectralSummary summarize(const Graph& g, const JacobiOptions& options) {
    if (g.size() < 2 || !is_connected(g)) {
        throw SpectralError("lambda2 undefined/zero: graph is not connected");
    }
    SpectralSummary s;
    s.n = g.size();
    s.eigenvalues = eigenvalues_symmetric(laplacian(g), options);
    s.lambda2 = s.eigenvalues[1];
    s.g_min = g.min_degree();
    s.g_max = g.max_degree();
    s.opnorm = 2.0 * static_cast<double>(s.g_max);
    return s;
}

double er_a_of_p0(double p0, double tolerance) {
    if (!(p0 > 1.0)) {
        throw std::invalid_argument("er_a_of_p0: p0 must exceed 1");
    }
    // r(a) = a p0 (1 - log a) - (p0 - 1) increases on (0, 1]: r(0+) = 1 - p0 < 0, r(1) = 1 > 0.
    auto residual = [p0](double a) { return a * p0 * (1.0 - std::log(a)) - (p0 - 1.0); };
    double lo = 1e-300;
    double hi = 1.0;
    double mid = 0.5;
    for (int it = 0; it < 2000; ++it) {
        mid = 0.5 * (lo + hi);
        const double r = residual(mid);
        if (std::abs(r) <= tolerance * 1e-2 || mid <= lo || mid >= hi) {
            break;
        }
        if (r < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return mid;
}

double predicted_ratio_er(std::size_t n, double p) {
    if (n < 2) {
        throw std::invalid_argument("predicted_ratio_er: n must be >= 2");
    }
    const double p0 = p * static_cast<double>(n) / std::log(static_cast<double>(n));
    return p0 > 1.0 ? er_a_of_p0(p0) : 0.0;
}

double predicted_delta_scale_ba(std::size_t n) {
    if (n < 2) {
        throw std::invalid_argument("predicted_delta_scale_ba: n must be >= 2");
    }
    return 1.0 / std::sqrt(static_cast<double>(n));
}

double estimate_spectral_norm(const std::function<void(std::span<const double>, std::span<double>)>& apply,
                              const std::function<void(std::span<const double>, std::span<double>)>& apply_transpose,
                              std::size_t dim, int iterations, std::uint64_t seed) {
    if (dim == 0) {
        return 0.0;
    }
    Rng rng = make_rng(seed);
    std::normal_distribution<double> normal;
    std::vector<double> v(dim);
    std::vector<double> av(dim);
    for (double& x : v) {
        x = normal(rng);
    }
    auto norm2 = [](std::span<const double> x) {
        double s = 0.0;
        for (double e : x) {
            s += e * e;
        }
        return std::sqrt(s);
    };
    double estimate = 0.0;
    for (int it = 0; it < iterations; ++it) {
        const double nv = norm2(v);
        if (nv == 0.0) {
            return estimate;
        }
        for (double& x : v) {
            x /= nv;
        }
        apply(v, av);
        estimate = norm2(av);
        apply_transpose(av, v);
    }
    return estimate;
}

} // namespace syncpersist
