#include "syncpersist/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace syncpersist {

std::string_view to_string(DichotomyConstants::Source source) {
    return source == DichotomyConstants::Source::fitted ? "fitted" : "config";
}

BoundReport::BoundReport(double lambda2, double opnorm, double gamma, DichotomyConstants constants)
    : lambda2_(lambda2), opnorm_(opnorm), gamma_(gamma), constants_(constants) {
    if (!(lambda2 > 0.0) || !(opnorm > 0.0) || !(gamma > 0.0)) {
        throw std::invalid_argument("bounds: lambda2, ||L|| and gamma must be positive");
    }
    if (!(constants.eta > 0.0) || !(constants.K > 0.0)) {
        throw std::invalid_argument("bounds: eta and K must be positive");
    }
}

double BoundReport::alpha_threshold() const noexcept { return constants_.eta / (lambda2_ * gamma_); }

double BoundReport::delta_threshold(double alpha) const {
    if (!(alpha > 0.0)) {
        throw std::invalid_argument("bounds: alpha must be positive");
    }
    return (lambda2_ * gamma_ - constants_.eta / alpha) / (constants_.K * opnorm_);
}

double BoundReport::nu(double alpha, double delta) const noexcept {
    // The perturbation enters through alpha P(t), so its cost scales with alpha.
    return alpha * lambda2_ * gamma_ - constants_.eta - alpha * delta * constants_.K * opnorm_;
}

double BoundReport::c1() const noexcept { return lambda2_ * gamma_ / (constants_.K * opnorm_); }

double BoundReport::c2() const noexcept { return constants_.eta / (constants_.K * opnorm_); }

BoundReport evaluate_bounds(const SpectralSummary& spec, double gamma, const DichotomyConstants& constants) {
    return BoundReport(spec.lambda2, spec.opnorm, gamma, constants);
}

DichotomyConstants constants_from_boundary(double c1, double c2, double lambda2, double opnorm, double gamma) {
    if (!(c1 > 0.0) || !(c2 > 0.0)) {
        throw std::invalid_argument("bounds: boundary coefficients must be positive");
    }
    DichotomyConstants k;
    k.K = lambda2 * gamma / (c1 * opnorm);
    k.eta = c2 * k.K * opnorm;
    k.source = DichotomyConstants::Source::fitted;
    return k;
}

BoundaryFit fit_constants(std::span<const BoundaryPoint> points, double lambda2, double opnorm, double gamma) {
    if (points.size() < 2) {
        throw std::invalid_argument("fit_constants: need at least two boundary points");
    }
    // delta = c1 + c2 * u with u = -1/alpha; ordinary least squares on centered data.
    double mean_u = 0.0;
    double mean_d = 0.0;
    for (const auto& p : points) {
        if (!(p.alpha > 0.0)) {
            throw std::invalid_argument("fit_constants: alpha must be positive");
        }
        mean_u += -1.0 / p.alpha;
        mean_d += p.delta;
    }
    const double count = static_cast<double>(points.size());
    mean_u /= count;
    mean_d /= count;
    double suu = 0.0;
    double sud = 0.0;
    double sdd = 0.0;
    for (const auto& p : points) {
        const double du = -1.0 / p.alpha - mean_u;
        const double dd = p.delta - mean_d;
        suu += du * du;
        sud += du * dd;
        sdd += dd * dd;
    }
    if (!(suu > 1e-300) || suu <= 1e-14 * mean_u * mean_u * count) {
        throw std::invalid_argument("fit_constants: rank-deficient design (all alpha equal)");
    }
    BoundaryFit fit;
    fit.c2 = sud / suu;
    fit.c1 = mean_d - fit.c2 * mean_u;

    double sse = 0.0;
    for (const auto& p : points) {
        const double r = p.delta - (fit.c1 - fit.c2 / p.alpha);
        sse += r * r;
    }
    fit.rms = std::sqrt(sse / count);
    fit.r_squared = sdd > 0.0 ? 1.0 - sse / sdd : 1.0;
    if (fit.c1 > 0.0 && fit.c2 > 0.0) {
        fit.constants = constants_from_boundary(fit.c1, fit.c2, lambda2, opnorm, gamma);
    } else {
        fit.constants.source = DichotomyConstants::Source::fitted;
        fit.constants.eta = 0.0;
        fit.constants.K = 0.0;
    }
    fit.constants.fit_residual = fit.rms;
    return fit;
}

double corollary_bound(NetworkFamily family, const CorollaryInputs& in) {
    if (!(in.gamma > 0.0) || !(in.K > 0.0)) {
        throw std::invalid_argument("corollary_bound: gamma and K are required");
    }
    if (family == NetworkFamily::erdos_renyi) {
        return in.gamma / in.K;
    }
    if (in.n < 1 || !(in.mu > 0.0) || !(in.m_tilde > 0.0)) {
        throw std::invalid_argument("corollary_bound: BA needs n, mu and m~");
    }
    const double k1 = in.gamma * in.m_tilde / (2.0 * in.mu * in.K);
    return k1 / std::sqrt(static_cast<double>(in.n));
}

double fiedler_ceiling(std::size_t n, double g_min) {
    if (n < 2) {
        throw std::invalid_argument("fiedler_ceiling: n must be >= 2");
    }
    const double nd = static_cast<double>(n);
    return nd / (nd - 1.0) * g_min;
}

double fast_omega0(double delta, double c) {
    if (!(c > 0.0)) {
        throw std::invalid_argument("fast_omega0: c must be positive");
    }
    return 2.0 * std::abs(delta) / c;
}

double fast_integral_bound(double delta, double omega) {
    if (!(omega > 0.0)) {
        throw std::invalid_argument("fast_integral_bound: omega must be positive");
    }
    return 2.0 * std::abs(delta) / omega;
}

} // namespace syncpersist
