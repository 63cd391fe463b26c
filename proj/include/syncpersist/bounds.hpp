#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "syncpersist/spectra.hpp"

namespace syncpersist {

/// The proof-level constants (eta, K) controlling unperturbed contraction.
/// They are never derived here: either supplied or fitted from a measured
/// tongue boundary.
struct DichotomyConstants {
    enum class Source { config, fitted };

    double eta = 0.0;
    double K = 1.0;
    Source source = Source::config;
    /// RMS residual of the boundary fit; zero for supplied constants.
    double fit_residual = 0.0;
};

std::string_view to_string(DichotomyConstants::Source source);

/// Persistence thresholds for one network and one coupling matrix.
class BoundReport {
public:
    BoundReport(double lambda2, double opnorm, double gamma, DichotomyConstants constants);

    /// alpha* = eta / (lambda2 gamma)
    double alpha_threshold() const noexcept;
    /// delta*(alpha) = (lambda2 gamma - eta / alpha) / (K ||L||)
    double delta_threshold(double alpha) const;
    /// Decay rate alpha lambda2 gamma - eta - alpha delta K ||L||; zero on delta_threshold(alpha).
    double nu(double alpha, double delta) const noexcept;

    /// Boundary written as delta = c1 - c2 / alpha.
    double c1() const noexcept;
    double c2() const noexcept;

    double lambda2() const noexcept { return lambda2_; }
    double opnorm() const noexcept { return opnorm_; }
    double gamma() const noexcept { return gamma_; }
    const DichotomyConstants& constants() const noexcept { return constants_; }

private:
    double lambda2_;
    double opnorm_;
    double gamma_;
    DichotomyConstants constants_;
};

BoundReport evaluate_bounds(const SpectralSummary& spec, double gamma, const DichotomyConstants& constants);

/// Constants implied by a boundary delta = c1 - c2 / alpha:
/// K = lambda2 gamma / (c1 ||L||), eta = c2 K ||L||.
DichotomyConstants constants_from_boundary(double c1, double c2, double lambda2, double opnorm, double gamma);

struct BoundaryPoint {
    double alpha;
    double delta;
};

struct BoundaryFit {
    double c1 = 0.0;
    double c2 = 0.0;
    double rms = 0.0;
    double r_squared = 0.0;
    DichotomyConstants constants;
};

/// Least-squares fit of delta = c1 - c2 / alpha; needs two or more distinct
/// alphas. With exactly two points the fit interpolates.
BoundaryFit fit_constants(std::span<const BoundaryPoint> points, double lambda2, double opnorm, double gamma);

enum class NetworkFamily { erdos_renyi, barabasi_albert };

struct CorollaryInputs {
    double gamma = 1.0;
    double K = 0.0;
    /// BA only: n, the limiting g_max / sqrt(n), and the lambda2 ceiling m~.
    std::size_t n = 0;
    double mu = 0.0;
    double m_tilde = 0.0;
};

/// Large-alpha bounds: ER gives K0 = gamma / K, BA gives
/// K1 n^(-1/2) with K1 = gamma m~ / (2 mu K).
double corollary_bound(NetworkFamily family, const CorollaryInputs& in);

/// Default m~ for BA: the Fiedler ceiling (n / (n - 1)) m0.
double fiedler_ceiling(std::size_t n, double g_min);

/// Frequency above which ||int_{t1}^{t2} delta cos(omega t) R dt|| <= c: 2 delta / c.
double fast_omega0(double delta, double c);

/// Window-independent bound 2 delta / omega on that integral.
double fast_integral_bound(double delta, double omega);

} // namespace syncpersist
