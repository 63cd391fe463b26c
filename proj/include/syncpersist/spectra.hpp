#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

#include "syncpersist/graph.hpp"
#include "syncpersist/matrix.hpp"

namespace syncpersist {

class SpectralError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct JacobiOptions {
    /// Stop once the off-diagonal Frobenius norm drops below this times ||M||_F.
    double relative_tolerance = 1e-12;
    /// Inputs with max |m_ij - m_ji| above this are rejected.
    double symmetry_tolerance = 1e-12;
    int max_sweeps = 100;
};

/// All eigenvalues of a real symmetric matrix, ascending, by cyclic Jacobi
/// rotations.
std::vector<double> eigenvalues_symmetric(const Matrix& m, const JacobiOptions& options = {});

struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending
    double lambda2 = 0.0;             // algebraic connectivity
    double opnorm = 0.0;              // ||L|| in the max-row-sum norm, = 2 g_max
    std::size_t g_min = 0;
    std::size_t g_max = 0;
    std::size_t n = 0;
};

/// Laplacian spectrum summary of a connected graph. Throws SpectralError when
/// the graph is disconnected (lambda2 would be zero).
SpectralSummary summarize(const Graph& g, const JacobiOptions& options = {});

/// Root a in (0, 1) of p0 - 1 = a p0 (1 - log a), by bisection. Requires p0 > 1.
double er_a_of_p0(double p0, double tolerance = 1e-10);

/// Large-n prediction of lambda2 / (n p) for an Erdos-Renyi graph, via
/// p = p0 log(n) / n. Returns 0 when p0 <= 1 (below the connectivity regime).
double predicted_ratio_er(std::size_t n, double p);

/// n^(-1/2), the scale of the BA perturbation bound.
double predicted_delta_scale_ba(std::size_t n);

/// Power-iteration estimate of the spectral norm ||A||_2 of a linear operator
/// given through matvecs with A and its transpose. Converges from below.
double estimate_spectral_norm(const std::function<void(std::span<const double>, std::span<double>)>& apply,
                              const std::function<void(std::span<const double>, std::span<double>)>& apply_transpose,
                              std::size_t dim, int iterations = 60, std::uint64_t seed = 7);

} // namespace syncpersist
