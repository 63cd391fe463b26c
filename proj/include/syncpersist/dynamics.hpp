#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "syncpersist/graph.hpp"
#include "syncpersist/matrix.hpp"

namespace syncpersist {

/// Raised when a state turns non-finite; carries the time of detection.
class BlowUpError : public std::runtime_error {
public:
    explicit BlowUpError(double t) : std::runtime_error("blow-up detected at t=" + std::to_string(t)), time_(t) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

/// Isolated node vector field f : R^q -> R^q.
struct OscillatorModel {
    std::string name;
    std::size_t dim = 0;
    std::function<void(std::span<const double>, std::span<double>)> rhs;
    std::function<Matrix(std::span<const double>)> jacobian;
    /// Bound on ||Df|| over the absorbing region, when known.
    std::optional<double> jacobian_bound;
};

/// Node states are limited to this dimension so the coupling loop can use
/// fixed-size scratch space.
inline constexpr std::size_t max_node_dim = 8;

std::array<double, 3> lorenz_rhs(const std::array<double, 3>& x) noexcept;
Matrix lorenz_jacobian(std::span<const double> x);

/// Lorenz system with parameters (10, 28, 8/3).
OscillatorModel lorenz_model();

/// Per ordered pair (i, j) with A_ij = 1, a q x q matrix R_ij. Storage is
/// aligned with the graph's neighbor slots.
class PerturbationMap {
public:
    PerturbationMap() = default;

    /// GOE draws (diagonal variance 2, off-diagonal variance 1) divided by
    /// their max-row-sum norm, one per ordered pair. With symmetric_mismatch
    /// the pair (j, i) reuses the draw of (i, j).
    static PerturbationMap sample(const Graph& g, std::size_t q, std::uint64_t seed, bool symmetric_mismatch = false);

    /// Builds the map from explicit matrices, e.g. to relabel nodes consistently.
    static PerturbationMap from_function(const Graph& g, std::size_t q,
                                         const std::function<Matrix(std::size_t, std::size_t)>& make);

    std::size_t dim() const noexcept { return q_; }
    std::size_t slot_count() const noexcept { return q_ == 0 ? 0 : data_.size() / (q_ * q_); }
    std::span<const double> block(std::size_t slot) const noexcept { return {data_.data() + slot * q_ * q_, q_ * q_}; }
    Matrix matrix(std::size_t slot) const;

private:
    std::size_t q_ = 0;
    std::vector<double> data_;
};

/// Smallest real part among the eigenvalues of a symmetric Gamma.
double gamma_of_symmetric(const Matrix& gamma_matrix);

/// Linear coupling H_ij(t, x) = (Gamma + delta cos(omega t) R_ij) x.
struct CouplingSpec {
    Matrix gamma_matrix;
    double gamma = 1.0;
    double delta = 0.0;
    double omega = 1.0;
    PerturbationMap perturbations;
    std::uint64_t seed = 0;

    /// Gamma = I_q, perturbations drawn from seed.
    static CouplingSpec identity(const Graph& g, std::size_t q, double delta, double omega, std::uint64_t seed,
                                 bool symmetric_mismatch = false);

    bool gamma_is_identity() const;
};

/// Network of identical nodes coupled diffusively along the edges of a
/// connected graph:
///
///   x_i' = f(x_i) + alpha * sum_j A_ij (Gamma + delta cos(omega t) R_ij)(x_j - x_i)
///
/// Immutable and safe to evaluate from several threads.
class NetworkSystem {
public:
    NetworkSystem(std::shared_ptr<const Graph> graph, OscillatorModel model, CouplingSpec coupling, double alpha);

    const Graph& graph() const noexcept { return *graph_; }
    const OscillatorModel& model() const noexcept { return model_; }
    const CouplingSpec& coupling() const noexcept { return coupling_; }
    double alpha() const noexcept { return alpha_; }
    std::size_t node_dim() const noexcept { return model_.dim; }
    std::size_t state_dim() const noexcept { return graph_->size() * model_.dim; }

    /// Right-hand side. Throws BlowUpError on a non-finite input state.
    void operator()(double t, std::span<const double> x, std::span<double> dxdt) const;

private:
    std::shared_ptr<const Graph> graph_;
    OscillatorModel model_;
    CouplingSpec coupling_;
    double alpha_;
    bool identity_gamma_;
};

/// Dense P(t): block (i, j) = A_ij P_ij(t) for i != j and block (i, i) =
/// -sum_j A_ij P_ij(t), with P_ij(t) = delta cos(omega t) R_ij.
Matrix perturbation_matrix(const NetworkSystem& sys, double t);

/// Dense linearization about a synchronous state s:
/// I_n (x) Df(s) - alpha (L (x) Gamma) + alpha P(t). For small n only.
Matrix variational_operator(const NetworkSystem& sys, double t, std::span<const double> s);

/// Upper estimate of the spectral radius of the network Jacobian, used to pick
/// a stable explicit step: rho_f + alpha (lambda_max(L) ||Gamma||_2 + delta ||Q||_2),
/// where Q is the unit-amplitude perturbation operator. The 2-norms come from
/// power iteration and carry a safety margin.
double stiffness_bound(const NetworkSystem& sys);

} // namespace syncpersist
