#include "syncpersist/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "syncpersist/rng.hpp"
#include "syncpersist/spectra.hpp"

namespace syncpersist {

std::array<double, 3> lorenz_rhs(const std::array<double, 3>& x) noexcept {
    return {10.0 * (x[1] - x[0]), x[0] * (28.0 - x[2]) - x[1], x[0] * x[1] - (8.0 / 3.0) * x[2]};
}

Matrix lorenz_jacobian(std::span<const double> x) {
    return Matrix{{-10.0, 10.0, 0.0}, {28.0 - x[2], -1.0, -x[0]}, {x[1], x[0], -8.0 / 3.0}};
}

OscillatorModel lorenz_model() {
    OscillatorModel m;
    m.name = "lorenz";
    m.dim = 3;
    m.rhs = [](std::span<const double> x, std::span<double> dx) {
        dx[0] = 10.0 * (x[1] - x[0]);
        dx[1] = x[0] * (28.0 - x[2]) - x[1];
        dx[2] = x[0] * x[1] - (8.0 / 3.0) * x[2];
    };
    m.jacobian = lorenz_jacobian;
    // Row sums of |Df| over |x| <= 20, |y| <= 28, 0 <= z <= 50.
    m.jacobian_bound = 51.0;
    return m;
}

Matrix PerturbationMap::matrix(std::size_t slot) const {
    Matrix m(q_, q_);
    const auto b = block(slot);
    std::copy(b.begin(), b.end(), m.data().begin());
    return m;
}

namespace {

Matrix draw_goe_unit(std::size_t q, Rng& rng) {
    std::normal_distribution<double> normal;
    for (;;) {
        Matrix m(q, q);
        for (std::size_t i = 0; i < q; ++i) {
            m(i, i) = std::sqrt(2.0) * normal(rng);
            for (std::size_t j = i + 1; j < q; ++j) {
                m(i, j) = normal(rng);
                m(j, i) = m(i, j);
            }
        }
        const double norm = max_row_sum_norm(m);
        if (norm > 0.0) {
            return m * (1.0 / norm);
        }
    }
}

} // namespace

PerturbationMap PerturbationMap::sample(const Graph& g, std::size_t q, std::uint64_t seed, bool symmetric_mismatch) {
    if (q < 1) {
        throw std::invalid_argument("PerturbationMap: q must be >= 1");
    }
    PerturbationMap map;
    map.q_ = q;
    map.data_.assign(g.slot_count() * q * q, 0.0);
    Rng rng = make_rng(seed);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto nb = g.neighbors(i);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const std::size_t slot = g.slot_begin(i) + k;
            const std::size_t j = nb[k];
            double* dst = map.data_.data() + slot * q * q;
            if (symmetric_mismatch && j < i) {
                const auto src = map.block(g.slot(j, i));
                std::copy(src.begin(), src.end(), dst);
                continue;
            }
            const Matrix r = draw_goe_unit(q, rng);
            std::copy(r.data().begin(), r.data().end(), dst);
        }
    }
    return map;
}

PerturbationMap PerturbationMap::from_function(const Graph& g, std::size_t q,
                                               const std::function<Matrix(std::size_t, std::size_t)>& make) {
    PerturbationMap map;
    map.q_ = q;
    map.data_.assign(g.slot_count() * q * q, 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto nb = g.neighbors(i);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const Matrix r = make(i, nb[k]);
            if (r.rows() != q || r.cols() != q) {
                throw std::invalid_argument("PerturbationMap: matrix has wrong shape");
            }
            std::copy(r.data().begin(), r.data().end(), map.data_.begin() + static_cast<std::ptrdiff_t>((g.slot_begin(i) + k) * q * q));
        }
    }
    return map;
}

double gamma_of_symmetric(const Matrix& gamma_matrix) {
    const auto ev = eigenvalues_symmetric(gamma_matrix);
    return ev.front();
}

CouplingSpec CouplingSpec::identity(const Graph& g, std::size_t q, double delta, double omega, std::uint64_t seed,
                                    bool symmetric_mismatch) {
    CouplingSpec c;
    c.gamma_matrix = Matrix::identity(q);
    c.gamma = 1.0;
    c.delta = delta;
    c.omega = omega;
    c.seed = seed;
    c.perturbations = PerturbationMap::sample(g, q, seed, symmetric_mismatch);
    return c;
}

bool CouplingSpec::gamma_is_identity() const { return gamma_matrix == Matrix::identity(gamma_matrix.rows()); }

NetworkSystem::NetworkSystem(std::shared_ptr<const Graph> graph, OscillatorModel model, CouplingSpec coupling,
                             double alpha)
    : graph_(std::move(graph)), model_(std::move(model)), coupling_(std::move(coupling)), alpha_(alpha) {
    if (!graph_ || !is_connected(*graph_)) {
        throw std::invalid_argument("NetworkSystem: graph must be connected");
    }
    const std::size_t q = model_.dim;
    if (q < 1 || q > max_node_dim || !model_.rhs) {
        throw std::invalid_argument("NetworkSystem: unsupported node model");
    }
    if (coupling_.gamma_matrix.rows() != q || coupling_.gamma_matrix.cols() != q) {
        throw std::invalid_argument("NetworkSystem: Gamma must be q x q");
    }
    if (!(coupling_.gamma > 0.0)) {
        throw std::invalid_argument("NetworkSystem: gamma must be positive");
    }
    if (!(coupling_.delta >= 0.0) || !(coupling_.omega > 0.0) || !(alpha_ >= 0.0)) {
        throw std::invalid_argument("NetworkSystem: need delta >= 0, omega > 0, alpha >= 0");
    }
    if (coupling_.perturbations.dim() != q || coupling_.perturbations.slot_count() != graph_->slot_count()) {
        throw std::invalid_argument("NetworkSystem: perturbation map does not match the graph");
    }
    identity_gamma_ = coupling_.gamma_is_identity();
}

void NetworkSystem::operator()(double t, std::span<const double> x, std::span<double> dxdt) const {
    for (double v : x) {
        if (!std::isfinite(v)) {
            throw BlowUpError(t);
        }
    }
    const std::size_t q = model_.dim;
    const Graph& g = *graph_;
    const double amplitude = coupling_.delta == 0.0 ? 0.0 : coupling_.delta * std::cos(coupling_.omega * t);
    const auto gamma = coupling_.gamma_matrix.data();

    std::array<double, max_node_dim> diff{};
    std::array<double, max_node_dim> acc{};
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto xi = x.subspan(i * q, q);
        const auto dxi = dxdt.subspan(i * q, q);
        model_.rhs(xi, dxi);

        std::fill_n(acc.begin(), q, 0.0);
        const auto nb = g.neighbors(i);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const double* xj = x.data() + nb[k] * q;
            for (std::size_t a = 0; a < q; ++a) {
                diff[a] = xj[a] - xi[a];
            }
            if (identity_gamma_) {
                for (std::size_t a = 0; a < q; ++a) {
                    acc[a] += diff[a];
                }
            } else {
                for (std::size_t a = 0; a < q; ++a) {
                    double s = 0.0;
                    for (std::size_t b = 0; b < q; ++b) {
                        s += gamma[a * q + b] * diff[b];
                    }
                    acc[a] += s;
                }
            }
            if (amplitude != 0.0) {
                const double* r = coupling_.perturbations.block(g.slot_begin(i) + k).data();
                for (std::size_t a = 0; a < q; ++a) {
                    double s = 0.0;
                    for (std::size_t b = 0; b < q; ++b) {
                        s += r[a * q + b] * diff[b];
                    }
                    acc[a] += amplitude * s;
                }
            }
        }
        for (std::size_t a = 0; a < q; ++a) {
            dxi[a] += alpha_ * acc[a];
        }
    }
}

Matrix perturbation_matrix(const NetworkSystem& sys, double t) {
    const Graph& g = sys.graph();
    const std::size_t q = sys.node_dim();
    const double amplitude = sys.coupling().delta * std::cos(sys.coupling().omega * t);
    Matrix p(g.size() * q, g.size() * q);
    for (std::size_t i = 0; i < g.size(); ++i) {
        const auto nb = g.neighbors(i);
        for (std::size_t k = 0; k < nb.size(); ++k) {
            const auto r = sys.coupling().perturbations.block(g.slot_begin(i) + k);
            const std::size_t j = nb[k];
            for (std::size_t a = 0; a < q; ++a) {
                for (std::size_t b = 0; b < q; ++b) {
                    const double v = amplitude * r[a * q + b];
                    p(i * q + a, j * q + b) += v;
                    p(i * q + a, i * q + b) -= v;
                }
            }
        }
    }
    return p;
}

Matrix variational_operator(const NetworkSystem& sys, double t, std::span<const double> s) {
    if (!sys.model().jacobian) {
        throw std::invalid_argument("variational_operator: model has no Jacobian");
    }
    const Graph& g = sys.graph();
    const Matrix df = sys.model().jacobian(s);
    Matrix op = kron(Matrix::identity(g.size()), df);
    op -= sys.alpha() * kron(laplacian(g), sys.coupling().gamma_matrix);
    op += sys.alpha() * perturbation_matrix(sys, t);
    return op;
}

double stiffness_bound(const NetworkSystem& sys) {
    const Graph& g = sys.graph();
    const std::size_t n = g.size();
    const std::size_t q = sys.node_dim();

    auto apply_laplacian = [&g](std::span<const double> v, std::span<double> out) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            double s = static_cast<double>(g.degree(i)) * v[i];
            for (std::size_t j : g.neighbors(i)) {
                s -= v[j];
            }
            out[i] = s;
        }
    };
    const double lambda_max = estimate_spectral_norm(apply_laplacian, apply_laplacian, n);

    const Matrix& gm = sys.coupling().gamma_matrix;
    const Matrix gmt = gm.transposed();
    const double gamma_norm = estimate_spectral_norm(
        [&gm](std::span<const double> v, std::span<double> out) {
            const auto y = gm * v;
            std::copy(y.begin(), y.end(), out.begin());
        },
        [&gmt](std::span<const double> v, std::span<double> out) {
            const auto y = gmt * v;
            std::copy(y.begin(), y.end(), out.begin());
        },
        q);

    double q_norm = 0.0;
    if (sys.coupling().delta > 0.0) {
        const auto& pm = sys.coupling().perturbations;
        // (Q v)_i = sum_j R_ij (v_j - v_i); its transpose swaps the roles of R_ij and R_ji.
        auto apply_q = [&](std::span<const double> v, std::span<double> out, bool transpose) {
            std::fill(out.begin(), out.end(), 0.0);
            for (std::size_t i = 0; i < n; ++i) {
                const auto nb = g.neighbors(i);
                for (std::size_t k = 0; k < nb.size(); ++k) {
                    const std::size_t j = nb[k];
                    const auto r = pm.block(g.slot_begin(i) + k);
                    for (std::size_t a = 0; a < q; ++a) {
                        for (std::size_t b = 0; b < q; ++b) {
                            if (!transpose) {
                                out[i * q + a] += r[a * q + b] * (v[j * q + b] - v[i * q + b]);
                            } else {
                                // Q^T has block (j, i) += R_ij^T and block (i, i) -= R_ij^T.
                                out[j * q + b] += r[a * q + b] * v[i * q + a];
                                out[i * q + b] -= r[a * q + b] * v[i * q + a];
                            }
                        }
                    }
                }
            }
        };
        q_norm = estimate_spectral_norm([&](auto v, auto out) { apply_q(v, out, false); },
                                        [&](auto v, auto out) { apply_q(v, out, true); }, n * q);
    }

    constexpr double margin = 1.1;
    const double rho_f = sys.model().jacobian_bound.value_or(0.0);
    return rho_f + margin * sys.alpha() * (lambda_max * gamma_norm + sys.coupling().delta * q_norm);
}

} // namespace syncpersist
