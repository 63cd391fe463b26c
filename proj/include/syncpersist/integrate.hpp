#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "syncpersist/dynamics.hpp"

namespace syncpersist {

enum class RkMethod {
    rk4,  // classical four-stage
    rk6,  // Butcher's seven-stage sixth-order method
};

/// Explicit Runge-Kutta tableau; a is strictly lower triangular, row-major.
struct ButcherTableau {
    std::size_t stages;
    int order;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;

    double coeff(std::size_t i, std::size_t j) const noexcept { return a[i * stages + j]; }
};

const ButcherTableau& tableau(RkMethod method);

struct IntegratorConfig {
    double step = 0.01;
    RkMethod method = RkMethod::rk6;
    std::size_t sample_stride = 1;
    /// Any state component above this magnitude ends the run as a blow-up.
    double blowup_threshold = 1e6;
};

struct Trajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> states;
    std::optional<double> terminated_at;
};

struct StreamResult {
    std::vector<double> final_state;
    double final_time = 0.0;
    std::optional<double> terminated_at;
};

/// Number of fixed steps needed to cover [t0, t1]; the last one may be short.
std::size_t step_count(double t0, double t1, double h);

/// Fixed-step explicit RK integration of x' = sys(t, x) over [t0, t1].
///
/// The observer sees (t, x) at t0, after every sample_stride-th step, and at
/// t1. Times are t0 + k h, never accumulated; the final step is shortened to
/// land on t1. A BlowUpError from the system or a component exceeding
/// blowup_threshold stops the run and sets terminated_at.
template <class System, class Observer>
StreamResult integrate_streaming(const System& sys, std::vector<double> x0, double t0, double t1,
                                 const IntegratorConfig& cfg, Observer&& observe) {
    if (!(cfg.step > 0.0) || cfg.sample_stride < 1) {
        throw std::invalid_argument("integrate: need step > 0 and sample_stride >= 1");
    }
    if (!(t1 >= t0)) {
        throw std::invalid_argument("integrate: need t1 >= t0");
    }
    for (double v : x0) {
        if (!std::isfinite(v)) {
            throw std::invalid_argument("integrate: initial state is not finite");
        }
    }

    const ButcherTableau& tab = tableau(cfg.method);
    const std::size_t dim = x0.size();
    const std::size_t steps = step_count(t0, t1, cfg.step);
    std::vector<std::vector<double>> k(tab.stages, std::vector<double>(dim));
    std::vector<double> stage(dim);
    std::vector<double> x = std::move(x0);

    StreamResult result;
    observe(t0, std::span<const double>(x));

    for (std::size_t n = 0; n < steps; ++n) {
        const double t = t0 + static_cast<double>(n) * cfg.step;
        const bool last = n + 1 == steps;
        const double h = last ? t1 - t : cfg.step;
        try {
            for (std::size_t s = 0; s < tab.stages; ++s) {
                stage = x;
                for (std::size_t j = 0; j < s; ++j) {
                    const double a = tab.coeff(s, j);
                    if (a == 0.0) {
                        continue;
                    }
                    for (std::size_t d = 0; d < dim; ++d) {
                        stage[d] += h * a * k[j][d];
                    }
                }
                sys(t + tab.c[s] * h, std::span<const double>(stage), std::span<double>(k[s]));
            }
        } catch (const BlowUpError& e) {
            result.terminated_at = e.time();
            break;
        }
        for (std::size_t s = 0; s < tab.stages; ++s) {
            const double b = tab.b[s];
            if (b == 0.0) {
                continue;
            }
            for (std::size_t d = 0; d < dim; ++d) {
                x[d] += h * b * k[s][d];
            }
        }
        const double t_next = last ? t1 : t0 + static_cast<double>(n + 1) * cfg.step;
        bool blown = false;
        for (double v : x) {
            if (!(std::abs(v) <= cfg.blowup_threshold)) {
                blown = true;
                break;
            }
        }
        if (blown) {
            result.terminated_at = t_next;
            break;
        }
        if (last || (n + 1) % cfg.sample_stride == 0) {
            observe(t_next, std::span<const double>(x));
        }
        result.final_time = t_next;
    }
    if (steps == 0) {
        result.final_time = t0;
    }
    result.final_state = std::move(x);
    return result;
}

template <class System>
Trajectory integrate(const System& sys, std::vector<double> x0, double t0, double t1, const IntegratorConfig& cfg) {
    Trajectory traj;
    auto res = integrate_streaming(sys, std::move(x0), t0, t1, cfg, [&traj](double t, std::span<const double> x) {
        traj.times.push_back(t);
        traj.states.emplace_back(x.begin(), x.end());
    });
    traj.terminated_at = res.terminated_at;
    return traj;
}

/// Writes a trajectory as CSV with header "t,x_1_1,...,x_n_q".
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t node_dim);

} // namespace syncpersist
