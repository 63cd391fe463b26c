#include "syncpersist/integrate.hpp"

#include <ostream>

#include "syncpersist/csv.hpp"

namespace syncpersist {

namespace {

ButcherTableau make_rk4() {
    ButcherTableau t{4, 4, std::vector<double>(16, 0.0), {1.0 / 6, 1.0 / 3, 1.0 / 3, 1.0 / 6}, {0.0, 0.5, 0.5, 1.0}};
    t.a[1 * 4 + 0] = 0.5;
    t.a[2 * 4 + 1] = 0.5;
    t.a[3 * 4 + 2] = 1.0;
    return t;
}

// Butcher (1964), seven stages, order six. Stability polynomial
// sum_{k<=6} z^k/k! - z^7/2160; real stability interval about [-2.86, 0].
ButcherTableau make_rk6() {
    constexpr std::size_t s = 7;
    ButcherTableau t{s,
                     6,
                     std::vector<double>(s * s, 0.0),
                     {11.0 / 120, 0.0, 27.0 / 40, 27.0 / 40, -4.0 / 15, -4.0 / 15, 11.0 / 120},
                     {0.0, 1.0 / 3, 2.0 / 3, 1.0 / 3, 0.5, 0.5, 1.0}};
    auto set = [&t](std::size_t i, std::initializer_list<double> row) {
        std::size_t j = 0;
        for (double v : row) {
            t.a[i * s + j++] = v;
        }
    };
    set(1, {1.0 / 3});
    set(2, {0.0, 2.0 / 3});
    set(3, {1.0 / 12, 1.0 / 3, -1.0 / 12});
    set(4, {-1.0 / 16, 9.0 / 8, -3.0 / 16, -3.0 / 8});
    set(5, {0.0, 9.0 / 8, -3.0 / 8, -3.0 / 4, 1.0 / 2});
    set(6, {9.0 / 44, -9.0 / 11, 63.0 / 44, 18.0 / 11, 0.0, -16.0 / 11});
    return t;
}

} // namespace

const ButcherTableau& tableau(RkMethod method) {
    static const ButcherTableau rk4 = make_rk4();
    static const ButcherTableau rk6 = make_rk6();
    return method == RkMethod::rk4 ? rk4 : rk6;
}

std::size_t step_count(double t0, double t1, double h) {
    if (t1 <= t0) {
        return 0;
    }
    const double ratio = (t1 - t0) / h;
    // Absorb rounding so that (t1 - t0) = k h exactly gives k steps.
    const double n = std::ceil(ratio * (1.0 - 1e-12));
    return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, std::size_t node_dim) {
    const std::size_t dim = traj.states.empty() ? 0 : traj.states.front().size();
    os << 't';
    for (std::size_t d = 0; d < dim; ++d) {
        os << ",x_" << d / node_dim + 1 << '_' << d % node_dim + 1;
    }
    os << '\n';
    for (std::size_t r = 0; r < traj.times.size(); ++r) {
        os << format_double(traj.times[r]);
        for (double v : traj.states[r]) {
            os << ',' << format_double(v);
        }
        os << '\n';
    }
}

} // namespace syncpersist
