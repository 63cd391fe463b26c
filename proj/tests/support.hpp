#pragma once

// Hand-rolled generators and small oracles shared by the unit tests.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "syncpersist/graph.hpp"
#include "syncpersist/matrix.hpp"

namespace testsupport {

using Gen = std::mt19937_64;

inline double uniform(Gen& g, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(g); }

inline std::size_t uniform_size(Gen& g, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(g);
}

/// Random connected graph: a random spanning tree plus extra edges with
/// probability p.
inline syncpersist::Graph random_connected_graph(Gen& g, std::size_t n, double p) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), g);
    std::vector<std::vector<bool>> has(n, std::vector<bool>(n, false));
    std::vector<syncpersist::Edge> edges;
    auto add = [&](std::size_t a, std::size_t b) {
        if (a == b || has[a][b]) {
            return;
        }
        has[a][b] = has[b][a] = true;
        edges.push_back({a, b});
    };
    for (std::size_t k = 1; k < n; ++k) {
        add(order[k], order[uniform_size(g, 0, k - 1)]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (uniform(g, 0.0, 1.0) < p) {
                add(i, j);
            }
        }
    }
    return syncpersist::Graph::from_edges(n, edges);
}

inline syncpersist::Matrix random_symmetric(Gen& g, std::size_t n, double scale = 1.0) {
    syncpersist::Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            m(i, j) = m(j, i) = uniform(g, -scale, scale);
        }
    }
    return m;
}

/// Coefficients c_0..c_n of det(lambda I - M) = sum c_k lambda^k by the
/// Faddeev-LeVerrier recursion.
inline std::vector<double> characteristic_polynomial(const syncpersist::Matrix& m) {
    const std::size_t n = m.rows();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    syncpersist::Matrix mk(n, n);
    for (std::size_t k = 1; k <= n; ++k) {
        syncpersist::Matrix next = m * mk;
        for (std::size_t i = 0; i < n; ++i) {
            next(i, i) += c[n - k + 1];
        }
        mk = next;
        const syncpersist::Matrix prod = m * mk;
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            tr += prod(i, i);
        }
        c[n - k] = -tr / static_cast<double>(k);
    }
    return c;
}

inline double eval_poly(const std::vector<double>& c, double x) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) {
        v = v * x + c[k];
    }
    return v;
}

/// Real roots of a polynomial with only real roots inside [-bound, bound],
/// by scanning for sign changes and bisecting.
inline std::vector<double> real_roots(const std::vector<double>& c, double bound, std::size_t scan = 200000) {
    std::vector<double> roots;
    const double h = 2.0 * bound / static_cast<double>(scan);
    double x0 = -bound;
    double f0 = eval_poly(c, x0);
    for (std::size_t s = 1; s <= scan; ++s) {
        const double x1 = -bound + h * static_cast<double>(s);
        const double f1 = eval_poly(c, x1);
        if (f0 == 0.0) {
            roots.push_back(x0);
        } else if ((f0 < 0.0) != (f1 < 0.0) && f1 != 0.0) {
            double lo = x0;
            double hi = x1;
            double flo = f0;
            for (int it = 0; it < 200; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = eval_poly(c, mid);
                if ((fm < 0.0) == (flo < 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            roots.push_back(0.5 * (lo + hi));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

inline double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t m = v.size();
    return m % 2 == 1 ? v[m / 2] : 0.5 * (v[m / 2 - 1] + v[m / 2]);
}

} // namespace testsupport
