#include "syncpersist/graph.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <queue>
#include <sstream>
#include <string>

#include "syncpersist/rng.hpp"

namespace syncpersist {

Graph Graph::from_edges(std::size_t n, std::vector<Edge> edges) {
    for (Edge& e : edges) {
        if (e.u == e.v) {
            throw GraphError("self-loop at node " + std::to_string(e.u + 1));
        }
        if (e.u >= n || e.v >= n) {
            throw GraphError("edge endpoint out of range");
        }
        if (e.u > e.v) {
            std::swap(e.u, e.v);
        }
    }
    std::sort(edges.begin(), edges.end());
    if (std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
        throw GraphError("repeated edge");
    }

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.offsets_.assign(n + 1, 0);
    for (const Edge& e : g.edges_) {
        ++g.offsets_[e.u + 1];
        ++g.offsets_[e.v + 1];
    }
    for (std::size_t i = 0; i < n; ++i) {
        g.offsets_[i + 1] += g.offsets_[i];
    }
    g.indices_.resize(g.offsets_[n]);
    std::vector<std::size_t> fill(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const Edge& e : g.edges_) {
        g.indices_[fill[e.u]++] = e.v;
        g.indices_[fill[e.v]++] = e.u;
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::sort(g.indices_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i]),
                  g.indices_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[i + 1]));
    }
    return g;
}

std::size_t Graph::min_degree() const noexcept {
    std::size_t best = n_ == 0 ? 0 : degree(0);
    for (std::size_t i = 1; i < n_; ++i) {
        best = std::min(best, degree(i));
    }
    return best;
}

std::size_t Graph::max_degree() const noexcept {
    std::size_t best = 0;
    for (std::size_t i = 0; i < n_; ++i) {
        best = std::max(best, degree(i));
    }
    return best;
}

std::size_t Graph::slot(std::size_t i, std::size_t j) const noexcept {
    if (i >= n_) {
        return slot_count();
    }
    const auto nb = neighbors(i);
    const auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it == nb.end() || *it != j) {
        return slot_count();
    }
    return offsets_[i] + static_cast<std::size_t>(it - nb.begin());
}

Matrix Graph::adjacency() const {
    Matrix a(n_, n_);
    for (const Edge& e : edges_) {
        a(e.u, e.v) = 1.0;
        a(e.v, e.u) = 1.0;
    }
    return a;
}

namespace {

std::vector<Edge> erdos_renyi_edges(std::size_t n, double p, Rng& rng) {
    std::bernoulli_distribution coin(p);
    std::vector<Edge> edges;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (coin(rng)) {
                edges.push_back({i, j});
            }
        }
    }
    return edges;
}

std::vector<Edge> barabasi_albert_edges(std::size_t n, std::size_t m0, Rng& rng) {
    std::vector<Edge> edges;
    if (n < 2) {
        return edges;
    }
    edges.push_back({0, 1});
    std::vector<double> degree(n, 0.0);
    degree[0] = degree[1] = 1.0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<std::size_t> targets;
    std::vector<double> weight;

    for (std::size_t node = 2; node < n; ++node) {
        const std::size_t links = std::min(m0, node);
        weight.assign(degree.begin(), degree.begin() + static_cast<std::ptrdiff_t>(node));
        targets.clear();
        for (std::size_t k = 0; k < links; ++k) {
            double total = 0.0;
            for (double w : weight) {
                total += w;
            }
            // Cumulative-sum inversion over the not-yet-chosen nodes.
            const double r = unit(rng) * total;
            double acc = 0.0;
            std::size_t pick = node;
            for (std::size_t j = 0; j < node; ++j) {
                if (weight[j] == 0.0) {
                    continue;
                }
                acc += weight[j];
                pick = j;
                if (r < acc) {
                    break;
                }
            }
            targets.push_back(pick);
            weight[pick] = 0.0;
        }
        for (std::size_t t : targets) {
            edges.push_back({t, node});
            degree[t] += 1.0;
        }
        degree[node] = static_cast<double>(links);
    }
    return edges;
}

} // namespace

Graph generate(const GraphRecipe& recipe) {
    const std::size_t n = recipe.n;
    return std::visit(
        [&](const auto& kind) -> Graph {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, ErdosRenyi>) {
                if (!(kind.p > 0.0 && kind.p <= 1.0)) {
                    throw std::invalid_argument("ErdosRenyi: p must lie in (0, 1]");
                }
                Rng rng = make_rng(recipe.seed);
                for (int attempt = 0; attempt <= recipe.max_retries; ++attempt) {
                    Graph g = Graph::from_edges(n, erdos_renyi_edges(n, kind.p, rng));
                    if (is_connected(g)) {
                        return g;
                    }
                }
                throw GraphError("disconnected after " + std::to_string(recipe.max_retries) + " retries");
            } else if constexpr (std::is_same_v<K, BarabasiAlbert>) {
                if (kind.m0 < 1) {
                    throw std::invalid_argument("BarabasiAlbert: m0 must be >= 1");
                }
                Rng rng = make_rng(recipe.seed);
                return Graph::from_edges(n, barabasi_albert_edges(n, kind.m0, rng));
            } else if constexpr (std::is_same_v<K, ExplicitEdges>) {
                std::size_t nodes = n;
                for (const Edge& e : kind.edges) {
                    nodes = std::max({nodes, e.u + 1, e.v + 1});
                }
                return Graph::from_edges(nodes, kind.edges);
            } else if constexpr (std::is_same_v<K, CompleteGraph>) {
                std::vector<Edge> edges;
                for (std::size_t i = 0; i < n; ++i) {
                    for (std::size_t j = i + 1; j < n; ++j) {
                        edges.push_back({i, j});
                    }
                }
                return Graph::from_edges(n, std::move(edges));
            } else if constexpr (std::is_same_v<K, PathGraph>) {
                std::vector<Edge> edges;
                for (std::size_t i = 0; i + 1 < n; ++i) {
                    edges.push_back({i, i + 1});
                }
                return Graph::from_edges(n, std::move(edges));
            } else {
                std::vector<Edge> edges;
                for (std::size_t i = 1; i < n; ++i) {
                    edges.push_back({0, i});
                }
                return Graph::from_edges(n, std::move(edges));
            }
        },
        recipe.kind);
}

Matrix laplacian(const Graph& g) {
    Matrix l(g.size(), g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
        l(i, i) = static_cast<double>(g.degree(i));
    }
    for (const Edge& e : g.edges()) {
        l(e.u, e.v) = -1.0;
        l(e.v, e.u) = -1.0;
    }
    return l;
}

bool is_connected(const Graph& g) {
    if (g.size() == 0) {
        return false;
    }
    std::vector<char> seen(g.size(), 0);
    std::queue<std::size_t> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
        const std::size_t i = frontier.front();
        frontier.pop();
        for (std::size_t j : g.neighbors(i)) {
            if (!seen[j]) {
                seen[j] = 1;
                ++reached;
                frontier.push(j);
            }
        }
    }
    return reached == g.size();
}

void write_edge_list(std::ostream& os, const Graph& g) {
    os << g.size() << ' ' << g.edge_count() << '\n';
    for (const Edge& e : g.edges()) {
        os << e.u + 1 << ' ' << e.v + 1 << '\n';
    }
}

Graph read_edge_list(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw GraphError("edge list: missing header");
    }
    std::istringstream header(line);
    long long n = -1;
    long long m = -1;
    if (!(header >> n >> m) || n < 0 || m < 0) {
        throw GraphError("edge list: malformed header \"" + line + "\"");
    }
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long k = 0; k < m; ++k) {
        if (!std::getline(is, line)) {
            throw GraphError("edge list: expected " + std::to_string(m) + " edges, got " + std::to_string(k));
        }
        std::istringstream row(line);
        long long i = 0;
        long long j = 0;
        if (!(row >> i >> j) || i < 1 || j < 1 || i > n || j > n) {
            throw GraphError("edge list: malformed edge line \"" + line + "\"");
        }
        edges.push_back({static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)});
    }
    return Graph::from_edges(static_cast<std::size_t>(n), std::move(edges));
}

} // namespace syncpersist
