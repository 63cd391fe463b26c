#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "syncpersist/matrix.hpp"

namespace syncpersist {

/// Undirected edge between 0-based nodes, normalized so that u < v.
struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;

    friend auto operator<=>(const Edge&, const Edge&) = default;
};

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Undirected simple graph. Immutable once built.
///
/// Neighbors are kept in compressed sparse rows sorted by node index; the
/// position of (i, j) in that layout is its "slot", which other modules use to
/// attach per-ordered-pair data (see PerturbationMap).
class Graph {
public:
    Graph() = default;

    /// Validates and normalizes the edge list. Self-loops and repeated edges
    /// are rejected.
    static Graph from_edges(std::size_t n, std::vector<Edge> edges);

    std::size_t size() const noexcept { return n_; }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    std::span<const std::size_t> neighbors(std::size_t i) const noexcept {
        return {indices_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
    }
    std::size_t degree(std::size_t i) const noexcept { return offsets_[i + 1] - offsets_[i]; }
    std::size_t min_degree() const noexcept;
    std::size_t max_degree() const noexcept;

    /// First slot of node i; slots of i are [slot_begin(i), slot_begin(i+1)).
    std::size_t slot_begin(std::size_t i) const noexcept { return offsets_[i]; }
    std::size_t slot_count() const noexcept { return indices_.size(); }
    /// Slot of the ordered pair (i, j), or slot_count() when not adjacent.
    std::size_t slot(std::size_t i, std::size_t j) const noexcept;

    bool adjacent(std::size_t i, std::size_t j) const noexcept { return slot(i, j) != slot_count(); }

    Matrix adjacency() const;

    friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

private:
    std::size_t n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::size_t> offsets_{0};
    std::vector<std::size_t> indices_;
};

struct ErdosRenyi {
    double p = 0.3;
};
struct BarabasiAlbert {
    std::size_t m0 = 1;
};
struct ExplicitEdges {
    std::vector<Edge> edges;
};
struct CompleteGraph {};
struct PathGraph {};
struct StarGraph {};

using GraphKind = std::variant<ErdosRenyi, BarabasiAlbert, ExplicitEdges, CompleteGraph, PathGraph, StarGraph>;

struct GraphRecipe {
    GraphKind kind;
    /// Node count. For ExplicitEdges it may be left at 0 and is then inferred
    /// from the largest endpoint.
    std::size_t n = 0;
    std::uint64_t seed = 0;
    /// Connected-sample retries for ErdosRenyi.
    int max_retries = 100;
};

/// Builds the graph described by the recipe. Same recipe, same graph.
///
/// ErdosRenyi samples that come out disconnected are discarded and redrawn;
/// after max_retries failures a GraphError is thrown. BarabasiAlbert starts
/// from a single edge and attaches every new node to min(m0, existing) distinct
/// nodes drawn with probability proportional to their current degree.
Graph generate(const GraphRecipe& recipe);

/// L = D - A as a dense matrix.
Matrix laplacian(const Graph& g);

bool is_connected(const Graph& g);

/// Edge-list text format: "n m" header, then m lines "i j" with 1-based i < j.
void write_edge_list(std::ostream& os, const Graph& g);
Graph read_edge_list(std::istream& is);

} // namespace syncpersist
