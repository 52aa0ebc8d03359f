#pragma once

#include "corrnet/correlation.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <string>
#include <vector>

namespace corrnet {

/// d_ij = sqrt(2 (1 - C_ij)). Zero diagonal, symmetric, entries in [0, 2].
struct DistanceMatrix {
    std::vector<std::string> symbols;
    Eigen::MatrixXd values;

    std::size_t size() const noexcept { return symbols.size(); }
};

struct TreeEdge {
    std::size_t u = 0;  ///< smaller endpoint index
    std::size_t v = 0;  ///< larger endpoint index
    double weight = 0.0;

    bool operator==(const TreeEdge&) const = default;
};

/// Spanning tree over N symbols with N - 1 weighted edges.
class SpanningTree {
public:
    SpanningTree() = default;
    /// Throws UsageError unless the edges form a spanning tree.
    SpanningTree(std::vector<std::string> symbols, std::vector<TreeEdge> edges);

    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    const std::vector<TreeEdge>& edges() const noexcept { return edges_; }
    const std::vector<std::size_t>& neighbors(std::size_t node) const { return adjacency_.at(node); }
    std::size_t size() const noexcept { return symbols_.size(); }
    /// Sum of edge weights, accumulated in ascending order.
    double total_weight() const;

private:
    std::vector<std::string> symbols_;
    std::vector<TreeEdge> edges_;
    std::vector<std::vector<std::size_t>> adjacency_;
};

DistanceMatrix distance_matrix(const CorrelationMatrix& c);

/// Prim's algorithm grown from node 0. Among equal-weight candidate edges the
/// one with the smallest (min endpoint, max endpoint) pair is taken.
SpanningTree mst_prim(const DistanceMatrix& d);

/// S_i = sum over j != i of 1 / d_ij, over the full distance matrix.
/// Throws DataError if node i is at zero distance from another node.
double node_strength(const DistanceMatrix& d, std::size_t i);
std::vector<double> node_strengths(const DistanceMatrix& d);

std::size_t node_degree(const SpanningTree& t, std::size_t i);

/// Number of unordered pairs {j, l}, both distinct from i, whose tree path
/// passes through i.
double betweenness_raw(const SpanningTree& t, std::size_t i);

/// betweenness_raw divided by (N-1)(N-2)/2, so a star centre scores 1.
double betweenness(const SpanningTree& t, std::size_t i);

/// Raw betweenness of every node in one pass.
std::vector<double> betweenness_raw_all(const SpanningTree& t);

struct OccupationLayer {
    std::size_t central = 0;
    double layer = 0.0;
};

/// Mean hop distance to the central vertex, minimized over all choices of
/// centre (lowest index on ties).
OccupationLayer mean_occupation_layer(const SpanningTree& t);

struct StrengthBand {
    double low = 0.0;
    double mid = 0.0;
    double high = 0.0;
};

enum class ShiftPolicy {
    Strict,  ///< throw if a shifted window leaves the data
    Clip,    ///< skip shifted windows that leave the data
};

/// Node strengths on `window` and on the same window shifted by -shift and
/// +shift records. low/high are the extremes over the evaluated windows.
std::vector<StrengthBand> strength_errorbar(const ReturnMatrix& returns, Window window, std::size_t shift = 7,
                                            ShiftPolicy policy = ShiftPolicy::Strict);

}  // namespace corrnet
