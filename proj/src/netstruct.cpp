#include "corrnet/netstruct.hpp"

#include "corrnet/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace corrnet {

SpanningTree::SpanningTree(std::vector<std::string> symbols, std::vector<TreeEdge> edges)
    : symbols_(std::move(symbols)), edges_(std::move(edges)), adjacency_(symbols_.size()) {
    const auto n = symbols_.size();
    if (n == 0) throw UsageError("spanning tree needs at least one node");
    if (edges_.size() != n - 1) throw UsageError("spanning tree on N nodes needs N - 1 edges");
    for (auto& e : edges_) {
        if (e.u > e.v) std::swap(e.u, e.v);
        if (e.v >= n || e.u == e.v) throw UsageError("invalid tree edge");
        adjacency_[e.u].push_back(e.v);
        adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());

    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
        const auto node = stack.back();
        stack.pop_back();
        for (auto next : adjacency_[node]) {
            if (!seen[next]) {
                seen[next] = true;
                ++reached;
                stack.push_back(next);
            }
        }
    }
    if (reached != n) throw UsageError("edges do not connect all nodes");
}

double SpanningTree::total_weight() const {
    // Ascending order: trees with the same weight multiset give the same total.
    std::vector<double> w;
    w.reserve(edges_.size());
    for (const auto& e : edges_) w.push_back(e.weight);
    std::sort(w.begin(), w.end());
    return std::accumulate(w.begin(), w.end(), 0.0);
}

DistanceMatrix distance_matrix(const CorrelationMatrix& c) {
    const auto n = static_cast<Eigen::Index>(c.size());
    DistanceMatrix d;
    d.symbols = c.symbols;
    d.values = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double rho = std::clamp(c.values(i, j), -1.0, 1.0);
            const double dist = std::sqrt(2.0 * (1.0 - rho));
            d.values(i, j) = dist;
            d.values(j, i) = dist;
        }
    }
    return d;
}

SpanningTree mst_prim(const DistanceMatrix& d) {
    const auto n = d.size();
    if (n < 2) throw UsageError("minimal spanning tree needs at least 2 nodes");

    // Best known edge from the tree to each outside node, ordered by
    // (weight, min endpoint, max endpoint).
    using Key = std::tuple<double, std::size_t, std::size_t>;
    const Key none{std::numeric_limits<double>::infinity(), n, n};
    std::vector<Key> best(n, none);
    std::vector<bool> in_tree(n, false);

    auto relax = [&](std::size_t from) {
        for (std::size_t v = 0; v < n; ++v) {
            if (in_tree[v]) continue;
            const Key cand{d.values(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(v)),
                           std::min(from, v), std::max(from, v)};
            if (cand < best[v]) best[v] = cand;
        }
    };

    in_tree[0] = true;
    relax(0);
    std::vector<TreeEdge> edges;
    edges.reserve(n - 1);
    for (std::size_t added = 1; added < n; ++added) {
        std::size_t pick = n;
        for (std::size_t v = 0; v < n; ++v) {
            if (!in_tree[v] && (pick == n || best[v] < best[pick])) pick = v;
        }
        const auto& [w, u, v] = best[pick];
        edges.push_back(TreeEdge{u, v, w});
        in_tree[pick] = true;
        relax(pick);
    }
    return SpanningTree(d.symbols, std::move(edges));
}

double node_strength(const DistanceMatrix& d, std::size_t i) {
    const auto n = d.size();
    if (i >= n) throw UsageError("node index out of range");
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const double dist = d.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        if (dist == 0.0) {
            throw DataError("zero distance between '" + d.symbols[i] + "' and '" + d.symbols[j] +
                            "' (perfectly correlated); strength undefined");
        }
        s += 1.0 / dist;
    }
    return s;
}

std::vector<double> node_strengths(const DistanceMatrix& d) {
    std::vector<double> out(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) out[i] = node_strength(d, i);
    return out;
}

std::size_t node_degree(const SpanningTree& t, std::size_t i) { return t.neighbors(i).size(); }

std::vector<double> betweenness_raw_all(const SpanningTree& t) {
    const auto n = t.size();
    // Iterative DFS from node 0 to get parents and a post-order.
    std::vector<std::size_t> parent(n, n), order;
    order.reserve(n);
    std::vector<std::size_t> stack{0};
    parent[0] = 0;
    while (!stack.empty()) {
        const auto node = stack.back();
        stack.pop_back();
        order.push_back(node);
        for (auto next : t.neighbors(node)) {
            if (parent[next] == n) {
                parent[next] = node;
                stack.push_back(next);
            }
        }
    }
    std::vector<std::size_t> subtree(n, 1);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (*it != 0) subtree[parent[*it]] += subtree[*it];
    }

    // Removing node i splits the other N - 1 nodes into components; pairs
    // straddling two components route through i.
    std::vector<double> raw(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t sum_sq = 0;
        std::size_t children = 0;
        for (auto nb : t.neighbors(i)) {
            if (i != 0 && nb == parent[i]) continue;
            sum_sq += subtree[nb] * subtree[nb];
            children += subtree[nb];
        }
        const auto above = n - 1 - children;
        sum_sq += above * above;
        raw[i] = static_cast<double>((n - 1) * (n - 1) - sum_sq) / 2.0;
    }
    return raw;
}

double betweenness_raw(const SpanningTree& t, std::size_t i) {
    if (i >= t.size()) throw UsageError("node index out of range");
    return betweenness_raw_all(t)[i];
}

double betweenness(const SpanningTree& t, std::size_t i) {
    const auto n = t.size();
    if (n < 3) {
        if (i >= n) throw UsageError("node index out of range");
        return 0.0;
    }
    return betweenness_raw(t, i) / (static_cast<double>((n - 1) * (n - 2)) / 2.0);
}

OccupationLayer mean_occupation_layer(const SpanningTree& t) {
    const auto n = t.size();
    OccupationLayer best{0, std::numeric_limits<double>::infinity()};
    std::vector<std::size_t> level(n);
    for (std::size_t root = 0; root < n; ++root) {
        std::fill(level.begin(), level.end(), n);
        level[root] = 0;
        std::queue<std::size_t> frontier;
        frontier.push(root);
        std::size_t total = 0;
        while (!frontier.empty()) {
            const auto node = frontier.front();
            frontier.pop();
            total += level[node];
            for (auto next : t.neighbors(node)) {
                if (level[next] == n) {
                    level[next] = level[node] + 1;
                    frontier.push(next);
                }
            }
        }
        const double layer = static_cast<double>(total) / static_cast<double>(n);
        if (layer < best.layer) best = {root, layer};
    }
    return best;
}

std::vector<StrengthBand> strength_errorbar(const ReturnMatrix& returns, Window window, std::size_t shift,
                                            ShiftPolicy policy) {
    const auto t = returns.num_observations();
    const auto mid = node_strengths(distance_matrix(correlation_matrix(returns, window)));
    std::vector<StrengthBand> bands(mid.size());
    for (std::size_t i = 0; i < mid.size(); ++i) bands[i] = {mid[i], mid[i], mid[i]};
    if (shift == 0) return bands;

    const bool fits_before = window.start >= shift;
    const bool fits_after = window.end + shift <= t;
    if (policy == ShiftPolicy::Strict && !(fits_before && fits_after)) {
        throw DataError("insufficient records to shift window [" + std::to_string(window.start) + ", " +
                        std::to_string(window.end) + ") by " + std::to_string(shift));
    }

    auto widen = [&](Window w) {
        const auto s = node_strengths(distance_matrix(correlation_matrix(returns, w)));
        for (std::size_t i = 0; i < s.size(); ++i) {
            bands[i].low = std::min(bands[i].low, s[i]);
            bands[i].high = std::max(bands[i].high, s[i]);
        }
    };
    if (fits_before) widen({window.start - shift, window.end - shift});
    if (fits_after) widen({window.start + shift, window.end + shift});
    return bands;
}

}  // namespace corrnet
