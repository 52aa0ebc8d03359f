#include "corrnet/error.hpp"
#include "corrnet/netstruct.hpp"
#include "support/oracles.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <numeric>
#include <set>

using namespace corrnet;

namespace {

DistanceMatrix from_values(const Eigen::MatrixXd& v) {
    return DistanceMatrix{testing::make_symbols(static_cast<std::size_t>(v.rows())), v};
}

std::set<std::pair<std::size_t, std::size_t>> edge_set(const std::vector<TreeEdge>& edges) {
    std::set<std::pair<std::size_t, std::size_t>> out;
    for (const auto& e : edges) out.emplace(std::min(e.u, e.v), std::max(e.u, e.v));
    return out;
}

// Total weight accumulated in ascending order, so that equal weight multisets
// give bitwise-equal totals regardless of edge order.
double total(const std::vector<TreeEdge>& edges) {
    std::vector<double> w;
    for (const auto& e : edges) w.push_back(e.weight);
    std::sort(w.begin(), w.end());
    return std::accumulate(w.begin(), w.end(), 0.0);
}

}  // namespace

TEST_CASE("distance_matrix closed forms") {
    Eigen::MatrixXd c(3, 3);
    c << 1, 1, 0, 1, 1, -1, 0, -1, 1;
    const auto d = distance_matrix(testing::as_correlation(c));
    CHECK(d.values(0, 1) == 0.0);
    CHECK(d.values(0, 2) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
    CHECK(d.values(1, 2) == 2.0);
    CHECK(d.values.diagonal().isZero(0.0));
}

TEST_CASE("distance_matrix is a metric on random correlation matrices") {
    std::mt19937_64 rng(91);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 3 + static_cast<std::size_t>(trial % 10);
        const auto c = testing::as_correlation(testing::random_correlation(n, 1 + trial % 12, rng));
        const auto d = distance_matrix(c);
        for (std::size_t i = 0; i < n; ++i) {
            const auto I = static_cast<Eigen::Index>(i);
            CHECK(d.values(I, I) == 0.0);
            for (std::size_t j = 0; j < n; ++j) {
                const auto J = static_cast<Eigen::Index>(j);
                CHECK(d.values(I, J) == d.values(J, I));
                CHECK(d.values(I, J) >= 0.0);
                CHECK(d.values(I, J) <= 2.0);
                CHECK(std::abs(d.values(I, J) - std::sqrt(2.0 * (1.0 - c.values(I, J)))) < 1e-12);
                for (std::size_t k = 0; k < n; ++k) {
                    const auto K = static_cast<Eigen::Index>(k);
                    CHECK(d.values(I, K) <= d.values(I, J) + d.values(J, K) + 1e-9);
                }
            }
        }
    }
}

TEST_CASE("mst_prim small cases") {
    SUBCASE("two nodes") {
        Eigen::MatrixXd v(2, 2);
        v << 0, 0.7, 0.7, 0;
        const auto t = mst_prim(from_values(v));
        REQUIRE(t.edges().size() == 1);
        CHECK(t.edges()[0] == TreeEdge{0, 1, 0.7});
    }
    SUBCASE("three nodes, enumerated") {
        // Spanning trees: {01,02}=3, {01,12}=4, {02,12}=5.
        Eigen::MatrixXd v(3, 3);
        v << 0, 1, 2, 1, 0, 3, 2, 3, 0;
        const auto t = mst_prim(from_values(v));
        CHECK(edge_set(t.edges()) == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}});
        CHECK(t.total_weight() == 3.0);
    }
    SUBCASE("ties take the smallest endpoint pair") {
        Eigen::MatrixXd v = Eigen::MatrixXd::Constant(4, 4, 1.0);
        v.diagonal().setZero();
        const auto t = mst_prim(from_values(v));
        CHECK(edge_set(t.edges()) == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {0, 3}});
    }
    CHECK_THROWS_AS(mst_prim(from_values(Eigen::MatrixXd::Zero(1, 1))), UsageError);
}

TEST_CASE("mst_prim agrees with Kruskal") {
    std::mt19937_64 rng(404);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 11);
        const bool ties = trial % 3 == 0;
        const auto d = testing::random_distances(n, rng, ties);
        const auto prim = mst_prim(d);
        const auto oracle = testing::kruskal(d.values);
        CHECK(total(prim.edges()) == total(oracle));
        CHECK(prim.total_weight() == total(oracle));
        if (!ties) CHECK(edge_set(prim.edges()) == edge_set(oracle));
        for (const auto& e : prim.edges()) {
            CHECK(e.weight == d.values(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v)));
        }
    }
}

TEST_CASE("SpanningTree rejects non-trees") {
    const auto symbols = testing::make_symbols(4);
    CHECK_THROWS_AS(SpanningTree(symbols, {{0, 1, 1}, {1, 2, 1}}), UsageError);
    CHECK_THROWS_AS(SpanningTree(symbols, {{0, 1, 1}, {1, 0, 1}, {2, 3, 1}}), UsageError);
    CHECK_THROWS_AS(SpanningTree(symbols, {{0, 1, 1}, {1, 2, 1}, {2, 9, 1}}), UsageError);
}

TEST_CASE("node_strength") {
    Eigen::MatrixXd v(2, 2);
    v << 0, 1, 1, 0;
    CHECK(node_strength(from_values(v), 0) == 1.0);

    const auto d = distance_matrix(testing::as_correlation(Eigen::MatrixXd::Identity(35, 35)));
    for (double s : node_strengths(d)) CHECK(s == doctest::Approx(34.0 / std::sqrt(2.0)).epsilon(1e-14));
    CHECK(node_strength(d, 0) == doctest::Approx(24.0416).epsilon(1e-5));

    Eigen::MatrixXd c = Eigen::MatrixXd::Identity(3, 3);
    c(0, 2) = c(2, 0) = 1.0;
    try {
        node_strength(distance_matrix(testing::as_correlation(c)), 2);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string msg = e.what();
        CHECK(msg.find("S00") != std::string::npos);
        CHECK(msg.find("S02") != std::string::npos);
    }
    CHECK(node_strength(distance_matrix(testing::as_correlation(c)), 1) == doctest::Approx(2.0 / std::sqrt(2.0)));
}

TEST_CASE("node_strength is monotone in a single coefficient") {
    std::mt19937_64 rng(6);
    auto c = testing::as_correlation(testing::random_correlation(6, 12, rng));
    const auto before = node_strengths(distance_matrix(c));
    c.values(1, 4) = c.values(4, 1) = c.values(1, 4) + 0.05;
    const auto after = node_strengths(distance_matrix(c));
    for (std::size_t i = 0; i < 6; ++i) {
        if (i == 1 || i == 4) {
            CHECK(after[i] > before[i]);
        } else {
            CHECK(after[i] == before[i]);
        }
    }
}

TEST_CASE("degree") {
    const auto two = testing::path_tree(2);
    CHECK(node_degree(two, 0) == 1);
    CHECK(node_degree(two, 1) == 1);
    const auto star = testing::star_tree(5, 2);
    CHECK(node_degree(star, 2) == 4);
    for (std::size_t leaf : {0u, 1u, 3u, 4u}) CHECK(node_degree(star, leaf) == 1);

    std::mt19937_64 rng(2);
    const auto t = testing::random_tree(12, rng);
    std::size_t sum = 0;
    for (std::size_t i = 0; i < 12; ++i) sum += node_degree(t, i);
    CHECK(sum == 22);
}

TEST_CASE("betweenness closed forms") {
    const auto path = testing::path_tree(3);
    CHECK(betweenness(path, 1) == 1.0);
    CHECK(betweenness(path, 0) == 0.0);
    CHECK(betweenness(path, 2) == 0.0);

    for (std::size_t hub = 0; hub < 6; ++hub) {
        const auto star = testing::star_tree(6, hub);
        for (std::size_t i = 0; i < 6; ++i) CHECK(betweenness(star, i) == (i == hub ? 1.0 : 0.0));
    }
    CHECK(betweenness(testing::path_tree(2), 0) == 0.0);
    // 5-path: node 2 separates {0,1} from {3,4}: 4 pairs of 6.
    CHECK(betweenness(testing::path_tree(5), 2) == doctest::Approx(4.0 / 6.0));
    CHECK(betweenness_raw(testing::path_tree(5), 1) == 3.0);
}

TEST_CASE("betweenness matches exhaustive path enumeration") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
        const auto t = testing::random_tree(n, rng);
        const auto oracle = testing::brute_force_betweenness(t);
        const auto raw = betweenness_raw_all(t);
        CHECK(raw == oracle);

        // Interior-node double counting: sum of raw counts = sum over pairs of (path nodes - 2).
        double interior = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t l = j + 1; l < n; ++l) interior += static_cast<double>(testing::tree_path(t, j, l).size() - 2);
        }
        CHECK(std::accumulate(raw.begin(), raw.end(), 0.0) == interior);
        for (std::size_t i = 0; i < n; ++i) {
            if (node_degree(t, i) == 1) CHECK(betweenness(t, i) == 0.0);
            CHECK(betweenness(t, i) >= 0.0);
            CHECK(betweenness(t, i) <= 1.0);
        }
    }
}

TEST_CASE("mean_occupation_layer") {
    const auto two = mean_occupation_layer(testing::path_tree(2));
    CHECK(two.central == 0);
    CHECK(two.layer == 0.5);

    const auto three = mean_occupation_layer(testing::path_tree(3));
    CHECK(three.central == 1);
    CHECK(three.layer == 2.0 / 3.0);

    for (std::size_t n : {3u, 5u, 9u}) {
        for (std::size_t hub = 0; hub < n; ++hub) {
            const auto star = mean_occupation_layer(testing::star_tree(n, hub));
            CHECK(star.central == hub);
            CHECK(star.layer == static_cast<double>(n - 1) / static_cast<double>(n));
        }
    }
    const auto four = mean_occupation_layer(testing::path_tree(4));
    CHECK(four.central == 1);
    CHECK(four.layer == 1.0);
}

TEST_CASE("strength_errorbar") {
    const auto r = testing::one_factor_returns(std::vector<double>(6, 0.5), 300, 12);

    SUBCASE("shift 0 collapses the band") {
        const auto bands = strength_errorbar(r, Window{100, 200}, 0);
        for (const auto& b : bands) {
            CHECK(b.low == b.mid);
            CHECK(b.high == b.mid);
        }
    }
    SUBCASE("band covers the three windows") {
        const auto bands = strength_errorbar(r, Window{100, 200}, 7);
        const auto early = node_strengths(distance_matrix(correlation_matrix(r, Window{93, 193})));
        const auto mid = node_strengths(distance_matrix(correlation_matrix(r, Window{100, 200})));
        const auto late = node_strengths(distance_matrix(correlation_matrix(r, Window{107, 207})));
        for (std::size_t i = 0; i < bands.size(); ++i) {
            CHECK(bands[i].mid == mid[i]);
            CHECK(bands[i].low == std::min({early[i], mid[i], late[i]}));
            CHECK(bands[i].high == std::max({early[i], mid[i], late[i]}));
        }
    }
    SUBCASE("window at the data edge") {
        CHECK_THROWS_AS(strength_errorbar(r, Window{0, 100}, 7), DataError);
        CHECK_THROWS_AS(strength_errorbar(r, Window{200, 300}, 7), DataError);
        const auto clipped = strength_errorbar(r, Window{0, 100}, 7, ShiftPolicy::Clip);
        const auto late = node_strengths(distance_matrix(correlation_matrix(r, Window{7, 107})));
        CHECK(clipped[0].low == std::min(clipped[0].mid, late[0]));
    }
    SUBCASE("stationary data gives narrow bands") {
        const auto s = testing::one_factor_returns(std::vector<double>(10, 0.4), 1200, 77);
        for (const auto& b : strength_errorbar(s, Window{100, 1100}, 7)) CHECK((b.high - b.low) / b.mid < 0.05);
    }
}
