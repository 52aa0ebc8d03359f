#include "corrnet/error.hpp"
#include "corrnet/io.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

using namespace corrnet;

namespace {

std::size_t count_lines_containing(const std::string& text, const std::string& needle) {
    std::istringstream in(text);
    std::size_t n = 0;
    for (std::string line; std::getline(in, line);) {
        if (line.find(needle) != std::string::npos) ++n;
    }
    return n;
}

}  // namespace

TEST_CASE("format_real uses 12 significant digits") {
    CHECK(format_real(1.0) == "1");
    CHECK(format_real(std::sqrt(2.0)) == "1.41421356237");
    CHECK(format_real(-0.000123456789012345) == "-0.000123456789012");
    CHECK(format_real(24.041630560342615) == "24.0416305603");
}

TEST_CASE("graph format names") {
    CHECK(parse_graph_format("dot") == GraphFormat::Dot);
    CHECK(parse_graph_format("edgelist") == GraphFormat::EdgeList);
    CHECK(to_string(GraphFormat::EdgeList) == "edgelist");
    CHECK_THROWS_AS(parse_graph_format("graphml"), UsageError);
}

TEST_CASE("DOT export of a 2-node tree") {
    const SpanningTree t({"GC.F", "SI.F"}, {{0, 1, 0.5}});
    const std::vector<NodeAnnotation> notes{{2.0, 1, 0.0, "metals"}, {2.0, 1, 0.0, ""}};
    const auto dot = export_tree(t, notes, GraphFormat::Dot);
    CHECK(dot ==
          "graph mst {\n"
          "  \"GC.F\" [strength=2, degree=1, betweenness=0, branch=\"metals\"];\n"
          "  \"SI.F\" [strength=2, degree=1, betweenness=0];\n"
          "  \"GC.F\" -- \"SI.F\" [weight=0.5, label=\"0.5\"];\n"
          "}\n");
    CHECK(count_lines_containing(dot, "strength=") == 2);
    CHECK(count_lines_containing(dot, " -- ") == 1);
    CHECK(export_tree(t, notes, GraphFormat::Dot) == dot);
    CHECK_THROWS_AS(export_tree(t, {notes[0]}, GraphFormat::Dot), UsageError);
}

TEST_CASE("DOT identifiers are escaped") {
    const SpanningTree t({"A\"B", "C\\D"}, {{0, 1, 1.0}});
    const auto dot = export_tree(t, std::vector<NodeAnnotation>(2), GraphFormat::Dot);
    CHECK(dot.find("\"A\\\"B\"") != std::string::npos);
    CHECK(dot.find("\"C\\\\D\"") != std::string::npos);
}

TEST_CASE("edge list round trip") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial);
        const auto d = testing::random_distances(n, rng);
        std::vector<TreeEdge> edges;
        const auto base = testing::random_tree(n, rng);
        for (auto e : base.edges()) {
            e.weight = d.values(static_cast<Eigen::Index>(e.u), static_cast<Eigen::Index>(e.v));
            edges.push_back(e);
        }
        const SpanningTree t(base.symbols(), edges);
        const auto text = export_tree(t, std::vector<NodeAnnotation>(n), GraphFormat::EdgeList);
        CHECK(text == export_tree(t, std::vector<NodeAnnotation>(n), GraphFormat::EdgeList));

        std::istringstream in(text);
        const auto parsed = parse_edge_list(in);
        REQUIRE(parsed.size() == t.edges().size());
        for (std::size_t k = 0; k < parsed.size(); ++k) {
            const auto& e = t.edges()[k];
            CHECK(parsed[k].source == t.symbols()[e.u]);
            CHECK(parsed[k].target == t.symbols()[e.v]);
            // Weights survive at the printed precision of 12 significant digits.
            CHECK(std::abs(parsed[k].weight - e.weight) <= 5e-12 * e.weight);
            CHECK(format_real(parsed[k].weight) == format_real(e.weight));
        }
    }
}

TEST_CASE("parse_edge_list errors") {
    std::istringstream bad_header("a,b,c\n");
    CHECK_THROWS_AS(parse_edge_list(bad_header), DataError);
    std::istringstream bad_weight("source,target,weight\nA,B,x\n");
    CHECK_THROWS_AS(parse_edge_list(bad_weight), DataError);
    std::istringstream short_row("source,target,weight\nA,B\n");
    CHECK_THROWS_AS(parse_edge_list(short_row), DataError);
}

TEST_CASE("read_branches") {
    std::istringstream in("# sectors\nsymbol,branch\nGC.F,metals\nCL.F, fuels\r\n");
    const auto b = read_branches(in);
    CHECK(b.size() == 2);
    CHECK(b.at("CL.F") == "fuels");
    std::istringstream headerless("GC.F,metals\n");
    CHECK(read_branches(headerless).at("GC.F") == "metals");
    std::istringstream bad("GC.F\n");
    CHECK_THROWS_AS(read_branches(bad), DataError);
}

TEST_CASE("write_matrix_csv") {
    Eigen::MatrixXd m(2, 2);
    m << 1, 0.25, 0.25, 1;
    std::ostringstream out;
    write_matrix_csv(out, {"A", "B"}, m);
    CHECK(out.str() == "symbol,A,B\nA,1,0.25\nB,0.25,1\n");
}
