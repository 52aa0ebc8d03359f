#pragma once

#include "corrnet/netstruct.hpp"

#include <Eigen/Dense>

#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace corrnet {

enum class GraphFormat { Dot, EdgeList };

GraphFormat parse_graph_format(std::string_view name);
std::string_view to_string(GraphFormat format);

/// Reals are written with 12 significant digits everywhere.
std::string format_real(double value);

struct NodeAnnotation {
    double strength = 0.0;
    std::size_t degree = 0;
    double betweenness = 0.0;
    std::string branch;
};

/// Serializes a tree with edge weights (and, for DOT, node attributes).
/// Output depends only on the arguments.
std::string export_tree(const SpanningTree& tree, const std::vector<NodeAnnotation>& annotations,
                        GraphFormat format);

struct EdgeRecord {
    std::string source;
    std::string target;
    double weight = 0.0;
};

/// Reads the `source,target,weight` CSV written by export_tree(EdgeList).
std::vector<EdgeRecord> parse_edge_list(std::istream& input);

/// Reads a `symbol,branch` CSV. An optional header line `symbol,branch` and
/// `#` comments are skipped.
std::map<std::string, std::string> read_branches(std::istream& input);

/// Square matrix with a leading `symbol` column and symbol header row.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& symbols, const Eigen::MatrixXd& values);

}  // namespace corrnet
