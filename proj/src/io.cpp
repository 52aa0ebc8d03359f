#include "corrnet/io.hpp"

#include "corrnet/error.hpp"

#include <fmt/format.h>

#include <charconv>
#include <sstream>

namespace corrnet {

namespace {

std::string quoted(const std::string& id) {
    std::string out = "\"";
    for (char ch : id) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    out += '"';
    return out;
}

std::vector<std::string> split_csv(std::string_view line) {
    std::vector<std::string> fields;
    std::size_t pos = 0;
    while (true) {
        const auto comma = line.find(',', pos);
        fields.emplace_back(line.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    for (auto& f : fields) {
        while (!f.empty() && (f.back() == '\r' || f.back() == ' ')) f.pop_back();
        while (!f.empty() && f.front() == ' ') f.erase(f.begin());
    }
    return fields;
}

}  // namespace

GraphFormat parse_graph_format(std::string_view name) {
    if (name == "dot") return GraphFormat::Dot;
    if (name == "edgelist") return GraphFormat::EdgeList;
    throw UsageError("unknown graph format '" + std::string(name) + "' (expected dot or edgelist)");
}

std::string_view to_string(GraphFormat format) {
    return format == GraphFormat::Dot ? "dot" : "edgelist";
}

std::string format_real(double value) { return fmt::format("{:.12g}", value); }

std::string export_tree(const SpanningTree& tree, const std::vector<NodeAnnotation>& annotations,
                        GraphFormat format) {
    if (annotations.size() != tree.size()) throw UsageError("node annotations must cover every tree node");
    const auto& symbols = tree.symbols();
    std::string out;
    if (format == GraphFormat::EdgeList) {
        out += "source,target,weight\n";
        for (const auto& e : tree.edges()) {
            out += fmt::format("{},{},{}\n", symbols[e.u], symbols[e.v], format_real(e.weight));
        }
        return out;
    }

    out += "graph mst {\n";
    for (std::size_t i = 0; i < tree.size(); ++i) {
        const auto& a = annotations[i];
        out += fmt::format("  {} [strength={}, degree={}, betweenness={}", quoted(symbols[i]),
                           format_real(a.strength), a.degree, format_real(a.betweenness));
        if (!a.branch.empty()) out += ", branch=" + quoted(a.branch);
        out += "];\n";
    }
    for (const auto& e : tree.edges()) {
        const auto w = format_real(e.weight);
        out += fmt::format("  {} -- {} [weight={}, label=\"{}\"];\n", quoted(symbols[e.u]), quoted(symbols[e.v]), w, w);
    }
    out += "}\n";
    return out;
}

std::vector<EdgeRecord> parse_edge_list(std::istream& input) {
    std::vector<EdgeRecord> edges;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        const auto fields = split_csv(line);
        if (!header_seen) {
            if (fields != std::vector<std::string>{"source", "target", "weight"}) {
                throw DataError("edge list line " + std::to_string(line_no) + ": expected header source,target,weight");
            }
            header_seen = true;
            continue;
        }
        if (fields.size() != 3) throw DataError("edge list line " + std::to_string(line_no) + ": expected 3 fields");
        EdgeRecord rec{fields[0], fields[1], 0.0};
        const auto& w = fields[2];
        const auto [end, ec] = std::from_chars(w.data(), w.data() + w.size(), rec.weight);
        if (ec != std::errc{} || end != w.data() + w.size()) {
            throw DataError("edge list line " + std::to_string(line_no) + ": malformed weight '" + w + "'");
        }
        edges.push_back(std::move(rec));
    }
    return edges;
}

std::map<std::string, std::string> read_branches(std::istream& input) {
    std::map<std::string, std::string> branches;
    std::string line;
    std::size_t line_no = 0;
    bool first = true;
    while (std::getline(input, line)) {
        ++line_no;
        if (line.empty() || line == "\r" || line.front() == '#') continue;
        const auto fields = split_csv(line);
        if (fields.size() != 2 || fields[0].empty()) {
            throw DataError("branch file line " + std::to_string(line_no) + ": expected symbol,branch");
        }
        const bool header = first && fields[0] == "symbol" && fields[1] == "branch";
        first = false;
        if (header) continue;
        branches[fields[0]] = fields[1];
    }
    return branches;
}

void write_matrix_csv(std::ostream& out, const std::vector<std::string>& symbols, const Eigen::MatrixXd& values) {
    out << "symbol";
    for (const auto& s : symbols) out << ',' << s;
    out << '\n';
    for (Eigen::Index i = 0; i < values.rows(); ++i) {
        out << symbols[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < values.cols(); ++j) out << ',' << format_real(values(i, j));
        out << '\n';
    }
}

}  // namespace corrnet
