#include "corrnet/analysis.hpp"

#include "corrnet/error.hpp"

#include <fmt/format.h>

#include <fstream>
#include <sstream>

namespace corrnet {

namespace fs = std::filesystem;

namespace {

void write_file(const fs::path& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write " + path.string());
    out << contents;
    if (!out) throw DataError("error writing " + path.string());
}

std::map<std::string, std::string> load_branches(const std::optional<fs::path>& path) {
    if (!path) return {};
    std::ifstream in(*path);
    if (!in) throw DataError("cannot open branch file " + path->string());
    return read_branches(in);
}

std::string branch_of(const std::map<std::string, std::string>& branches, const std::string& symbol) {
    auto it = branches.find(symbol);
    return it == branches.end() ? std::string{} : it->second;
}

std::vector<NodeAnnotation> annotate(const NetworkSnapshot& s, const std::map<std::string, std::string>& branches) {
    std::vector<NodeAnnotation> out;
    out.reserve(s.tree.size());
    for (std::size_t i = 0; i < s.tree.size(); ++i) {
        out.push_back({s.strength[i], s.degree[i], s.betweenness[i], branch_of(branches, s.tree.symbols()[i])});
    }
    return out;
}

void write_tree(const fs::path& dir, const NetworkSnapshot& s, GraphFormat format,
                const std::map<std::string, std::string>& branches) {
    const auto annotations = annotate(s, branches);
    write_file(dir / "mst_edges.csv", export_tree(s.tree, annotations, GraphFormat::EdgeList));
    if (format == GraphFormat::Dot) write_file(dir / "mst.dot", export_tree(s.tree, annotations, GraphFormat::Dot));
}

// Node table; `bands` adds strength_low/strength_high columns when given.
std::string node_table(const NetworkSnapshot& s, const std::map<std::string, std::string>& branches,
                       const std::vector<StrengthBand>* bands) {
    std::string out = "symbol,branch,degree,strength,betweenness,betweenness_raw";
    if (bands) out += ",strength_low,strength_high";
    out += '\n';
    const auto& symbols = s.tree.symbols();
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        out += fmt::format("{},{},{},{},{},{}", symbols[i], branch_of(branches, symbols[i]), s.degree[i],
                           format_real(s.strength[i]), format_real(s.betweenness[i]),
                           format_real(s.betweenness_raw[i]));
        if (bands) out += fmt::format(",{},{}", format_real((*bands)[i].low), format_real((*bands)[i].high));
        out += '\n';
    }
    return out;
}

std::vector<double> column(const Eigen::MatrixXd& m, Eigen::Index k) {
    std::vector<double> out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = m(i, k);
    return out;
}

}  // namespace

void AnalysisConfig::validate() const {
    if (window_length && *window_length < 2) throw UsageError("--window must be at least 2");
    if (step < 1) throw UsageError("--step must be at least 1");
    if (input.empty()) throw UsageError("--input is required");
}

ReturnMatrix load_returns(const AnalysisConfig& config) {
    std::ifstream in(config.input);
    if (!in) throw DataError("cannot open input " + config.input.string());
    auto prices = parse_prices(in);
    if (config.from || config.to) prices = restrict_dates(prices, config.from, config.to);
    const auto& symbols = config.symbols.empty() ? prices.symbols() : config.symbols;
    if (symbols.size() < 2) throw DataError("analysis needs at least 2 symbols");
    return log_returns(align_common_dates(prices, symbols));
}

NetworkSnapshot analyze_window(const ReturnMatrix& returns, Window window) {
    NetworkSnapshot s;
    s.window = window;
    s.correlation = correlation_matrix(returns, window);
    s.distance = distance_matrix(s.correlation);
    s.spectrum = eigendecompose(s.correlation);
    s.bounds = rmt_bounds(window.length(), returns.num_series());
    s.outside_fraction = fraction_outside_rmt(s.spectrum, s.bounds);
    s.tree = mst_prim(s.distance);
    s.strength = node_strengths(s.distance);
    s.betweenness_raw = betweenness_raw_all(s.tree);
    const auto n = s.tree.size();
    const double pairs = n >= 3 ? static_cast<double>((n - 1) * (n - 2)) / 2.0 : 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s.degree.push_back(node_degree(s.tree, i));
        s.betweenness.push_back(pairs > 0.0 ? s.betweenness_raw[i] / pairs : 0.0);
    }
    s.occupation = mean_occupation_layer(s.tree);
    return s;
}

std::vector<Window> split_thirds(std::size_t num_observations) {
    const auto len = num_observations / 3;
    if (len < 2) return {};
    return {{0, len}, {len, 2 * len}, {2 * len, num_observations}};
}

RollingAnalysis analyze_rolling(const ReturnMatrix& returns, std::size_t window_length, std::size_t step,
                                std::size_t shift, unsigned threads) {
    const auto ends = rolling_window_ends(returns.num_observations(), window_length, step);

    RollingAnalysis out;
    out.symbols = returns.symbols;
    out.records.resize(ends.size());
    parallel_for(ends.size(), threads, [&](std::size_t k) {
        const Window w{ends[k] - window_length, ends[k]};
        const auto c = correlation_matrix(returns, w);
        const auto spectrum = eigendecompose(c);
        auto& r = out.records[k];
        r.date = returns.dates[w.end - 1];
        r.mean_correlation = mean_correlation(c);
        r.correlation_variance = correlation_variance(c);
        r.strength = strength_errorbar(returns, w, shift, ShiftPolicy::Clip);
        r.occupation = mean_occupation_layer(mst_prim(distance_matrix(c)));
        r.normalized_largest_eigenvalue = normalized_largest_eigenvalue(spectrum);
        r.leading_eigenvector = column(spectrum.eigenvectors, 0);
    });

    for (const auto& w : split_thirds(returns.num_observations())) {
        Subperiod p;
        p.window = w;
        p.first_date = returns.dates[w.start];
        p.last_date = returns.dates[w.end - 1];
        p.snapshot = analyze_window(returns, w);
        p.strength = strength_errorbar(returns, w, shift, ShiftPolicy::Clip);
        out.subperiods.push_back(std::move(p));
    }
    return out;
}

void write_static(const fs::path& dir, const ReturnMatrix& returns, const NetworkSnapshot& s, GraphFormat format,
                  const std::map<std::string, std::string>& branches) {
    fs::create_directories(dir);
    const auto& symbols = s.correlation.symbols;

    std::ostringstream corr, dist;
    write_matrix_csv(corr, symbols, s.correlation.values);
    write_matrix_csv(dist, symbols, s.distance.values);
    write_file(dir / "correlation.csv", corr.str());
    write_file(dir / "distance.csv", dist.str());

    std::string eig = "rank,eigenvalue,outside_rmt\n";
    for (Eigen::Index k = 0; k < s.spectrum.eigenvalues.size(); ++k) {
        const double lambda = s.spectrum.eigenvalues(k);
        const bool outside = lambda < s.bounds.lambda_min || lambda > s.bounds.lambda_max;
        eig += fmt::format("{},{},{}\n", k + 1, format_real(lambda), outside ? 1 : 0);
    }
    write_file(dir / "eigenvalues.csv", eig);

    write_file(dir / "rmt.csv",
               fmt::format("first_date,last_date,t,n,q,lambda_min,lambda_max,fraction_outside\n{},{},{},{},{},{},{},{}\n",
                           returns.dates[s.window.start], returns.dates[s.window.end - 1], s.window.length(),
                           symbols.size(), format_real(s.bounds.q), format_real(s.bounds.lambda_min),
                           format_real(s.bounds.lambda_max), format_real(s.outside_fraction)));

    std::string vecs = "symbol,v1,v2\n";
    for (std::size_t i = 0; i < symbols.size(); ++i) {
        const auto row = static_cast<Eigen::Index>(i);
        vecs += fmt::format("{},{},{}\n", symbols[i], format_real(s.spectrum.eigenvectors(row, 0)),
                            format_real(s.spectrum.eigenvectors(row, 1)));
    }
    write_file(dir / "eigenvectors.csv", vecs);

    write_tree(dir, s, format, branches);
    write_file(dir / "nodes.csv", node_table(s, branches, nullptr));
}

void write_rolling(const fs::path& dir, const RollingAnalysis& a, GraphFormat format,
                   const std::map<std::string, std::string>& branches) {
    fs::create_directories(dir);
    const auto& symbols = a.symbols;

    std::string mean = "date,mean_correlation\n";
    std::string var = "date,correlation_variance\n";
    std::string strength = "date,symbol,low,mid,high\n";
    std::string layer = "date,central,mean_occupation_layer\n";
    std::string lambda = "date,normalized_largest_eigenvalue\n";
    std::string leading = "date";
    for (const auto& s : symbols) leading += ',' + s;
    leading += '\n';

    for (const auto& r : a.records) {
        mean += fmt::format("{},{}\n", r.date, format_real(r.mean_correlation));
        var += fmt::format("{},{}\n", r.date, format_real(r.correlation_variance));
        for (std::size_t i = 0; i < symbols.size(); ++i) {
            const auto& b = r.strength[i];
            strength += fmt::format("{},{},{},{},{}\n", r.date, symbols[i], format_real(b.low), format_real(b.mid),
                                    format_real(b.high));
        }
        layer += fmt::format("{},{},{}\n", r.date, symbols[r.occupation.central], format_real(r.occupation.layer));
        lambda += fmt::format("{},{}\n", r.date, format_real(r.normalized_largest_eigenvalue));
        leading += r.date;
        for (double v : r.leading_eigenvector) leading += ',' + format_real(v);
        leading += '\n';
    }
    write_file(dir / "mean_correlation.csv", mean);
    write_file(dir / "correlation_variance.csv", var);
    write_file(dir / "strength.csv", strength);
    write_file(dir / "occupation_layer.csv", layer);
    write_file(dir / "largest_eigenvalue.csv", lambda);
    write_file(dir / "leading_eigenvector.csv", leading);

    std::string periods = "subperiod,first_date,last_date,records,mean_correlation,central,mean_occupation_layer\n";
    for (std::size_t k = 0; k < a.subperiods.size(); ++k) {
        const auto& p = a.subperiods[k];
        periods += fmt::format("{},{},{},{},{},{},{}\n", k + 1, p.first_date, p.last_date, p.window.length(),
                               format_real(mean_correlation(p.snapshot.correlation)),
                               symbols[p.snapshot.occupation.central], format_real(p.snapshot.occupation.layer));
        const auto sub = dir / fmt::format("subperiod_{}", k + 1);
        fs::create_directories(sub);
        write_tree(sub, p.snapshot, format, branches);
        write_file(sub / "nodes.csv", node_table(p.snapshot, branches, &p.strength));
    }
    write_file(dir / "subperiods.csv", periods);
}

namespace {

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        body();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const DataError& e) {
        err << "data error: " << e.what() << '\n';
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
}

}  // namespace

int run_static(const AnalysisConfig& config, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const auto returns = load_returns(config);
        const auto t = returns.num_observations();
        Window window{0, t};
        if (config.window_length) {
            if (*config.window_length > t) {
                throw DataError(fmt::format("window exceeds data: {} > {} returns", *config.window_length, t));
            }
            window.start = t - *config.window_length;
        }
        const auto branches = load_branches(config.branches);
        write_static(config.out_dir, returns, analyze_window(returns, window), config.graph_format, branches);
    });
}

int run_rolling(const AnalysisConfig& config, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        const auto returns = load_returns(config);
        const auto branches = load_branches(config.branches);
        const auto analysis =
            analyze_rolling(returns, config.rolling_window(), config.step, config.shift, config.threads);
        write_rolling(config.out_dir, analysis, config.graph_format, branches);
    });
}

}  // namespace corrnet
