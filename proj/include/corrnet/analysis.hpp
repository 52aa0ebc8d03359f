#pragma once

#include "corrnet/correlation.hpp"
#include "corrnet/io.hpp"
#include "corrnet/netstruct.hpp"
#include "corrnet/spectral.hpp"
#include "corrnet/timeseries.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace corrnet {

struct AnalysisConfig {
    std::filesystem::path input;
    std::vector<std::string> symbols;  ///< empty: every symbol in the file
    std::optional<Date> from;
    std::optional<Date> to;
    /// Rolling window in records (default kDefaultWindow). For `static`, an
    /// explicit value restricts the analysis to the last window_length returns.
    std::optional<std::size_t> window_length;
    std::size_t step = 1;
    std::size_t shift = 7;
    std::filesystem::path out_dir = ".";
    GraphFormat graph_format = GraphFormat::Dot;
    std::optional<std::filesystem::path> branches;
    unsigned threads = 1;

    static constexpr std::size_t kDefaultWindow = 1000;

    std::size_t rolling_window() const { return window_length.value_or(kDefaultWindow); }

    /// Throws UsageError when window_length < 2 or step < 1.
    void validate() const;
};

/// Exit codes of the command-line driver.
enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 1,
    kExitData = 2,
    kExitNumerical = 3,
};

/// Reads, filters, and aligns the input prices and turns them into returns.
ReturnMatrix load_returns(const AnalysisConfig& config);

/// Full-sample observables: the correlation network of one window.
struct NetworkSnapshot {
    Window window;
    CorrelationMatrix correlation;
    DistanceMatrix distance;
    EigenDecomposition spectrum;
    RmtBounds bounds;
    double outside_fraction = 0.0;
    SpanningTree tree;
    std::vector<double> strength;
    std::vector<std::size_t> degree;
    std::vector<double> betweenness;
    std::vector<double> betweenness_raw;
    OccupationLayer occupation;
};

NetworkSnapshot analyze_window(const ReturnMatrix& returns, Window window);

struct RollingRecord {
    Date date;
    double mean_correlation = 0.0;
    double correlation_variance = 0.0;
    std::vector<StrengthBand> strength;
    OccupationLayer occupation;
    double normalized_largest_eigenvalue = 0.0;
    std::vector<double> leading_eigenvector;
};

struct Subperiod {
    Window window;
    Date first_date;
    Date last_date;
    NetworkSnapshot snapshot;
    std::vector<StrengthBand> strength;
};

struct RollingAnalysis {
    std::vector<std::string> symbols;
    std::vector<RollingRecord> records;
    std::vector<Subperiod> subperiods;  ///< empty when the data is too short to split in three
};

/// Return-column ranges of three contiguous equal thirds; the last one takes
/// the remainder.
std::vector<Window> split_thirds(std::size_t num_observations);

RollingAnalysis analyze_rolling(const ReturnMatrix& returns, std::size_t window_length, std::size_t step,
                                std::size_t shift, unsigned threads = 1);

/// Writes the static output files into `dir` (created if missing).
void write_static(const std::filesystem::path& dir, const ReturnMatrix& returns, const NetworkSnapshot& snapshot,
                  GraphFormat format, const std::map<std::string, std::string>& branches);

void write_rolling(const std::filesystem::path& dir, const RollingAnalysis& analysis, GraphFormat format,
                   const std::map<std::string, std::string>& branches);

/// Full pipelines. Diagnostics go to `err`; the return value is an ExitCode.
int run_static(const AnalysisConfig& config, std::ostream& err);
int run_rolling(const AnalysisConfig& config, std::ostream& err);

}  // namespace corrnet
