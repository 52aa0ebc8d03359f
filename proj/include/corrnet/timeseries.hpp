#pragma once

#include <Eigen/Dense>

#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace corrnet {

/// ISO-8601 date label. Compared lexicographically, never parsed into a calendar.
using Date = std::string;

/// Daily closing prices per symbol. A symbol absent from a record is a gap.
class PriceTable {
public:
    using Record = std::map<std::string, double>;

    PriceTable() = default;

    /// Validates invariants: positive prices, every price belongs to a known
    /// symbol, every symbol quoted on at least two dates.
    PriceTable(std::vector<std::string> symbols, std::map<Date, Record> records);

    const std::vector<std::string>& symbols() const noexcept { return symbols_; }
    const std::map<Date, Record>& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }

    std::optional<double> price(const Date& date, const std::string& symbol) const;
    bool has_gaps() const;

    bool operator==(const PriceTable&) const = default;

private:
    std::vector<std::string> symbols_;
    std::map<Date, Record> records_;
};

/// Aligned log returns, one row per symbol and one column per return.
/// Column t is the return from aligned price date t to t+1 and is labelled
/// with the later date.
struct ReturnMatrix {
    std::vector<std::string> symbols;
    std::vector<Date> dates;
    Eigen::MatrixXd values;

    std::size_t num_series() const noexcept { return symbols.size(); }
    std::size_t num_observations() const noexcept { return dates.size(); }
};

/// Reads the `date,symbol,close` price format. Symbols are listed in order of
/// first appearance.
PriceTable parse_prices(std::istream& input);

/// Restricts to `symbols` and to the dates on which every one of them trades.
PriceTable align_common_dates(const PriceTable& prices, const std::vector<std::string>& symbols);

/// Keeps records with `from <= date <= to`. Either bound may be omitted.
PriceTable restrict_dates(const PriceTable& prices, const std::optional<Date>& from,
                          const std::optional<Date>& to);

/// Natural-log returns of a gap-free table with at least two dates.
ReturnMatrix log_returns(const PriceTable& prices);

}  // namespace corrnet
