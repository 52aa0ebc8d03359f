#include "corrnet/timeseries.hpp"

#include "corrnet/error.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <set>
#include <string_view>

namespace corrnet {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

bool is_iso_date(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return false;
    for (std::size_t i : {0, 1, 2, 3, 5, 6, 8, 9}) {
        if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& what) {
    throw DataError("line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

PriceTable::PriceTable(std::vector<std::string> symbols, std::map<Date, Record> records)
    : symbols_(std::move(symbols)), records_(std::move(records)) {
    std::map<std::string, std::size_t> counts;
    for (const auto& s : symbols_) {
        if (!counts.emplace(s, 0).second) throw DataError("duplicate symbol '" + s + "'");
    }
    for (const auto& [date, record] : records_) {
        for (const auto& [symbol, price] : record) {
            auto it = counts.find(symbol);
            if (it == counts.end()) {
                throw DataError("price for unknown symbol '" + symbol + "' on " + date);
            }
            if (!(price > 0.0) || !std::isfinite(price)) {
                throw DataError("non-positive price for " + symbol + " on " + date);
            }
            ++it->second;
        }
    }
    for (const auto& [symbol, n] : counts) {
        if (n < 2) throw DataError("symbol '" + symbol + "' has fewer than 2 prices");
    }
}

std::optional<double> PriceTable::price(const Date& date, const std::string& symbol) const {
    auto rec = records_.find(date);
    if (rec == records_.end()) return std::nullopt;
    auto p = rec->second.find(symbol);
    if (p == rec->second.end()) return std::nullopt;
    return p->second;
}

bool PriceTable::has_gaps() const {
    return std::any_of(records_.begin(), records_.end(), [&](const auto& entry) {
        return entry.second.size() != symbols_.size();
    });
}

PriceTable parse_prices(std::istream& input) {
    std::vector<std::string> symbols;
    std::set<std::string> seen;
    std::map<Date, PriceTable::Record> records;

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(input, line)) {
        ++line_no;
        const auto text = trim(line);
        if (text.empty() || text.front() == '#') continue;
        if (!header_seen) {
            if (text != "date,symbol,close") fail_at(line_no, "expected header 'date,symbol,close'");
            header_seen = true;
            continue;
        }

        const auto c1 = text.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : text.find(',', c1 + 1);
        if (c2 == std::string_view::npos || text.find(',', c2 + 1) != std::string_view::npos) {
            fail_at(line_no, "expected 3 comma-separated fields");
        }
        const auto date = trim(text.substr(0, c1));
        const auto symbol = trim(text.substr(c1 + 1, c2 - c1 - 1));
        const auto close = trim(text.substr(c2 + 1));

        if (!is_iso_date(date)) fail_at(line_no, "malformed date '" + std::string(date) + "'");
        if (symbol.empty()) fail_at(line_no, "empty symbol");

        double price = 0.0;
        const auto [end, ec] = std::from_chars(close.data(), close.data() + close.size(), price);
        if (ec != std::errc{} || end != close.data() + close.size() || close.empty()) {
            fail_at(line_no, "malformed price '" + std::string(close) + "'");
        }
        if (!(price > 0.0) || !std::isfinite(price)) {
            fail_at(line_no, "non-positive price '" + std::string(close) + "'");
        }

        std::string sym(symbol);
        if (seen.insert(sym).second) symbols.push_back(sym);
        auto& record = records[Date(date)];
        if (!record.emplace(sym, price).second) {
            fail_at(line_no, "duplicate price for " + sym + " on " + std::string(date));
        }
    }
    if (!header_seen) throw DataError("missing header 'date,symbol,close'");
    return PriceTable(std::move(symbols), std::move(records));
}

PriceTable align_common_dates(const PriceTable& prices, const std::vector<std::string>& symbols) {
    if (symbols.empty()) throw UsageError("no symbols selected");
    for (const auto& s : symbols) {
        if (std::find(prices.symbols().begin(), prices.symbols().end(), s) == prices.symbols().end()) {
            throw DataError("unknown symbol '" + s + "'");
        }
    }

    std::map<Date, PriceTable::Record> kept;
    for (const auto& [date, record] : prices.records()) {
        PriceTable::Record row;
        for (const auto& s : symbols) {
            auto it = record.find(s);
            if (it == record.end()) break;
            row.emplace(s, it->second);
        }
        if (row.size() == symbols.size()) kept.emplace(date, std::move(row));
    }
    if (kept.empty()) throw DataError("selected symbols share no trading dates");
    return PriceTable(symbols, std::move(kept));
}

PriceTable restrict_dates(const PriceTable& prices, const std::optional<Date>& from,
                          const std::optional<Date>& to) {
    std::map<Date, PriceTable::Record> kept;
    for (const auto& [date, record] : prices.records()) {
        if (from && date < *from) continue;
        if (to && date > *to) continue;
        kept.emplace(date, record);
    }
    return PriceTable(prices.symbols(), std::move(kept));
}

ReturnMatrix log_returns(const PriceTable& prices) {
    if (prices.size() < 2) throw DataError("log returns need at least 2 dates");
    if (prices.has_gaps()) throw DataError("price table has gaps; align dates first");

    const auto n = prices.symbols().size();
    const auto t = prices.size() - 1;
    ReturnMatrix out;
    out.symbols = prices.symbols();
    out.dates.reserve(t);
    out.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(t));

    auto prev = prices.records().begin();
    Eigen::Index col = 0;
    for (auto cur = std::next(prev); cur != prices.records().end(); ++prev, ++cur, ++col) {
        out.dates.push_back(cur->first);
        for (std::size_t i = 0; i < n; ++i) {
            const auto& s = out.symbols[i];
            out.values(static_cast<Eigen::Index>(i), col) =
                std::log(cur->second.at(s)) - std::log(prev->second.at(s));
        }
    }
    return out;
}

}  // namespace corrnet
