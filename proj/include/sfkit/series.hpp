#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace sfkit {

// Timestamped close prices with optional volume. Immutable after
// construction; all operations on it are pure.
struct PriceSeries {
    std::vector<std::int64_t> timestamps;  // strictly increasing epoch-seconds
    std::vector<double> prices;            // all > 0
    std::vector<double> volumes;           // empty or same length, >= 0
    std::int64_t cadence_seconds = 0;      // declared sampling interval

    std::size_t size() const { return prices.size(); }
    bool has_volume() const { return !volumes.empty(); }
};

// Log returns at a declared bar scale tau.
struct ReturnSeries {
    std::vector<double> values;
    std::size_t scale_tau = 1;
    bool normalized = false;

    std::size_t size() const { return values.size(); }
};

struct CsvSchema {
    std::string timestamp_column = "timestamp";
    std::string price_column = "close";
    std::optional<std::string> volume_column;  // omit to ignore volume
    std::int64_t cadence_seconds = 0;          // 0 = infer from median gap
};

// Parse a headered CSV into a validated PriceSeries. Timestamps may be
// epoch-seconds or ISO-8601; the format is detected from the first data row
// and then enforced for the whole column.
PriceSeries load_csv(const std::string& path, const CsvSchema& schema);

// Construct directly from columns, applying the same validation as load_csv.
PriceSeries make_price_series(std::vector<std::int64_t> timestamps, std::vector<double> prices,
                              std::vector<double> volumes = {},
                              std::int64_t cadence_seconds = 0);

// values[m] = ln(p[m+tau]) - ln(p[m]), m = 0 .. N-tau-1.
ReturnSeries log_returns(const PriceSeries& series, std::size_t tau);

// Center and scale to zero mean / unit standard deviation, population (1/N)
// moments.
ReturnSeries normalize(const ReturnSeries& returns);

// Parse one ISO-8601 timestamp ("YYYY-MM-DD[ T]HH:MM:SS[Z]" or bare date)
// to epoch seconds; nullopt when the string does not match.
std::optional<std::int64_t> parse_iso8601(const std::string& text);

}  // namespace sfkit
