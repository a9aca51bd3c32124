#include "sfkit/series.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "sfkit/errors.hpp"
#include "sfkit/stats.hpp"

namespace sfkit {

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            fields.push_back(field);
            field.clear();
        } else if (c != '\r') {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

std::string trimmed(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::optional<double> parse_double(const std::string& s) {
    const std::string t = trimmed(s);
    if (t.empty()) return std::nullopt;
    double value = 0.0;
    const char* begin = t.data();
    const char* end = t.data() + t.size();
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) return std::nullopt;
    return value;
}

std::optional<std::int64_t> parse_epoch(const std::string& s) {
    const std::string t = trimmed(s);
    if (t.empty()) return std::nullopt;
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
    return value;
}

// Days since 1970-01-01 for a civil date (proleptic Gregorian).
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

std::int64_t median_gap(const std::vector<std::int64_t>& timestamps) {
    if (timestamps.size() < 2) return 0;
    std::vector<std::int64_t> gaps(timestamps.size() - 1);
    for (std::size_t i = 0; i + 1 < timestamps.size(); ++i)
        gaps[i] = timestamps[i + 1] - timestamps[i];
    const std::size_t mid = gaps.size() / 2;
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(mid), gaps.end());
    return gaps[mid];
}

}  // namespace

std::optional<std::int64_t> parse_iso8601(const std::string& text) {
    const std::string t = trimmed(text);
    // YYYY-MM-DD, optionally followed by [T ]HH:MM:SS and an optional Z.
    if (t.size() < 10 || t[4] != '-' || t[7] != '-') return std::nullopt;
    auto digits = [&](std::size_t pos, std::size_t len, std::int64_t& out) {
        out = 0;
        for (std::size_t i = pos; i < pos + len; ++i) {
            if (i >= t.size() || !std::isdigit(static_cast<unsigned char>(t[i])))
                return false;
            out = out * 10 + (t[i] - '0');
        }
        return true;
    };
    std::int64_t year, month, day;
    if (!digits(0, 4, year) || !digits(5, 2, month) || !digits(8, 2, day)) return std::nullopt;
    if (month < 1 || month > 12 || day < 1 || day > 31) return std::nullopt;

    std::int64_t hh = 0, mm = 0, ss = 0;
    if (t.size() > 10) {
        if ((t[10] != 'T' && t[10] != ' ') || t.size() < 19) return std::nullopt;
        if (t[13] != ':' || t[16] != ':') return std::nullopt;
        if (!digits(11, 2, hh) || !digits(14, 2, mm) || !digits(17, 2, ss)) return std::nullopt;
        if (hh > 23 || mm > 59 || ss > 60) return std::nullopt;
        if (t.size() > 19 && !(t.size() == 20 && t[19] == 'Z')) return std::nullopt;
    }
    return days_from_civil(year, static_cast<unsigned>(month), static_cast<unsigned>(day)) * 86400 +
           hh * 3600 + mm * 60 + ss;
}

PriceSeries make_price_series(std::vector<std::int64_t> timestamps, std::vector<double> prices,
                              std::vector<double> volumes, std::int64_t cadence_seconds) {
    if (timestamps.size() != prices.size())
        throw Error(ErrorCode::LengthMismatch, "timestamps vs prices");
    if (!volumes.empty() && volumes.size() != prices.size())
        throw Error(ErrorCode::LengthMismatch, "volumes vs prices");
    for (std::size_t i = 0; i + 1 < timestamps.size(); ++i)
        if (timestamps[i + 1] <= timestamps[i])
            throw Error(ErrorCode::NonMonotonicTimestamps,
                        "at row " + std::to_string(i + 2));
    for (std::size_t i = 0; i < prices.size(); ++i)
        if (!(prices[i] > 0.0) || !std::isfinite(prices[i]))
            throw Error(ErrorCode::NonPositivePrice, "row " + std::to_string(i + 1));
    for (std::size_t i = 0; i < volumes.size(); ++i)
        if (volumes[i] < 0.0 || !std::isfinite(volumes[i]))
            throw Error(ErrorCode::ParseError,
                        "negative volume at row " + std::to_string(i + 1));

    PriceSeries out;
    out.timestamps = std::move(timestamps);
    out.prices = std::move(prices);
    out.volumes = std::move(volumes);
    out.cadence_seconds = cadence_seconds > 0 ? cadence_seconds : median_gap(out.timestamps);
    return out;
}

PriceSeries load_csv(const std::string& path, const CsvSchema& schema) {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::FileNotFound, path);

    std::string line;
    if (!std::getline(file, line))
        throw Error(ErrorCode::ParseError, "empty file: " + path);

    const std::vector<std::string> header = split_csv_row(line);
    auto column_index = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i)
            if (trimmed(header[i]) == name) return i;
        return std::nullopt;
    };

    const auto ts_col = column_index(schema.timestamp_column);
    if (!ts_col)
        throw Error(ErrorCode::ParseError,
                    "missing timestamp column '" + schema.timestamp_column + "'");
    const auto price_col = column_index(schema.price_column);
    if (!price_col)
        throw Error(ErrorCode::ParseError, "missing price column '" + schema.price_column + "'");
    std::optional<std::size_t> volume_col;
    if (schema.volume_column) {
        volume_col = column_index(*schema.volume_column);
        if (!volume_col)
            throw Error(ErrorCode::MissingVolume,
                        "missing volume column '" + *schema.volume_column + "'");
    }

    std::vector<std::int64_t> timestamps;
    std::vector<double> prices;
    std::vector<double> volumes;

    // Timestamp format is decided once from the first data row, then the
    // whole column must follow it.
    enum class TsFormat { Undecided, Epoch, Iso8601 } ts_format = TsFormat::Undecided;

    std::size_t row = 0;  // 1-based data-row index
    std::int64_t prev_ts = 0;
    while (std::getline(file, line)) {
        if (trimmed(line).empty()) continue;
        ++row;
        const std::vector<std::string> fields = split_csv_row(line);
        const std::size_t needed =
            std::max({*ts_col, *price_col, volume_col.value_or(0)});
        if (fields.size() <= needed)
            throw Error(ErrorCode::ParseError,
                        "row " + std::to_string(row) + ": too few columns");

        const std::string& ts_text = fields[*ts_col];
        if (ts_format == TsFormat::Undecided)
            ts_format = parse_epoch(ts_text) ? TsFormat::Epoch : TsFormat::Iso8601;

        std::optional<std::int64_t> ts = ts_format == TsFormat::Epoch
                                             ? parse_epoch(ts_text)
                                             : parse_iso8601(ts_text);
        if (!ts)
            throw Error(ErrorCode::ParseError, "row " + std::to_string(row) + ", column '" +
                                                   schema.timestamp_column + "': '" +
                                                   trimmed(ts_text) + "'");
        if (!timestamps.empty() && *ts <= prev_ts)
            throw Error(ErrorCode::NonMonotonicTimestamps, "at row " + std::to_string(row));

        const std::optional<double> price = parse_double(fields[*price_col]);
        if (!price)
            throw Error(ErrorCode::ParseError, "row " + std::to_string(row) + ", column '" +
                                                   schema.price_column + "': '" +
                                                   trimmed(fields[*price_col]) + "'");
        if (!(*price > 0.0))
            throw Error(ErrorCode::NonPositivePrice, "row " + std::to_string(row));

        if (volume_col) {
            const std::optional<double> volume = parse_double(fields[*volume_col]);
            if (!volume || *volume < 0.0)
                throw Error(ErrorCode::ParseError, "row " + std::to_string(row) + ", column '" +
                                                       *schema.volume_column + "': '" +
                                                       trimmed(fields[*volume_col]) + "'");
            volumes.push_back(*volume);
        }

        timestamps.push_back(*ts);
        prices.push_back(*price);
        prev_ts = *ts;
    }

    if (timestamps.empty()) throw Error(ErrorCode::ParseError, "no data rows in " + path);
    return make_price_series(std::move(timestamps), std::move(prices), std::move(volumes),
                             schema.cadence_seconds);
}

ReturnSeries log_returns(const PriceSeries& series, std::size_t tau) {
    if (tau == 0) throw Error(ErrorCode::InvalidParameters, "tau must be >= 1");
    const std::size_t n = series.size();
    if (n <= tau)
        throw Error(ErrorCode::SeriesTooShort,
                    "need > " + std::to_string(tau) + " prices, have " + std::to_string(n));

    ReturnSeries out;
    out.scale_tau = tau;
    out.values.resize(n - tau);
    for (std::size_t m = 0; m + tau < n; ++m)
        out.values[m] = std::log(series.prices[m + tau]) - std::log(series.prices[m]);
    return out;
}

ReturnSeries normalize(const ReturnSeries& returns) {
    if (returns.size() < 2)
        throw Error(ErrorCode::SeriesTooShort, "normalization needs >= 2 returns");
    const double mean = mean_of(returns.values);
    const double variance = population_variance(returns.values, mean);
    if (variance <= 0.0) throw Error(ErrorCode::ZeroVariance, "cannot normalize");

    ReturnSeries out;
    out.scale_tau = returns.scale_tau;
    out.normalized = true;
    out.values.resize(returns.size());
    const double inv_std = 1.0 / std::sqrt(variance);
    for (std::size_t i = 0; i < returns.size(); ++i)
        out.values[i] = (returns.values[i] - mean) * inv_std;
    return out;
}

}  // namespace sfkit
