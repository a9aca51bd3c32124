#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "sfkit/correlation.hpp"
#include "sfkit/density.hpp"
#include "sfkit/series.hpp"

namespace sfkit {

// One resolved parameter block per analysis; 0 / empty means "derive a
// default from the data" where noted.
struct AnalysisConfig {
    std::string input_path;
    CsvSchema schema;
    std::string output_dir = "out";
    std::optional<std::uint64_t> seed;       // required for stochastic analyses
    bool normalize_returns = true;           // density/tails operate on n_m

    struct Density {
        std::size_t grid_size = 512;
        BandwidthRule rule = BandwidthRule::AsPrinted;
        std::optional<double> bandwidth_override;
    } density;

    struct Tails {
        double tail_fraction = 0.1;
    } tails;

    struct MomentsBlock {
        std::vector<std::size_t> checkpoints;  // empty = log-spaced
    } moments;

    struct Kurtosis {
        std::vector<std::size_t> taus;  // empty = log-spaced 1..400
        std::size_t n_samples = 100;
        std::size_t sample_size = 100;
    } kurtosis;

    struct Taylor {
        std::vector<std::size_t> taus;  // empty = kurtosis taus
    } taylor;

    struct Acf {
        std::size_t max_lag = 0;  // 0 = min(n/4, 1000)
        std::size_t fit_lo = 1;
        std::size_t fit_hi = 50;
    } acf;

    struct VolVol {
        std::size_t max_lag = 0;  // 0 = min(n/4, 500)
        VolatilityProxy proxy = VolatilityProxy::SquaredReturn;
        std::size_t rolling_window = 20;
        bool raw_moment = false;
    } volvol;

    struct Coarse {
        std::size_t horizon = 4000;  // T
        std::size_t max_lag = 0;     // 0 = min((N-T)/4, 500)
    } coarse;

    struct Omori {
        double threshold_sigmas = 3.0;
        std::size_t min_gap = 0;  // 0 = one day of bars
        double delta = 1.0;
        std::optional<std::string> onsets_file;
    } omori;

    struct Gutenberg {
        std::size_t n_thresholds = 50;
        std::size_t min_count = 10;
    } gutenberg;

    struct Persistence {
        std::size_t n_starts = 40000;
        std::size_t max_duration = 1000;
        std::size_t fit_lo = 1;
        std::size_t fit_hi = 100;
    } persistence;
};

// All eleven analysis names, in execution order.
const std::vector<std::string>& all_analyses();

AnalysisConfig config_from_json(const nlohmann::ordered_json& doc);
AnalysisConfig load_config(const std::string& path);

struct Report {
    nlohmann::ordered_json document;

    std::string to_string() const { return document.dump(2) + "\n"; }
};

// Validate, execute the requested analyses, write one JSON report plus the
// per-analysis CSV files into config.output_dir (SFKIT_OUT_DIR overrides).
// Fail-fast: every parameter block is checked against the loaded series
// before any computation or file output.
Report run(const AnalysisConfig& config, const std::set<std::string>& analyses);

// 64-bit FNV-1a of a file's bytes, as "0x..." (report provenance).
std::string file_digest(const std::string& path);

extern const char* const kToolVersion;

}  // namespace sfkit
