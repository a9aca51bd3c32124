#include "sfkit/analysis.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "sfkit/errors.hpp"
#include "sfkit/kernels/kernels.hpp"
#include "sfkit/moments.hpp"
#include "sfkit/persistence.hpp"
#include "sfkit/quakes.hpp"
#include "sfkit/stats.hpp"
#include "sfkit/synth.hpp"

namespace sfkit {

using nlohmann::ordered_json;

const char* const kToolVersion = "0.1.0";

const std::vector<std::string>& all_analyses() {
    static const std::vector<std::string> names = {
        "density", "tails",  "moments", "kurtosis",  "taylor",      "acf",
        "volvol",  "coarse", "omori",   "gutenberg", "persistence",
    };
    return names;
}

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& reason) {
    throw Error(ErrorCode::ConfigInvalid, field + ": " + reason);
}

template <typename T>
T get_or(const ordered_json& j, const std::string& key, T fallback) {
    if (!j.contains(key) || j.at(key).is_null()) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
        config_error(key, "wrong type");
    }
}

std::vector<std::size_t> get_index_list(const ordered_json& j, const std::string& key) {
    std::vector<std::size_t> out;
    if (!j.contains(key) || j.at(key).is_null()) return out;
    if (!j.at(key).is_array()) config_error(key, "expected an array");
    for (const auto& v : j.at(key)) {
        if (!v.is_number_unsigned() && !v.is_number_integer()) config_error(key, "expected integers");
        const auto n = v.get<long long>();
        if (n <= 0) config_error(key, "entries must be positive");
        out.push_back(static_cast<std::size_t>(n));
    }
    return out;
}

std::vector<std::size_t> log_spaced(std::size_t lo, std::size_t hi, std::size_t points) {
    std::vector<std::size_t> out;
    if (hi < lo) return out;
    double log_lo = std::log(static_cast<double>(lo));
    double log_hi = std::log(static_cast<double>(hi));
    for (std::size_t i = 0; i < points; ++i) {
        const double f = points == 1 ? 0.0
                                     : static_cast<double>(i) / static_cast<double>(points - 1);
        const auto v = static_cast<std::size_t>(std::llround(std::exp(log_lo + f * (log_hi - log_lo))));
        if (out.empty() || v > out.back()) out.push_back(v);
    }
    return out;
}

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& dir, const std::string& name,
              std::vector<std::string> columns)
        : path_(dir / name), name_(name), columns_(std::move(columns)) {
        file_.open(path_);
        if (!file_) throw Error(ErrorCode::FileNotFound, "cannot write " + path_.string());
        for (std::size_t i = 0; i < columns_.size(); ++i)
            file_ << (i ? "," : "") << columns_[i];
        file_ << '\n';
    }

    void row(const std::vector<double>& values) {
        for (std::size_t i = 0; i < values.size(); ++i)
            file_ << (i ? "," : "") << format_double(values[i]);
        file_ << '\n';
        ++rows_;
    }

    ordered_json manifest_entry(const std::string& analysis) const {
        return ordered_json{{"file", name_}, {"analysis", analysis}, {"rows", rows_}};
    }

private:
    std::filesystem::path path_;
    std::string name_;
    std::vector<std::string> columns_;
    std::ofstream file_;
    std::size_t rows_ = 0;
};

ordered_json power_law_json(const PowerLawFit& fit) {
    return ordered_json{
        {"exponent", fit.exponent},       {"prefactor", fit.prefactor},
        {"exponent_stderr", fit.exponent_stderr},
        {"fit_lo", fit.fit_lo},           {"fit_hi", fit.fit_hi},
        {"residual_norm", fit.residual_norm},
        {"n_points", fit.n_points},
    };
}

struct Resolved {
    // Config values with data-dependent defaults filled in.
    std::vector<std::size_t> moment_checkpoints;
    std::vector<std::size_t> kurtosis_taus;
    std::vector<std::size_t> taylor_taus;
    std::size_t acf_max_lag = 0;
    std::size_t volvol_max_lag = 0;
    std::size_t coarse_max_lag = 0;
    std::size_t omori_min_gap = 0;
    std::size_t persistence_max_duration = 0;
};

Resolved resolve_defaults(const AnalysisConfig& config, const PriceSeries& series) {
    const std::size_t n_returns = series.size() - 1;
    Resolved r;

    r.moment_checkpoints = config.moments.checkpoints;
    if (r.moment_checkpoints.empty())
        r.moment_checkpoints = log_spaced(std::min<std::size_t>(100, n_returns), n_returns, 24);

    r.kurtosis_taus = config.kurtosis.taus;
    if (r.kurtosis_taus.empty())
        r.kurtosis_taus = log_spaced(1, std::min<std::size_t>(400, n_returns / 4), 20);

    r.taylor_taus = config.taylor.taus.empty() ? r.kurtosis_taus : config.taylor.taus;

    r.acf_max_lag = config.acf.max_lag
                        ? config.acf.max_lag
                        : std::max<std::size_t>(config.acf.fit_hi,
                                                std::min<std::size_t>(n_returns / 4, 1000));
    r.volvol_max_lag = config.volvol.max_lag ? config.volvol.max_lag
                                             : std::min<std::size_t>(n_returns / 4, 500);
    const std::size_t coarse_len =
        series.size() > config.coarse.horizon ? series.size() - config.coarse.horizon : 0;
    r.coarse_max_lag = config.coarse.max_lag ? config.coarse.max_lag
                                             : std::min<std::size_t>(coarse_len / 4, 500);
    r.omori_min_gap = config.omori.min_gap
                          ? config.omori.min_gap
                          : static_cast<std::size_t>(
                                std::max<std::int64_t>(1, 86400 / std::max<std::int64_t>(
                                                              1, series.cadence_seconds)));
    r.persistence_max_duration = config.persistence.max_duration;
    return r;
}

// Every precondition of every requested analysis, checked before any
// computation or output.
void validate(const AnalysisConfig& config, const std::set<std::string>& analyses,
              const PriceSeries& series, const Resolved& r) {
    for (const auto& name : analyses) {
        bool known = false;
        for (const auto& a : all_analyses()) known = known || a == name;
        if (!known) config_error("analyses", "unknown analysis '" + name + "'");
    }
    const std::size_t n = series.size();
    if (n < 2) config_error("input", "series has fewer than 2 prices");
    const std::size_t n_returns = n - 1;

    if ((analyses.count("kurtosis") || analyses.count("persistence")) && !config.seed)
        config_error("seed", "required for stochastic analyses (kurtosis, persistence)");

    if (analyses.count("density")) {
        if (config.density.grid_size < 2) config_error("density.grid_size", "must be >= 2");
        if (config.density.bandwidth_override && !(*config.density.bandwidth_override > 0.0))
            config_error("density.bandwidth_override", "must be > 0");
    }
    if (analyses.count("tails")) {
        if (!(config.tails.tail_fraction > 0.0) || config.tails.tail_fraction > 1.0)
            config_error("tails.tail_fraction", "must be in (0, 1]");
    }
    if (analyses.count("moments")) {
        for (std::size_t cp : r.moment_checkpoints)
            if (cp < 2 || cp > n_returns)
                config_error("moments.checkpoints",
                             "checkpoint " + std::to_string(cp) + " out of range");
    }
    if (analyses.count("kurtosis")) {
        if (r.kurtosis_taus.empty()) config_error("kurtosis.taus", "empty");
        for (std::size_t tau : r.kurtosis_taus)
            if (tau + 2 > n)
                config_error("kurtosis.taus", "tau " + std::to_string(tau) +
                                                  " too large for series of " + std::to_string(n));
        if (config.kurtosis.n_samples == 0 || config.kurtosis.sample_size < 2)
            config_error("kurtosis", "bootstrap sizes must be positive");
    }
    if (analyses.count("taylor")) {
        if (r.taylor_taus.size() < 3) config_error("taylor.taus", "need >= 3 scales");
        for (std::size_t tau : r.taylor_taus)
            if (tau + 1 >= n)
                config_error("taylor.taus", "tau " + std::to_string(tau) + " too large");
    }
    if (analyses.count("acf")) {
        if (config.acf.fit_lo < 1 || config.acf.fit_hi <= config.acf.fit_lo)
            config_error("acf", "need 1 <= fit_lo < fit_hi");
        if (config.acf.fit_hi > r.acf_max_lag) config_error("acf.fit_hi", "exceeds max_lag");
        if (n_returns < 2 * r.acf_max_lag)
            config_error("acf.max_lag", "series too short for max_lag " +
                                            std::to_string(r.acf_max_lag));
    }
    if (analyses.count("volvol")) {
        if (!series.has_volume()) config_error("volvol", "input has no volume column");
        if (r.volvol_max_lag == 0 || n_returns < 2 * r.volvol_max_lag)
            config_error("volvol.max_lag", "series too short");
        if (config.volvol.proxy == VolatilityProxy::RollingVariance &&
            (config.volvol.rolling_window < 2 || config.volvol.rolling_window > n_returns))
            config_error("volvol.rolling_window", "out of range");
    }
    if (analyses.count("coarse")) {
        if (config.coarse.horizon == 0) config_error("coarse.horizon", "must be >= 1");
        if (n <= config.coarse.horizon + r.coarse_max_lag || r.coarse_max_lag == 0 ||
            n - config.coarse.horizon < 2 * r.coarse_max_lag)
            config_error("coarse", "series too short for horizon " +
                                       std::to_string(config.coarse.horizon));
    }
    if (analyses.count("omori")) {
        if (!(config.omori.threshold_sigmas > 0.0))
            config_error("omori.threshold_sigmas", "must be > 0");
        if (!(config.omori.delta > 0.0)) config_error("omori.delta", "must be > 0");
        if (r.omori_min_gap == 0) config_error("omori.min_gap", "must be >= 1");
    }
    if (analyses.count("gutenberg")) {
        if (config.gutenberg.n_thresholds < 3)
            config_error("gutenberg.n_thresholds", "need >= 3");
        if (n_returns < config.gutenberg.min_count)
            config_error("gutenberg.min_count", "exceeds series length");
    }
    if (analyses.count("persistence")) {
        if (r.persistence_max_duration == 0)
            config_error("persistence.max_duration", "must be >= 1");
        if (n <= r.persistence_max_duration + 1)
            config_error("persistence.max_duration",
                         "series of " + std::to_string(n) + " too short");
        if (config.persistence.fit_lo < 1 ||
            config.persistence.fit_hi <= config.persistence.fit_lo)
            config_error("persistence", "need 1 <= fit_lo < fit_hi");
        if (config.persistence.n_starts == 0) config_error("persistence.n_starts", "must be >= 1");
    }
}

ordered_json config_echo(const AnalysisConfig& c, const Resolved& r) {
    ordered_json j;
    j["input"] = {{"path", c.input_path},
                  {"timestamp_column", c.schema.timestamp_column},
                  {"price_column", c.schema.price_column},
                  {"volume_column", c.schema.volume_column ? ordered_json(*c.schema.volume_column)
                                                           : ordered_json(nullptr)},
                  {"cadence_seconds", c.schema.cadence_seconds}};
    j["output_dir"] = c.output_dir;
    j["normalize_returns"] = c.normalize_returns;
    j["density"] = {{"grid_size", c.density.grid_size},
                    {"bandwidth_rule",
                     c.density.rule == BandwidthRule::AsPrinted ? "eq2" : "silverman"},
                    {"bandwidth_override", c.density.bandwidth_override
                                               ? ordered_json(*c.density.bandwidth_override)
                                               : ordered_json(nullptr)}};
    j["tails"] = {{"tail_fraction", c.tails.tail_fraction}};
    j["moments"] = {{"checkpoints", r.moment_checkpoints}};
    j["kurtosis"] = {{"taus", r.kurtosis_taus},
                     {"n_samples", c.kurtosis.n_samples},
                     {"sample_size", c.kurtosis.sample_size}};
    j["taylor"] = {{"taus", r.taylor_taus}};
    j["acf"] = {{"max_lag", r.acf_max_lag},
                {"fit_lo", c.acf.fit_lo},
                {"fit_hi", c.acf.fit_hi}};
    j["volvol"] = {{"max_lag", r.volvol_max_lag},
                   {"proxy", c.volvol.proxy == VolatilityProxy::SquaredReturn
                                 ? "squared-return"
                                 : "rolling-variance"},
                   {"rolling_window", c.volvol.rolling_window},
                   {"raw_moment", c.volvol.raw_moment}};
    j["coarse"] = {{"T", c.coarse.horizon}, {"max_lag", r.coarse_max_lag}};
    j["omori"] = {{"threshold_sigmas", c.omori.threshold_sigmas},
                  {"min_gap", r.omori_min_gap},
                  {"delta", c.omori.delta},
                  {"onsets_file", c.omori.onsets_file ? ordered_json(*c.omori.onsets_file)
                                                      : ordered_json(nullptr)}};
    j["gutenberg"] = {{"n_thresholds", c.gutenberg.n_thresholds},
                      {"min_count", c.gutenberg.min_count}};
    j["persistence"] = {{"n_starts", c.persistence.n_starts},
                        {"max_duration", r.persistence_max_duration},
                        {"fit_lo", c.persistence.fit_lo},
                        {"fit_hi", c.persistence.fit_hi}};
    return j;
}

}  // namespace

AnalysisConfig config_from_json(const ordered_json& doc) {
    AnalysisConfig c;
    if (!doc.is_object()) config_error("config", "expected a JSON object");

    if (doc.contains("input")) {
        const auto& in = doc.at("input");
        c.input_path = get_or<std::string>(in, "path", "");
        c.schema.timestamp_column =
            get_or<std::string>(in, "timestamp_column", c.schema.timestamp_column);
        c.schema.price_column = get_or<std::string>(in, "price_column", c.schema.price_column);
        if (in.contains("volume_column") && !in.at("volume_column").is_null())
            c.schema.volume_column = in.at("volume_column").get<std::string>();
        c.schema.cadence_seconds = get_or<std::int64_t>(in, "cadence_seconds", 0);
    }
    c.output_dir = get_or<std::string>(doc, "output_dir", c.output_dir);
    if (doc.contains("seed") && !doc.at("seed").is_null())
        c.seed = doc.at("seed").get<std::uint64_t>();
    c.normalize_returns = get_or<bool>(doc, "normalize_returns", c.normalize_returns);

    if (doc.contains("density")) {
        const auto& j = doc.at("density");
        c.density.grid_size = get_or<std::size_t>(j, "grid_size", c.density.grid_size);
        const std::string rule = get_or<std::string>(j, "bandwidth_rule", "eq2");
        if (rule == "eq2")
            c.density.rule = BandwidthRule::AsPrinted;
        else if (rule == "silverman")
            c.density.rule = BandwidthRule::Silverman;
        else
            config_error("density.bandwidth_rule", "expected 'eq2' or 'silverman'");
        if (j.contains("bandwidth_override") && !j.at("bandwidth_override").is_null())
            c.density.bandwidth_override = j.at("bandwidth_override").get<double>();
    }
    if (doc.contains("tails"))
        c.tails.tail_fraction =
            get_or<double>(doc.at("tails"), "tail_fraction", c.tails.tail_fraction);
    if (doc.contains("moments"))
        c.moments.checkpoints = get_index_list(doc.at("moments"), "checkpoints");
    if (doc.contains("kurtosis")) {
        const auto& j = doc.at("kurtosis");
        c.kurtosis.taus = get_index_list(j, "taus");
        c.kurtosis.n_samples = get_or<std::size_t>(j, "n_samples", c.kurtosis.n_samples);
        c.kurtosis.sample_size = get_or<std::size_t>(j, "sample_size", c.kurtosis.sample_size);
    }
    if (doc.contains("taylor")) c.taylor.taus = get_index_list(doc.at("taylor"), "taus");
    if (doc.contains("acf")) {
        const auto& j = doc.at("acf");
        c.acf.max_lag = get_or<std::size_t>(j, "max_lag", 0);
        c.acf.fit_lo = get_or<std::size_t>(j, "fit_lo", c.acf.fit_lo);
        c.acf.fit_hi = get_or<std::size_t>(j, "fit_hi", c.acf.fit_hi);
    }
    if (doc.contains("volvol")) {
        const auto& j = doc.at("volvol");
        c.volvol.max_lag = get_or<std::size_t>(j, "max_lag", 0);
        const std::string proxy = get_or<std::string>(j, "proxy", "squared-return");
        if (proxy == "squared-return")
            c.volvol.proxy = VolatilityProxy::SquaredReturn;
        else if (proxy == "rolling-variance")
            c.volvol.proxy = VolatilityProxy::RollingVariance;
        else
            config_error("volvol.proxy", "expected 'squared-return' or 'rolling-variance'");
        c.volvol.rolling_window = get_or<std::size_t>(j, "rolling_window", c.volvol.rolling_window);
        c.volvol.raw_moment = get_or<bool>(j, "raw_moment", false);
    }
    if (doc.contains("coarse")) {
        const auto& j = doc.at("coarse");
        c.coarse.horizon = get_or<std::size_t>(j, "T", c.coarse.horizon);
        c.coarse.max_lag = get_or<std::size_t>(j, "max_lag", 0);
    }
    if (doc.contains("omori")) {
        const auto& j = doc.at("omori");
        c.omori.threshold_sigmas =
            get_or<double>(j, "threshold_sigmas", c.omori.threshold_sigmas);
        c.omori.min_gap = get_or<std::size_t>(j, "min_gap", 0);
        c.omori.delta = get_or<double>(j, "delta", c.omori.delta);
        if (j.contains("onsets_file") && !j.at("onsets_file").is_null())
            c.omori.onsets_file = j.at("onsets_file").get<std::string>();
    }
    if (doc.contains("gutenberg")) {
        const auto& j = doc.at("gutenberg");
        c.gutenberg.n_thresholds =
            get_or<std::size_t>(j, "n_thresholds", c.gutenberg.n_thresholds);
        c.gutenberg.min_count = get_or<std::size_t>(j, "min_count", c.gutenberg.min_count);
    }
    if (doc.contains("persistence")) {
        const auto& j = doc.at("persistence");
        c.persistence.n_starts = get_or<std::size_t>(j, "n_starts", c.persistence.n_starts);
        c.persistence.max_duration =
            get_or<std::size_t>(j, "max_duration", c.persistence.max_duration);
        c.persistence.fit_lo = get_or<std::size_t>(j, "fit_lo", c.persistence.fit_lo);
        c.persistence.fit_hi = get_or<std::size_t>(j, "fit_hi", c.persistence.fit_hi);
    }
    return c;
}

AnalysisConfig load_config(const std::string& path) {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::ConfigInvalid, "cannot open config " + path);
    ordered_json doc;
    try {
        file >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ConfigInvalid, std::string("config parse: ") + e.what());
    }
    return config_from_json(doc);
}

std::string file_digest(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) throw Error(ErrorCode::FileNotFound, path);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    char buffer[1 << 14];
    while (file.read(buffer, sizeof(buffer)) || file.gcount() > 0) {
        const std::streamsize got = file.gcount();
        for (std::streamsize i = 0; i < got; ++i) {
            hash ^= static_cast<unsigned char>(buffer[i]);
            hash *= 0x100000001b3ULL;
        }
        if (!file) break;
    }
    char out[19];
    std::snprintf(out, sizeof(out), "0x%016llx", static_cast<unsigned long long>(hash));
    return out;
}

Report run(const AnalysisConfig& config, const std::set<std::string>& analyses) {
    const PriceSeries series = load_csv(config.input_path, config.schema);
    const Resolved resolved = resolve_defaults(config, series);
    validate(config, analyses, series, resolved);

    std::filesystem::path out_dir = config.output_dir;
    if (const char* env = std::getenv("SFKIT_OUT_DIR")) out_dir = env;
    std::filesystem::create_directories(out_dir);

    const ReturnSeries raw_returns = log_returns(series, 1);
    const ReturnSeries dist_returns =
        config.normalize_returns ? normalize(raw_returns) : raw_returns;

    ordered_json report;
    report["tool"] = {{"name", "sfkit"}, {"version", kToolVersion}};
    {
        const auto now = std::chrono::system_clock::now();
        report["generated_at"] =
            static_cast<std::int64_t>(std::chrono::system_clock::to_time_t(now));
    }
    report["seed"] = config.seed ? ordered_json(*config.seed) : ordered_json(nullptr);
    report["input"] = {{"path", config.input_path},
                       {"digest_fnv1a64", file_digest(config.input_path)},
                       {"rows", series.size()},
                       {"cadence_seconds", series.cadence_seconds},
                       {"has_volume", series.has_volume()}};
    report["config"] = config_echo(config, resolved);
    report["analyses"] = ordered_json::object();
    ordered_json manifest = ordered_json::array();

    {
        // Plot-ready copy of the ingested series and its unit-lag returns.
        CsvWriter csv(out_dir, "returns.csv", {"t", "log_price", "log_return"});
        for (std::size_t m = 0; m < raw_returns.size(); ++m)
            csv.row({static_cast<double>(m), std::log(series.prices[m]),
                     raw_returns.values[m]});
        manifest.push_back(csv.manifest_entry("series"));
    }

    auto wrap = [](const std::string& name, auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            throw Error(e.code(), "analysis '" + name + "': " + e.what());
        }
    };

    for (const std::string& name : all_analyses()) {
        if (!analyses.count(name)) continue;

        if (name == "density") wrap(name, [&] {
            const DensityEstimate kde = kde_epanechnikov(
                dist_returns, config.density.grid_size, config.density.rule,
                config.density.bandwidth_override);
            CsvWriter csv(out_dir, "density.csv", {"grid", "density"});
            for (std::size_t i = 0; i < kde.grid.size(); ++i)
                csv.row({kde.grid[i], kde.density[i]});
            manifest.push_back(csv.manifest_entry(name));
            report["analyses"]["density"] = {
                {"bandwidth", kde.bandwidth},
                {"bandwidth_rule", kde.rule == BandwidthRule::AsPrinted ? "eq2" : "silverman"},
                {"grid_size", kde.grid.size()},
                {"normalized_input", config.normalize_returns}};
        });

        if (name == "tails") wrap(name, [&] {
            ordered_json block;
            for (const TailBranch branch : {TailBranch::Positive, TailBranch::Negative}) {
                const bool pos = branch == TailBranch::Positive;
                const CcdfCurve curve = ccdf(dist_returns, branch);
                CsvWriter csv(out_dir, pos ? "ccdf_positive.csv" : "ccdf_negative.csv",
                              {"threshold", "survival"});
                for (std::size_t i = 0; i < curve.thresholds.size(); ++i)
                    csv.row({curve.thresholds[i], curve.survival[i]});
                manifest.push_back(csv.manifest_entry(name));
                const PowerLawFit fit = fit_tail_exponent(curve, config.tails.tail_fraction);
                block[pos ? "positive" : "negative"] = power_law_json(fit);
            }
            block["gaussian"] = [&] {
                const DistributionFit f = fit_gaussian(dist_returns);
                return ordered_json{{"location", f.location},
                                    {"scale", f.scale},
                                    {"log_likelihood", f.log_likelihood}};
            }();
            block["student_t"] = [&] {
                const DistributionFit f = fit_student_t(dist_returns);
                return ordered_json{{"location", f.location},
                                    {"scale", f.scale},
                                    {"dof", f.dof},
                                    {"log_likelihood", f.log_likelihood},
                                    {"iterations", f.iterations}};
            }();
            report["analyses"]["tails"] = block;
        });

        if (name == "moments") wrap(name, [&] {
            const MomentTrace trace =
                running_second_moment(raw_returns, resolved.moment_checkpoints);
            CsvWriter csv(out_dir, "moment_trace.csv", {"length", "second_moment"});
            for (std::size_t i = 0; i < trace.lengths.size(); ++i)
                csv.row({static_cast<double>(trace.lengths[i]), trace.moment_values[i]});
            manifest.push_back(csv.manifest_entry(name));
            report["analyses"]["moments"] = {
                {"final_second_moment", trace.moment_values.back()},
                {"checkpoints", trace.lengths.size()}};
        });

        if (name == "kurtosis") wrap(name, [&] {
            BootstrapConfig boot;
            boot.n_samples = config.kurtosis.n_samples;
            boot.sample_size = config.kurtosis.sample_size;
            boot.seed = *config.seed;
            const auto rows = kurtosis_by_scale(series, resolved.kurtosis_taus, boot);
            CsvWriter csv(out_dir, "kurtosis_by_scale.csv",
                          {"tau", "mean", "variance", "excess_kurtosis", "stderr"});
            for (const auto& rrow : rows)
                csv.row({static_cast<double>(rrow.tau), rrow.mean_return, rrow.variance,
                         rrow.excess_kurtosis, rrow.kurtosis_stderr});
            manifest.push_back(csv.manifest_entry(name));
            report["analyses"]["kurtosis"] = {
                {"tau_min", rows.front().tau},
                {"tau_max", rows.back().tau},
                {"excess_kurtosis_at_tau_min", rows.front().excess_kurtosis},
                {"excess_kurtosis_at_tau_max", rows.back().excess_kurtosis}};
        });

        if (name == "taylor") wrap(name, [&] {
            CsvWriter csv(out_dir, "taylor.csv", {"tau", "mean", "variance"});
            for (std::size_t tau : resolved.taylor_taus) {
                const ReturnSeries r = log_returns(series, tau);
                const double mean = mean_of(r.values);
                csv.row({static_cast<double>(tau), mean,
                         population_variance(r.values, mean)});
            }
            manifest.push_back(csv.manifest_entry(name));
            const PowerLawFit lambda_fit = taylor_law_fit(series, resolved.taylor_taus);
            const PowerLawFit gamma_fit = variance_tau_exponent(series, resolved.taylor_taus);
            report["analyses"]["taylor"] = {{"lambda", power_law_json(lambda_fit)},
                                            {"gamma", power_law_json(gamma_fit)}};
        });

        if (name == "acf") wrap(name, [&] {
            const CorrelationCurve acf_r =
                autocorrelation(raw_returns.values, resolved.acf_max_lag, CurveKind::AcfReturns);
            std::vector<double> squares(raw_returns.size());
            kernels::squared_deviations(raw_returns.values.data(), raw_returns.size(),
                                        mean_of(raw_returns.values), squares.data());
            const CorrelationCurve acf_r2 =
                autocorrelation(squares, resolved.acf_max_lag, CurveKind::AcfVolatility);

            CsvWriter csv_r(out_dir, "acf_returns.csv", {"lag", "value"});
            for (std::size_t i = 0; i < acf_r.lags.size(); ++i)
                csv_r.row({static_cast<double>(acf_r.lags[i]), acf_r.values[i]});
            manifest.push_back(csv_r.manifest_entry(name));
            CsvWriter csv_r2(out_dir, "acf_volatility.csv", {"lag", "value"});
            for (std::size_t i = 0; i < acf_r2.lags.size(); ++i)
                csv_r2.row({static_cast<double>(acf_r2.lags[i]), acf_r2.values[i]});
            manifest.push_back(csv_r2.manifest_entry(name));

            const SemilogSlopes slopes =
                volatility_clustering_slopes(raw_returns, config.acf.fit_lo, config.acf.fit_hi);
            report["analyses"]["acf"] = {
                {"slope_r", slopes.slope_r},
                {"slope_r_stderr", slopes.slope_r_stderr},
                {"slope_r2", slopes.slope_r2},
                {"slope_r2_stderr", slopes.slope_r2_stderr},
                {"fit_lo", slopes.fit_lo},
                {"fit_hi", slopes.fit_hi},
                {"r2_nonpositive_in_range", slopes.r2_nonpositive_in_range}};
        });

        if (name == "volvol") wrap(name, [&] {
            const CorrelationCurve curve = volume_volatility_correlation(
                series, resolved.volvol_max_lag, config.volvol.proxy,
                config.volvol.rolling_window, config.volvol.raw_moment);
            CsvWriter csv(out_dir, "volume_volatility.csv", {"lag", "value"});
            double peak = curve.values[0];
            int peak_lag = curve.lags[0];
            for (std::size_t i = 0; i < curve.lags.size(); ++i) {
                csv.row({static_cast<double>(curve.lags[i]), curve.values[i]});
                if (curve.values[i] > peak) {
                    peak = curve.values[i];
                    peak_lag = curve.lags[i];
                }
            }
            manifest.push_back(csv.manifest_entry(name));
            report["analyses"]["volvol"] = {{"peak_lag", peak_lag}, {"peak_value", peak}};
        });

        if (name == "coarse") wrap(name, [&] {
            const CoarseFineResult result =
                coarse_fine_correlation(series, config.coarse.horizon, resolved.coarse_max_lag);
            CsvWriter csv(out_dir, "coarse_fine.csv", {"lag", "value"});
            for (std::size_t i = 0; i < result.curve.lags.size(); ++i)
                csv.row({static_cast<double>(result.curve.lags[i]), result.curve.values[i]});
            manifest.push_back(csv.manifest_entry(name));
            CsvWriter csv_delta(out_dir, "coarse_fine_delta.csv", {"lag", "delta"});
            double max_abs_delta = 0.0;
            for (std::size_t i = 0; i < result.delta_lags.size(); ++i) {
                csv_delta.row({static_cast<double>(result.delta_lags[i]), result.delta[i]});
                max_abs_delta = std::max(max_abs_delta, std::fabs(result.delta[i]));
            }
            manifest.push_back(csv_delta.manifest_entry(name));
            report["analyses"]["coarse"] = {{"T", config.coarse.horizon},
                                            {"max_abs_delta", max_abs_delta}};
        });

        if (name == "omori") wrap(name, [&] {
            const std::vector<double> counter =
                event_counter(raw_returns, config.omori.threshold_sigmas);
            const EventCatalog catalog =
                config.omori.onsets_file
                    ? load_catalog_csv(*config.omori.onsets_file, 0.0, resolved.omori_min_gap)
                    : detect_onsets(raw_returns, config.omori.threshold_sigmas,
                                    resolved.omori_min_gap);

            CsvWriter csv(out_dir, "quake_counter.csv", {"t", "count"});
            for (std::size_t t = 0; t < counter.size(); ++t)
                csv.row({static_cast<double>(t), counter[t]});
            manifest.push_back(csv.manifest_entry(name));
            CsvWriter csv_onsets(out_dir, "quake_onsets.csv", {"onset_index", "magnitude"});
            for (std::size_t k = 0; k < catalog.onsets.size(); ++k)
                csv_onsets.row({static_cast<double>(catalog.onsets[k]), catalog.magnitudes[k]});
            manifest.push_back(csv_onsets.manifest_entry(name));

            const OmoriFit fit = fit_omori(counter, catalog, config.omori.delta);
            report["analyses"]["omori"] = {
                {"p", fit.p},
                {"amplitudes", fit.amplitudes},
                {"residual_norm", fit.residual_norm},
                {"iterations", fit.iterations},
                {"converged", fit.converged},
                {"n_onsets", catalog.onsets.size()},
                {"threshold", catalog.threshold},
                {"rate_form_note",
                 "cumulative form fitted; printed rate form differs (see docs)"}};
        });

        if (name == "gutenberg") wrap(name, [&] {
            const GutenbergRichterFit fit = fit_gutenberg_richter(
                raw_returns, config.gutenberg.n_thresholds, config.gutenberg.min_count);
            CsvWriter csv(out_dir, "gutenberg_richter.csv", {"magnitude", "count"});
            double m_max = 0.0;
            for (double v : raw_returns.values) m_max = std::max(m_max, std::fabs(v));
            for (std::size_t i = 0; i < config.gutenberg.n_thresholds; ++i) {
                const double m = m_max * static_cast<double>(i) /
                                 static_cast<double>(config.gutenberg.n_thresholds - 1);
                csv.row({m, static_cast<double>(kernels::count_abs_geq(
                                raw_returns.values.data(), raw_returns.size(), m))});
            }
            manifest.push_back(csv.manifest_entry(name));
            report["analyses"]["gutenberg"] = {
                {"a", fit.a},
                {"b", fit.b},
                {"stderr_b", fit.stderr_b},
                {"fit_lo", fit.fit_lo},
                {"fit_hi", fit.fit_hi},
                {"n_points", fit.n_points}};
        });

        if (name == "persistence") wrap(name, [&] {
            const PersistenceCurve curve =
                persistence_curve(series, config.persistence.n_starts,
                                  resolved.persistence_max_duration, *config.seed);
            CsvWriter csv(out_dir, "persistence.csv",
                          {"t", "p_plus", "p_minus", "p_global", "n_at_risk"});
            for (std::size_t i = 0; i < curve.durations.size(); ++i)
                csv.row({static_cast<double>(curve.durations[i]), curve.p_plus[i],
                         curve.p_minus[i], curve.p_global[i],
                         static_cast<double>(curve.n_at_risk[i])});
            manifest.push_back(csv.manifest_entry(name));
            const PowerLawFit fit = fit_persistence_exponent(
                curve, config.persistence.fit_lo,
                std::min<std::size_t>(config.persistence.fit_hi,
                                      resolved.persistence_max_duration));
            report["analyses"]["persistence"] = {
                {"theta_g", -fit.exponent},
                {"stderr", fit.exponent_stderr},
                {"fit_lo", fit.fit_lo},
                {"fit_hi", fit.fit_hi},
                {"censored_count", curve.censored_count},
                {"n_starts", curve.n_samples}};
        });
    }

    report["manifest"] = manifest;

    std::ofstream report_file(out_dir / "report.json");
    if (!report_file)
        throw Error(ErrorCode::FileNotFound, "cannot write " + (out_dir / "report.json").string());
    Report out;
    out.document = std::move(report);
    report_file << out.to_string();
    return out;
}

}  // namespace sfkit
