// sfkit: stylized-fact estimators for price/volume time series.
//
// Subcommands:
//   ingest   validate and summarize a CSV
//   analyze  run configured analyses, write report.json + CSV curves
//   synth    emit a synthetic oracle series as CSV
//   report   re-render a report.json into its manifest CSV + summary
//
// Exit codes: 0 ok, 2 config error, 3 data error, 4 numerical failure.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfkit/analysis.hpp"
#include "sfkit/errors.hpp"
#include "sfkit/kernels/kernels.hpp"
#include "sfkit/stats.hpp"
#include "sfkit/synth.hpp"

namespace {

using nlohmann::ordered_json;

int run_ingest(const std::string& path, const sfkit::CsvSchema& schema) {
    const sfkit::PriceSeries series = sfkit::load_csv(path, schema);
    const sfkit::ReturnSeries returns = sfkit::log_returns(series, 1);
    const double mean = sfkit::mean_of(returns.values);
    const double variance = sfkit::population_variance(returns.values, mean);

    std::cout << "file:            " << path << '\n'
              << "digest:          " << sfkit::file_digest(path) << '\n'
              << "rows:            " << series.size() << '\n'
              << "span:            " << series.timestamps.front() << " .. "
              << series.timestamps.back() << " (epoch seconds)\n"
              << "cadence:         " << series.cadence_seconds << " s\n"
              << "volume column:   " << (series.has_volume() ? "yes" : "no") << '\n'
              << "price range:     " << *std::min_element(series.prices.begin(), series.prices.end())
              << " .. " << *std::max_element(series.prices.begin(), series.prices.end()) << '\n'
              << "return mean:     " << mean << '\n'
              << "return std:      " << std::sqrt(variance) << '\n'
              << "simd kernels:    " << sfkit::kernels::isa_name(sfkit::kernels::active_isa())
              << '\n';
    return 0;
}

int run_synth(const std::string& family, std::size_t length, std::uint64_t seed,
              const std::vector<std::string>& params, const std::string& out_path) {
    sfkit::GeneratorSpec spec;
    spec.family = sfkit::generator_family_from_name(family);
    spec.length = length;
    spec.seed = seed;
    for (const std::string& kv : params) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw sfkit::Error(sfkit::ErrorCode::ConfigInvalid,
                               "--param expects key=value, got '" + kv + "'");
        try {
            spec.parameters[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
        } catch (const std::exception&) {
            throw sfkit::Error(sfkit::ErrorCode::ConfigInvalid, "--param value in '" + kv + "'");
        }
    }

    const sfkit::SynthSeries series = sfkit::generate(spec);
    const sfkit::PriceSeries prices =
        series.is_prices ? series.prices : sfkit::prices_from_returns(series.returns);

    std::ofstream file(out_path);
    if (!file)
        throw sfkit::Error(sfkit::ErrorCode::FileNotFound, "cannot write " + out_path);
    file << (prices.has_volume() ? "timestamp,close,volume\n" : "timestamp,close\n");
    char buf[64];
    for (std::size_t i = 0; i < prices.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g", prices.prices[i]);
        file << prices.timestamps[i] << ',' << buf;
        if (prices.has_volume()) {
            std::snprintf(buf, sizeof(buf), "%.17g", prices.volumes[i]);
            file << ',' << buf;
        }
        file << '\n';
    }
    std::cout << "wrote " << prices.size() << " rows to " << out_path << " (family " << family
              << ", seed " << seed << ")\n";
    return 0;
}

int run_report(const std::string& report_path, const std::string& manifest_out) {
    std::ifstream file(report_path);
    if (!file) throw sfkit::Error(sfkit::ErrorCode::FileNotFound, report_path);
    ordered_json doc;
    try {
        file >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw sfkit::Error(sfkit::ErrorCode::ParseError, std::string("report parse: ") + e.what());
    }

    std::ofstream manifest(manifest_out);
    if (!manifest)
        throw sfkit::Error(sfkit::ErrorCode::FileNotFound, "cannot write " + manifest_out);
    manifest << "file,analysis,rows\n";
    if (doc.contains("manifest"))
        for (const auto& entry : doc.at("manifest"))
            manifest << entry.value("file", "") << ',' << entry.value("analysis", "") << ','
                     << entry.value("rows", 0) << '\n';

    std::cout << "tool:  " << doc["tool"]["name"].get<std::string>() << ' '
              << doc["tool"]["version"].get<std::string>() << '\n';
    if (doc.contains("input"))
        std::cout << "input: " << doc["input"].value("path", "") << " ("
                  << doc["input"].value("digest_fnv1a64", "") << ")\n";
    if (doc.contains("analyses")) {
        for (const auto& [name, block] : doc.at("analyses").items()) {
            std::cout << "  " << name << ":";
            if (name == "tails" && block.contains("positive"))
                std::cout << " positive exponent " << block["positive"]["exponent"]
                          << ", negative exponent " << block["negative"]["exponent"];
            if (name == "taylor" && block.contains("lambda"))
                std::cout << " lambda " << block["lambda"]["exponent"];
            if (name == "acf")
                std::cout << " slope_r " << block.value("slope_r", 0.0) << ", slope_r2 "
                          << block.value("slope_r2", 0.0);
            if (name == "omori") std::cout << " p " << block.value("p", 0.0);
            if (name == "gutenberg")
                std::cout << " a " << block.value("a", 0.0) << ", b " << block.value("b", 0.0);
            if (name == "persistence")
                std::cout << " theta_g " << block.value("theta_g", 0.0);
            std::cout << '\n';
        }
    }
    std::cout << "manifest written to " << manifest_out << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stylized-fact estimators for price/volume time series"};
    app.require_subcommand(1);

    // ingest
    auto* ingest = app.add_subcommand("ingest", "validate and summarize a CSV");
    std::string ingest_path;
    sfkit::CsvSchema ingest_schema;
    ingest->add_option("csv", ingest_path, "input CSV path")->required();
    ingest->add_option("--timestamp-column", ingest_schema.timestamp_column);
    ingest->add_option("--price-column", ingest_schema.price_column);
    std::string ingest_volume;
    ingest->add_option("--volume-column", ingest_volume);
    ingest->add_option("--cadence", ingest_schema.cadence_seconds,
                       "declared cadence in seconds (default: inferred)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "run analyses per config");
    std::string config_path;
    std::string analyze_input;
    std::string analyze_out;
    std::string analyses_csv = "all";
    std::uint64_t analyze_seed = 0;
    bool seed_given = false;
    analyze->add_option("--config", config_path, "JSON config file")->required();
    analyze->add_option("--input", analyze_input, "override input.path");
    analyze->add_option("--out", analyze_out, "override output_dir");
    analyze->add_option("--analyses", analyses_csv,
                        "comma-separated subset (default: all)");
    analyze->add_option("--seed", analyze_seed, "override seed")
        ->each([&](const std::string&) { seed_given = true; });

    // synth
    auto* synth = app.add_subcommand("synth", "emit a synthetic oracle series");
    std::string family;
    std::size_t length = 10000;
    std::uint64_t synth_seed = 0;
    std::vector<std::string> synth_params;
    std::string synth_out = "synth.csv";
    synth->add_option("--family", family, "generator family")->required();
    synth->add_option("--length", length, "series length");
    synth->add_option("--seed", synth_seed, "RNG seed")->required();
    synth->add_option("--param", synth_params, "family parameter key=value (repeatable)");
    synth->add_option("--out", synth_out, "output CSV path");

    // report
    auto* report = app.add_subcommand("report", "re-render report.json");
    std::string report_path;
    std::string manifest_out = "manifest.csv";
    report->add_option("report", report_path, "report.json path")->required();
    report->add_option("--manifest-out", manifest_out, "manifest CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*ingest) {
            if (!ingest_volume.empty()) ingest_schema.volume_column = ingest_volume;
            return run_ingest(ingest_path, ingest_schema);
        }
        if (*analyze) {
            sfkit::AnalysisConfig config = sfkit::load_config(config_path);
            if (!analyze_input.empty()) config.input_path = analyze_input;
            if (!analyze_out.empty()) config.output_dir = analyze_out;
            if (seed_given) config.seed = analyze_seed;

            std::set<std::string> selected;
            if (analyses_csv == "all") {
                selected.insert(sfkit::all_analyses().begin(), sfkit::all_analyses().end());
                // Skip volume-dependent analysis when the input has none.
                if (!config.schema.volume_column) selected.erase("volvol");
            } else {
                std::stringstream ss(analyses_csv);
                std::string token;
                while (std::getline(ss, token, ','))
                    if (!token.empty()) selected.insert(token);
            }
            const sfkit::Report result = sfkit::run(config, selected);
            std::cout << result.to_string();
            return 0;
        }
        if (*synth) return run_synth(family, length, synth_seed, synth_params, synth_out);
        if (*report) return run_report(report_path, manifest_out);
    } catch (const sfkit::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return static_cast<int>(e.cls());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
