// cuelab command line: samplers, determinants and the experiment registry.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "cuelab/asymptotics.hpp"
#include "cuelab/cue_model.hpp"
#include "cuelab/error.hpp"
#include "cuelab/experiments.hpp"
#include "cuelab/gmc.hpp"
#include "cuelab/monte_carlo.hpp"
#include "cuelab/symbol_json.hpp"
#include "cuelab/toeplitz.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cuelab;

namespace {

struct Common {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> samples;
    std::optional<std::size_t> workers;
    std::string out = "out";
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config_path, "JSON config file");
    app->add_option("--seed", c.seed, "RNG seed");
    app->add_option("--samples", c.samples, "number of samples");
    app->add_option("--out", c.out, "output directory")->capture_default_str();
    app->add_option("--workers", c.workers, "worker threads (results do not depend on it)");
}

json load_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("config", "cannot open " + path);
    try {
        return json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", e.what());
    }
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    os << text;
    if (!os) throw std::runtime_error("cannot write " + path.string());
}

json summary_header(const std::string& command, const json& config) {
    return {{"command", command}, {"build_id", build_id()}, {"config", config}};
}

template <class T>
T pick(const json& cfg, const char* key, T fallback) {
    return cfg.contains(key) ? cfg.at(key).get<T>() : fallback;
}

int cmd_sample_cue(const Common& c, std::size_t n, const std::string& backend_name) {
    json cfg = c.config_path.empty() ? json::object() : load_json(c.config_path);
    n = pick(cfg, "n", n);
    const std::uint64_t seed = c.seed.value_or(pick<std::uint64_t>(cfg, "seed", 1));
    const std::size_t samples = c.samples.value_or(pick<std::size_t>(cfg, "samples", 1));
    const std::size_t workers = c.workers.value_or(pick<std::size_t>(cfg, "workers", 1));
    const std::string bname = pick<std::string>(cfg, "backend", backend_name);
    if (n < 1) throw ConfigError("n", "must be positive");
    if (samples < 1) throw ConfigError("samples", "must be positive");
    if (bname != "determinantal" && bname != "ginibre-qr") throw ConfigError("backend", "unknown backend " + bname);
    const auto backend = bname == "determinantal" ? SamplerBackend::determinantal : SamplerBackend::ginibre_qr;

    fs::create_directories(c.out);
    const auto draws = collect_samples<EigenSample>(McOptions{seed, samples, workers}, [&](RngStream& s) {
        return sample_cue(n, s, backend);
    });
    json files = json::array();
    for (std::size_t i = 0; i < draws.size(); ++i) {
        const std::string name = "cue_sample_" + std::to_string(i) + ".csv";
        std::ostringstream os;
        write_eigen_sample_csv(os, draws[i]);
        write_text(fs::path(c.out) / name, os.str());
        files.push_back(name);
    }
    json summary = summary_header("sample-cue", {{"n", n}, {"seed", seed}, {"samples", samples},
                                                 {"workers", workers}, {"backend", bname}});
    summary["files"] = files;
    write_text(fs::path(c.out) / "sample_cue.json", summary.dump(2) + "\n");
    std::cout << "wrote " << draws.size() << " samples to " << c.out << "\n";
    return 0;
}

int cmd_gmc_sample(const Common& c, std::size_t k, double beta, std::size_t grid_size) {
    json cfg = c.config_path.empty() ? json::object() : load_json(c.config_path);
    k = pick(cfg, "k", k);
    beta = pick(cfg, "beta", beta);
    grid_size = pick(cfg, "grid_size", grid_size);
    if (grid_size == 0) grid_size = default_gmc_grid_size(k);
    const std::uint64_t seed = c.seed.value_or(pick<std::uint64_t>(cfg, "seed", 1));
    const std::size_t samples = c.samples.value_or(pick<std::size_t>(cfg, "samples", 1));
    const std::size_t workers = c.workers.value_or(pick<std::size_t>(cfg, "workers", 1));
    if (k < 1) throw ConfigError("k", "must be positive");
    if (samples < 1) throw ConfigError("samples", "must be positive");
    if (grid_size < 2 * k + 1) throw ConfigError("grid_size", "must be at least 2k+1");
    const UniformGrid grid{grid_size, 0.0};

    fs::create_directories(c.out);
    const auto measures = collect_samples<GridMeasure>(McOptions{seed, samples, workers}, [&](RngStream& s) {
        return chaos_measure(draw_gaussians(k, s), beta, grid);
    });
    json masses = json::array();
    for (std::size_t i = 0; i < measures.size(); ++i) {
        std::ostringstream os;
        write_grid_measure_csv(os, measures[i]);
        write_text(fs::path(c.out) / ("gmc_measure_" + std::to_string(i) + ".csv"), os.str());
        masses.push_back(measures[i].total_mass());
    }
    json summary = summary_header("gmc-sample", {{"k", k}, {"beta", beta}, {"grid_size", grid_size},
                                                 {"seed", seed}, {"samples", samples}, {"workers", workers}});
    summary["total_mass"] = masses;
    summary["oracle_mean_total_mass"] = {{"value", kTwoPi}, {"provenance", "martingale normalization"}};
    write_text(fs::path(c.out) / "gmc_sample.json", summary.dump(2) + "\n");
    std::cout << "wrote " << measures.size() << " measures to " << c.out << "\n";
    return 0;
}

int cmd_toeplitz_det(const Common& c, std::size_t fft_size) {
    if (c.config_path.empty()) throw ConfigError("config", "toeplitz-det needs --config <symbol.json>");
    const json doc = load_json(c.config_path);
    const SymbolSpec spec = symbol_from_json(doc);
    const auto sizes = sizes_from_json(doc);
    std::size_t max_n = 0;
    for (std::size_t n : sizes) {
        if (n > 1024) throw ConfigError("sizes", "sizes must be at most 1024");
        max_n = std::max(max_n, n);
    }
    const int order = static_cast<int>(max_n);
    if (fft_size == 0) fft_size = pick<std::size_t>(doc, "fft_size", default_fft_size(spec, order));
    const auto coeffs = fourier_coeffs(spec, order, fft_size);
    std::string csv = "n,log_det_re,log_det_im\n";
    for (std::size_t n : sizes) {
        const auto r = toeplitz_logdet(coeffs, n);
        csv += std::to_string(n) + "," + fmt(r.log_det.real()) + "," + fmt(r.log_det.imag()) + "\n";
    }
    fs::create_directories(c.out);
    write_text(fs::path(c.out) / "toeplitz_det.csv", csv);
    json summary = summary_header("toeplitz-det", {{"symbol", symbol_to_json(spec)}, {"sizes", sizes},
                                                   {"fft_size", fft_size}});
    summary["warnings"] = coeffs.warnings;
    write_text(fs::path(c.out) / "toeplitz_det.json", summary.dump(2) + "\n");
    for (const auto& w : coeffs.warnings) std::cerr << "warning: " << w << "\n";
    std::cout << csv;
    return 0;
}

int cmd_fh_asymptotics(const Common& c) {
    if (c.config_path.empty()) throw ConfigError("config", "fh-asymptotics needs --config <symbol.json>");
    const json doc = load_json(c.config_path);
    const SymbolSpec spec = symbol_from_json(doc);
    const auto sizes = sizes_from_json(doc);
    std::string csv = "n,prediction_log\n";
    json detail = json::array();
    for (std::size_t n : sizes) {
        const FHPrediction p = fh_prediction(spec, n);
        csv += std::to_string(n) + "," + fmt(p.log_value().real()) + "\n";
        detail.push_back({{"n", n},
                          {"prediction_log_re", p.log_value().real()},
                          {"prediction_log_im", p.log_value().imag()}});
    }
    fs::create_directories(c.out);
    write_text(fs::path(c.out) / "fh_asymptotics.csv", csv);
    json summary = summary_header("fh-asymptotics", {{"symbol", symbol_to_json(spec)}, {"sizes", sizes}});
    summary["predictions"] = detail;
    write_text(fs::path(c.out) / "fh_asymptotics.json", summary.dump(2) + "\n");
    std::cout << csv;
    return 0;
}

int cmd_experiment(const Common& c, const std::string& name) {
    ExperimentConfig cfg = c.config_path.empty() ? default_config(name) : config_from_json(load_json(c.config_path), name);
    if (c.seed) cfg.seed = *c.seed;
    if (c.samples) cfg.samples = *c.samples;
    if (c.workers) cfg.workers = *c.workers;
    std::string out = c.out;
    if (!cfg.output_path.empty() && c.out == "out") out = cfg.output_path;
    cfg.output_path = out;
    const ExperimentReport report = run_experiment(cfg);
    write_report(report, out);
    for (const Check& ch : report.checks)
        std::cout << (ch.pass ? "PASS " : "FAIL ") << ch.name << ": value=" << fmt(ch.value)
                  << " oracle=" << fmt(ch.oracle) << " (" << ch.criterion << ", tol=" << fmt(ch.tolerance)
                  << ")\n";
    std::cout << (report.passed() ? "experiment passed" : "experiment FAILED") << "\n";
    return report.passed() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"cuelab: CUE characteristic polynomials, GMC and Toeplitz determinants"};
    app.require_subcommand(1);

    Common common;
    std::size_t n = 16, k = kDefaultLimitTruncation, grid_size = 0, fft_size = 0;
    double beta = 1.0;
    std::string backend = "determinantal", experiment_name;

    auto* sc = app.add_subcommand("sample-cue", "draw CUE eigenangles");
    add_common(sc, common);
    sc->add_option("--n", n, "matrix size")->capture_default_str();
    sc->add_option("--backend", backend, "determinantal or ginibre-qr")->capture_default_str();

    auto* gs = app.add_subcommand("gmc-sample", "draw truncated chaos measures");
    add_common(gs, common);
    gs->add_option("--k", k, "field truncation")->capture_default_str();
    gs->add_option("--beta", beta, "chaos parameter")->capture_default_str();
    gs->add_option("--grid-size", grid_size, "grid points (default max(1024, 8k))");

    auto* td = app.add_subcommand("toeplitz-det", "log-determinants of a symbol's Toeplitz matrices");
    add_common(td, common);
    td->add_option("--fft-size", fft_size, "coefficient quadrature size (power of two)");

    auto* fh = app.add_subcommand("fh-asymptotics", "Fisher-Hartwig predictions for a symbol");
    add_common(fh, common);

    auto* ex = app.add_subcommand("experiment", "run a registered experiment");
    add_common(ex, common);
    ex->add_option("name", experiment_name, "experiment name")->required();
    auto* list = app.add_subcommand("list", "list experiments");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*sc) return cmd_sample_cue(common, n, backend);
        if (*gs) return cmd_gmc_sample(common, k, beta, grid_size);
        if (*td) return cmd_toeplitz_det(common, fft_size);
        if (*fh) return cmd_fh_asymptotics(common);
        if (*ex) return cmd_experiment(common, experiment_name);
        if (*list) {
            for (const auto& name : experiment_names()) std::cout << name << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error [" << e.field() << "]: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
