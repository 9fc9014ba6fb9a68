// Copyright 2026 The noonsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// noonsim command-line driver.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "noonsim/analysis.hpp"
#include "noonsim/config.hpp"
#include "noonsim/error.hpp"

namespace fs = std::filesystem;
using namespace noonsim;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitZeroHerald = 3;
constexpr int kExitRankDeficient = 4;
constexpr double kZeroHerald = 1e-14;

std::string fmt(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::kZeroProbabilityBranch:
            return kExitZeroHerald;
        case ErrorCode::kRankDeficient:
            return kExitRankDeficient;
        case ErrorCode::kConfig:
        case ErrorCode::kParse:
        case ErrorCode::kInvalidParameter:
        case ErrorCode::kOutOfRange:
        case ErrorCode::kTruncationExceeded:
            return kExitConfig;
        default:
            return 1;
    }
}

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCode::kParse, "cannot open '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path &path, const std::string &text) {
    if (path.has_parent_path()) {
        fs::create_directories(path.parent_path());
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error(ErrorCode::kConfig, "cannot write '" + path.string() + "'");
    }
    out << text;
}

struct RunFlags {
    std::string config;
    std::optional<std::string> out;
    std::optional<std::uint64_t> seed;
    std::optional<std::int64_t> pulses;
    std::optional<unsigned> workers;
    bool analytic_only = false;
};

void add_run_flags(CLI::App *cmd, RunFlags &f) {
    cmd->add_option("--config", f.config, "experiment config (JSON)");
    cmd->add_option("--out", f.out, "output directory");
    cmd->add_option("--seed", f.seed, "Monte Carlo seed");
    cmd->add_option("--pulses", f.pulses, "pulses per scan point");
    cmd->add_option("--workers", f.workers, "Monte Carlo worker threads (0: all cores)");
    cmd->add_flag("--analytic-only", f.analytic_only, "skip Monte Carlo counts");
}

ExperimentConfig load_config(const RunFlags &f) {
    ExperimentConfig cfg = f.config.empty() ? ExperimentConfig{} : ExperimentConfig::from_file(f.config);
    if (f.out) cfg.output.dir = *f.out;
    if (f.seed) cfg.scan.seed = *f.seed;
    if (f.pulses) cfg.scan.pulses_per_point = *f.pulses;
    if (f.workers) cfg.scan.workers = *f.workers;
    if (f.analytic_only) cfg.output.analytic_only = true;
    cfg.validate();
    return cfg;
}

int run_hom(const ExperimentConfig &cfg) {
    const OverlapModel model = cfg.overlap_model();
    const auto delays = cfg.scan_delays();
    const auto scan = hom_scan(model, delays);
    std::string csv = "delay,coincidence\n";
    for (const auto &[d, p] : scan) {
        csv += fmt(d) + "," + fmt(p) + "\n";
    }
    const fs::path out = fs::path(cfg.output.dir) / "hom.csv";
    write_file(out, csv);
    const auto dip = std::min_element(scan.begin(), scan.end(),
                                      [](const auto &a, const auto &b) { return a.second < b.second; });
    std::cout << "visibility = " << fmt(hom_dip_visibility(model)) << "\n"
              << "dip_delay = " << fmt(dip->first) << "\n"
              << "csv = " << out.string() << "\n";
    return 0;
}

int run_hwp2_cal(const ExperimentConfig &cfg) {
    const Noon3Params params = cfg.noon3_params();
    const auto angles = cfg.scan_angles();
    const auto scan = hwp2_calibration_scan(params, angles);
    std::string csv = "hwp2_deg,p_fourfold\n";
    const auto degrees = cfg.scan_angles_deg();
    for (std::size_t i = 0; i < scan.size(); ++i) {
        csv += fmt(degrees[i]) + "," + fmt(scan[i].second) + "\n";
    }
    const fs::path out = fs::path(cfg.output.dir) / "hwp2_cal.csv";
    write_file(out, csv);

    auto f = [&](double a) {
        const double one[] = {a};
        return hwp2_calibration_scan(params, one).front().second;
    };
    auto refine = [&](std::size_t i) {
        if (i == 0 || i + 1 >= scan.size()) {
            return scan[i].first;
        }
        return locate_extremum(f, scan[i - 1].first, scan[i + 1].first);
    };
    auto by_p = [](const auto &a, const auto &b) { return a.second < b.second; };
    const std::size_t imax = std::max_element(scan.begin(), scan.end(), by_p) - scan.begin();
    const std::size_t imin = std::min_element(scan.begin(), scan.end(), by_p) - scan.begin();
    const double amax = refine(imax);
    const double amin = refine(imin);
    std::cout << "maximum_deg = " << fmt(rad_to_deg(amax)) << "\n"
              << "maximum_p_fourfold = " << fmt(f(amax)) << "\n"
              << "minimum_deg = " << fmt(rad_to_deg(amin)) << "\n"
              << "minimum_p_fourfold = " << fmt(f(amin)) << "\n"
              << "csv = " << out.string() << "\n";
    return 0;
}

int cmd_simulate(const RunFlags &flags) {
    const ExperimentConfig cfg = load_config(flags);
    if (cfg.preset == "hom") {
        return run_hom(cfg);
    }
    if (cfg.preset == "hwp2-cal") {
        return run_hwp2_cal(cfg);
    }
    const CircuitPreset preset = cfg.build_preset();
    const FockState prepared = prepare(preset);
    const double p_click = herald_click_probability(preset, prepared);
    if (p_click < kZeroHerald) {
        std::cerr << "error: herald click probability " << fmt(p_click) << " is zero\n";
        return kExitZeroHerald;
    }
    const double p_exact = herald_exactly_one(preset, prepared).probability;
    const auto angles = cfg.scan_angles();
    FringeTable table = cfg.output.analytic_only
                                  ? fringe_scan(preset, angles)
                                  : mc_sample_counts(preset, angles, cfg.scan.pulses_per_point, cfg.scan.seed,
                                                     cfg.scan.workers);
    const auto degrees = cfg.scan_angles_deg();
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        table.rows[i].hwp3_deg = degrees[i];
        table.rows[i].phase_deg = 4.0 * degrees[i];
    }

    const fs::path dir(cfg.output.dir);
    write_file(dir / "fringe.csv", table.to_csv());
    nlohmann::json manifest = cfg.to_json();
    manifest["manifest"] = {{"engine_version", engine_version()},
                            {"seed", cfg.scan.seed},
                            {"herald_probability", p_exact},
                            {"herald_click_probability", p_click}};
    write_file(dir / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "preset = " << cfg.preset << "\n"
              << "herald_probability = " << fmt(p_exact) << "\n"
              << "herald_click_probability = " << fmt(p_click) << "\n"
              << "points = " << table.rows.size() << "\n"
              << "csv = " << (dir / "fringe.csv").string() << "\n"
              << "manifest = " << (dir / "manifest.json").string() << "\n";
    return 0;
}

Weighting pick_weighting(const std::string &w, const std::string &column) {
    if (w == "poisson") return Weighting::Poisson;
    if (w == "uniform") return Weighting::Uniform;
    return column.rfind("c_", 0) == 0 ? Weighting::Poisson : Weighting::Uniform;
}

int cmd_fit(const std::string &csv, const std::string &column, int k, const std::string &weights) {
    const FringeTable table = FringeTable::from_csv(read_file(csv));
    const auto values = table.column(column);
    const auto phases = table.phases_rad();
    const FitResult fit = fit_fixed_freq(phases, values, k, pick_weighting(weights, column));
    std::cout << "column = " << column << "\n" << fit.to_record();
    return 0;
}

int cmd_fom(const std::string &scheme, double gamma, double alpha, const std::string &mode,
            const std::string &kind) {
    FomInput in;
    in.scheme = scheme == "double-pair" ? FomScheme::DoublePair : FomScheme::PairPlusCoherent;
    in.gamma = gamma;
    in.alpha = alpha;
    const PairKind pk = kind == "poissonian" ? PairKind::Poissonian : PairKind::Thermal;
    const FomExact r = mode == "exact" ? fom_ratio_exact(in, pk) : fom_probabilities_approx(in);
    std::cout << "scheme = " << scheme << "\n"
              << "mode = " << mode << "\n"
              << "ratio = " << fmt(r.ratio) << "\n"
              << "p_exact = " << fmt(r.p_exact) << "\n"
              << "p_surplus = " << fmt(r.p_surplus) << "\n";
    return 0;
}

int cmd_background_subtract(const std::string &csv, double singles, const std::string &out) {
    const FringeTable raw = FringeTable::from_csv(read_file(csv));
    const SubtractionResult sub = subtract_triple_pair(raw, singles);
    for (const auto &w : sub.warnings) {
        std::cerr << "warning: " << w << "\n";
    }
    write_file(out, sub.table.to_csv());
    const bool counts = raw.has_counts();
    const std::string column = counts ? "c_fourfold" : "p_fourfold";
    const Weighting w = counts ? Weighting::Poisson : Weighting::Uniform;
    const auto phases = raw.phases_rad();
    const FitResult before = fit_fixed_freq(phases, raw.column(column), 3, w);
    const FitResult after = fit_fixed_freq(phases, sub.table.column(column), 3, w);
    std::cout << "column = " << column << "\n"
              << "raw_visibility = " << fmt(before.visibility) << "\n"
              << "raw_visibility_err = " << fmt(before.visibility_err) << "\n"
              << "corrected_visibility = " << fmt(after.visibility) << "\n"
              << "corrected_visibility_err = " << fmt(after.visibility_err) << "\n"
              << "clamp_warnings = " << sub.warnings.size() << "\n"
              << "csv = " << out << "\n";
    return 0;
}

int cmd_presets() {
    for (const auto &name : preset_names()) {
        std::cout << "preset = " << name << "\n";
    }
    std::cout << "engine_version = " << engine_version() << "\n"
              << "defaults =\n"
              << ExperimentConfig{}.to_json().dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Heralded NOON-state experiment simulator"};
    app.set_version_flag("--version", engine_version());
    app.require_subcommand(1);

    RunFlags sim_flags;
    auto *sim = app.add_subcommand("simulate", "run a preset scan and write fringe.csv + manifest.json");
    add_run_flags(sim, sim_flags);

    RunFlags hom_flags;
    auto *hom = app.add_subcommand("hom", "scan the arm delay and write hom.csv");
    add_run_flags(hom, hom_flags);

    RunFlags cal_flags;
    auto *cal = app.add_subcommand("hwp2-cal", "scan the HWP2 angle and write hwp2_cal.csv");
    add_run_flags(cal, cal_flags);

    std::string fit_csv, fit_column = "p_fourfold", fit_weights = "auto";
    int fit_k = 3;
    auto *fit = app.add_subcommand("fit", "fixed-frequency sinusoid fit of one CSV column");
    fit->add_option("--csv", fit_csv, "fringe table")->required();
    fit->add_option("--column", fit_column, "column to fit");
    fit->add_option("--k", fit_k, "fringe frequency in units of the analyzer phase")
        ->check(CLI::Range(1, 64));
    fit->add_option("--weights", fit_weights, "auto | poisson | uniform")
        ->check(CLI::IsMember({"auto", "poisson", "uniform"}));

    std::string fom_scheme = "double-pair", fom_mode = "approx", fom_kind = "thermal";
    double fom_gamma = 0.01, fom_alpha = 0.0;
    auto *fom = app.add_subcommand("fom", "figure of merit of the pair schemes");
    fom->add_option("--scheme", fom_scheme)->check(CLI::IsMember({"double-pair", "pair-plus-coherent"}));
    fom->add_option("--gamma", fom_gamma, "pair-generation parameter");
    fom->add_option("--alpha", fom_alpha, "mean photon number of the coherent pulse");
    fom->add_option("--mode", fom_mode)->check(CLI::IsMember({"approx", "exact"}));
    fom->add_option("--kind", fom_kind, "pair statistics for --mode exact")
        ->check(CLI::IsMember({"thermal", "poissonian"}));

    std::string bs_csv, bs_out;
    double bs_singles = 0.0;
    auto *bs = app.add_subcommand("background-subtract", "remove the triple-pair fourfold background");
    bs->add_option("--csv", bs_csv, "fringe table")->required();
    bs->add_option("--herald-singles", bs_singles, "herald singles probability per pulse")->required();
    bs->add_option("--out", bs_out, "corrected fringe table")->required();

    auto *presets = app.add_subcommand("presets", "list presets and the default config");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*sim) return cmd_simulate(sim_flags);
        if (*hom) {
            ExperimentConfig cfg = load_config(hom_flags);
            return run_hom(cfg);
        }
        if (*cal) {
            ExperimentConfig cfg = load_config(cal_flags);
            return run_hwp2_cal(cfg);
        }
        if (*fit) return cmd_fit(fit_csv, fit_column, fit_k, fit_weights);
        if (*fom) return cmd_fom(fom_scheme, fom_gamma, fom_alpha, fom_mode, fom_kind);
        if (*bs) return cmd_background_subtract(bs_csv, bs_singles, bs_out);
        if (*presets) return cmd_presets();
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
