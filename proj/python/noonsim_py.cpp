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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>
#include <vector>

#include "noonsim/analysis.hpp"
#include "noonsim/config.hpp"
#include "noonsim/error.hpp"

namespace py = pybind11;
using namespace noonsim;

namespace {

ExperimentConfig parse_config(const std::string &text) {
    if (text.empty()) {
        return ExperimentConfig{};
    }
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        throw Error(ErrorCode::kConfig, e.what());
    }
    return ExperimentConfig::from_json(doc);
}

std::vector<double> to_rad(const std::vector<double> &deg) {
    std::vector<double> out;
    for (double d : deg) {
        out.push_back(deg_to_rad(d));
    }
    return out;
}

py::dict table_dict(const FringeTable &t, const std::vector<double> &degrees) {
    py::dict d;
    std::vector<double> phase;
    for (double a : degrees) {
        phase.push_back(4.0 * a);
    }
    d["hwp3_deg"] = degrees;
    d["phase_deg"] = phase;
    for (const char *c : {"p_twofold", "p_threefold_unheralded", "p_fourfold"}) {
        d[c] = t.column(c);
    }
    if (t.has_counts()) {
        for (const char *c : {"c_twofold", "c_threefold_unheralded", "c_fourfold"}) {
            d[c] = t.column(c);
        }
    }
    return d;
}

py::dict fit_dict(const FitResult &f) {
    py::dict d;
    d["offset"] = f.offset;
    d["amplitude"] = f.amplitude;
    d["phase"] = f.phase;
    d["frequency"] = f.frequency;
    d["visibility"] = f.visibility;
    d["offset_err"] = f.offset_err;
    d["amplitude_err"] = f.amplitude_err;
    d["phase_err"] = f.phase_err;
    d["visibility_err"] = f.visibility_err;
    d["residual_rms"] = f.residual_rms;
    d["points"] = f.points;
    d["unphysical"] = f.unphysical;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "heralded NOON-state simulator core";
    py::register_exception<Error>(m, "NoonsimError", PyExc_ValueError);

    m.def("engine_version", &engine_version);
    m.def("preset_names", &preset_names);
    m.def("default_config", [] { return ExperimentConfig{}.to_json().dump(); });
    m.def(
        "normalize_config", [](const std::string &text) { return parse_config(text).to_json().dump(); },
        py::arg("config"));

    m.def(
        "cascade_probs",
        [](const std::vector<double> &ratios) { return cascade_probs(SplitterCascade{ratios}); },
        py::arg("ratios"));

    m.def(
        "herald_probability",
        [](const std::string &config) {
            const ExperimentConfig cfg = parse_config(config);
            const CircuitPreset preset = cfg.build_preset();
            const FockState prepared = prepare(preset);
            py::dict d;
            d["exactly_one"] = herald_exactly_one(preset, prepared).probability;
            d["click"] = herald_click_probability(preset, prepared);
            return d;
        },
        py::arg("config") = "");

    m.def(
        "fringe_scan",
        [](const std::string &config, const std::vector<double> &angles_deg) {
            const ExperimentConfig cfg = parse_config(config);
            const auto rad = to_rad(angles_deg);
            return table_dict(fringe_scan(cfg.build_preset(), rad), angles_deg);
        },
        py::arg("config"), py::arg("angles_deg"));

    m.def(
        "mc_counts",
        [](const std::string &config, const std::vector<double> &angles_deg, std::int64_t pulses,
           std::uint64_t seed, unsigned workers) {
            const ExperimentConfig cfg = parse_config(config);
            const auto rad = to_rad(angles_deg);
            FringeTable t;
            {
                py::gil_scoped_release release;
                t = mc_sample_counts(cfg.build_preset(), rad, pulses, seed, workers);
            }
            return table_dict(t, angles_deg);
        },
        py::arg("config"), py::arg("angles_deg"), py::arg("pulses"), py::arg("seed") = 1,
        py::arg("workers") = 0);

    m.def(
        "fit",
        [](const std::vector<double> &phases, const std::vector<double> &values, int k,
           const std::string &weighting) {
            if (weighting != "poisson" && weighting != "uniform") {
                throw Error(ErrorCode::kInvalidParameter, "weighting must be poisson or uniform");
            }
            const Weighting w = weighting == "poisson" ? Weighting::Poisson : Weighting::Uniform;
            return fit_dict(fit_fixed_freq(phases, values, k, w));
        },
        py::arg("phases"), py::arg("values"), py::arg("k"), py::arg("weighting") = "uniform");

    m.def(
        "subtract_triple_pair",
        [](const std::string &csv, double herald_singles) {
            const SubtractionResult r = subtract_triple_pair(FringeTable::from_csv(csv), herald_singles);
            return py::make_tuple(r.table.to_csv(), r.warnings);
        },
        py::arg("csv"), py::arg("herald_singles"));

    m.def(
        "fidelity_lower_bound",
        [](double visibility, double population_factor) {
            return fidelity_lower_bound(visibility, population_factor).fidelity;
        },
        py::arg("visibility"), py::arg("population_factor") = 1.0);

    m.def(
        "fom",
        [](const std::string &scheme, double gamma, double alpha, const std::string &mode, const std::string &kind) {
            FomInput in;
            if (scheme == "double-pair") {
                in.scheme = FomScheme::DoublePair;
            } else if (scheme == "pair-plus-coherent") {
                in.scheme = FomScheme::PairPlusCoherent;
            } else {
                throw Error(ErrorCode::kInvalidParameter, "unknown scheme '" + scheme + "'");
            }
            in.gamma = gamma;
            in.alpha = alpha;
            const PairKind pk = kind == "poissonian" ? PairKind::Poissonian : PairKind::Thermal;
            const FomExact r = mode == "exact" ? fom_ratio_exact(in, pk) : fom_probabilities_approx(in);
            py::dict d;
            d["ratio"] = r.ratio;
            d["p_exact"] = r.p_exact;
            d["p_surplus"] = r.p_surplus;
            return d;
        },
        py::arg("scheme"), py::arg("gamma"), py::arg("alpha") = 0.0, py::arg("mode") = "approx",
        py::arg("kind") = "thermal");

    m.def(
        "hom_scan",
        [](double xi, double tau_c, const std::vector<double> &delays) {
            return hom_scan(OverlapModel{xi, tau_c}, delays);
        },
        py::arg("xi"), py::arg("tau_c"), py::arg("delays"));
    m.def(
        "hom_dip_visibility", [](double xi, double tau_c) { return hom_dip_visibility(OverlapModel{xi, tau_c}); },
        py::arg("xi"), py::arg("tau_c") = 1.0);

    m.def(
        "hwp2_calibration_scan",
        [](const std::string &config, const std::vector<double> &angles_deg) {
            const auto scan = hwp2_calibration_scan(parse_config(config).noon3_params(), to_rad(angles_deg));
            std::vector<double> p;
            for (const auto &row : scan) {
                p.push_back(row.second);
            }
            return p;
        },
        py::arg("config"), py::arg("angles_deg"));
}
