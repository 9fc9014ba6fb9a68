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

#include "noonsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "noonsim/error.hpp"

namespace noonsim {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string &msg) { throw Error(ErrorCode::kConfig, msg); }

void check_keys(const json &obj, const std::string &where, std::initializer_list<const char *> allowed) {
    if (!obj.is_object()) {
        fail(where + " must be an object");
    }
    std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!ok.count(it.key())) {
            fail("unknown key '" + it.key() + "' in " + where);
        }
    }
}

template <typename T>
void read(const json &obj, const char *key, T &out, const std::string &where) {
    if (!obj.contains(key)) {
        return;
    }
    try {
        out = obj.at(key).get<T>();
    } catch (const json::exception &e) {
        fail(where + "." + key + ": " + e.what());
    }
}

void require(bool ok, const std::string &msg) {
    if (!ok) {
        fail(msg);
    }
}

bool in_unit(double v) { return v >= 0.0 && v <= 1.0; }

const char *kind_name(PairKind k) {
    switch (k) {
        case PairKind::Thermal:
            return "thermal";
        case PairKind::Poissonian:
            return "poissonian";
        case PairKind::FixedN:
            return "fixed-n";
    }
    return "?";
}

PairKind parse_kind(const std::string &s) {
    if (s == "thermal") return PairKind::Thermal;
    if (s == "poissonian") return PairKind::Poissonian;
    if (s == "fixed-n") return PairKind::FixedN;
    fail("source.kind must be thermal, poissonian or fixed-n (got '" + s + "')");
}

}  // namespace

const std::vector<std::string> &preset_names() {
    static const std::vector<std::string> names{"noon3", "noon4", "hom", "hwp2-cal"};
    return names;
}

std::string engine_version() { return std::string("noonsim ") + NOONSIM_VERSION; }

void ExperimentConfig::validate() const {
    const auto &names = preset_names();
    require(std::find(names.begin(), names.end(), preset) != names.end(), "unknown preset '" + preset + "'");
    require(source.gamma >= 0.0 && source.gamma < 1.0, "source.gamma must lie in [0, 1)");
    require(source.n >= 0 && 2 * source.n <= kDefaultMaxPhotons, "source.n must lie in [0, 4]");
    require(source.n_max_pairs >= 0 && 2 * source.n_max_pairs <= kDefaultMaxPhotons,
            "source.n_max_pairs must lie in [0, 4]");
    require(in_unit(source.xi), "source.xi must lie in [0, 1]");
    require(source.tau_c > 0.0 && std::isfinite(source.tau_c), "source.tau_c must be positive");
    require(std::isfinite(source.delay), "source.delay must be finite");
    require(in_unit(elements.t_h) && in_unit(elements.t_v), "elements.t_h and elements.t_v must lie in [0, 1]");
    for (double a : {elements.phi, elements.hwp1_deg, elements.qwp2_deg, elements.qwp3_deg,
                     elements.hwp2_deg.value_or(0.0)}) {
        require(std::isfinite(a), "element angles and phi must be finite");
    }
    require(detectors.efficiency.size() == detectors.cascade_ratios.size() + 2,
            "detectors.efficiency needs one entry for the herald counter plus one per cascade output");
    for (double e : detectors.efficiency) {
        require(in_unit(e), "detector efficiencies must lie in [0, 1]");
    }
    require(detectors.dark_prob >= 0.0 && detectors.dark_prob < 1.0, "detectors.dark_prob must lie in [0, 1)");
    for (double r : detectors.cascade_ratios) {
        require(in_unit(r), "cascade ratios must lie in [0, 1]");
    }
    if (scan.angles_deg) {
        require(!scan.angles_deg->empty(), "scan.angles_deg must not be empty");
        for (double a : *scan.angles_deg) {
            require(std::isfinite(a), "scan angles must be finite");
        }
    } else {
        require(scan.step_deg > 0.0 && std::isfinite(scan.step_deg), "scan.step_deg must be positive");
        require(scan.stop_deg > scan.start_deg, "scan.stop_deg must exceed scan.start_deg");
        require((scan.stop_deg - scan.start_deg) / scan.step_deg <= 1e6, "scan range has too many points");
    }
    if (scan.delays) {
        require(!scan.delays->empty(), "scan.delays must not be empty");
    }
    require(scan.pulses_per_point >= 1, "scan.pulses_per_point must be at least 1");
}

std::vector<double> ExperimentConfig::scan_angles_deg() const {
    if (scan.angles_deg) {
        return *scan.angles_deg;
    }
    std::vector<double> out;
    for (long i = 0;; ++i) {
        const double a = scan.start_deg + static_cast<double>(i) * scan.step_deg;
        if (a >= scan.stop_deg - 1e-9 * scan.step_deg) {
            break;
        }
        out.push_back(a);
    }
    return out;
}

std::vector<double> ExperimentConfig::scan_angles() const {
    std::vector<double> out;
    for (double a : scan_angles_deg()) {
        out.push_back(deg_to_rad(a));
    }
    return out;
}

std::vector<double> ExperimentConfig::scan_delays() const {
    if (scan.delays) {
        return *scan.delays;
    }
    std::vector<double> out;
    for (int i = -30; i <= 30; ++i) {
        out.push_back(0.1 * i * source.tau_c);
    }
    return out;
}

OverlapModel ExperimentConfig::overlap_model() const { return {source.xi, source.tau_c}; }

Noon3Params ExperimentConfig::noon3_params() const {
    Noon3Params p;
    switch (source.kind) {
        case PairKind::Thermal:
            p.source = PairDistribution::thermal(source.gamma, source.n_max_pairs);
            break;
        case PairKind::Poissonian:
            p.source = PairDistribution::poissonian(source.gamma, source.n_max_pairs);
            break;
        case PairKind::FixedN:
            p.source = PairDistribution::fixed(source.n);
            break;
    }
    p.overlap = overlap_model();
    p.delay = source.delay;
    p.ppbs.t_h = elements.t_h;
    p.ppbs.t_v = elements.t_v;
    p.ppbs.birefringence_phi = elements.phi;
    p.hwp1_angle = deg_to_rad(elements.hwp1_deg);
    p.qwp2_angle = deg_to_rad(elements.qwp2_deg);
    if (elements.hwp2_deg) {
        p.hwp2_angle = deg_to_rad(*elements.hwp2_deg);
    }
    p.qwp3_angle = deg_to_rad(elements.qwp3_deg);
    p.cascade.ratios = detectors.cascade_ratios;
    p.herald_detector = {detectors.efficiency.front(), detectors.dark_prob, false};
    p.cascade_detectors.clear();
    for (std::size_t i = 1; i < detectors.efficiency.size(); ++i) {
        p.cascade_detectors.push_back({detectors.efficiency[i], detectors.dark_prob, false});
    }
    return p;
}

Noon4Params ExperimentConfig::noon4_params() const {
    const Noon3Params p3 = noon3_params();
    Noon4Params p;
    p.hwp1_angle = p3.hwp1_angle;
    p.qwp2_angle = p3.qwp2_angle;
    p.hwp2_angle = elements.hwp2_deg ? deg_to_rad(*elements.hwp2_deg) : 0.0;
    p.qwp3_angle = p3.qwp3_angle;
    p.cascade = p3.cascade;
    p.herald_detector = p3.herald_detector;
    p.cascade_detectors = p3.cascade_detectors;
    return p;
}

CircuitPreset ExperimentConfig::build_preset() const {
    if (preset == "noon4") {
        return preset_noon4(noon4_params());
    }
    return preset_noon3(noon3_params());
}

nlohmann::json ExperimentConfig::to_json() const {
    json j;
    j["preset"] = preset;
    j["source"] = {{"kind", kind_name(source.kind)}, {"gamma", source.gamma},   {"n", source.n},
                   {"n_max_pairs", source.n_max_pairs},    {"xi", source.xi},         {"tau_c", source.tau_c},
                   {"delay", source.delay}};
    j["elements"] = {{"t_h", elements.t_h},           {"t_v", elements.t_v},           {"phi", elements.phi},
                     {"hwp1_deg", elements.hwp1_deg}, {"qwp2_deg", elements.qwp2_deg}, {"qwp3_deg", elements.qwp3_deg}};
    j["elements"]["hwp2_deg"] = elements.hwp2_deg ? json(*elements.hwp2_deg) : json(nullptr);
    j["detectors"] = {{"efficiency", detectors.efficiency},
                      {"dark_prob", detectors.dark_prob},
                      {"cascade_ratios", detectors.cascade_ratios}};
    json s = {{"pulses_per_point", scan.pulses_per_point}, {"seed", scan.seed}, {"workers", scan.workers}};
    if (scan.angles_deg) {
        s["angles_deg"] = *scan.angles_deg;
    } else {
        s["start_deg"] = scan.start_deg;
        s["stop_deg"] = scan.stop_deg;
        s["step_deg"] = scan.step_deg;
    }
    if (scan.delays) {
        s["delays"] = *scan.delays;
    }
    j["scan"] = s;
    j["output"] = {{"dir", output.dir}, {"analytic_only", output.analytic_only}};
    return j;
}

ExperimentConfig ExperimentConfig::from_json(const json &doc) {
    check_keys(doc, "config", {"preset", "source", "elements", "detectors", "scan", "output", "manifest"});
    ExperimentConfig c;
    read(doc, "preset", c.preset, "config");
    if (doc.contains("source")) {
        const auto &s = doc["source"];
        check_keys(s, "source", {"kind", "gamma", "n", "n_max_pairs", "xi", "tau_c", "delay"});
        std::string kind = kind_name(c.source.kind);
        read(s, "kind", kind, "source");
        c.source.kind = parse_kind(kind);
        read(s, "gamma", c.source.gamma, "source");
        read(s, "n", c.source.n, "source");
        read(s, "n_max_pairs", c.source.n_max_pairs, "source");
        read(s, "xi", c.source.xi, "source");
        read(s, "tau_c", c.source.tau_c, "source");
        read(s, "delay", c.source.delay, "source");
    }
    if (doc.contains("elements")) {
        const auto &e = doc["elements"];
        check_keys(e, "elements", {"t_h", "t_v", "phi", "hwp1_deg", "qwp2_deg", "hwp2_deg", "qwp3_deg"});
        read(e, "t_h", c.elements.t_h, "elements");
        read(e, "t_v", c.elements.t_v, "elements");
        read(e, "phi", c.elements.phi, "elements");
        read(e, "hwp1_deg", c.elements.hwp1_deg, "elements");
        read(e, "qwp2_deg", c.elements.qwp2_deg, "elements");
        read(e, "qwp3_deg", c.elements.qwp3_deg, "elements");
        if (e.contains("hwp2_deg") && !e["hwp2_deg"].is_null()) {
            double v = 0.0;
            read(e, "hwp2_deg", v, "elements");
            c.elements.hwp2_deg = v;
        }
    }
    if (doc.contains("detectors")) {
        const auto &d = doc["detectors"];
        check_keys(d, "detectors", {"efficiency", "dark_prob", "cascade_ratios"});
        read(d, "efficiency", c.detectors.efficiency, "detectors");
        read(d, "dark_prob", c.detectors.dark_prob, "detectors");
        read(d, "cascade_ratios", c.detectors.cascade_ratios, "detectors");
    }
    if (doc.contains("scan")) {
        const auto &s = doc["scan"];
        check_keys(s, "scan",
                   {"angles_deg", "start_deg", "stop_deg", "step_deg", "delays", "pulses_per_point", "seed", "workers"});
        if (s.contains("angles_deg")) {
            std::vector<double> a;
            read(s, "angles_deg", a, "scan");
            c.scan.angles_deg = a;
        }
        read(s, "start_deg", c.scan.start_deg, "scan");
        read(s, "stop_deg", c.scan.stop_deg, "scan");
        read(s, "step_deg", c.scan.step_deg, "scan");
        if (s.contains("delays")) {
            std::vector<double> d;
            read(s, "delays", d, "scan");
            c.scan.delays = d;
        }
        read(s, "pulses_per_point", c.scan.pulses_per_point, "scan");
        read(s, "seed", c.scan.seed, "scan");
        read(s, "workers", c.scan.workers, "scan");
    }
    if (doc.contains("output")) {
        const auto &o = doc["output"];
        check_keys(o, "output", {"dir", "analytic_only"});
        read(o, "dir", c.output.dir, "output");
        read(o, "analytic_only", c.output.analytic_only, "output");
    }
    c.validate();
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail("cannot open config '" + path + "'");
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error &e) {
        fail("'" + path + "': " + e.what());
    }
    return from_json(doc);
}

}  // namespace noonsim
