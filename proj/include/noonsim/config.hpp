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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "noonsim/circuit.hpp"

namespace noonsim {

/// Experiment description read by the CLI. Angles are degrees here and radians everywhere
/// else. Unknown keys and out-of-range values are rejected at load (ErrorCode::kConfig).
struct ExperimentConfig {
    std::string preset = "noon3";  // noon3 | noon4 | hom | hwp2-cal

    struct Source {
        PairKind kind = PairKind::Thermal;
        double gamma = 0.004;
        int n = 2;
        int n_max_pairs = 3;
        double xi = 1.0;
        double tau_c = 1.0;
        double delay = 0.0;
    } source;

    struct Elements {
        double t_h = 0.99;
        double t_v = 0.31;
        double phi = 0.0;
        double hwp1_deg = 22.5;
        double qwp2_deg = 45.0;
        std::optional<double> hwp2_deg;
        double qwp3_deg = 45.0;
    } elements;

    struct Detectors {
        /// SPC1 (herald) followed by the cascade counters.
        std::vector<double> efficiency{1.0, 1.0, 1.0, 1.0};
        double dark_prob = 0.0;
        std::vector<double> cascade_ratios{0.43, 0.43};
    } detectors;

    struct Scan {
        std::optional<std::vector<double>> angles_deg;
        double start_deg = 0.0;
        double stop_deg = 90.0;
        double step_deg = 5.0;
        std::optional<std::vector<double>> delays;
        std::int64_t pulses_per_point = 1000000;
        std::uint64_t seed = 1;
        unsigned workers = 0;
    } scan;

    struct Output {
        std::string dir = "out";
        bool analytic_only = false;
    } output;

    void validate() const;

    /// Scan angles in radians: the explicit list, or start, start+step, ... < stop.
    std::vector<double> scan_angles() const;
    std::vector<double> scan_angles_deg() const;
    std::vector<double> scan_delays() const;

    Noon3Params noon3_params() const;
    Noon4Params noon4_params() const;
    OverlapModel overlap_model() const;
    CircuitPreset build_preset() const;

    nlohmann::json to_json() const;
    /// Accepts a config document or a run manifest (a config with an extra "manifest" block).
    static ExperimentConfig from_json(const nlohmann::json &doc);
    static ExperimentConfig from_file(const std::string &path);
};

const std::vector<std::string> &preset_names();

std::string engine_version();

}  // namespace noonsim
