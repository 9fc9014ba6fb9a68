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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noonsim/circuit.hpp"

namespace noonsim {

/// Normalized conditional mixture given a herald click.
struct HeraldedEnsemble {
    /// (weight, normalized state); the herald modes are kept in the registry.
    std::vector<std::pair<double, FockState>> components;
    /// Herald photon number of each component.
    std::vector<int> herald_counts;
    /// Unconditional probability of the herald event.
    double herald_probability = 0.0;
};

/// Splits `state` by total photon number on `modes` and weights each branch by the detector's
/// click (or, for a number-resolving counter, exact-report) probability.
HeraldedEnsemble herald_on_click(const FockState &state, std::span<const ModeId> modes, const DetectorModel &det,
                                 int demanded = 1);

/// Probability distribution of photon number.
using CountDistribution = std::map<int, double>;

/// Probability that every detector in `required` clicks when photons drawn from `dist` enter
/// the cascade. `detectors` holds one model per cascade output.
double kfold_coincidence_prob(const CountDistribution &dist, const SplitterCascade &cascade,
                              std::span<const DetectorModel> detectors, std::span<const int> required);

double kfold_coincidence_prob(const CountDistribution &dist, const SplitterCascade &cascade,
                              const DetectorModel &detector, std::span<const int> required);

/// Click-pattern distribution of the cascade for n incident photons; bit i set means
/// detector i clicked.
std::vector<double> cascade_pattern_distribution(int photons, const SplitterCascade &cascade,
                                                 std::span<const DetectorModel> detectors);

/// Joint click statistics of the herald detectors and the cascade for one analyzer setting.
///
/// Outcome index: bits 0..D-1 are the cascade detectors, bit D is set when every herald
/// detector clicked.
struct OutcomeDistribution {
    std::size_t cascade_detectors = 0;
    std::vector<double> probs;

    std::size_t herald_bit() const { return std::size_t{1} << cascade_detectors; }
    std::size_t cascade_all() const { return herald_bit() - 1; }

    /// herald and the first cascade detector (SPC1 and SPC2)
    double twofold() const;
    /// every cascade detector, herald ignored
    double threefold_unheralded() const;
    /// herald and every cascade detector
    double fourfold() const;
    double herald_singles() const;
};

OutcomeDistribution outcome_distribution(const CircuitPreset &preset, const FockState &analyzed);

/// Probability that every herald detector clicks.
double herald_click_probability(const CircuitPreset &preset, const FockState &prepared);

struct FringeRow {
    double hwp3_deg = 0.0;
    double phase_deg = 0.0;
    double p_twofold = 0.0;
    double p_threefold_unheralded = 0.0;
    double p_fourfold = 0.0;
    std::optional<double> c_twofold;
    std::optional<double> c_threefold_unheralded;
    std::optional<double> c_fourfold;
};

struct FringeTable {
    std::vector<FringeRow> rows;

    bool has_counts() const;
    std::vector<double> column(const std::string &name) const;
    std::vector<double> phases_rad() const;

    std::string to_csv() const;
    static FringeTable from_csv(const std::string &text);
};

/// The analyzer phase difference for a HWP3 angle: four times the angle.
inline double phase_of_hwp3(double hwp3_angle) { return 4.0 * hwp3_angle; }

/// Analytic per-pulse probabilities at each HWP3 angle (radians).
FringeTable fringe_scan(const CircuitPreset &preset, std::span<const double> hwp3_angles);

/// Counter-based uniform in [0, 1) for (seed, angle index, pulse index).
double pulse_uniform(std::uint64_t seed, std::uint64_t angle_index, std::uint64_t pulse_index);

/// Samples click outcomes pulse by pulse from the analytic distribution at each angle.
/// The result depends only on (seed, angle index, pulse index), never on `workers`
/// (0 picks the hardware concurrency).
FringeTable mc_sample_counts(const CircuitPreset &preset, std::span<const double> hwp3_angles,
                             std::int64_t pulses_per_point, std::uint64_t seed, unsigned workers = 0);

}  // namespace noonsim
