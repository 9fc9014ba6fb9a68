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

#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "noonsim/detectors.hpp"
#include "noonsim/elements.hpp"
#include "noonsim/sources.hpp"

namespace noonsim {

inline constexpr double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }
inline constexpr double rad_to_deg(double rad) { return rad * 180.0 / std::numbers::pi; }

/// QWP3 -> HWP3 -> PBS3 analyzer on one path; the PBS3-transmitted H light feeds a coupler
/// cascade (SPC2..SPC4 in the default layout).
struct MeasurementStage {
    Path analyzed = Path::main();
    double qwp3_angle = std::numbers::pi / 4;
    double hwp3_angle = 0.0;
    SplitterCascade cascade;
    std::vector<DetectorModel> detectors{DetectorModel{}, DetectorModel{}, DetectorModel{}};
};

/// Source state, ordered element list, herald ports and measurement stage of one experiment.
struct CircuitPreset {
    std::string name;
    RegistryPtr registry;
    FockState input;
    std::vector<Element> elements;
    std::vector<Path> herald_paths;
    std::vector<DetectorModel> herald_detectors;
    MeasurementStage measurement;

    void validate() const;
    /// Every registered mode on the herald paths of herald port k.
    std::vector<ModeId> herald_modes(std::size_t k) const;
    /// Every registered mode the cascade sees (H on the analyzed path, all internal labels).
    std::vector<ModeId> transmitted_modes() const;
};

struct Noon3Params {
    PairDistribution source = PairDistribution::fixed(2);
    OverlapModel overlap;
    double delay = 0.0;
    PartialPbs ppbs;
    double hwp1_angle = std::numbers::pi / 8;
    double qwp2_angle = std::numbers::pi / 4;
    /// Defaults to birefringence_phi / 4, which compensates the PPBS phase.
    std::optional<double> hwp2_angle;
    double qwp3_angle = std::numbers::pi / 4;
    double hwp3_angle = 0.0;
    SplitterCascade cascade;
    DetectorModel herald_detector;
    std::vector<DetectorModel> cascade_detectors{DetectorModel{}, DetectorModel{}, DetectorModel{}};
    int max_photons = kDefaultMaxPhotons;

    void validate() const;
    double effective_hwp2_angle() const { return hwp2_angle.value_or(ppbs.birefringence_phi / 4.0); }
};

/// Double-pair three-photon NOON generator:
/// source -> upper-arm H/V flip -> PBS2 merge -> HWP1 -> PPBS (herald port) -> QWP2 -> HWP2.
CircuitPreset preset_noon3(const Noon3Params &params = {});

struct Noon4Params {
    /// Both PPBSs reflect 1/3 of V and no H.
    double t_h = 1.0;
    double t_v = 2.0 / 3.0;
    double hwp1_angle = std::numbers::pi / 8;
    double middle_hwp_angle = std::numbers::pi / 4;
    double qwp2_angle = std::numbers::pi / 4;
    double hwp2_angle = 0.0;
    double qwp3_angle = std::numbers::pi / 4;
    double hwp3_angle = 0.0;
    SplitterCascade cascade;
    DetectorModel herald_detector;
    std::vector<DetectorModel> cascade_detectors{DetectorModel{}, DetectorModel{}, DetectorModel{}};
    int max_photons = kDefaultMaxPhotons;
};

/// The three-photon generator with its PPBS replaced by PPBS-A -> HWP(45 deg) -> PPBS-B:
/// |3_H, 3_V> -> HWP1 -> PPBS-A -> HWP -> PPBS-B -> QWP2 -> HWP2, heralding on both
/// reflected ports.
CircuitPreset preset_noon4(const Noon4Params &params = {});

/// Runs the input through the element list (everything before the measurement stage).
FockState prepare(const CircuitPreset &preset);

/// Adds the QWP3/HWP3 analyzer for the given HWP3 angle.
FockState analyze(const CircuitPreset &preset, const FockState &prepared, double hwp3_angle);

struct HeraldOutcome {
    /// Probability of exactly one photon on every herald path.
    double probability = 0.0;
    /// Conditional mixture over which herald mode carried each photon: (weight, state) pairs,
    /// states normalized with the herald modes removed. Empty for a zero-probability herald.
    std::vector<std::pair<double, FockState>> branches;

    /// The conditional state when it is pure (a single branch).
    std::optional<FockState> pure_state() const;
};

/// Ideal single-photon heralding: exactly one photon per herald path, polarization and
/// internal label summed over.
HeraldOutcome herald_exactly_one(const CircuitPreset &preset, const FockState &prepared);

/// (i |N_H, 0_V> + |0_H, N_V>) / sqrt(2) on `path`, on the given registry.
FockState noon_state(RegistryPtr registry, Path path, int n, Complex h_phase = Complex(0.0, 1.0),
                     int max_photons = kDefaultMaxPhotons);

}  // namespace noonsim
