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

#include "noonsim/circuit.hpp"

#include <cmath>
#include <set>

#include "noonsim/error.hpp"

namespace noonsim {
namespace {

Element plate(const std::string &name, double retardance, double angle, Path path) {
    return {name, waveplate_unitary({retardance, angle, path})};
}

void check_detectors(const std::vector<DetectorModel> &dets, std::size_t expected, const char *what) {
    if (dets.size() != expected) {
        throw Error(ErrorCode::kInvalidParameter, std::string(what) + ": expected " + std::to_string(expected) +
                                                      " detectors, got " + std::to_string(dets.size()));
    }
    for (const auto &d : dets) {
        d.validate();
    }
}

}  // namespace

std::optional<FockState> HeraldOutcome::pure_state() const {
    if (branches.size() != 1) {
        return std::nullopt;
    }
    return branches.front().second;
}

void CircuitPreset::validate() const {
    if (!registry) {
        throw Error(ErrorCode::kInvalidParameter, "preset has no registry");
    }
    if (herald_paths.size() != herald_detectors.size()) {
        throw Error(ErrorCode::kInvalidParameter, "one herald detector per herald path required");
    }
    measurement.cascade.validate();
    check_detectors(measurement.detectors, measurement.cascade.detector_count(), "cascade");
    for (const auto &d : herald_detectors) {
        d.validate();
    }
    for (const auto &e : elements) {
        for (const auto &m : e.unitary.modes()) {
            registry->index(m);
        }
    }
    std::set<ModeId> heralds;
    for (std::size_t k = 0; k < herald_paths.size(); ++k) {
        for (const auto &m : herald_modes(k)) {
            heralds.insert(m);
        }
        if (herald_paths[k] == measurement.analyzed) {
            throw Error(ErrorCode::kInvalidParameter, "herald path coincides with the analyzed path");
        }
    }
    for (const auto &m : transmitted_modes()) {
        if (heralds.count(m)) {
            throw Error(ErrorCode::kInvalidParameter, "herald and measured modes overlap");
        }
    }
    registry->index({measurement.analyzed, Pol::H, 0});
    registry->index({measurement.analyzed, Pol::V, 0});
}

std::vector<ModeId> CircuitPreset::herald_modes(std::size_t k) const { return registry->modes_on(herald_paths.at(k)); }

std::vector<ModeId> CircuitPreset::transmitted_modes() const {
    return registry->modes_on(measurement.analyzed, Pol::H);
}

void Noon3Params::validate() const {
    source.validate();
    overlap.validate();
    for (double t : {ppbs.t_h, ppbs.t_v}) {
        if (!(t >= 0.0 && t <= 1.0)) {
            throw Error(ErrorCode::kInvalidParameter, "PPBS transmissions must lie in [0, 1]");
        }
    }
    for (double a : {ppbs.birefringence_phi, hwp1_angle, qwp2_angle, effective_hwp2_angle(), qwp3_angle, hwp3_angle,
                     delay}) {
        if (!std::isfinite(a)) {
            throw Error(ErrorCode::kInvalidParameter, "angles, phases and delays must be finite");
        }
    }
    cascade.validate();
    herald_detector.validate();
    check_detectors(cascade_detectors, cascade.detector_count(), "cascade");
    if (2 * source.max_pairs() > max_photons) {
        throw Error(ErrorCode::kInvalidParameter, "source truncation exceeds the photon bound");
    }
}

CircuitPreset preset_noon3(const Noon3Params &params) {
    params.validate();
    const int labels = params.overlap.overlap(params.delay) < 1.0 ? 2 : 1;
    auto registry = make_registry(
        ModeRegistry::for_paths({Path::upper(), Path::lower(), Path::main(), Path::herald(0)}, labels));

    FockState input = spdc_state(params.source, registry, params.max_photons);
    input = apply_overlap(input, params.overlap, params.delay);

    PartialPbs ppbs = params.ppbs;
    ppbs.through = Path::main();
    ppbs.reflect = Path::herald(0);

    std::vector<Element> elements{
        {"QWP1+mirror", polarization_flip(Path::upper())},
        {"PBS2", pbs_unitary(Path::lower(), Path::upper())},
        {"merge", path_swap(Path::lower(), Path::main())},
        plate("HWP1", std::numbers::pi, params.hwp1_angle, Path::main()),
        {"PPBS", ppbs_unitary(ppbs)},
        plate("QWP2", std::numbers::pi / 2, params.qwp2_angle, Path::main()),
        plate("HWP2", std::numbers::pi, params.effective_hwp2_angle(), Path::main()),
    };

    MeasurementStage stage;
    stage.analyzed = Path::main();
    stage.qwp3_angle = params.qwp3_angle;
    stage.hwp3_angle = params.hwp3_angle;
    stage.cascade = params.cascade;
    stage.detectors = params.cascade_detectors;

    CircuitPreset preset{"noon3",           registry, std::move(input), std::move(elements), {Path::herald(0)},
                         {params.herald_detector}, stage};
    preset.validate();
    return preset;
}

CircuitPreset preset_noon4(const Noon4Params &params) {
    auto registry = make_registry(ModeRegistry::for_paths({Path::main(), Path::herald(0), Path::herald(1)}));
    FockState input = FockState::basis(registry, {{{Path::main(), Pol::H}, 3}, {{Path::main(), Pol::V}, 3}},
                                       params.max_photons);
    PartialPbs a{params.t_h, params.t_v, 0.0, Path::main(), Path::herald(0)};
    PartialPbs b{params.t_h, params.t_v, 0.0, Path::main(), Path::herald(1)};
    std::vector<Element> elements{
        plate("HWP1", std::numbers::pi, params.hwp1_angle, Path::main()),
        {"PPBS-A", ppbs_unitary(a)},
        plate("HWP", std::numbers::pi, params.middle_hwp_angle, Path::main()),
        {"PPBS-B", ppbs_unitary(b)},
        plate("QWP2", std::numbers::pi / 2, params.qwp2_angle, Path::main()),
        plate("HWP2", std::numbers::pi, params.hwp2_angle, Path::main()),
    };
    MeasurementStage stage;
    stage.analyzed = Path::main();
    stage.qwp3_angle = params.qwp3_angle;
    stage.hwp3_angle = params.hwp3_angle;
    stage.cascade = params.cascade;
    stage.detectors = params.cascade_detectors;

    CircuitPreset preset{"noon4",
                         registry,
                         std::move(input),
                         std::move(elements),
                         {Path::herald(0), Path::herald(1)},
                         {params.herald_detector, params.herald_detector},
                         stage};
    preset.validate();
    return preset;
}

FockState prepare(const CircuitPreset &preset) {
    FockState state = preset.input;
    for (const auto &e : preset.elements) {
        state = apply_element(state, e);
    }
    return state;
}

FockState analyze(const CircuitPreset &preset, const FockState &prepared, double hwp3_angle) {
    const Path p = preset.measurement.analyzed;
    FockState s = apply_element(prepared, plate("QWP3", std::numbers::pi / 2, preset.measurement.qwp3_angle, p));
    return apply_element(s, plate("HWP3", std::numbers::pi, hwp3_angle, p));
}

HeraldOutcome herald_exactly_one(const CircuitPreset &preset, const FockState &prepared) {
    // Branch over which herald mode holds the photon on each port.
    std::vector<std::pair<double, FockState>> branches{{1.0, prepared}};
    for (std::size_t k = 0; k < preset.herald_paths.size(); ++k) {
        std::vector<std::pair<double, FockState>> next;
        const auto modes = preset.herald_modes(k);
        for (const auto &[w, s] : branches) {
            for (const auto &hit : modes) {
                FockState cur = s;
                double p = 1.0;
                bool alive = true;
                for (const auto &m : modes) {
                    auto r = condition_exact_count(cur, m, m == hit ? 1 : 0);
                    p *= r.probability;
                    if (!r.state) {
                        alive = false;
                        break;
                    }
                    cur = *r.state;
                }
                if (alive) {
                    next.emplace_back(w * p, std::move(cur));
                }
            }
        }
        branches = std::move(next);
    }
    HeraldOutcome out;
    for (const auto &b : branches) {
        out.probability += b.first;
    }
    if (out.probability < kPruneThreshold) {
        out.probability = 0.0;
        return out;
    }
    for (auto &b : branches) {
        out.branches.emplace_back(b.first / out.probability, std::move(b.second));
    }
    return out;
}

FockState noon_state(RegistryPtr registry, Path path, int n, Complex h_phase, int max_photons) {
    FockState probe(registry, max_photons);
    FockState::Terms t;
    t[probe.occupation_of({{{path, Pol::H}, n}})] += h_phase / std::sqrt(2.0);
    t[probe.occupation_of({{{path, Pol::V}, n}})] += 1.0 / std::sqrt(2.0);
    return FockState(std::move(registry), std::move(t), max_photons);
}

}  // namespace noonsim
