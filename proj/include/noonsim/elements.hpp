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
#include <string>

#include "noonsim/fock.hpp"

namespace noonsim {

/// Linear retarder. `angle` is the slow-axis inclination from horizontal, radians.
///
/// Matrix convention: U = R(angle) diag(e^{i retardance}, 1) R(-angle) with
/// R(t) = [[cos t, -sin t], [sin t, cos t]] acting on (H, V), i.e. light polarized along
/// the slow axis is delayed by `retardance` relative to the fast axis.
struct WavePlate {
    double retardance = std::numbers::pi;
    double angle = 0.0;
    Path path = Path::main();

    static WavePlate half_wave(double angle, Path path = Path::main()) { return {std::numbers::pi, angle, path}; }
    static WavePlate quarter_wave(double angle, Path path = Path::main()) {
        return {std::numbers::pi / 2, angle, path};
    }
};

/// Partially polarizing beam splitter with intensity transmissions per polarization.
/// Transmitted V picks up e^{i birefringence_phi} relative to H.
struct PartialPbs {
    double t_h = 1.0;
    double t_v = 1.0 / 3.0;
    double birefringence_phi = 0.0;
    Path through = Path::main();
    Path reflect = Path::herald(0);
};

Eigen::Matrix2cd waveplate_matrix(double retardance, double angle);

SingleParticleUnitary waveplate_unitary(const WavePlate &wp);

/// Polarizing beam splitter on paths (a, b): H stays on its path, V swaps paths with
/// reflection amplitude i.
SingleParticleUnitary pbs_unitary(Path a, Path b);

SingleParticleUnitary ppbs_unitary(const PartialPbs &p);

/// Two-mode mixer: through amplitude sqrt(t), cross amplitude i sqrt(1 - t).
SingleParticleUnitary beam_splitter(const ModeId &a, const ModeId &b, double transmission);

/// Couples `mode` to loss mode (loss-k, same polarization and label) with through amplitude sqrt(eta).
SingleParticleUnitary loss_element(const ModeId &mode, double eta, int loss_index);

/// Exact H <-> V exchange on one path (mirror plus QWP1 on the upper arm).
SingleParticleUnitary polarization_flip(Path path);

/// Relabels path a as b and b as a (both polarizations).
SingleParticleUnitary path_swap(Path a, Path b);

/// Replicates a unitary defined on internal label 0 onto every internal label present in the
/// registry, so elements act identically on distinguishable copies of a mode.
SingleParticleUnitary lift_internal(const SingleParticleUnitary &u, const ModeRegistry &registry);

struct Element {
    std::string name;
    SingleParticleUnitary unitary;
};

FockState apply_element(const FockState &state, const Element &element);

}  // namespace noonsim
