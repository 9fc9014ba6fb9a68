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

#include "noonsim/elements.hpp"

#include <cmath>
#include <set>

#include "noonsim/error.hpp"

namespace noonsim {
namespace {

void check_fraction(double v, const char *what) {
    if (!(v >= 0.0 && v <= 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, std::string(what) + " must lie in [0, 1]");
    }
}

Eigen::Matrix2cd mixer(double t) {
    const Complex through(std::sqrt(t), 0.0);
    const Complex cross(0.0, std::sqrt(1.0 - t));
    Eigen::Matrix2cd m;
    m << through, cross, cross, through;
    return m;
}

}  // namespace

Eigen::Matrix2cd waveplate_matrix(double retardance, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    Eigen::Matrix2cd r;
    r << c, -s, s, c;
    // the slow axis (first column of r) is retarded by `retardance`
    Eigen::Matrix2cd d = Eigen::Matrix2cd::Zero();
    d(0, 0) = std::polar(1.0, retardance);
    d(1, 1) = 1.0;
    return r * d * r.transpose();
}

SingleParticleUnitary waveplate_unitary(const WavePlate &wp) {
    if (!(wp.retardance > 0.0 && wp.retardance < 2.0 * std::numbers::pi)) {
        throw Error(ErrorCode::kInvalidParameter, "retardance must lie in (0, 2 pi)");
    }
    return SingleParticleUnitary({{wp.path, Pol::H}, {wp.path, Pol::V}}, waveplate_matrix(wp.retardance, wp.angle));
}

SingleParticleUnitary pbs_unitary(Path a, Path b) {
    const Complex i(0.0, 1.0);
    // order: a-H, a-V, b-H, b-V
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = 1.0;
    m(2, 2) = 1.0;
    m(3, 1) = i;
    m(1, 3) = i;
    return SingleParticleUnitary({{a, Pol::H}, {a, Pol::V}, {b, Pol::H}, {b, Pol::V}}, m);
}

SingleParticleUnitary ppbs_unitary(const PartialPbs &p) {
    check_fraction(p.t_h, "t_H");
    check_fraction(p.t_v, "t_V");
    const Complex i(0.0, 1.0);
    const Complex bire = std::polar(1.0, p.birefringence_phi);
    // order: through-H, through-V, reflect-H, reflect-V
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = std::sqrt(p.t_h);
    m(2, 2) = std::sqrt(p.t_h);
    m(2, 0) = i * std::sqrt(1.0 - p.t_h);
    m(0, 2) = i * std::sqrt(1.0 - p.t_h);
    m(1, 1) = bire * std::sqrt(p.t_v);
    m(3, 3) = std::conj(bire) * std::sqrt(p.t_v);
    m(3, 1) = i * std::sqrt(1.0 - p.t_v);
    m(1, 3) = i * std::sqrt(1.0 - p.t_v);
    return SingleParticleUnitary(
        {{p.through, Pol::H}, {p.through, Pol::V}, {p.reflect, Pol::H}, {p.reflect, Pol::V}}, m);
}

SingleParticleUnitary beam_splitter(const ModeId &a, const ModeId &b, double transmission) {
    check_fraction(transmission, "transmission");
    return SingleParticleUnitary({a, b}, mixer(transmission));
}

SingleParticleUnitary loss_element(const ModeId &mode, double eta, int loss_index) {
    check_fraction(eta, "loss transmission");
    ModeId sink{Path::loss(loss_index), mode.pol, mode.internal};
    return SingleParticleUnitary({mode, sink}, mixer(eta));
}

SingleParticleUnitary polarization_flip(Path path) {
    Eigen::Matrix2cd m;
    m << 0.0, 1.0, 1.0, 0.0;
    return SingleParticleUnitary({{path, Pol::H}, {path, Pol::V}}, m);
}

SingleParticleUnitary path_swap(Path a, Path b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    m(2, 0) = m(3, 1) = m(0, 2) = m(1, 3) = 1.0;
    return SingleParticleUnitary({{a, Pol::H}, {a, Pol::V}, {b, Pol::H}, {b, Pol::V}}, m);
}

SingleParticleUnitary lift_internal(const SingleParticleUnitary &u, const ModeRegistry &registry) {
    for (const auto &m : u.modes()) {
        if (m.internal != 0) {
            return u;
        }
    }
    std::set<int> labels;
    for (const auto &m : registry.modes()) {
        labels.insert(m.internal);
    }
    const auto k = static_cast<Eigen::Index>(u.modes().size());
    std::vector<ModeId> modes;
    std::vector<int> blocks;
    for (int label : labels) {
        bool complete = true;
        for (auto m : u.modes()) {
            m.internal = label;
            complete = complete && registry.contains(m);
        }
        if (!complete) {
            continue;
        }
        for (auto m : u.modes()) {
            m.internal = label;
            modes.push_back(m);
        }
        blocks.push_back(label);
    }
    if (blocks.size() <= 1) {
        return u;
    }
    const auto n = static_cast<Eigen::Index>(blocks.size());
    Eigen::MatrixXcd big = Eigen::MatrixXcd::Zero(k * n, k * n);
    for (Eigen::Index b = 0; b < n; ++b) {
        big.block(b * k, b * k, k, k) = u.matrix();
    }
    return SingleParticleUnitary(std::move(modes), std::move(big));
}

FockState apply_element(const FockState &state, const Element &element) {
    return apply_unitary(state, lift_internal(element.unitary, state.registry()));
}

}  // namespace noonsim
