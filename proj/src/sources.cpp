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

#include "noonsim/sources.hpp"

#include <cmath>
#include <string>

#include "noonsim/error.hpp"

namespace noonsim {

void PairDistribution::validate() const {
    switch (kind) {
        case PairKind::Thermal:
        case PairKind::Poissonian:
            if (!(gamma >= 0.0 && gamma < 1.0)) {
                throw Error(ErrorCode::kInvalidParameter, "gamma must lie in [0, 1)");
            }
            if (n_max_pairs < 0) {
                throw Error(ErrorCode::kInvalidParameter, "n_max_pairs must be non-negative");
            }
            break;
        case PairKind::FixedN:
            if (fixed_n < 0) {
                throw Error(ErrorCode::kInvalidParameter, "fixed pair number must be non-negative");
            }
            break;
    }
}

int PairDistribution::max_pairs() const { return kind == PairKind::FixedN ? fixed_n : n_max_pairs; }

double PairDistribution::raw_weight(int n) const {
    switch (kind) {
        case PairKind::Thermal:
            return (1.0 - gamma) * std::pow(gamma, n);
        case PairKind::Poissonian:
            return std::exp(-gamma + n * std::log(gamma) - std::lgamma(n + 1.0));
        case PairKind::FixedN:
            return n == fixed_n ? 1.0 : 0.0;
    }
    return 0.0;
}

std::vector<double> PairDistribution::weights() const {
    validate();
    std::vector<double> w(static_cast<std::size_t>(max_pairs()) + 1, 0.0);
    double total = 0.0;
    for (int n = 0; n <= max_pairs(); ++n) {
        // 0^0 = 1 for the vacuum term of a gamma = 0 source
        w[n] = (gamma == 0.0 && kind != PairKind::FixedN) ? (n == 0 ? 1.0 : 0.0) : raw_weight(n);
        total += w[n];
    }
    for (auto &x : w) {
        x /= total;
    }
    return w;
}

void OverlapModel::validate() const {
    if (!(xi >= 0.0 && xi <= 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "overlap xi must lie in [0, 1]");
    }
    if (!(coherence_time > 0.0)) {
        throw Error(ErrorCode::kInvalidParameter, "coherence time must be positive");
    }
}

double OverlapModel::overlap(double delay) const {
    const double r = delay / coherence_time;
    return xi * std::exp(-r * r);
}

FockState spdc_state(const PairDistribution &dist, RegistryPtr registry, int max_photons) {
    const auto w = dist.weights();
    if (2 * dist.max_pairs() > max_photons) {
        throw Error(ErrorCode::kTruncationExceeded, std::to_string(dist.max_pairs()) + " pairs exceed n_max " +
                                                        std::to_string(max_photons));
    }
    const ModeId up{Path::upper(), Pol::H, 0};
    const ModeId low{Path::lower(), Pol::H, 0};
    FockState probe(registry, max_photons);
    FockState::Terms terms;
    for (int n = 0; n < static_cast<int>(w.size()); ++n) {
        if (w[n] > 0.0) {
            terms.emplace(probe.occupation_of({{up, n}, {low, n}}), std::sqrt(w[n]));
        }
    }
    return FockState(std::move(registry), std::move(terms), max_photons);
}

FockState coherent_pulse(double mean_photons, const ModeId &mode, RegistryPtr registry, int max_photons) {
    if (!(mean_photons >= 0.0)) {
        throw Error(ErrorCode::kInvalidParameter, "mean photon number must be non-negative");
    }
    FockState probe(registry, max_photons);
    FockState::Terms terms;
    double total = 0.0;
    std::vector<double> amps;
    for (int n = 0; n <= max_photons; ++n) {
        const double p = mean_photons == 0.0
                             ? (n == 0 ? 1.0 : 0.0)
                             : std::exp(-mean_photons + n * std::log(mean_photons) - std::lgamma(n + 1.0));
        amps.push_back(std::sqrt(p));
        total += p;
    }
    for (int n = 0; n <= max_photons; ++n) {
        if (amps[n] > 0.0) {
            terms.emplace(probe.occupation_of({{mode, n}}), amps[n] / std::sqrt(total));
        }
    }
    return FockState(std::move(registry), std::move(terms), max_photons);
}

FockState apply_overlap(const FockState &state, const OverlapModel &model, double delay) {
    model.validate();
    const double x = model.overlap(delay);
    if (x == 1.0) {
        return state;
    }
    const auto &reg = state.registry();
    for (const auto &[occ, amp] : state.terms()) {
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (occ[i] != 0 && reg[i].internal != 0) {
                throw Error(ErrorCode::kInvalidParameter, "overlap model expects photons on internal label 0 only");
            }
        }
    }
    const double y = std::sqrt(1.0 - x * x);
    Eigen::Matrix2cd rot;
    rot << x, -y, y, x;
    FockState out = state;
    for (Pol pol : {Pol::H, Pol::V}) {
        ModeId same{Path::lower(), pol, 0};
        ModeId other{Path::lower(), pol, 1};
        if (!reg.contains(same)) {
            continue;
        }
        if (!reg.contains(other)) {
            throw Error(ErrorCode::kUnknownMode, "partial overlap needs " + to_string(other) + " registered");
        }
        out = apply_unitary(out, SingleParticleUnitary({same, other}, rot));
    }
    return out;
}

}  // namespace noonsim
