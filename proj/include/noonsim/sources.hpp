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

#include <vector>

#include "noonsim/fock.hpp"

namespace noonsim {

enum class PairKind { Thermal, Poissonian, FixedN };

/// Pair-number statistics of one SPDC pump pulse.
///
/// Thermal: w_n = (1 - gamma) gamma^n. Poissonian: w_n = e^-gamma gamma^n / n!.
/// FixedN: exactly `fixed_n` pairs. Thermal and Poissonian weights are truncated at
/// `n_max_pairs` and renormalized.
struct PairDistribution {
    PairKind kind = PairKind::Thermal;
    double gamma = 0.0;
    int fixed_n = 2;
    int n_max_pairs = 4;

    static PairDistribution thermal(double gamma, int n_max_pairs = 4) {
        return {PairKind::Thermal, gamma, 0, n_max_pairs};
    }
    static PairDistribution poissonian(double gamma, int n_max_pairs = 4) {
        return {PairKind::Poissonian, gamma, 0, n_max_pairs};
    }
    static PairDistribution fixed(int n) { return {PairKind::FixedN, 0.0, n, n}; }

    void validate() const;
    /// Highest pair number carrying weight.
    int max_pairs() const;
    /// Untruncated weight of n pairs.
    double raw_weight(int n) const;
    /// Truncated, renormalized weights indexed by pair number 0..max_pairs().
    std::vector<double> weights() const;
};

/// Wave-packet overlap between the upper- and lower-arm photons.
/// overlap(delay) = xi exp(-(delay / coherence_time)^2).
struct OverlapModel {
    double xi = 1.0;
    double coherence_time = 1.0;

    void validate() const;
    double overlap(double delay) const;
};

/// sum_n sqrt(w_n) |n>_(upper,H) |n>_(lower,H), on internal label 0.
FockState spdc_state(const PairDistribution &dist, RegistryPtr registry, int max_photons = kDefaultMaxPhotons);

/// Coherent state with mean photon number `mean_photons`, truncated at the state's photon
/// bound and renormalized.
FockState coherent_pulse(double mean_photons, const ModeId &mode, RegistryPtr registry,
                         int max_photons = kDefaultMaxPhotons);

/// Rewrites every lower-path creation operator as
/// x a^dag(label 0) + sqrt(1 - x^2) a^dag(label 1) with x = overlap(delay).
/// Requires the lower-path label-1 modes to be registered whenever x < 1.
FockState apply_overlap(const FockState &state, const OverlapModel &model, double delay);

}  // namespace noonsim
