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

#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "noonsim/detection.hpp"

namespace noonsim {

enum class Weighting { Poisson, Uniform };

/// y = offset + amplitude cos(frequency x + phase), amplitude >= 0.
struct FitResult {
    double offset = 0.0;
    double amplitude = 0.0;
    double phase = 0.0;
    int frequency = 1;
    double visibility = 0.0;
    double offset_err = 0.0;
    double amplitude_err = 0.0;
    double phase_err = 0.0;
    double visibility_err = 0.0;
    double residual_rms = 0.0;
    std::size_t points = 0;
    Weighting weighting = Weighting::Uniform;
    /// visibility > 1 + 3 visibility_err
    bool unphysical = false;

    /// Flat "key = value" lines.
    std::string to_record() const;
};

/// Weighted linear least squares on {1, cos kx, sin kx}. Poisson weights are 1 / max(y, 1)
/// and the covariance is taken as is; uniform weights scale it by the residual variance.
/// Throws kRankDeficient when the phases do not resolve the three basis functions.
FitResult fit_fixed_freq(std::span<const double> phases, std::span<const double> values, int frequency,
                         Weighting weighting);

struct SubtractionResult {
    FringeTable table;
    std::vector<std::string> warnings;
};

/// fourfold - herald_singles_prob * threefold_unheralded, pointwise on both the probability and
/// the count columns, clamped at zero. Clamping that removes more than 5% of a point's raw value
/// is reported in `warnings`.
SubtractionResult subtract_triple_pair(const FringeTable &fringe, double herald_singles_prob);

struct FidelityBound {
    double fidelity = 0.0;
    double visibility = 0.0;
    double population_factor = 1.0;
    std::string model;
};

/// Lower bound on <NOON|rho|NOON> from an N-photon fringe visibility, assuming all heralded
/// population sits in {|N,0>, |0,N>} (fraction `population_factor` of it) and the fringe phase
/// is matched: F >= population_factor (1 + V) / 2.
FidelityBound fidelity_lower_bound(double visibility, double population_factor = 1.0);

enum class FomScheme { DoublePair, PairPlusCoherent };

struct FomInput {
    FomScheme scheme = FomScheme::DoublePair;
    double gamma = 0.01;
    /// Mean photon number of the coherent pulse (PairPlusCoherent only).
    double alpha = 0.0;

    void validate() const;
};

/// 1/gamma for double pairs, (gamma/alpha + alpha/2)^-1 for a pair plus a coherent photon.
double fom_ratio_approx(const FomInput &f);

struct FomExact {
    /// exactly the required photons: two pairs, or one pair and one coherent photon
    double p_exact = 0.0;
    /// the required pairs plus any further photons
    double p_surplus = 0.0;
    double ratio = 0.0;
};

/// Leading-order P values behind fom_ratio_approx.
FomExact fom_probabilities_approx(const FomInput &f);

/// Enumerates pair (and coherent photon) numbers up to `n_max_pairs`; the thermal pair tail
/// beyond the truncation is summed in closed form.
FomExact fom_ratio_exact(const FomInput &f, PairKind kind = PairKind::Thermal, int n_max_pairs = 40);

/// Coincidence probability (one H and one V photon on the merged path after HWP1) for one
/// photon per arm, as a function of the arm delay.
std::vector<std::pair<double, double>> hom_scan(const OverlapModel &model, std::span<const double> delays);

/// (plateau - dip) / plateau of hom_scan, with the plateau taken at vanishing overlap.
double hom_dip_visibility(const OverlapModel &model);

/// Heralded fourfold probability against HWP2 angle (radians) with QWP2 at 45 deg and QWP3,
/// HWP3 at 0 deg; other settings are taken from `params`.
std::vector<std::pair<double, double>> hwp2_calibration_scan(const Noon3Params &params,
                                                            std::span<const double> hwp2_angles);

/// Location of a local extremum of a smooth f inside [lo, hi], by bisection on the
/// central-difference derivative. The derivative must change sign across the bracket.
double locate_extremum(const std::function<double(double)> &f, double lo, double hi, double step = 1e-4);

}  // namespace noonsim
