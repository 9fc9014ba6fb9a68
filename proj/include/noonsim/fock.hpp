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

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "noonsim/modes.hpp"

namespace noonsim {

using Complex = std::complex<double>;

/// Photon count per registered mode, in registry order.
using Occupation = std::vector<std::uint8_t>;

inline constexpr int kDefaultMaxPhotons = 8;
inline constexpr double kPruneThreshold = 1e-14;
inline constexpr double kUnitarityTolerance = 1e-12;

using RegistryPtr = std::shared_ptr<const ModeRegistry>;

inline RegistryPtr make_registry(ModeRegistry registry) {
    return std::make_shared<const ModeRegistry>(std::move(registry));
}

/// Single-particle transformation on an ordered subset of modes.
///
/// Acts on creation operators as a_i^dag -> sum_j matrix(j, i) a_j^dag, so
/// column i is the image of modes[i]. Applying u then v is the same as
/// applying the product v * u.
class SingleParticleUnitary {
   public:
    SingleParticleUnitary(std::vector<ModeId> modes, Eigen::MatrixXcd matrix);

    const std::vector<ModeId> &modes() const { return modes_; }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }

    /// max |U^dag U - I|.
    static double unitarity_error(const Eigen::MatrixXcd &m);

   private:
    std::vector<ModeId> modes_;
    Eigen::MatrixXcd matrix_;
};

/// Sparse superposition of occupation-number basis kets over a mode registry.
///
/// Values are immutable once built; every transformation returns a new state.
/// Amplitudes with magnitude below kPruneThreshold are dropped.
class FockState {
   public:
    using Terms = std::map<Occupation, Complex>;

    FockState(RegistryPtr registry, int max_photons = kDefaultMaxPhotons);
    FockState(RegistryPtr registry, Terms terms, int max_photons = kDefaultMaxPhotons);

    static FockState vacuum(RegistryPtr registry, int max_photons = kDefaultMaxPhotons);
    static FockState basis(RegistryPtr registry, const std::map<ModeId, int> &occupation,
                           int max_photons = kDefaultMaxPhotons);

    const ModeRegistry &registry() const { return *registry_; }
    const RegistryPtr &registry_ptr() const { return registry_; }
    const Terms &terms() const { return terms_; }
    int max_photons() const { return max_photons_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

    double norm_squared() const;
    FockState normalized() const;
    FockState scaled(Complex factor) const;
    Complex amplitude(const Occupation &occupation) const;
    Complex amplitude(const std::map<ModeId, int> &occupation) const;

    /// Occupation vector for a sparse ModeId -> count map (unlisted modes are empty).
    Occupation occupation_of(const std::map<ModeId, int> &occupation) const;

    /// Coefficient of the creation-operator monomial prod_i (a_i^dag)^{n_i} acting on vacuum:
    /// amplitude / sqrt(prod n_i!).
    Complex monomial_coefficient(const std::map<ModeId, int> &occupation) const;

    /// Sum of two states on the same registry.
    FockState plus(const FockState &other) const;

   private:
    RegistryPtr registry_;
    Terms terms_;
    int max_photons_;
};

int total_photons(const Occupation &occupation);

/// <a|b>, conjugate-linear in a.
Complex inner(const FockState &a, const FockState &b);

FockState apply_unitary(const FockState &state, const SingleParticleUnitary &u);

struct ConditionResult {
    /// Renormalized post-selected state with the conditioned mode removed; empty for a
    /// zero-probability branch.
    std::optional<FockState> state;
    double probability = 0.0;
};

/// Keeps the terms with exactly n photons in `mode`.
ConditionResult condition_exact_count(const FockState &state, const ModeId &mode, int n);

/// Unnormalized projection onto terms whose summed count over `modes` equals n.
/// The modes stay in the registry.
FockState project_total_count(const FockState &state, std::span<const ModeId> modes, int n);

using Distribution = std::map<Occupation, double>;

/// Probabilities of occupations of `observed` (in that order), summed over everything else.
Distribution marginal_distribution(const FockState &state, std::span<const ModeId> observed);

/// Distribution of the total photon number found in `modes`.
std::map<int, double> total_count_distribution(const FockState &state, std::span<const ModeId> modes);

}  // namespace noonsim
