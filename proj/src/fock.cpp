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

#include "noonsim/fock.hpp"

#include <array>
#include <cmath>
#include <numeric>
#include <string>

#include "noonsim/error.hpp"

namespace noonsim {
namespace {

double factorial(int n) {
    static const auto table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (std::size_t i = 1; i < t.size(); ++i) {
            t[i] = t[i - 1] * static_cast<double>(i);
        }
        return t;
    }();
    return table.at(static_cast<std::size_t>(n));
}

double sqrt_factorial_product(const Occupation &occ) {
    double p = 1.0;
    for (auto n : occ) {
        if (n > 1) {
            p *= std::sqrt(factorial(n));
        }
    }
    return p;
}

void prune(FockState::Terms &terms) {
    std::erase_if(terms, [](const auto &kv) { return std::abs(kv.second) < kPruneThreshold; });
}

void require_same_registry(const FockState &a, const FockState &b) {
    if (a.registry_ptr() != b.registry_ptr() && !(a.registry() == b.registry())) {
        throw Error(ErrorCode::kRegistryMismatch, "states live on different mode registries");
    }
}

// All ways of writing n as an ordered sum of `parts` non-negative integers.
void compositions(int n, std::size_t parts, Occupation &current, std::size_t slot,
                  std::vector<Occupation> &out) {
    if (slot + 1 == parts) {
        current[slot] = static_cast<std::uint8_t>(n);
        out.push_back(current);
        return;
    }
    for (int k = n; k >= 0; --k) {
        current[slot] = static_cast<std::uint8_t>(k);
        compositions(n - k, parts, current, slot + 1, out);
    }
}

}  // namespace

int total_photons(const Occupation &occupation) {
    return std::accumulate(occupation.begin(), occupation.end(), 0);
}

SingleParticleUnitary::SingleParticleUnitary(std::vector<ModeId> modes, Eigen::MatrixXcd matrix)
    : modes_(std::move(modes)), matrix_(std::move(matrix)) {
    const auto k = static_cast<Eigen::Index>(modes_.size());
    if (matrix_.rows() != k || matrix_.cols() != k) {
        throw Error(ErrorCode::kInvalidParameter, "unitary dimension does not match its mode list");
    }
    ModeRegistry distinct(modes_);
    double err = unitarity_error(matrix_);
    if (!(err <= kUnitarityTolerance)) {
        throw Error(ErrorCode::kNotUnitary, "max |U^dag U - I| = " + std::to_string(err));
    }
}

double SingleParticleUnitary::unitarity_error(const Eigen::MatrixXcd &m) {
    Eigen::MatrixXcd d = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
    return d.cwiseAbs().maxCoeff();
}

FockState::FockState(RegistryPtr registry, int max_photons)
    : registry_(std::move(registry)), max_photons_(max_photons) {
    if (!registry_) {
        throw Error(ErrorCode::kInvalidParameter, "null registry");
    }
    if (max_photons_ < 0 || max_photons_ > 255) {
        throw Error(ErrorCode::kInvalidParameter, "photon truncation must be in [0, 255]");
    }
}

FockState::FockState(RegistryPtr registry, Terms terms, int max_photons)
    : FockState(std::move(registry), max_photons) {
    for (const auto &[occ, amp] : terms) {
        if (occ.size() != registry_->size()) {
            throw Error(ErrorCode::kRegistryMismatch, "occupation length differs from registry size");
        }
        if (total_photons(occ) > max_photons_) {
            throw Error(ErrorCode::kTruncationExceeded,
                        std::to_string(total_photons(occ)) + " photons > n_max " + std::to_string(max_photons_));
        }
    }
    terms_ = std::move(terms);
    prune(terms_);
}

FockState FockState::vacuum(RegistryPtr registry, int max_photons) {
    Occupation zero(registry->size(), 0);
    return FockState(std::move(registry), Terms{{zero, Complex(1.0)}}, max_photons);
}

Occupation FockState::occupation_of(const std::map<ModeId, int> &occupation) const {
    Occupation occ(registry_->size(), 0);
    for (const auto &[mode, n] : occupation) {
        if (n < 0 || n > 255) {
            throw Error(ErrorCode::kInvalidParameter, "bad photon count for " + to_string(mode));
        }
        occ[registry_->index(mode)] = static_cast<std::uint8_t>(n);
    }
    return occ;
}

FockState FockState::basis(RegistryPtr registry, const std::map<ModeId, int> &occupation, int max_photons) {
    FockState empty(registry, max_photons);
    return FockState(std::move(registry), Terms{{empty.occupation_of(occupation), Complex(1.0)}}, max_photons);
}

double FockState::norm_squared() const {
    double s = 0.0;
    for (const auto &kv : terms_) {
        s += std::norm(kv.second);
    }
    return s;
}

FockState FockState::normalized() const {
    double n = norm_squared();
    if (n < kPruneThreshold * kPruneThreshold) {
        throw Error(ErrorCode::kZeroProbabilityBranch, "cannot normalize a null state");
    }
    return scaled(1.0 / std::sqrt(n));
}

FockState FockState::scaled(Complex factor) const {
    Terms t = terms_;
    for (auto &kv : t) {
        kv.second *= factor;
    }
    return FockState(registry_, std::move(t), max_photons_);
}

Complex FockState::amplitude(const Occupation &occupation) const {
    auto it = terms_.find(occupation);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

Complex FockState::amplitude(const std::map<ModeId, int> &occupation) const {
    return amplitude(occupation_of(occupation));
}

Complex FockState::monomial_coefficient(const std::map<ModeId, int> &occupation) const {
    Occupation occ = occupation_of(occupation);
    return amplitude(occ) / sqrt_factorial_product(occ);
}

FockState FockState::plus(const FockState &other) const {
    require_same_registry(*this, other);
    Terms t = terms_;
    for (const auto &[occ, amp] : other.terms_) {
        t[occ] += amp;
    }
    return FockState(registry_, std::move(t), std::max(max_photons_, other.max_photons_));
}

Complex inner(const FockState &a, const FockState &b) {
    require_same_registry(a, b);
    Complex s(0.0);
    const auto &small = a.size() <= b.size() ? a.terms() : b.terms();
    const auto &large = a.size() <= b.size() ? b.terms() : a.terms();
    for (const auto &[occ, amp] : small) {
        auto it = large.find(occ);
        if (it != large.end()) {
            s += &small == &a.terms() ? std::conj(amp) * it->second : std::conj(it->second) * amp;
        }
    }
    return s;
}

FockState apply_unitary(const FockState &state, const SingleParticleUnitary &u) {
    const auto &reg = state.registry();
    const std::size_t k = u.modes().size();
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) {
        idx[i] = reg.index(u.modes()[i]);
    }
    const Eigen::MatrixXcd &m = u.matrix();
    const int n_max = state.max_photons();

    // powers[i][j][p] = m(j, i)^p
    std::vector<std::vector<std::vector<Complex>>> powers(k, std::vector<std::vector<Complex>>(k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            auto &row = powers[i][j];
            row.resize(static_cast<std::size_t>(n_max) + 1);
            row[0] = 1.0;
            for (int p = 1; p <= n_max; ++p) {
                row[p] = row[p - 1] * m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i));
            }
        }
    }
    std::vector<std::vector<Occupation>> comps(static_cast<std::size_t>(n_max) + 1);
    auto compositions_of = [&](int n) -> const std::vector<Occupation> & {
        auto &c = comps[static_cast<std::size_t>(n)];
        if (c.empty()) {
            Occupation scratch(k, 0);
            compositions(n, k, scratch, 0, c);
        }
        return c;
    };

    FockState::Terms out;
    std::map<Occupation, Complex> local, next;
    for (const auto &[occ, amp] : state.terms()) {
        Occupation base = occ;
        Occupation inputs(k, 0);
        double norm = 1.0;
        for (std::size_t i = 0; i < k; ++i) {
            inputs[i] = occ[idx[i]];
            base[idx[i]] = 0;
            norm *= std::sqrt(factorial(inputs[i]));
        }
        local.clear();
        local.emplace(Occupation(k, 0), amp / norm);
        for (std::size_t i = 0; i < k; ++i) {
            const int n = inputs[i];
            if (n == 0) {
                continue;
            }
            next.clear();
            for (const auto &part : compositions_of(n)) {
                Complex factor = factorial(n);
                for (std::size_t j = 0; j < k && factor != 0.0; ++j) {
                    factor *= powers[i][j][part[j]] / factorial(part[j]);
                }
                if (factor == 0.0) {
                    continue;
                }
                for (const auto &[loc, c] : local) {
                    Occupation sum = loc;
                    for (std::size_t j = 0; j < k; ++j) {
                        sum[j] = static_cast<std::uint8_t>(sum[j] + part[j]);
                    }
                    next[sum] += c * factor;
                }
            }
            local.swap(next);
        }
        for (const auto &[loc, c] : local) {
            Occupation o = base;
            double scale = 1.0;
            for (std::size_t j = 0; j < k; ++j) {
                o[idx[j]] = loc[j];
                scale *= std::sqrt(factorial(loc[j]));
            }
            out[o] += c * scale;
        }
    }
    return FockState(state.registry_ptr(), std::move(out), n_max);
}

ConditionResult condition_exact_count(const FockState &state, const ModeId &mode, int n) {
    const std::size_t at = state.registry().index(mode);
    auto reduced = make_registry(state.registry().without(mode));
    FockState::Terms kept;
    double p = 0.0;
    for (const auto &[occ, amp] : state.terms()) {
        if (occ[at] != n) {
            continue;
        }
        Occupation o;
        o.reserve(occ.size() - 1);
        for (std::size_t i = 0; i < occ.size(); ++i) {
            if (i != at) {
                o.push_back(occ[i]);
            }
        }
        kept.emplace(std::move(o), amp);
        p += std::norm(amp);
    }
    if (p < kPruneThreshold) {
        return {std::nullopt, p};
    }
    const double s = 1.0 / std::sqrt(p);
    for (auto &kv : kept) {
        kv.second *= s;
    }
    return {FockState(std::move(reduced), std::move(kept), state.max_photons()), p};
}

FockState project_total_count(const FockState &state, std::span<const ModeId> modes, int n) {
    std::vector<std::size_t> idx;
    for (const auto &m : modes) {
        idx.push_back(state.registry().index(m));
    }
    FockState::Terms kept;
    for (const auto &[occ, amp] : state.terms()) {
        int c = 0;
        for (auto i : idx) {
            c += occ[i];
        }
        if (c == n) {
            kept.emplace(occ, amp);
        }
    }
    return FockState(state.registry_ptr(), std::move(kept), state.max_photons());
}

Distribution marginal_distribution(const FockState &state, std::span<const ModeId> observed) {
    std::vector<std::size_t> idx;
    for (const auto &m : observed) {
        idx.push_back(state.registry().index(m));
    }
    Distribution dist;
    Occupation key(idx.size());
    for (const auto &[occ, amp] : state.terms()) {
        for (std::size_t i = 0; i < idx.size(); ++i) {
            key[i] = occ[idx[i]];
        }
        dist[key] += std::norm(amp);
    }
    return dist;
}

std::map<int, double> total_count_distribution(const FockState &state, std::span<const ModeId> modes) {
    std::map<int, double> out;
    for (const auto &[occ, p] : marginal_distribution(state, modes)) {
        out[total_photons(occ)] += p;
    }
    return out;
}

}  // namespace noonsim
