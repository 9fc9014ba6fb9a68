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

// Reference implementations used only by the tests. They share no code paths with the
// engine's sparse evolution or routing enumeration.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "noonsim/detection.hpp"

namespace oracle {

using noonsim::Complex;
using noonsim::Occupation;

/// Every occupation of `photons` bosons over `modes` modes.
inline std::vector<Occupation> fock_basis(int modes, int photons) {
    std::vector<Occupation> out;
    Occupation occ(modes, 0);
    auto rec = [&](auto &self, int mode, int left) -> void {
        if (mode == modes - 1) {
            occ[mode] = static_cast<std::uint8_t>(left);
            out.push_back(occ);
            return;
        }
        for (int k = left; k >= 0; --k) {
            occ[mode] = static_cast<std::uint8_t>(k);
            self(self, mode + 1, left - k);
        }
    };
    rec(rec, 0, photons);
    return out;
}

/// Permanent by brute force over all permutations.
inline Complex permanent(const Eigen::MatrixXcd &m) {
    const int n = static_cast<int>(m.rows());
    if (n == 0) {
        return 1.0;
    }
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex term = 1.0;
        for (int r = 0; r < n; ++r) {
            term *= m(r, perm[r]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

inline double factorial(int n) { return std::tgamma(n + 1.0); }

/// <out| U_fock |in> with a_i^dag -> sum_j u(j, i) a_j^dag.
inline Complex transition_amplitude(const Eigen::MatrixXcd &u, const Occupation &in, const Occupation &out) {
    std::vector<int> rows, cols;
    double norm = 1.0;
    for (std::size_t k = 0; k < in.size(); ++k) {
        for (int c = 0; c < in[k]; ++c) cols.push_back(static_cast<int>(k));
        for (int c = 0; c < out[k]; ++c) rows.push_back(static_cast<int>(k));
        norm *= factorial(in[k]) * factorial(out[k]);
    }
    Eigen::MatrixXcd sub(rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            sub(r, c) = u(rows[r], cols[c]);
        }
    }
    return permanent(sub) / std::sqrt(norm);
}

/// Dense lift of a single-particle unitary onto the fixed-photon-number sector.
inline Eigen::MatrixXcd dense_lift(const Eigen::MatrixXcd &u, int photons) {
    const auto basis = fock_basis(static_cast<int>(u.rows()), photons);
    Eigen::MatrixXcd big(basis.size(), basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            big(j, i) = transition_amplitude(u, basis[i], basis[j]);
        }
    }
    return big;
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the diagonal phases fixed.
inline Eigen::MatrixXcd haar_unitary(int n, std::mt19937_64 &rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXcd z(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            z(i, j) = Complex(g(rng), g(rng));
        }
    }
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
    Eigen::MatrixXcd q = qr.householderQ();
    Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        q.col(i) *= r(i, i) / std::abs(r(i, i));
    }
    return q;
}

/// Click-pattern distribution of a coupler cascade, computed by routing `photons` in one input
/// mode through explicit beam splitters into detector modes, attenuating each detector mode
/// into a loss mode, and reading click patterns from the resulting Fock amplitudes.
inline std::vector<double> cascade_by_modes(int photons, const std::vector<double> &ratios,
                                            const std::vector<double> &efficiency) {
    using namespace noonsim;
    const int d = static_cast<int>(ratios.size()) + 1;
    std::vector<Path> paths{Path::main()};
    for (int k = 0; k < d; ++k) paths.push_back(Path::detector(k));
    for (int k = 0; k < d; ++k) paths.push_back(Path::loss(k));
    auto registry = make_registry(ModeRegistry::for_paths(paths));
    const ModeId in{Path::main(), Pol::H};
    FockState s = FockState::basis(registry, {{in, photons}}, std::max(photons, 1));
    // Coupler k taps `ratios[k]` of the travelling light into detector k.
    for (int k = 0; k < d - 1; ++k) {
        s = apply_unitary(s, beam_splitter(in, {Path::detector(k), Pol::H}, 1.0 - ratios[k]));
    }
    s = apply_unitary(s, path_swap(Path::main(), Path::detector(d - 1)));
    for (int k = 0; k < d; ++k) {
        s = apply_unitary(s, loss_element({Path::detector(k), Pol::H}, efficiency[k], k));
    }
    std::vector<ModeId> det;
    for (int k = 0; k < d; ++k) det.push_back({Path::detector(k), Pol::H});
    std::vector<double> out(std::size_t{1} << d, 0.0);
    for (const auto &[occ, p] : marginal_distribution(s, det)) {
        std::size_t mask = 0;
        for (int k = 0; k < d; ++k) {
            if (occ[k] > 0) mask |= std::size_t{1} << k;
        }
        out[mask] += p;
    }
    return out;
}

/// Retarder written out elementwise: slow axis at `theta`, retardance `delta` on the slow axis.
inline Eigen::Matrix2cd retarder(double delta, double theta) {
    const double c = std::cos(theta), s = std::sin(theta);
    const Complex e = std::polar(1.0, delta);
    Eigen::Matrix2cd m;
    m << c * c * e + s * s, c * s * (e - 1.0), c * s * (e - 1.0), s * s * e + c * c;
    return m;
}

/// Probability that all three photons of (i|3,0> + |0,3>)/sqrt(2) leave the analyzer
/// (QWP at `qwp`, then HWP at `hwp`) horizontally polarized.
inline double noon3_all_transmitted(double qwp, double hwp) {
    const Eigen::Matrix2cd m = retarder(M_PI, hwp) * retarder(M_PI / 2, qwp);
    const Complex mh = m(0, 0), mv = m(0, 1);
    return std::norm(Complex(0, 1) * mh * mh * mh + mv * mv * mv) / 2.0;
}

/// Ideal fourfold probability per pulse of the fixed two-pair generator.
inline double noon3_fourfold(double qwp, double hwp, const std::vector<double> &ratios) {
    const double p2 = ratios[0];
    const double p3 = (1.0 - ratios[0]) * ratios[1];
    const double p4 = (1.0 - ratios[0]) * (1.0 - ratios[1]);
    return 4.0 / 27.0 * 6.0 * p2 * p3 * p4 * noon3_all_transmitted(qwp, hwp);
}

}  // namespace oracle
