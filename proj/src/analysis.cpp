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

#include "noonsim/analysis.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "noonsim/error.hpp"

namespace noonsim {
namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

double poisson_pmf(double mean, int n) {
    if (mean == 0.0) {
        return n == 0 ? 1.0 : 0.0;
    }
    return std::exp(-mean + n * std::log(mean) - std::lgamma(n + 1.0));
}

}  // namespace

std::string FitResult::to_record() const {
    std::ostringstream os;
    os << "frequency = " << frequency << "\n"
       << "weighting = " << (weighting == Weighting::Poisson ? "poisson" : "uniform") << "\n"
       << "points = " << points << "\n"
       << "offset = " << fmt(offset) << "\n"
       << "offset_err = " << fmt(offset_err) << "\n"
       << "amplitude = " << fmt(amplitude) << "\n"
       << "amplitude_err = " << fmt(amplitude_err) << "\n"
       << "phase = " << fmt(phase) << "\n"
       << "phase_err = " << fmt(phase_err) << "\n"
       << "visibility = " << fmt(visibility) << "\n"
       << "visibility_err = " << fmt(visibility_err) << "\n"
       << "residual_rms = " << fmt(residual_rms) << "\n"
       << "unphysical = " << (unphysical ? "true" : "false") << "\n";
    return os.str();
}

FitResult fit_fixed_freq(std::span<const double> phases, std::span<const double> values, int frequency,
                         Weighting weighting) {
    if (phases.size() != values.size()) {
        throw Error(ErrorCode::kInvalidParameter, "phase and value lists differ in length");
    }
    if (phases.size() < 4) {
        throw Error(ErrorCode::kInvalidParameter, "need at least 4 points");
    }
    if (frequency < 1) {
        throw Error(ErrorCode::kInvalidParameter, "frequency must be a positive integer");
    }
    const auto n = static_cast<Eigen::Index>(phases.size());
    Eigen::MatrixXd x(n, 3);
    Eigen::VectorXd y(n), w(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double kx = frequency * phases[i];
        x(i, 0) = 1.0;
        x(i, 1) = std::cos(kx);
        x(i, 2) = std::sin(kx);
        y(i) = values[i];
        w(i) = weighting == Weighting::Poisson ? 1.0 / std::max(values[i], 1.0) : 1.0;
    }
    const Eigen::Matrix3d normal = x.transpose() * w.asDiagonal() * x;
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(normal);
    const double largest = eig.eigenvalues().maxCoeff();
    if (!(largest > 0.0) || eig.eigenvalues().minCoeff() < 1e-10 * largest) {
        throw Error(ErrorCode::kRankDeficient, "phases do not resolve offset, cosine and sine terms");
    }
    const Eigen::Vector3d beta = normal.ldlt().solve(x.transpose() * w.asDiagonal() * y);
    Eigen::Matrix3d cov = normal.inverse();
    const Eigen::VectorXd resid = y - x * beta;
    const double rss = resid.dot(w.asDiagonal() * resid);
    if (weighting == Weighting::Uniform) {
        cov *= n > 3 ? rss / static_cast<double>(n - 3) : 0.0;
    }

    FitResult r;
    r.frequency = frequency;
    r.weighting = weighting;
    r.points = phases.size();
    r.residual_rms = std::sqrt(resid.squaredNorm() / static_cast<double>(n));
    const double c = beta(0), a = beta(1), b = beta(2);
    const double amp = std::hypot(a, b);
    r.offset = c;
    r.amplitude = amp;
    r.phase = std::atan2(-b, a);
    r.visibility = c != 0.0 ? amp / std::abs(c) : std::numeric_limits<double>::infinity();
    r.offset_err = std::sqrt(cov(0, 0));
    if (amp > 0.0) {
        const Eigen::Vector3d d_amp(0.0, a / amp, b / amp);
        const Eigen::Vector3d d_phase(0.0, b / (amp * amp), -a / (amp * amp));
        r.amplitude_err = std::sqrt(d_amp.dot(cov * d_amp));
        r.phase_err = std::sqrt(d_phase.dot(cov * d_phase));
    } else {
        r.amplitude_err = std::sqrt(0.5 * (cov(1, 1) + cov(2, 2)));
        r.phase_err = std::numbers::pi;
    }
    if (c != 0.0) {
        const Eigen::Vector3d d_vis = amp > 0.0 ? Eigen::Vector3d(-amp / (c * c), a / (amp * c), b / (amp * c))
                                                : Eigen::Vector3d(0.0, 0.0, 0.0);
        r.visibility_err = amp > 0.0 ? std::sqrt(d_vis.dot(cov * d_vis)) : r.amplitude_err / std::abs(c);
    } else {
        r.visibility_err = std::numeric_limits<double>::infinity();
    }
    r.unphysical = r.visibility > 1.0 + 3.0 * r.visibility_err;
    return r;
}

SubtractionResult subtract_triple_pair(const FringeTable &fringe, double herald_singles_prob) {
    if (!(herald_singles_prob >= 0.0 && herald_singles_prob <= 1.0)) {
        throw Error(ErrorCode::kOutOfRange, "herald singles probability must lie in [0, 1]");
    }
    SubtractionResult out;
    out.table = fringe;
    auto correct = [&](double raw, double background, double where, const char *col) {
        const double v = raw - herald_singles_prob * background;
        if (v < 0.0 && -v > 0.05 * std::abs(raw)) {
            out.warnings.push_back(std::string("negative-rate-warning: ") + col + " at hwp3_deg " + fmt(where) +
                                   " clamped from " + fmt(v) + " to 0");
        }
        return std::max(v, 0.0);
    };
    for (auto &r : out.table.rows) {
        r.p_fourfold = correct(r.p_fourfold, r.p_threefold_unheralded, r.hwp3_deg, "p_fourfold");
        if (r.c_fourfold && r.c_threefold_unheralded) {
            r.c_fourfold = correct(*r.c_fourfold, *r.c_threefold_unheralded, r.hwp3_deg, "c_fourfold");
        }
    }
    return out;
}

FidelityBound fidelity_lower_bound(double visibility, double population_factor) {
    if (!(visibility >= 0.0 && visibility <= 1.0)) {
        throw Error(ErrorCode::kOutOfRange, "visibility must lie in [0, 1]");
    }
    if (!(population_factor >= 0.0 && population_factor <= 1.0)) {
        throw Error(ErrorCode::kOutOfRange, "population factor must lie in [0, 1]");
    }
    FidelityBound fb;
    fb.visibility = visibility;
    fb.population_factor = population_factor;
    fb.fidelity = population_factor * (1.0 + visibility) / 2.0;
    fb.model =
        "noon-subspace: population P in {|N,0>,|0,N>}, phase-matched coherence |rho_off| >= V P / 2; "
        "F >= P (1 + V) / 2";
    return fb;
}

void FomInput::validate() const {
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "gamma must lie in (0, 1)");
    }
    if (scheme == FomScheme::PairPlusCoherent && !(alpha > 0.0)) {
        throw Error(ErrorCode::kInvalidParameter, "alpha must be positive for the pair-plus-coherent scheme");
    }
}

double fom_ratio_approx(const FomInput &f) {
    f.validate();
    if (f.scheme == FomScheme::DoublePair) {
        return 1.0 / f.gamma;
    }
    return 1.0 / (f.gamma / f.alpha + f.alpha / 2.0);
}

FomExact fom_probabilities_approx(const FomInput &f) {
    f.validate();
    FomExact e;
    if (f.scheme == FomScheme::DoublePair) {
        e.p_exact = f.gamma * f.gamma;
        e.p_surplus = f.gamma * f.gamma * f.gamma;
    } else {
        e.p_exact = f.gamma * f.alpha;
        e.p_surplus = f.gamma * f.gamma + f.gamma * f.alpha * f.alpha / 2.0;
    }
    e.ratio = fom_ratio_approx(f);
    return e;
}

FomExact fom_ratio_exact(const FomInput &f, PairKind kind, int n_max_pairs) {
    f.validate();
    if (kind == PairKind::FixedN) {
        throw Error(ErrorCode::kInvalidParameter, "figure of merit needs a probabilistic pair source");
    }
    if (n_max_pairs < 3) {
        throw Error(ErrorCode::kInvalidParameter, "truncation must keep at least 3 pairs");
    }
    PairDistribution pairs{kind, f.gamma, 0, n_max_pairs};
    auto w = [&](int n) { return pairs.raw_weight(n); };
    // pairs beyond the truncation
    const double tail = kind == PairKind::Thermal ? std::pow(f.gamma, n_max_pairs + 1)
                                                  : w(n_max_pairs + 1) / (1.0 - f.gamma / (n_max_pairs + 2));
    FomExact e;
    if (f.scheme == FomScheme::DoublePair) {
        e.p_exact = w(2);
        for (int n = n_max_pairs; n >= 3; --n) {
            e.p_surplus += w(n);
        }
        e.p_surplus += tail;
    } else {
        e.p_exact = w(1) * poisson_pmf(f.alpha, 1);
        double coherent_two_plus = 0.0;
        for (int m = 200; m >= 2; --m) {
            coherent_two_plus += poisson_pmf(f.alpha, m);
        }
        double two_plus_pairs = tail;
        for (int n = n_max_pairs; n >= 2; --n) {
            two_plus_pairs += w(n);
        }
        e.p_surplus = w(1) * coherent_two_plus + two_plus_pairs;
    }
    e.ratio = e.p_exact / e.p_surplus;
    return e;
}

std::vector<std::pair<double, double>> hom_scan(const OverlapModel &model, std::span<const double> delays) {
    model.validate();
    auto registry = make_registry(ModeRegistry::for_paths({Path::upper(), Path::lower(), Path::main()}, 2));
    const FockState pair = spdc_state(PairDistribution::fixed(1), registry, 2);
    const std::vector<SingleParticleUnitary> chain{
        polarization_flip(Path::upper()),
        pbs_unitary(Path::lower(), Path::upper()),
        path_swap(Path::lower(), Path::main()),
        waveplate_unitary(WavePlate::half_wave(std::numbers::pi / 8)),
    };
    const auto h = registry->modes_on(Path::main(), Pol::H);
    const auto v = registry->modes_on(Path::main(), Pol::V);
    std::vector<std::pair<double, double>> out;
    for (double tau : delays) {
        FockState s = apply_overlap(pair, model, tau);
        for (const auto &u : chain) {
            s = apply_unitary(s, lift_internal(u, *registry));
        }
        // one photon in each polarization, internal labels summed
        double coincidence = 0.0;
        std::vector<ModeId> observed = h;
        observed.insert(observed.end(), v.begin(), v.end());
        for (const auto &[occ, p] : marginal_distribution(s, observed)) {
            int nh = 0, nv = 0;
            for (std::size_t i = 0; i < h.size(); ++i) nh += occ[i];
            for (std::size_t i = h.size(); i < occ.size(); ++i) nv += occ[i];
            if (nh == 1 && nv == 1) {
                coincidence += p;
            }
        }
        out.emplace_back(tau, coincidence);
    }
    return out;
}

double hom_dip_visibility(const OverlapModel &model) {
    OverlapModel none = model;
    none.xi = 0.0;
    const double delays[] = {0.0};
    const double dip = hom_scan(model, delays).front().second;
    const double plateau = hom_scan(none, delays).front().second;
    return (plateau - dip) / plateau;
}

std::vector<std::pair<double, double>> hwp2_calibration_scan(const Noon3Params &params,
                                                            std::span<const double> hwp2_angles) {
    Noon3Params p = params;
    p.qwp2_angle = std::numbers::pi / 4;
    p.qwp3_angle = 0.0;
    p.hwp3_angle = 0.0;
    p.hwp2_angle = 0.0;
    const CircuitPreset preset = preset_noon3(p);
    FockState before_hwp2 = preset.input;
    for (std::size_t i = 0; i + 1 < preset.elements.size(); ++i) {
        before_hwp2 = apply_element(before_hwp2, preset.elements[i]);
    }
    std::vector<std::pair<double, double>> out;
    for (double theta : hwp2_angles) {
        const Element hwp2{"HWP2", waveplate_unitary(WavePlate::half_wave(theta, Path::main()))};
        const FockState s = analyze(preset, apply_element(before_hwp2, hwp2), 0.0);
        out.emplace_back(theta, outcome_distribution(preset, s).fourfold());
    }
    return out;
}

double locate_extremum(const std::function<double(double)> &f, double lo, double hi, double step) {
    auto slope = [&](double x) { return f(x + step) - f(x - step); };
    double s_lo = slope(lo), s_hi = slope(hi);
    if (s_lo == 0.0) return lo;
    if (s_hi == 0.0) return hi;
    if ((s_lo > 0.0) == (s_hi > 0.0)) {
        throw Error(ErrorCode::kInvalidParameter, "bracket does not contain an extremum");
    }
    for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double s = slope(mid);
        if (s == 0.0) {
            return mid;
        }
        if ((s > 0.0) == (s_lo > 0.0)) {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace noonsim
