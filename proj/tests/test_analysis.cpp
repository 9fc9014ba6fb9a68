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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "noonsim/analysis.hpp"
#include "noonsim/error.hpp"

using namespace noonsim;
using std::numbers::pi;

namespace {

std::vector<double> phases(int n) {
    std::vector<double> x;
    for (int i = 0; i < n; ++i) x.push_back(2 * pi * i / n);
    return x;
}

}  // namespace

TEST_SUITE("analysis") {
    TEST_CASE("exact sinusoid is recovered") {
        const auto x = phases(19);
        std::vector<double> y;
        for (double v : x) y.push_back(3.0 + 1.5 * std::cos(3 * v + 0.4));
        const auto f = fit_fixed_freq(x, y, 3, Weighting::Uniform);
        CHECK(f.offset == doctest::Approx(3.0));
        CHECK(f.amplitude == doctest::Approx(1.5));
        CHECK(f.phase == doctest::Approx(0.4));
        CHECK(f.visibility == doctest::Approx(0.5));
        CHECK(f.residual_rms < 1e-12);
        CHECK(f.points == 19);
        const auto wrong = fit_fixed_freq(x, y, 2, Weighting::Uniform);
        CHECK(wrong.amplitude < 1e-12);
        CHECK(f.to_record().find("visibility = 0.5") != std::string::npos);
    }

    TEST_CASE("degenerate phase sets") {
        const std::vector<double> x(6, 0.3);
        const std::vector<double> y{1, 2, 3, 4, 5, 6};
        try {
            fit_fixed_freq(x, y, 1, Weighting::Uniform);
            FAIL("expected throw");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::kRankDeficient);
        }
        const std::vector<double> half{0.0, pi, 2 * pi, 3 * pi};
        CHECK_THROWS_AS(fit_fixed_freq(half, std::vector<double>{1, 2, 1, 2}, 1, Weighting::Uniform), Error);
        CHECK_THROWS_AS(fit_fixed_freq(phases(3), std::vector<double>{1, 2, 3}, 1, Weighting::Uniform), Error);
    }

    TEST_CASE("Poisson-weighted errors cover the truth") {
        std::mt19937_64 rng(2024);
        const auto x = phases(19);
        const double v_true = 0.91, peak = 60.0;
        const double offset = peak / (1.0 + v_true);
        int inside = 0;
        double mean_v = 0.0;
        const int trials = 1000;
        for (int t = 0; t < trials; ++t) {
            std::vector<double> y;
            for (double v : x) {
                std::poisson_distribution<int> pois(offset * (1.0 + v_true * std::cos(3 * v)));
                y.push_back(pois(rng));
            }
            const auto f = fit_fixed_freq(x, y, 3, Weighting::Poisson);
            if (std::abs(f.visibility - v_true) <= 3.0 * f.visibility_err) ++inside;
            mean_v += f.visibility / trials;
        }
        // Weights from observed counts pull the offset down, so V comes out about 0.02 high
        // and 3-sigma coverage lands near 94%.
        CHECK(inside >= 0.93 * trials);
        CHECK(mean_v > v_true);
        CHECK(mean_v < v_true + 0.03);
    }

    TEST_CASE("triple-pair subtraction") {
        FringeTable t;
        for (int i = 0; i < 6; ++i) {
            FringeRow r;
            r.hwp3_deg = 15.0 * i;
            r.phase_deg = 60.0 * i;
            r.p_fourfold = 1e-6 * (1 + i);
            r.p_threefold_unheralded = 1e-3;
            r.c_fourfold = 10.0 + i;
            r.c_threefold_unheralded = 2000.0;
            r.c_twofold = 5.0;
            t.rows.push_back(r);
        }
        const auto same = subtract_triple_pair(t, 0.0);
        CHECK(same.table.to_csv() == t.to_csv());
        CHECK(same.warnings.empty());
        const auto sub = subtract_triple_pair(t, 2e-3);
        CHECK(sub.table.rows[2].p_fourfold == doctest::Approx(1e-6));
        CHECK(*sub.table.rows[0].c_fourfold == 6.0);
        const auto clamped = subtract_triple_pair(t, 0.5);
        CHECK(clamped.table.rows[0].p_fourfold == 0.0);
        CHECK_FALSE(clamped.warnings.empty());
        CHECK_THROWS_AS(subtract_triple_pair(t, 1.5), Error);
    }

    TEST_CASE("fidelity bound never exceeds the true fidelity") {
        std::mt19937_64 rng(5);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 500; ++i) {
            const double p = u(rng);
            const double c = u(rng) * std::sqrt(p * (1.0 - p));
            const double leak = 0.8 + 0.2 * u(rng);
            const double v = 2.0 * c;
            const double truth = leak * (0.5 + c);
            const auto b = fidelity_lower_bound(v, leak);
            CHECK(b.fidelity <= truth + 1e-12);
        }
        CHECK(fidelity_lower_bound(0.72).fidelity == doctest::Approx(0.86));
        CHECK_THROWS_AS(fidelity_lower_bound(-0.1), Error);
        CHECK_THROWS_AS(fidelity_lower_bound(0.5, 1.2), Error);
    }

    TEST_CASE("figure of merit") {
        CHECK(fom_ratio_approx({FomScheme::DoublePair, 0.05, 0.0}) == doctest::Approx(20.0));
        CHECK(fom_ratio_approx({FomScheme::PairPlusCoherent, 0.05, 0.2}) == doctest::Approx(1.0 / 0.35));
        CHECK(fom_ratio_exact({FomScheme::DoublePair, 0.05, 0.0}).ratio == doctest::Approx(19.0).epsilon(1e-12));
        const FomInput hybrid{FomScheme::PairPlusCoherent, 0.005, 0.1};
        const double ex = fom_ratio_exact(hybrid).ratio;
        const double ap = fom_ratio_approx(hybrid);
        CHECK(std::abs(ex - ap) / ap < 0.10);
        CHECK_THROWS_AS(fom_ratio_approx({FomScheme::PairPlusCoherent, 0.05, 0.0}), Error);
        CHECK_THROWS_AS(fom_ratio_exact({FomScheme::DoublePair, 0.05, 0.0}, PairKind::FixedN), Error);
    }

    TEST_CASE("HWP2 calibration curve") {
        Noon3Params params;
        std::vector<double> angles;
        for (int i = 0; i < 16; ++i) angles.push_back(deg_to_rad(5.625 * i));
        const auto scan = hwp2_calibration_scan(params, angles);
        const double top = scan.front().second;
        for (const auto &[a, p] : scan) {
            const double s = std::sin(4 * a);
            CHECK(p == doctest::Approx(top * (1.0 - 0.75 * s * s)).epsilon(1e-10));
        }
    }

    TEST_CASE("extremum refinement") {
        auto f = [](double x) { return std::cos(x - 0.3); };
        CHECK(std::abs(locate_extremum(f, 0.1, 0.5) - 0.3) < 1e-12);
        CHECK_THROWS_AS(locate_extremum(f, 1.0, 1.5), Error);
    }
}
