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
#include <numeric>

#include "noonsim/analysis.hpp"
#include "noonsim/error.hpp"

using namespace noonsim;

TEST_SUITE("sources") {
    TEST_CASE("thermal weights are geometric and renormalized") {
        const auto d = PairDistribution::thermal(0.1, 3);
        const auto w = d.weights();
        REQUIRE(w.size() == 4);
        CHECK(std::accumulate(w.begin(), w.end(), 0.0) == doctest::Approx(1.0));
        CHECK(w[1] / w[0] == doctest::Approx(0.1));
        CHECK(w[3] / w[2] == doctest::Approx(0.1));
        CHECK(d.raw_weight(2) == doctest::Approx(0.9 * 0.01));
    }

    TEST_CASE("poissonian and fixed weights") {
        const auto p = PairDistribution::poissonian(0.5, 4);
        CHECK(p.raw_weight(2) == doctest::Approx(std::exp(-0.5) * 0.125));
        const auto w = PairDistribution::fixed(2).weights();
        CHECK(w.back() == 1.0);
        CHECK(w[0] == 0.0);
        const auto zero = PairDistribution::thermal(0.0, 3).weights();
        CHECK(zero[0] == 1.0);
    }

    TEST_CASE("invalid source parameters") {
        CHECK_THROWS_AS(PairDistribution::thermal(1.0, 3).validate(), Error);
        CHECK_THROWS_AS(PairDistribution::thermal(-0.1, 3).validate(), Error);
        CHECK_THROWS_AS(PairDistribution::fixed(-1).validate(), Error);
        CHECK_THROWS_AS((OverlapModel{1.2, 1.0}.validate()), Error);
        CHECK_THROWS_AS((OverlapModel{0.5, 0.0}.validate()), Error);
    }

    TEST_CASE("pair state amplitudes") {
        auto reg = make_registry(ModeRegistry::for_paths({Path::upper(), Path::lower()}));
        const auto d = PairDistribution::thermal(0.2, 2);
        const auto s = spdc_state(d, reg);
        const auto w = d.weights();
        const ModeId u{Path::upper(), Pol::H}, l{Path::lower(), Pol::H};
        for (int n = 0; n <= 2; ++n) {
            CHECK(std::norm(s.amplitude({{u, n}, {l, n}})) == doctest::Approx(w[n]));
        }
        CHECK_THROWS_AS(spdc_state(PairDistribution::thermal(0.2, 4), reg, 6), Error);
    }

    TEST_CASE("coherent pulse mean photon number") {
        auto reg = make_registry(ModeRegistry::for_paths({Path::main()}));
        const ModeId m{Path::main(), Pol::H};
        const auto s = coherent_pulse(0.3, m, reg, 8);
        double mean = 0.0;
        for (const auto &[n, p] : total_count_distribution(s, std::vector<ModeId>{m})) mean += n * p;
        CHECK(mean == doctest::Approx(0.3).epsilon(1e-6));
    }

    TEST_CASE("overlap model") {
        const OverlapModel m{0.9, 2.0};
        CHECK(m.overlap(0.0) == doctest::Approx(0.9));
        CHECK(m.overlap(2.0) == doctest::Approx(0.9 * std::exp(-1.0)));
    }

    TEST_CASE("partial overlap preserves the norm") {
        auto reg = make_registry(ModeRegistry::for_paths({Path::upper(), Path::lower()}, 2));
        const auto s = spdc_state(PairDistribution::fixed(2), reg);
        const auto t = apply_overlap(s, {0.6, 1.0}, 0.0);
        CHECK(t.norm_squared() == doctest::Approx(1.0).epsilon(1e-13));
        auto single = make_registry(ModeRegistry::for_paths({Path::upper(), Path::lower()}));
        CHECK_THROWS_AS(apply_overlap(spdc_state(PairDistribution::fixed(1), single), {0.6, 1.0}, 0.0), Error);
    }

    TEST_CASE("HOM dip follows the wave-packet overlap") {
        for (double xi2 : {1.0, 0.97, 0.5}) {
            const OverlapModel m{std::sqrt(xi2), 1.0};
            CHECK(std::abs(hom_dip_visibility(m) - xi2) < 1e-10);
            const double delays[] = {0.0, 5.0};
            const auto scan = hom_scan(m, delays);
            CHECK(std::abs(scan[0].second - (1.0 - xi2) / 2.0) < 1e-12);
            CHECK(std::abs(scan[1].second - 0.5) < 1e-10);
        }
    }
}
