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
#include <numeric>

#include "noonsim/error.hpp"
#include "oracle.hpp"

using namespace noonsim;
using std::numbers::pi;

namespace {

CircuitPreset ideal_noon3(int pairs = 2) {
    Noon3Params p;
    p.source = PairDistribution::fixed(pairs);
    return preset_noon3(p);
}

std::vector<double> grid(int n, double span_deg) {
    std::vector<double> out;
    for (int i = 0; i < n; ++i) out.push_back(deg_to_rad(span_deg * i / n));
    return out;
}

}  // namespace

TEST_SUITE("detection") {
    TEST_CASE("click probability") {
        const DetectorModel d{0.6, 0.01, false};
        CHECK(d.click_probability(0) == doctest::Approx(0.01));
        CHECK(d.click_probability(2) == doctest::Approx(1.0 - 0.99 * 0.16));
        const DetectorModel r{0.5, 0.0, true};
        CHECK(r.report_probability(2, 1) == doctest::Approx(0.5));
        CHECK(r.report_probability(2, 2) == doctest::Approx(0.25));
        CHECK_THROWS_AS((DetectorModel{1.5, 0.0, false}.validate()), Error);
    }

    TEST_CASE("coupler chain routing") {
        const auto p = cascade_probs(SplitterCascade{});
        REQUIRE(p.size() == 3);
        CHECK(std::abs(p[0] - 0.43) < 1e-15);
        CHECK(std::abs(p[1] - 0.2451) < 1e-15);
        CHECK(std::abs(p[2] - 0.3249) < 1e-15);
        CHECK_THROWS_AS(cascade_probs(SplitterCascade{{0.5, 1.2}}), Error);
    }

    TEST_CASE("click patterns agree with explicit Fock-mode routing") {
        const SplitterCascade c{{0.43, 0.43}};
        const std::vector<double> eta{0.9, 0.6, 0.75};
        std::vector<DetectorModel> dets;
        for (double e : eta) dets.push_back({e, 0.0, false});
        for (int n = 0; n <= 4; ++n) {
            const auto got = cascade_pattern_distribution(n, c, dets);
            const auto want = oracle::cascade_by_modes(n, c.ratios, eta);
            REQUIRE(got.size() == want.size());
            for (std::size_t m = 0; m < got.size(); ++m) {
                CHECK(std::abs(got[m] - want[m]) < 1e-12);
            }
            CHECK(std::accumulate(got.begin(), got.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("three photons on three distinct counters") {
        const CountDistribution three{{3, 1.0}};
        const int req[] = {0, 1, 2};
        const double p = kfold_coincidence_prob(three, SplitterCascade{}, DetectorModel{}, req);
        CHECK(std::abs(p - 6 * 0.43 * 0.2451 * 0.3249) < 1e-12);
        const CountDistribution two{{2, 1.0}};
        CHECK(kfold_coincidence_prob(two, SplitterCascade{}, DetectorModel{}, req) == 0.0);
    }

    TEST_CASE("herald on click") {
        const auto p = ideal_noon3();
        const auto prepared = prepare(p);
        const auto modes = p.herald_modes(0);
        const auto ens = herald_on_click(prepared, modes, DetectorModel{});
        double w = 0.0;
        for (const auto &[weight, st] : ens.components) {
            w += weight;
            CHECK(st.norm_squared() == doctest::Approx(1.0));
        }
        CHECK(w == doctest::Approx(1.0));
        CHECK(ens.herald_probability == doctest::Approx(herald_click_probability(p, prepared)));
        CHECK(ens.herald_probability == doctest::Approx(16.0 / 27));

        auto reg = make_registry(ModeRegistry::for_paths({Path::main(), Path::herald(0)}));
        const auto vac = FockState::vacuum(reg);
        try {
            herald_on_click(vac, reg->modes_on(Path::herald(0)), DetectorModel{});
            FAIL("expected throw");
        } catch (const Error &e) {
            CHECK(e.code() == ErrorCode::kZeroProbabilityBranch);
        }
    }

    TEST_CASE("outcome probabilities sum to one") {
        Noon3Params params;
        params.source = PairDistribution::thermal(0.05, 3);
        params.ppbs = {0.99, 0.31, 0.0, Path::main(), Path::herald(0)};
        params.herald_detector = {0.7, 1e-3, false};
        params.cascade_detectors = {{0.6, 0.0, false}, {0.5, 1e-4, false}, {0.8, 0.0, false}};
        const auto p = preset_noon3(params);
        const auto prepared = prepare(p);
        for (double beta : {0.0, 0.4, 1.0}) {
            const auto d = outcome_distribution(p, analyze(p, prepared, beta));
            CHECK(std::accumulate(d.probs.begin(), d.probs.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(d.herald_singles() == doctest::Approx(herald_click_probability(p, prepared)).epsilon(1e-10));
        }
    }

    TEST_CASE("ideal fourfold fringe matches the closed form") {
        const auto p = ideal_noon3();
        const auto angles = grid(24, 90.0);
        const auto t = fringe_scan(p, angles);
        for (std::size_t i = 0; i < angles.size(); ++i) {
            CHECK(std::abs(t.rows[i].p_fourfold - oracle::noon3_fourfold(pi / 4, angles[i], {0.43, 0.43})) < 1e-10);
            CHECK(t.rows[i].phase_deg == doctest::Approx(4 * t.rows[i].hwp3_deg));
        }
    }

    TEST_CASE("fringe CSV round trip") {
        const auto p = ideal_noon3();
        const auto angles = grid(7, 90.0);
        const auto t = mc_sample_counts(p, angles, 5000, 3, 2);
        const auto back = FringeTable::from_csv(t.to_csv());
        CHECK(back.to_csv() == t.to_csv());
        CHECK(back.has_counts());
        const auto analytic = fringe_scan(p, angles);
        CHECK_FALSE(FringeTable::from_csv(analytic.to_csv()).has_counts());
        CHECK_THROWS_AS(FringeTable::from_csv(analytic.to_csv()).column("c_fourfold"), Error);
        CHECK_THROWS_AS(FringeTable::from_csv("hwp3_deg,phase_deg\n1,2\n"), Error);
        CHECK_THROWS_AS(FringeTable::from_csv(""), Error);
        CHECK_THROWS_AS(analytic.column("nonsense"), Error);
    }

    TEST_CASE("quoted CSV fields") {
        const std::string text =
            "\"hwp3_deg\",phase_deg,p_twofold,p_threefold_unheralded,p_fourfold,c_twofold,c_threefold_unheralded,"
            "c_fourfold\r\n\"1.5\",6,0.1,0.2,0.3,,,\r\n";
        const auto t = FringeTable::from_csv(text);
        REQUIRE(t.rows.size() == 1);
        CHECK(t.rows[0].hwp3_deg == 1.5);
        CHECK_FALSE(t.rows[0].c_fourfold);
    }

    TEST_CASE("Monte Carlo is independent of the worker count") {
        const auto p = ideal_noon3();
        const auto angles = grid(5, 90.0);
        const auto a = mc_sample_counts(p, angles, 200000, 42, 1).to_csv();
        const auto b = mc_sample_counts(p, angles, 200000, 42, 3).to_csv();
        const auto c = mc_sample_counts(p, angles, 200000, 43, 3).to_csv();
        CHECK(a == b);
        CHECK(a != c);
        CHECK(pulse_uniform(1, 2, 3) == pulse_uniform(1, 2, 3));
        CHECK(pulse_uniform(1, 2, 3) != pulse_uniform(1, 2, 4));
    }
}
