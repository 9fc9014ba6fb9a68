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

#include "noonsim/circuit.hpp"
#include "noonsim/error.hpp"
#include "oracle.hpp"

using namespace noonsim;
using std::numbers::pi;

namespace {

const ModeId kH{Path::main(), Pol::H};
const ModeId kV{Path::main(), Pol::V};
const ModeId kRH{Path::herald(0), Pol::H};
const ModeId kRV{Path::herald(0), Pol::V};

double max_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) { return (a - b).cwiseAbs().maxCoeff(); }

/// Main-path state right after the named element of the preset.
FockState state_after(const CircuitPreset &p, const std::string &name) {
    FockState s = p.input;
    for (const auto &e : p.elements) {
        s = apply_element(s, e);
        if (e.name == name) break;
    }
    return s;
}

}  // namespace

TEST_SUITE("elements") {
    TEST_CASE("wave plates match the elementwise retarder") {
        for (double delta : {pi, pi / 2, 0.7}) {
            for (double theta : {0.0, 0.3, pi / 8, pi / 4, 1.9}) {
                CHECK(max_diff(waveplate_matrix(delta, theta), oracle::retarder(delta, theta)) < 1e-14);
            }
        }
        CHECK_THROWS_AS(waveplate_unitary({0.0, 0.0, Path::main()}), Error);
    }

    TEST_CASE("half-wave plate at 45 degrees exchanges H and V") {
        const auto m = waveplate_matrix(pi, pi / 4);
        CHECK(std::abs(m(0, 0)) < 1e-15);
        CHECK(std::abs(std::abs(m(1, 0)) - 1.0) < 1e-15);
        const auto q = waveplate_matrix(pi / 2, pi / 4);
        CHECK(std::abs(std::norm(q(0, 0)) - 0.5) < 1e-15);
        CHECK(std::abs(std::norm(q(1, 0)) - 0.5) < 1e-15);
    }

    TEST_CASE("PBS keeps H and swaps V with phase i") {
        const auto u = pbs_unitary(Path::lower(), Path::upper());
        REQUIRE(u.modes().size() == 4);
        const auto &m = u.matrix();
        CHECK(std::abs(m(0, 0) - 1.0) < 1e-15);
        CHECK(std::abs(m(2, 2) - 1.0) < 1e-15);
        CHECK(std::abs(m(3, 1) - Complex(0, 1)) < 1e-15);
        CHECK(std::abs(m(1, 3) - Complex(0, 1)) < 1e-15);
    }

    TEST_CASE("PPBS splits intensities per polarization") {
        PartialPbs p{0.99, 0.31, 0.4, Path::main(), Path::herald(0)};
        const auto u = ppbs_unitary(p);
        auto reg = make_registry(ModeRegistry::for_paths({Path::main(), Path::herald(0)}));
        const auto h = apply_unitary(FockState::basis(reg, {{kH, 1}}), u);
        const auto v = apply_unitary(FockState::basis(reg, {{kV, 1}}), u);
        CHECK(std::norm(h.amplitude({{kH, 1}})) == doctest::Approx(0.99));
        CHECK(std::norm(h.amplitude({{kRH, 1}})) == doctest::Approx(0.01));
        CHECK(std::norm(v.amplitude({{kV, 1}})) == doctest::Approx(0.31));
        CHECK(std::norm(v.amplitude({{kRV, 1}})) == doctest::Approx(0.69));
        CHECK(std::arg(v.amplitude({{kV, 1}})) == doctest::Approx(0.4));
        CHECK_THROWS_AS(ppbs_unitary({1.5, 0.3, 0.0, Path::main(), Path::herald(0)}), Error);
    }

    TEST_CASE("loss element moves photons to a loss mode") {
        const auto u = loss_element(kV, 0.8, 2);
        REQUIRE(u.modes().size() == 2);
        CHECK(u.modes()[1] == ModeId{Path::loss(2), Pol::V});
        CHECK(std::norm(u.matrix()(0, 0)) == doctest::Approx(0.8));
    }

    TEST_CASE("internal labels see identical optics") {
        auto reg = ModeRegistry::for_paths({Path::main()}, 2);
        const auto lifted = lift_internal(waveplate_unitary(WavePlate::half_wave(0.3)), reg);
        REQUIRE(lifted.modes().size() == 4);
        const auto &m = lifted.matrix();
        CHECK(max_diff(m.block(0, 0, 2, 2), m.block(2, 2, 2, 2)) < 1e-15);
        CHECK(m.block(0, 2, 2, 2).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("merged double pair after HWP1") {
        const auto p = preset_noon3();
        const auto s = state_after(p, "HWP1");
        const Complex a = s.monomial_coefficient({{kH, 4}});
        const Complex b = s.monomial_coefficient({{kH, 2}, {kV, 2}});
        const Complex c = s.monomial_coefficient({{kV, 4}});
        const Complex g = a / std::abs(a);
        CHECK(std::abs(a / g - 1.0 / 8) < 1e-12);
        CHECK(std::abs(b / g + 1.0 / 4) < 1e-12);
        CHECK(std::abs(c / g - 1.0 / 8) < 1e-12);
        CHECK(s.size() == 3);
    }

    TEST_CASE("heralded PPBS output carries twice the birefringent phase") {
        for (double phi : {0.0, 0.3, 1.1}) {
            Noon3Params params;
            params.ppbs.birefringence_phi = phi;
            const auto s = state_after(preset_noon3(params), "PPBS");
            const Complex a = s.monomial_coefficient({{kH, 2}, {kV, 1}, {kRV, 1}});
            const Complex b = s.monomial_coefficient({{kV, 3}, {kRV, 1}});
            const Complex g = -a / std::abs(a);
            CHECK(std::abs(a / g + std::sqrt(2.0) / 6) < 1e-12);
            CHECK(std::abs(b / g - std::sqrt(2.0) / 18 * std::polar(1.0, 2 * phi)) < 1e-12);
        }
    }

    TEST_CASE("heralded state is the three-photon NOON state") {
        for (double phi : {0.0, 0.5}) {
            Noon3Params params;
            params.ppbs.birefringence_phi = phi;
            const auto p = preset_noon3(params);
            const auto h = herald_exactly_one(p, prepare(p));
            CHECK(h.probability == doctest::Approx(4.0 / 27).epsilon(1e-12));
            const auto st = h.pure_state();
            REQUIRE(st);
            const auto target = noon_state(st->registry_ptr(), Path::main(), 3);
            CHECK(std::abs(inner(target, *st)) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    TEST_CASE("four-photon generator") {
        const auto p = preset_noon4();
        const auto h = herald_exactly_one(p, prepare(p));
        CHECK(std::abs(h.probability - 16.0 / 243) < 1e-12);
        const auto st = h.pure_state();
        REQUIRE(st);
        double best = 0.0;
        for (Complex ph : {Complex(1, 0), Complex(-1, 0), Complex(0, 1), Complex(0, -1)}) {
            best = std::max(best, std::abs(inner(noon_state(st->registry_ptr(), Path::main(), 4, ph), *st)));
        }
        CHECK(best == doctest::Approx(1.0).epsilon(1e-12));
    }
}
