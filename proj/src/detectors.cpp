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

#include "noonsim/detectors.hpp"

#include <cmath>

#include "noonsim/error.hpp"

namespace noonsim {

void DetectorModel::validate() const {
    if (!(efficiency >= 0.0 && efficiency <= 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "detector efficiency must lie in [0, 1]");
    }
    if (!(dark_prob >= 0.0 && dark_prob < 1.0)) {
        throw Error(ErrorCode::kInvalidParameter, "dark-count probability must lie in [0, 1)");
    }
}

double DetectorModel::click_probability(int photons) const {
    return 1.0 - (1.0 - dark_prob) * std::pow(1.0 - efficiency, photons);
}

double DetectorModel::report_probability(int photons, int reported) const {
    auto detected = [&](int d) {
        if (d < 0 || d > photons) {
            return 0.0;
        }
        return std::exp(std::lgamma(photons + 1.0) - std::lgamma(d + 1.0) - std::lgamma(photons - d + 1.0)) *
               std::pow(efficiency, d) * std::pow(1.0 - efficiency, photons - d);
    };
    return (1.0 - dark_prob) * detected(reported) + dark_prob * detected(reported - 1);
}

void SplitterCascade::validate() const {
    for (double r : ratios) {
        if (!(r >= 0.0 && r <= 1.0)) {
            throw Error(ErrorCode::kInvalidParameter, "coupler ratios must lie in [0, 1]");
        }
    }
}

std::vector<double> cascade_probs(const SplitterCascade &cascade) {
    cascade.validate();
    std::vector<double> p;
    double remaining = 1.0;
    for (double r : cascade.ratios) {
        p.push_back(remaining * r);
        remaining *= 1.0 - r;
    }
    p.push_back(remaining);
    return p;
}

}  // namespace noonsim
