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

#include <vector>

namespace noonsim {

/// Single-photon counter. Binary (click / no click) unless `number_resolving`.
struct DetectorModel {
    double efficiency = 1.0;
    double dark_prob = 0.0;
    bool number_resolving = false;

    void validate() const;
    /// 1 - (1 - dark)(1 - efficiency)^n
    double click_probability(int photons) const;
    /// Probability that a number-resolving counter reports exactly `reported` given `photons`
    /// incident: binomial loss, plus at most one dark count.
    double report_probability(int photons, int reported) const;
};

/// Chain of two-way fiber couplers. Coupler i sends `ratios[i]` of what reaches it to
/// detector i and passes the rest on; the last coupler's remainder feeds the final detector.
struct SplitterCascade {
    std::vector<double> ratios{0.43, 0.43};

    void validate() const;
    std::size_t detector_count() const { return ratios.size() + 1; }
};

/// Single-photon routing probability to each detector of the cascade.
std::vector<double> cascade_probs(const SplitterCascade &cascade);

}  // namespace noonsim
