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

#include "noonsim/modes.hpp"

#include <algorithm>
#include <set>

#include "noonsim/error.hpp"

namespace noonsim {

const char *error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kTruncationExceeded:
            return "truncation-exceeded";
        case ErrorCode::kRegistryMismatch:
            return "registry-mismatch";
        case ErrorCode::kUnknownMode:
            return "unknown-mode";
        case ErrorCode::kNotUnitary:
            return "not-unitary";
        case ErrorCode::kInvalidParameter:
            return "invalid-parameter";
        case ErrorCode::kZeroProbabilityBranch:
            return "zero-probability-branch";
        case ErrorCode::kRankDeficient:
            return "rank-deficient";
        case ErrorCode::kOutOfRange:
            return "out-of-range";
        case ErrorCode::kConfig:
            return "config-error";
        case ErrorCode::kParse:
            return "parse-error";
    }
    return "error";
}

std::string to_string(Path path) {
    switch (path.kind) {
        case PathKind::Upper:
            return "upper";
        case PathKind::Lower:
            return "lower";
        case PathKind::Main:
            return "main";
        case PathKind::Herald:
            return "herald-" + std::to_string(path.index);
        case PathKind::Loss:
            return "loss-" + std::to_string(path.index);
        case PathKind::Detector:
            return "detector-" + std::to_string(path.index);
    }
    return "?";
}

std::string to_string(ModeId mode) {
    std::string s = to_string(mode.path);
    s += mode.pol == Pol::H ? "-H" : "-V";
    if (mode.internal != 0) {
        s += "#" + std::to_string(mode.internal);
    }
    return s;
}

ModeRegistry::ModeRegistry(std::vector<ModeId> modes) : modes_(std::move(modes)) {
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (!index_.emplace(modes_[i], i).second) {
            throw Error(ErrorCode::kInvalidParameter, "mode registered twice: " + to_string(modes_[i]));
        }
    }
}

ModeRegistry ModeRegistry::for_paths(const std::vector<Path> &paths, int internal_labels) {
    if (internal_labels < 1) {
        throw Error(ErrorCode::kInvalidParameter, "need at least one internal label");
    }
    std::vector<ModeId> modes;
    for (int label = 0; label < internal_labels; ++label) {
        for (const auto &path : paths) {
            modes.push_back({path, Pol::H, label});
            modes.push_back({path, Pol::V, label});
        }
    }
    return ModeRegistry(std::move(modes));
}

std::optional<std::size_t> ModeRegistry::find(const ModeId &mode) const {
    auto it = index_.find(mode);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t ModeRegistry::index(const ModeId &mode) const {
    auto it = index_.find(mode);
    if (it == index_.end()) {
        throw Error(ErrorCode::kUnknownMode, to_string(mode));
    }
    return it->second;
}

std::vector<ModeId> ModeRegistry::modes_on(Path path) const {
    std::vector<ModeId> out;
    std::copy_if(modes_.begin(), modes_.end(), std::back_inserter(out),
                 [&](const ModeId &m) { return m.path == path; });
    return out;
}

std::vector<ModeId> ModeRegistry::modes_on(Path path, Pol pol) const {
    std::vector<ModeId> out;
    std::copy_if(modes_.begin(), modes_.end(), std::back_inserter(out),
                 [&](const ModeId &m) { return m.path == path && m.pol == pol; });
    return out;
}

int ModeRegistry::internal_label_count() const {
    std::set<int> labels;
    for (const auto &m : modes_) {
        labels.insert(m.internal);
    }
    return static_cast<int>(labels.size());
}

ModeRegistry ModeRegistry::without(const ModeId &mode) const {
    index(mode);
    std::vector<ModeId> rest;
    for (const auto &m : modes_) {
        if (m != mode) {
            rest.push_back(m);
        }
    }
    return ModeRegistry(std::move(rest));
}

}  // namespace noonsim
