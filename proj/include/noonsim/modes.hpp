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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace noonsim {

enum class Pol : std::uint8_t { H, V };

enum class PathKind : std::uint8_t { Upper, Lower, Main, Herald, Loss, Detector };

/// A spatial path. `index` distinguishes numbered paths (herald-k, loss-k, detector-k).
struct Path {
    PathKind kind = PathKind::Main;
    int index = 0;

    static constexpr Path upper() { return {PathKind::Upper, 0}; }
    static constexpr Path lower() { return {PathKind::Lower, 0}; }
    static constexpr Path main() { return {PathKind::Main, 0}; }
    static constexpr Path herald(int k = 0) { return {PathKind::Herald, k}; }
    static constexpr Path loss(int k) { return {PathKind::Loss, k}; }
    static constexpr Path detector(int k) { return {PathKind::Detector, k}; }

    auto operator<=>(const Path &) const = default;
};

/// One bosonic mode: spatial path, polarization and an internal (temporal/spectral) label.
struct ModeId {
    Path path;
    Pol pol = Pol::H;
    int internal = 0;

    auto operator<=>(const ModeId &) const = default;
};

std::string to_string(Path path);
std::string to_string(ModeId mode);

/// Fixed ordering of the modes a state lives on. Lookups of unregistered modes throw.
class ModeRegistry {
   public:
    ModeRegistry() = default;
    explicit ModeRegistry(std::vector<ModeId> modes);

    /// Registers (path, H/V) for every path and every internal label in `internal_labels`.
    static ModeRegistry for_paths(const std::vector<Path> &paths, int internal_labels = 1);

    std::size_t size() const { return modes_.size(); }
    const std::vector<ModeId> &modes() const { return modes_; }
    const ModeId &operator[](std::size_t i) const { return modes_[i]; }

    bool contains(const ModeId &mode) const { return index_.count(mode) != 0; }
    std::optional<std::size_t> find(const ModeId &mode) const;
    std::size_t index(const ModeId &mode) const;

    /// Every registered mode on `path` (any polarization, any internal label).
    std::vector<ModeId> modes_on(Path path) const;
    /// Every registered mode on `path` with polarization `pol` (any internal label).
    std::vector<ModeId> modes_on(Path path, Pol pol) const;
    int internal_label_count() const;

    ModeRegistry without(const ModeId &mode) const;

    bool operator==(const ModeRegistry &other) const { return modes_ == other.modes_; }

   private:
    std::vector<ModeId> modes_;
    std::map<ModeId, std::size_t> index_;
};

}  // namespace noonsim
