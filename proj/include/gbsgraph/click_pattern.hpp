// Copyright 2026 The gbsgraph Authors
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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gbsgraph {

/// Threshold-detector outcome over M <= 64 modes; bit i set means mode i clicked.
class ClickPattern {
   public:
    static constexpr std::size_t kMaxModes = 64;

    ClickPattern() = default;
    /// All-dark pattern over `modes` modes.
    explicit ClickPattern(std::size_t modes);
    ClickPattern(std::size_t modes, std::uint64_t bits);

    /// Parses an M-character string of '0'/'1'; character i is mode i.
    static ClickPattern from_string(std::string_view text);
    static ClickPattern from_modes(std::size_t modes, const std::vector<std::size_t>& clicked);

    std::size_t modes() const { return modes_; }
    std::uint64_t bits() const { return bits_; }
    std::size_t clicks() const { return static_cast<std::size_t>(std::popcount(bits_)); }

    bool clicked(std::size_t mode) const { return ((bits_ >> mode) & 1U) != 0; }
    void set(std::size_t mode, bool value);

    /// Clicked modes in increasing order.
    std::vector<std::size_t> clicked_modes() const;
    std::string to_string() const;

    bool operator==(const ClickPattern&) const = default;

   private:
    std::size_t modes_ = 0;
    std::uint64_t bits_ = 0;
};

}  // namespace gbsgraph
