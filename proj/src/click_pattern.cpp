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

#include "gbsgraph/click_pattern.hpp"

#include "gbsgraph/error.hpp"

namespace gbsgraph {

ClickPattern::ClickPattern(std::size_t modes) : ClickPattern(modes, 0) {}

ClickPattern::ClickPattern(std::size_t modes, std::uint64_t bits) : modes_(modes), bits_(bits) {
    if (modes > kMaxModes) {
        throw ValidationError("click pattern supports at most 64 modes");
    }
    if (modes < kMaxModes && (bits >> modes) != 0) {
        throw ValidationError("click pattern has bits beyond its mode count");
    }
}

ClickPattern ClickPattern::from_string(std::string_view text) {
    ClickPattern p(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '1') {
            p.bits_ |= std::uint64_t{1} << i;
        } else if (text[i] != '0') {
            throw ValidationError("click pattern character must be 0 or 1");
        }
    }
    return p;
}

ClickPattern ClickPattern::from_modes(std::size_t modes, const std::vector<std::size_t>& clicked) {
    ClickPattern p(modes);
    for (const std::size_t m : clicked) {
        if (m >= modes) {
            throw ValidationError("clicked mode out of range");
        }
        p.set(m, true);
    }
    return p;
}

void ClickPattern::set(std::size_t mode, bool value) {
    if (mode >= modes_) {
        throw ValidationError("mode index out of range");
    }
    const std::uint64_t mask = std::uint64_t{1} << mode;
    bits_ = value ? (bits_ | mask) : (bits_ & ~mask);
}

std::vector<std::size_t> ClickPattern::clicked_modes() const {
    std::vector<std::size_t> out;
    out.reserve(clicks());
    for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
        out.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    return out;
}

std::string ClickPattern::to_string() const {
    std::string s(modes_, '0');
    for (std::size_t i = 0; i < modes_; ++i) {
        if (clicked(i)) {
            s[i] = '1';
        }
    }
    return s;
}

}  // namespace gbsgraph
