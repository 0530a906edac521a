// SPDX-License-Identifier: Apache-2.0
//
// ris-isac: coordinated active/passive beamforming for RIS-assisted ISAC
// Copyright (C) 2026 The ris-isac Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace risisac {

// Identifies an independent random stream. Every random quantity in a run is
// drawn from the stream keyed by (master seed, slot, purpose, index), so
// results do not depend on evaluation order and adding RIS elements, users or
// slots leaves the other draws untouched.
enum class Stream : std::uint32_t {
    BsRis = 1,
    BsUser = 2,
    RisUser = 3,
    InitPhase = 4,
    Generic = 99,
};

inline std::mt19937_64 make_stream(std::uint64_t seed, std::uint64_t slot, Stream purpose,
                                   std::uint64_t index = 0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(slot), static_cast<std::uint32_t>(purpose),
                      static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
    return std::mt19937_64(seq);
}

}  // namespace risisac
