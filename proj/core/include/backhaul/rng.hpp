// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The backhaul authors
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
#include <random>

namespace backhaul {

// Purpose tags for sub-seed derivation. Each purpose gets an independent
// stream so that, e.g., resampling channels never perturbs the deployment.
enum class Stream : std::uint64_t {
    deployment = 0x6465706c6f79ULL,
    channel = 0x6368616e6e656cULL,
    epoch = 0x65706f6368ULL,
    connectivity = 0x636f6e6eULL,
    sweep = 0x7377656570ULL,
};

// One step of the splitmix64 generator (Steele, Lea, Flood 2014).
std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Sub-seed = splitmix64 chained over (master, purpose, a, b). The rule is
// stable across releases: rows written by older builds stay reproducible.
std::uint64_t derive_seed(std::uint64_t master, Stream purpose, std::uint64_t a = 0,
                          std::uint64_t b = 0) noexcept;

using Rng = std::mt19937_64;

} // namespace backhaul
