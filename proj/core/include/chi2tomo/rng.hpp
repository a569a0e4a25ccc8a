// Copyright 2026 The chi2tomo Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CHI2TOMO_RNG_HPP
#define CHI2TOMO_RNG_HPP

#include <cstdint>
#include <random>

#include "chi2tomo/common.hpp"

namespace chi2tomo {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Independent stream for (master, stream) pairs; used for per-trial seeding.
Rng derive_rng(std::uint64_t master_seed, std::uint64_t stream);

// Draws a seed from `parent` and returns a fresh generator.
Rng fork(Rng& parent);

double standard_normal(Rng& rng);
double uniform01(Rng& rng);
Copies binomial(Rng& rng, Copies n, double p);

}  // namespace chi2tomo

#endif  // CHI2TOMO_RNG_HPP
