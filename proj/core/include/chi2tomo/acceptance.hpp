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

#ifndef CHI2TOMO_ACCEPTANCE_HPP
#define CHI2TOMO_ACCEPTANCE_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace chi2tomo {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string measured;  // measured values next to their pinned tolerances
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 0x5eed2026ULL;
  int workers = 1;
};

inline constexpr int kCriterionCount = 14;

CriterionResult run_criterion(int id, const AcceptanceOptions& opts = {});
// Runs criteria 1..14 in order, writing each line to `log` as it completes.
std::vector<CriterionResult> acceptance_suite(const AcceptanceOptions& opts = {},
                                              std::ostream* log = nullptr);
std::string format_result(const CriterionResult& r);

}  // namespace chi2tomo

#endif  // CHI2TOMO_ACCEPTANCE_HPP
