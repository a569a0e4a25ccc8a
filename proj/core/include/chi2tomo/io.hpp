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

#ifndef CHI2TOMO_IO_HPP
#define CHI2TOMO_IO_HPP

#include <optional>
#include <string>

#include "chi2tomo/common.hpp"
#include "chi2tomo/linalg.hpp"
#include "chi2tomo/measurement.hpp"

namespace chi2tomo {

// {"dim": d, "trace": t, "rank_hint": r | null, "entries": [[re, im], ...]} in row-major order.
std::string matrix_to_json(const Matrix& m, std::optional<int> rank_hint = std::nullopt);
Matrix matrix_from_json(const std::string& text);
std::string state_to_json(const DensityMatrix& rho);
// Parses and validates a normalized state.
DensityMatrix state_from_json(const std::string& text);

// {"dim": d, "elements": [{"label": ..., "matrix": {...}}, ...]}
std::string povm_to_json(const Povm& povm);
Povm povm_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Shortest round-trip decimal form; used for every number written to CSV.
std::string format_real(double x);

}  // namespace chi2tomo

#endif  // CHI2TOMO_IO_HPP
