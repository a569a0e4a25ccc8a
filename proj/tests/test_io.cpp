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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>

#include "chi2tomo/io.hpp"

namespace chi2tomo {
namespace {

std::string field_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "";
}

TEST(Json, MatrixRoundTripIsExact) {
  Rng rng = derive_rng(110, 0);
  Matrix m = random_unitary(3, rng);
  Matrix back = matrix_from_json(matrix_to_json(m));
  EXPECT_EQ((back - m).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Json, StateRoundTripKeepsRankHint) {
  DensityMatrix rho = random_state(4, 2, 111);
  DensityMatrix back = state_from_json(state_to_json(rho));
  EXPECT_EQ((back.matrix() - rho.matrix()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_EQ(back.rank_hint(), rho.rank_hint());
}

TEST(Json, PovmRoundTrip) {
  Povm p = matching_povms(3).povms[1];
  Povm back = povm_from_json(povm_to_json(p));
  EXPECT_EQ(back.labels(), p.labels());
  ASSERT_EQ(back.size(), p.size());
  for (std::size_t k = 0; k < p.size(); ++k) {
    EXPECT_EQ((back.elements()[k] - p.elements()[k]).cwiseAbs().maxCoeff(), 0.0);
  }
}

TEST(Json, ErrorsNameTheField) {
  EXPECT_EQ(field_of([] { matrix_from_json("{"); }), "json");
  EXPECT_EQ(field_of([] { matrix_from_json("[]"); }), "matrix");
  EXPECT_EQ(field_of([] { matrix_from_json(R"({"entries": []})"); }), "matrix.dim");
  EXPECT_EQ(field_of([] { matrix_from_json(R"({"dim": 1})"); }), "matrix.entries");
  EXPECT_EQ(field_of([] { matrix_from_json(R"({"dim": 2, "entries": [[1, 0]]})"); }),
            "matrix.entries");
  EXPECT_EQ(field_of([] {
              state_from_json(R"({"dim": 2, "entries": [[0.5, 0], [0, 0], [0, 0], "x"]})");
            }),
            "state.entries[3]");
  EXPECT_EQ(field_of([] {
              state_from_json(
                  R"({"dim": 1, "entries": [[1, 0]], "rank_hint": "one"})");
            }),
            "state.rank_hint");
  EXPECT_EQ(field_of([] { povm_from_json(R"({"dim": 1})"); }), "povm.elements");
}

TEST(Json, InvalidStateRejectedAfterParsing) {
  EXPECT_THROW(state_from_json(R"({"dim": 1, "entries": [[2, 0]]})"), InvalidArgument);
}

TEST(Files, WriteThenRead) {
  const auto path = std::filesystem::temp_directory_path() / "chi2tomo_io_test.txt";
  write_text_file(path.string(), "a,b\n1,2\n");
  EXPECT_EQ(read_text_file(path.string()), "a,b\n1,2\n");
  std::filesystem::remove(path);
  EXPECT_THROW(read_text_file(path.string()), Error);
}

TEST(FormatReal, ShortestRoundTrip) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(2.0), "2");
  EXPECT_EQ(format_real(1e-20), "1e-20");
  for (double x : {1.0 / 3.0, 2.718281828459045, 6.02e23, -0.0078125}) {
    EXPECT_EQ(std::stod(format_real(x)), x);
  }
  EXPECT_EQ(format_real(std::numeric_limits<double>::infinity()), "inf");
}

}  // namespace
}  // namespace chi2tomo
