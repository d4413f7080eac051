// tests/test_align.cc

// Copyright 2026  vcwarp authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "vcwarp/align.h"
#include "vcwarp/error.h"

using namespace vcwarp;

namespace {

MelCepstra FromRows(const std::vector<std::vector<double>> &rows) {
  MelCepstra c;
  c.n_coeffs = static_cast<int>(rows[0].size());
  c.n_mels = std::max(80, c.n_coeffs);
  c.sample_rate_hz = 16000;
  c.coeffs = Matrix(static_cast<int>(rows.size()), c.n_coeffs);
  for (size_t t = 0; t < rows.size(); ++t)
    for (size_t m = 0; m < rows[t].size(); ++m)
      c.coeffs(static_cast<int>(t), static_cast<int>(m)) = rows[t][m];
  return c;
}

double Dist(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t m = 1; m < a.size(); ++m)  // c_0 excluded, as in DtwAlign
    acc += (a[m] - b[m]) * (a[m] - b[m]);
  return std::sqrt(acc);
}

// exhaustive minimum over all monotone paths with steps (1,0),(0,1),(1,1)
double BruteForceCost(const MelCepstra &a, const MelCepstra &b, int i, int j) {
  const double d = Dist(a.coeffs.row(i), b.coeffs.row(j));
  if (i == 0 && j == 0) return d;
  double best = std::numeric_limits<double>::infinity();
  if (i > 0 && j > 0) best = std::min(best, BruteForceCost(a, b, i - 1, j - 1));
  if (i > 0) best = std::min(best, BruteForceCost(a, b, i - 1, j));
  if (j > 0) best = std::min(best, BruteForceCost(a, b, i, j - 1));
  return d + best;
}

MelCepstra RandomCepstra(std::mt19937_64 &rng, int frames, int order) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<std::vector<double>> rows(frames, std::vector<double>(order));
  for (auto &row : rows)
    for (auto &v : row) v = uni(rng);
  return FromRows(rows);
}

void CheckPathValid(const AlignmentPath &p, int ta, int tb) {
  REQUIRE(!p.pairs.empty());
  CHECK(p.pairs.front() == std::pair<int, int>(0, 0));
  CHECK(p.pairs.back() == std::pair<int, int>(ta - 1, tb - 1));
  for (size_t n = 1; n < p.pairs.size(); ++n) {
    const int di = p.pairs[n].first - p.pairs[n - 1].first;
    const int dj = p.pairs[n].second - p.pairs[n - 1].second;
    CHECK(di >= 0);
    CHECK(dj >= 0);
    CHECK(di + dj >= 1);
    CHECK(di <= 1);
    CHECK(dj <= 1);
  }
}

}  // namespace

TEST_CASE("dtw: identical sequences align on the diagonal at zero cost") {
  std::mt19937_64 rng(17);
  const MelCepstra a = RandomCepstra(rng, 6, 4);
  const AlignmentPath p = DtwAlign(a, a);
  CHECK(p.cost == doctest::Approx(0.0));
  REQUIRE(p.pairs.size() == 6);
  for (int t = 0; t < 6; ++t) CHECK(p.pairs[t] == std::pair<int, int>(t, t));
}

TEST_CASE("dtw: repeated frame absorbs at zero cost") {
  const MelCepstra a = FromRows({{0.0, 1.0, 2.0}});
  const MelCepstra b = FromRows({{0.0, 1.0, 2.0}, {0.0, 1.0, 2.0}});
  const AlignmentPath p = DtwAlign(a, b);
  CHECK(p.cost == doctest::Approx(0.0));
  REQUIRE(p.pairs.size() == 2);
  CHECK(p.pairs[0] == std::pair<int, int>(0, 0));
  CHECK(p.pairs[1] == std::pair<int, int>(0, 1));
}

TEST_CASE("dtw: matches brute force on small random instances") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int ta = 1 + static_cast<int>(rng() % 8);
    const int tb = 1 + static_cast<int>(rng() % 8);
    const MelCepstra a = RandomCepstra(rng, ta, 3);
    const MelCepstra b = RandomCepstra(rng, tb, 3);
    const AlignmentPath p = DtwAlign(a, b);
    CheckPathValid(p, ta, tb);
    const double brute = BruteForceCost(a, b, ta - 1, tb - 1);
    CHECK(p.cost == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("dtw: cost is symmetric") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 20; ++trial) {
    const MelCepstra a = RandomCepstra(rng, 5 + static_cast<int>(rng() % 4), 4);
    const MelCepstra b = RandomCepstra(rng, 5 + static_cast<int>(rng() % 4), 4);
    CHECK(DtwAlign(a, b).cost == doctest::Approx(DtwAlign(b, a).cost));
  }
}

TEST_CASE("dtw: empty or mismatched input is rejected") {
  std::mt19937_64 rng(9);
  const MelCepstra a = RandomCepstra(rng, 3, 4);
  MelCepstra empty = a;
  empty.coeffs = Matrix(0, 4);
  try {
    DtwAlign(a, empty);
    FAIL("expected throw");
  } catch (const VcError &e) {
    CHECK(e.kind() == ErrorKind::kEmptySequence);
  }

  const MelCepstra b = RandomCepstra(rng, 3, 6);
  try {
    DtwAlign(a, b);
    FAIL("expected throw");
  } catch (const VcError &e) {
    CHECK(e.kind() == ErrorKind::kDimMismatch);
  }
}

TEST_CASE("dtw: c_0 is ignored by default but can be included") {
  // sequences differ only in c_0
  const MelCepstra a = FromRows({{5.0, 1.0}, {9.0, 2.0}});
  const MelCepstra b = FromRows({{0.0, 1.0}, {0.0, 2.0}});
  CHECK(DtwAlign(a, b).cost == doctest::Approx(0.0));
  CHECK(DtwAlign(a, b, /*exclude_c0=*/false).cost > 1.0);
}
