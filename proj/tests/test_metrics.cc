// tests/test_metrics.cc

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

#include "vcwarp/error.h"
#include "vcwarp/metrics.h"
#include "vcwarp/testkit.h"

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

double FrameDist(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (size_t m = 1; m < a.size(); ++m) acc += (a[m] - b[m]) * (a[m] - b[m]);
  return std::sqrt(acc);
}

// enumerate all monotone paths; return the mean frame-MCD along the path of
// minimal accumulated Euclidean distance
struct BrutePath {
  double cost = std::numeric_limits<double>::infinity();
  std::vector<std::pair<int, int>> pairs;
};

void Enumerate(const MelCepstra &a, const MelCepstra &b, int i, int j,
               double cost, std::vector<std::pair<int, int>> &cur,
               BrutePath &best) {
  cost += FrameDist(a.coeffs.row(i), b.coeffs.row(j));
  cur.emplace_back(i, j);
  if (i == a.num_frames() - 1 && j == b.num_frames() - 1) {
    if (cost < best.cost) {
      best.cost = cost;
      best.pairs = cur;
    }
  } else {
    if (i + 1 < a.num_frames() && j + 1 < b.num_frames())
      Enumerate(a, b, i + 1, j + 1, cost, cur, best);
    if (i + 1 < a.num_frames()) Enumerate(a, b, i + 1, j, cost, cur, best);
    if (j + 1 < b.num_frames()) Enumerate(a, b, i, j + 1, cost, cur, best);
  }
  cur.pop_back();
}

}  // namespace

TEST_CASE("mcd frame: identical vectors score zero") {
  const std::vector<double> c = {1.0, 2.0, -3.0, 0.5};
  CHECK(McdFrame(c, c) == 0.0);
}

TEST_CASE("mcd frame: unit difference constant") {
  // (10/ln 10)*sqrt(2) = 6.14185146371375427 at 30 digits
  const std::vector<double> a = {0.0, 1.0, 0.0, 0.0};
  const std::vector<double> b = {0.0, 0.0, 0.0, 0.0};
  const double unit = McdFrame(a, b);
  CHECK(unit == doctest::Approx(10.0 / std::log(10.0) * std::sqrt(2.0))
                    .epsilon(1e-12));
  CHECK(std::abs(unit - 6.1421) <= 1e-3);
}

TEST_CASE("mcd frame: c_0 does not count") {
  const std::vector<double> a = {42.0, 1.0, 2.0};
  const std::vector<double> b = {-17.0, 1.0, 2.0};
  CHECK(McdFrame(a, b) == 0.0);
}

TEST_CASE("mcd frame: scales linearly in the difference") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::vector<double> a(10), b(10), mid(10);
  for (size_t i = 0; i < a.size(); ++i) {
    a[i] = uni(rng);
    b[i] = uni(rng);
    mid[i] = 0.5 * (a[i] + b[i]);
  }
  CHECK(McdFrame(a, b) == doctest::Approx(2.0 * McdFrame(a, mid)).epsilon(1e-12));
}

TEST_CASE("mcd frame: length mismatch is rejected") {
  const std::vector<double> a = {0.0, 1.0};
  const std::vector<double> b = {0.0, 1.0, 2.0};
  try {
    McdFrame(a, b);
    FAIL("expected throw");
  } catch (const VcError &e) {
    CHECK(e.kind() == ErrorKind::kDimMismatch);
  }
}

TEST_CASE("mcd: identical sequences score zero") {
  const MelCepstra a = FromRows({{0, 1, 2}, {1, 0, -1}, {0.5, 0.5, 0.5}});
  CHECK(Mcd(a, a) == 0.0);
}

TEST_CASE("mcd: frame duplication is absorbed by alignment") {
  const MelCepstra a = FromRows({{0, 1, 2}, {1, 0, -1}});
  const MelCepstra dup =
      FromRows({{0, 1, 2}, {0, 1, 2}, {1, 0, -1}, {1, 0, -1}});
  CHECK(Mcd(a, dup) == doctest::Approx(0.0));
  CHECK(Mcd(dup, a) == doctest::Approx(0.0));
}

TEST_CASE("mcd: equals the brute-force best-path mean") {
  std::mt19937_64 rng(44);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int ta = 2 + static_cast<int>(rng() % 3);
    const int tb = 2 + static_cast<int>(rng() % 3);
    std::vector<std::vector<double>> ra(ta, std::vector<double>(3)),
        rb(tb, std::vector<double>(3));
    for (auto &r : ra)
      for (auto &v : r) v = uni(rng);
    for (auto &r : rb)
      for (auto &v : r) v = uni(rng);
    const MelCepstra a = FromRows(ra), b = FromRows(rb);

    BrutePath best;
    std::vector<std::pair<int, int>> cur;
    Enumerate(a, b, 0, 0, 0.0, cur, best);
    double mean = 0.0;
    for (const auto &[i, j] : best.pairs)
      mean += McdFrame(a.coeffs.row(i), b.coeffs.row(j));
    mean /= static_cast<double>(best.pairs.size());

    CHECK(Mcd(a, b) == doctest::Approx(mean).epsilon(1e-12));
  }
}

TEST_CASE("f0 rmse: identical contours score zero") {
  F0Contour c;
  c.f0_hz = {200, 210, 0, 220};
  c.voiced = {1, 1, 0, 1};
  c.frame_shift_ms = 5.0;
  AlignmentPath path;
  for (int t = 0; t < 4; ++t) path.pairs.emplace_back(t, t);
  bool degenerate = true;
  CHECK(F0RmseNormalized(c, c, path, &degenerate) == doctest::Approx(0.0));
  CHECK(!degenerate);
}

TEST_CASE("f0 rmse: affine transforms of a contour are invisible") {
  F0Contour c, d;
  c.f0_hz = {200, 210, 220, 230, 215};
  c.voiced = {1, 1, 1, 1, 1};
  c.frame_shift_ms = 5.0;
  d.frame_shift_ms = 5.0;
  d.voiced = c.voiced;
  d.f0_hz.resize(c.f0_hz.size());
  for (size_t t = 0; t < c.f0_hz.size(); ++t)
    d.f0_hz[t] = 1.37 * c.f0_hz[t] + 42.0;
  AlignmentPath path;
  for (int t = 0; t < 5; ++t) path.pairs.emplace_back(t, t);
  CHECK(F0RmseNormalized(c, d, path) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("f0 rmse: frozen hand instance with one unvoiced frame") {
  // conv voiced {200,210,220} (mean 210, population sd sqrt(200/3));
  // ref {180,200,190,210} (mean 195, sd sqrt(125)); co-voiced pairs 0,1,3;
  // rmse = 0.2752752016546391 at 30 digits
  F0Contour conv, ref;
  conv.f0_hz = {200, 210, 0, 220};
  conv.voiced = {1, 1, 0, 1};
  conv.frame_shift_ms = 5.0;
  ref.f0_hz = {180, 200, 190, 210};
  ref.voiced = {1, 1, 1, 1};
  ref.frame_shift_ms = 5.0;
  AlignmentPath path;
  for (int t = 0; t < 4; ++t) path.pairs.emplace_back(t, t);

  CHECK(F0RmseNormalized(conv, ref, path) ==
        doctest::Approx(0.2752752016546391).epsilon(1e-12));

  // longhand z-normalization, written out independently
  const double cm = 210.0, csd = std::sqrt(200.0 / 3.0);
  const double rm = 195.0, rsd = std::sqrt(125.0);
  double acc = 0.0;
  for (int t : {0, 1, 3}) {
    const double zc = (conv.f0_hz[t] - cm) / csd;
    const double zr = (ref.f0_hz[t] - rm) / rsd;
    acc += (zc - zr) * (zc - zr);
  }
  CHECK(F0RmseNormalized(conv, ref, path) ==
        doctest::Approx(std::sqrt(acc / 3.0)).epsilon(1e-12));
}

TEST_CASE("f0 rmse: no co-voiced pairs is the degenerate case") {
  F0Contour a, b;
  a.f0_hz = {200, 0};
  a.voiced = {1, 0};
  b.f0_hz = {0, 190};
  b.voiced = {0, 1};
  a.frame_shift_ms = b.frame_shift_ms = 5.0;
  AlignmentPath path;
  path.pairs = {{0, 0}, {1, 1}};
  bool degenerate = false;
  CHECK(F0RmseNormalized(a, b, path, &degenerate) == 0.0);
  CHECK(degenerate);
}

TEST_CASE("evaluate: a file against itself is a perfect score") {
  const Waveform w = GenVoice(DefaultSynthSpec());
  const EvalReport r = EvaluatePair(w, w, Mcd36Profile());
  CHECK(r.mcd_db == doctest::Approx(0.0));
  CHECK(r.f0_rmse_norm == doctest::Approx(0.0));
  CHECK(r.n_aligned_frames > 0);
  CHECK(r.n_covoiced_frames > 0);
  CHECK(!r.f0_degenerate);
}

TEST_CASE("evaluate: silence against speech degenerates gracefully") {
  Waveform silence;
  silence.sample_rate_hz = 16000;
  silence.samples.assign(16000, 0.0);
  const Waveform speech = GenVoice(DefaultSynthSpec());
  const EvalReport r = EvaluatePair(silence, speech, Mcd36Profile());
  CHECK(r.n_covoiced_frames == 0);
  CHECK(r.f0_degenerate);
  CHECK(r.f0_rmse_norm == 0.0);
  CHECK(std::isfinite(r.mcd_db));
}

TEST_CASE("evaluate: mcd is symmetric") {
  const WarpedPair pair = GenWarpedPair(DefaultSynthSpec(), 0.1);
  const EvalReport ab = EvaluatePair(pair.source, pair.target, Mcd36Profile());
  const EvalReport ba = EvaluatePair(pair.target, pair.source, Mcd36Profile());
  CHECK(ab.mcd_db == doctest::Approx(ba.mcd_db).epsilon(1e-9));
}

TEST_CASE("report: serializes to JSON and CSV") {
  EvalReport r;
  r.mcd_db = 1.25;
  r.f0_rmse_norm = 0.5;
  r.n_aligned_frames = 10;
  r.n_covoiced_frames = 7;
  r.dtw_cost = 12.5;
  r.profile_name = "mcd36";
  r.sample_rate_hz = 16000;
  const std::string json = ReportToJson(r);
  CHECK(json.find("\"mcd_db\": 1.25") != std::string::npos);
  CHECK(json.find("\"profile\": \"mcd36\"") != std::string::npos);
  const std::string csv = ReportToCsvLine(r, "a.wav", "b.wav");
  CHECK(csv == "a.wav,b.wav,1.25,0.5,10,7");
}
