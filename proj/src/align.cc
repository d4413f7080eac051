// src/align.cc

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

#include "vcwarp/align.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "vcwarp/error.h"

namespace vcwarp {

namespace {

double FrameDistance(std::span<const double> a, std::span<const double> b,
                     int start) {
  double acc = 0.0;
  for (size_t m = start; m < a.size(); ++m) {
    const double d = a[m] - b[m];
    acc += d * d;
  }
  return std::sqrt(acc);
}

}  // namespace

AlignmentPath DtwAlign(const MelCepstra &a, const MelCepstra &b,
                       bool exclude_c0) {
  const int ta = a.num_frames(), tb = b.num_frames();
  if (ta == 0 || tb == 0)
    throw VcError(ErrorKind::kEmptySequence, "cannot align empty sequences");
  if (a.n_coeffs != b.n_coeffs)
    throw VcError(ErrorKind::kDimMismatch,
                  "coefficient counts differ: " + std::to_string(a.n_coeffs) +
                      " vs " + std::to_string(b.n_coeffs));
  const int start = exclude_c0 ? 1 : 0;

  // full DP table; utterances are short
  Matrix acc(ta, tb, std::numeric_limits<double>::infinity());
  // backpointers: 0 = (1,1), 1 = (1,0), 2 = (0,1)
  std::vector<int8_t> back(static_cast<size_t>(ta) * tb, -1);

  for (int i = 0; i < ta; ++i) {
    for (int j = 0; j < tb; ++j) {
      const double d = FrameDistance(a.coeffs.row(i), b.coeffs.row(j), start);
      if (i == 0 && j == 0) {
        acc(0, 0) = d;
        continue;
      }
      double best = std::numeric_limits<double>::infinity();
      int8_t dir = -1;
      // preference order on ties: diagonal, then advance a, then advance b
      if (i > 0 && j > 0 && acc(i - 1, j - 1) < best) {
        best = acc(i - 1, j - 1);
        dir = 0;
      }
      if (i > 0 && acc(i - 1, j) < best) {
        best = acc(i - 1, j);
        dir = 1;
      }
      if (j > 0 && acc(i, j - 1) < best) {
        best = acc(i, j - 1);
        dir = 2;
      }
      acc(i, j) = best + d;
      back[static_cast<size_t>(i) * tb + j] = dir;
    }
  }

  AlignmentPath path;
  path.cost = acc(ta - 1, tb - 1);
  int i = ta - 1, j = tb - 1;
  while (true) {
    path.pairs.emplace_back(i, j);
    if (i == 0 && j == 0) break;
    switch (back[static_cast<size_t>(i) * tb + j]) {
      case 0: --i; --j; break;
      case 1: --i; break;
      case 2: --j; break;
      default:
        throw VcError(ErrorKind::kNonFiniteCost, "broken DTW backtrace");
    }
  }
  std::reverse(path.pairs.begin(), path.pairs.end());
  return path;
}

void WritePathCsv(const AlignmentPath &path, const std::string &path_out) {
  std::ofstream os(path_out, std::ios::trunc);
  if (!os) throw VcError(ErrorKind::kIoError, "cannot open " + path_out);
  for (const auto &[i, j] : path.pairs) os << i << "," << j << "\n";
}

}  // namespace vcwarp
