// include/vcwarp/align.h

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

#ifndef VCWARP_ALIGN_H_
#define VCWARP_ALIGN_H_

#include <string>
#include <utility>
#include <vector>

#include "vcwarp/features.h"

namespace vcwarp {

// Monotone DTW path from (0,0) to (T_a-1, T_b-1) with steps
// (1,0), (0,1), (1,1).
struct AlignmentPath {
  std::vector<std::pair<int, int>> pairs;
  double cost = 0.0;
};

// Globally optimal DTW under Euclidean local distance on the coefficients
// (c_1.. when exclude_c0). Ties break toward (1,1), then (1,0), then (0,1).
AlignmentPath DtwAlign(const MelCepstra &a, const MelCepstra &b,
                       bool exclude_c0 = true);

// One "i,j" line per path pair, for inspection.
void WritePathCsv(const AlignmentPath &path, const std::string &path_out);

}  // namespace vcwarp

#endif  // VCWARP_ALIGN_H_
