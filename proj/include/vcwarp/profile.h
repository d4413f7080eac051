// include/vcwarp/profile.h

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

#ifndef VCWARP_PROFILE_H_
#define VCWARP_PROFILE_H_

#include <string>

#include "vcwarp/dsp.h"
#include "vcwarp/features.h"

namespace vcwarp {

// Bundle of analysis settings the CLI runs under.
//   mcd36  - 36 cepstra, 5 ms hop: evaluation profile
//   warp80 - 80 cepstra, 1024/256 analysis: warp-learning profile
struct Profile {
  std::string name;
  StftConfig stft;
  int n_mels = 80;
  int n_coeffs = 36;
  double f0_min_hz = 60.0;
  double f0_max_hz = 500.0;
  int gl_iters = 60;

  F0Options f0_options() const {
    F0Options o;
    o.f0_min_hz = f0_min_hz;
    o.f0_max_hz = f0_max_hz;
    return o;
  }
};

Profile Mcd36Profile();
Profile Warp80Profile();

// Named lookup ("mcd36" | "warp80"); throws Usage on unknown names.
Profile ProfileByName(const std::string &name);

}  // namespace vcwarp

#endif  // VCWARP_PROFILE_H_
