// src/profile.cc

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

#include "vcwarp/profile.h"

#include "vcwarp/error.h"

namespace vcwarp {

Profile Mcd36Profile() {
  Profile p;
  p.name = "mcd36";
  p.stft = {.fft_size = 512, .window_ms = 32.0, .hop_ms = 5.0};
  p.n_mels = 80;
  p.n_coeffs = 36;
  return p;
}

Profile Warp80Profile() {
  Profile p;
  p.name = "warp80";
  p.stft = Mel80Config();
  p.n_mels = 80;
  p.n_coeffs = 80;
  return p;
}

Profile ProfileByName(const std::string &name) {
  if (name == "mcd36") return Mcd36Profile();
  if (name == "warp80") return Warp80Profile();
  throw VcError(ErrorKind::kUsage,
                "unknown profile '" + name + "' (mcd36 | warp80)");
}

}  // namespace vcwarp
