// include/vcwarp/testkit.h

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

#ifndef VCWARP_TESTKIT_H_
#define VCWARP_TESTKIT_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vcwarp/audio_io.h"

namespace vcwarp {

// Synthetic voice recipe: impulse train through cascaded two-pole resonators
// plus a -40 dB seeded noise floor. Stands in for real speech where a pair
// with a known spectral relationship is needed.
struct SynthSpec {
  double f0_hz = 200.0;
  std::vector<std::pair<double, double>> formants;  // (center Hz, bandwidth Hz)
  double duration_s = 1.0;
  int sample_rate_hz = 16000;
  uint64_t seed = 1;
};

SynthSpec DefaultSynthSpec();

// Deterministic for a fixed spec (seed included).
Waveform GenVoice(const SynthSpec &spec);

struct WarpedPair {
  Waveform source;
  Waveform target;
  double alpha_star = 0.0;
};

// Target = same recipe with every formant center pushed through the bilinear
// frequency map of -alpha_star, so LearnWarp(source, target) should recover
// +alpha_star. Throws WarpOutOfRange for |alpha_star| > 0.3.
WarpedPair GenWarpedPair(const SynthSpec &spec, double alpha_star);

// The frequency map used above: f -> (f_s/2pi) * PhaseWarp(2pi f/f_s, alpha).
double WarpFrequencyHz(double f_hz, double alpha, double f_s_hz);

std::string SynthSpecToJson(const SynthSpec &spec);
SynthSpec SynthSpecFromJson(const std::string &json_text);

}  // namespace vcwarp

#endif  // VCWARP_TESTKIT_H_
