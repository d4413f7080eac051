// include/vcwarp/audio_io.h

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

#ifndef VCWARP_AUDIO_IO_H_
#define VCWARP_AUDIO_IO_H_

#include <cstdint>
#include <string>
#include <vector>

namespace vcwarp {

// Mono audio, samples in [-1, 1].
struct Waveform {
  std::vector<double> samples;
  int sample_rate_hz = 0;

  double duration_s() const {
    return sample_rate_hz > 0
               ? static_cast<double>(samples.size()) / sample_rate_hz
               : 0.0;
  }
};

// Reads a RIFF/WAVE file. Accepts mono 16-bit PCM or 32-bit float only;
// 16-bit samples are scaled by 1/32768.
Waveform ReadWav(const std::string &path);

// Writes mono 16-bit PCM. Samples are clipped to [-1, 1] and rounded
// half-away-from-zero; +1.0 saturates at 32767.
void WriteWav(const Waveform &w, const std::string &path);

// Linear-interpolation resampler. Output length = round(len * target/source),
// endpoints mapped to endpoints. Equal rates return the input unchanged.
Waveform ResampleLinear(const Waveform &w, int target_hz);

// Binary feature container, "VCF1" format:
//   bytes 0-7   magic "VCFEAT01"
//   u32 LE      frame_count
//   u32 LE      dim
//   f32 LE      frame_shift_ms
//   u32 LE      sample_rate_hz
//   f32 LE      frame_count*dim values, row-major
struct FeatureFile {
  uint32_t frame_count = 0;
  uint32_t dim = 0;
  float frame_shift_ms = 0.0f;
  uint32_t sample_rate_hz = 0;
  std::vector<float> data;  // frame_count * dim
};

void WriteFeatures(const FeatureFile &f, const std::string &path);
FeatureFile ReadFeatures(const std::string &path);

}  // namespace vcwarp

#endif  // VCWARP_AUDIO_IO_H_
