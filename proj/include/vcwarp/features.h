// include/vcwarp/features.h

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

#ifndef VCWARP_FEATURES_H_
#define VCWARP_FEATURES_H_

#include <vector>

#include "vcwarp/audio_io.h"
#include "vcwarp/dsp.h"
#include "vcwarp/matrix.h"

namespace vcwarp {

// Log floor applied to mel energies before the DCT; keeps silent frames
// finite.
inline constexpr double kLogFloor = 1e-10;

// Mel cepstra: per frame, magnitude spectrum -> mel filterbank -> log ->
// orthonormal DCT-II, first n_coeffs coefficients (row = c_0..c_{M-1}).
struct MelCepstra {
  Matrix coeffs;  // T x n_coeffs
  int n_coeffs = 0;
  int n_mels = 0;
  std::vector<double> mel_center_freqs_hz;
  StftConfig config;
  int sample_rate_hz = 0;

  int num_frames() const { return coeffs.rows(); }
  double frame_shift_ms() const { return config.hop_ms; }
};

// Per-frame F0 with voicing decisions; f0_hz[t] == 0 iff unvoiced.
struct F0Contour {
  std::vector<double> f0_hz;
  std::vector<uint8_t> voiced;
  double frame_shift_ms = 0.0;

  int num_frames() const { return static_cast<int>(f0_hz.size()); }
};

// Orthonormal DCT-II / DCT-III pair over vectors of length n.
std::vector<double> DctOrtho(std::span<const double> x);
std::vector<double> IdctOrtho(std::span<const double> x);

// One frame: magnitude bins -> floored log mel energies -> first n_coeffs
// DCT coefficients.
std::vector<double> FrameCepstra(std::span<const double> mag_frame,
                                 const MelFilterbank &fb, int n_coeffs);

// The internal filterbank always has max(80, n_coeffs) mels; cepstra are the
// first n_coeffs DCT coefficients of the log mel energies.
MelCepstra ExtractMelCepstra(const Waveform &w, int n_coeffs,
                             const StftConfig &cfg);

struct F0Options {
  double f0_min_hz = 60.0;
  double f0_max_hz = 500.0;
  double voicing_threshold = 0.3;  // on normalized autocorrelation
  double rms_threshold = 1e-4;
};

// Normalized-autocorrelation pitch tracker with parabolic lag refinement and
// a preference for the shortest near-maximal lag (avoids octave-down picks on
// sinusoids).
F0Contour EstimateF0(const Waveform &w, const StftConfig &cfg,
                     const F0Options &opts = {});

// VCF1 bridges.
FeatureFile CepstraToFeatureFile(const MelCepstra &c);
MelCepstra CepstraFromFeatureFile(const FeatureFile &f, const StftConfig &cfg);
// F0 serializes as dim=2 rows: (f0_hz, voiced flag as 0/1).
FeatureFile F0ToFeatureFile(const F0Contour &c, int sample_rate_hz);
F0Contour F0FromFeatureFile(const FeatureFile &f);

}  // namespace vcwarp

#endif  // VCWARP_FEATURES_H_
