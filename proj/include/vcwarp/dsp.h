// include/vcwarp/dsp.h

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

#ifndef VCWARP_DSP_H_
#define VCWARP_DSP_H_

#include <complex>
#include <cstdint>
#include <vector>

#include "vcwarp/audio_io.h"
#include "vcwarp/matrix.h"

namespace vcwarp {

// Short-time analysis settings. Window is periodic Hann throughout.
struct StftConfig {
  int fft_size = 1024;     // power of two
  double window_ms = 64.0;
  double hop_ms = 16.0;

  int WindowLength(int sample_rate_hz) const;
  int HopLength(int sample_rate_hz) const;
  // Throws ConfigMismatch when hop > window or window > fft_size.
  void Validate(int sample_rate_hz) const;

  bool operator==(const StftConfig &) const = default;
};

// 80 mels, FFT 1024, 256-sample hop at 16 kHz.
StftConfig Mel80Config();
// 50 ms window, 12.5 ms hop.
StftConfig Mel512GrifConfig();

struct ComplexSpectrogram {
  std::vector<std::complex<double>> frames;  // row-major, T x bins
  int num_frames = 0;
  int num_bins = 0;  // fft_size/2 + 1
  StftConfig config;
  int sample_rate_hz = 0;

  std::complex<double> &at(int t, int k) {
    return frames[static_cast<size_t>(t) * num_bins + k];
  }
  const std::complex<double> &at(int t, int k) const {
    return frames[static_cast<size_t>(t) * num_bins + k];
  }
};

// Non-negative magnitudes, T x bins.
struct Spectrogram {
  Matrix frames;
  StftConfig config;
  int sample_rate_hz = 0;
};

std::vector<double> HannWindow(int length);

// Frame t covers samples [t*hop, t*hop + win); Hann-windowed, zero-padded to
// fft_size. T = 1 + floor((len - win) / hop). Throws SignalTooShort when the
// signal does not cover one window.
ComplexSpectrogram Stft(const Waveform &w, const StftConfig &cfg);

// Weighted overlap-add with window-squared normalization. Inverts Stft on
// interior samples when hop divides the window evenly (COLA).
Waveform Istft(const ComplexSpectrogram &spec);

Spectrogram Magnitude(const ComplexSpectrogram &spec);

struct MelFilterbank {
  int n_mels = 0;
  std::vector<double> center_freqs_hz;  // strictly increasing, in (0, fs/2)
  Matrix weights;                       // n_mels x bins, triangular
};

double HzToMel(double hz);
double MelToHz(double mel);

// Centers of n_mels filters equally spaced on the mel scale over (0, fs/2).
std::vector<double> MelCenterFreqs(int n_mels, int sample_rate_hz);

// Triangular filters at MelCenterFreqs, each row normalized to unit weight
// sum so a flat magnitude spectrum produces equal band energies. Filters too
// narrow to cover a bin get their nearest bin instead, so every row has
// nonzero weight.
MelFilterbank MakeMelFilterbank(int n_mels, const StftConfig &cfg,
                                int sample_rate_hz);

enum class GriffinLimInit { kZeroPhase, kRandomPhase };

// Iterative phase reconstruction: alternate istft/stft, re-imposing `mag`
// each round. convergence_out, when given, receives the relative spectral
// error after each iteration.
Waveform GriffinLim(const Spectrogram &mag, int iters,
                    GriffinLimInit init = GriffinLimInit::kZeroPhase,
                    uint64_t seed = 0,
                    std::vector<double> *convergence_out = nullptr);

}  // namespace vcwarp

#endif  // VCWARP_DSP_H_
