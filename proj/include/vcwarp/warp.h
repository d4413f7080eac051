// include/vcwarp/warp.h

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

#ifndef VCWARP_WARP_H_
#define VCWARP_WARP_H_

#include <string>
#include <vector>

#include "vcwarp/align.h"
#include "vcwarp/audio_io.h"
#include "vcwarp/features.h"
#include "vcwarp/matrix.h"

namespace vcwarp {

// Learned bilinear frequency warp between a converted utterance and a
// reference target. The warp is parameterized by alpha in (-1, 1): the phase
// response of the first-order all-pass filter remaps the frequency axis, with
// alpha = 0 the identity. Two matrices realize it on the analysis grid:
//
//   warped:     D[k][m]  = s_m * cos(m * psi(PhaseWarp(omega_k, alpha)))
//   reference:  D*[k][m] = s_m * cos(m * psi(omega_k))
//
// where omega_k = 2*pi*k/N is the normalized frequency of FFT bin k and
// psi(omega) maps a frequency to its angle on the mel-band axis: with x(f)
// the fractional index of frequency f among the mel centers f_m,
// psi = pi*(2x+1)/(2M). s_m is the orthonormal DCT-III scaling, so row k of
// D*c is the cepstral model of the log mel spectrum evaluated at bin k's
// (warped) frequency: multiplying cepstra by D resamples the spectral
// envelope along the warped axis.

enum class WarpMode { kScalar, kPerBand };

struct WarpModel {
  WarpMode mode = WarpMode::kScalar;
  std::vector<double> alphas;  // 1 entry (Scalar) or n_coeffs (PerBand)
  int fft_size = 0;
  int n_coeffs = 0;
  int sample_rate_hz = 0;
  std::vector<double> mel_center_freqs_hz;  // n_coeffs entries
  Matrix d;       // (fft_size/2 + 1) x n_coeffs
  Matrix d_star;  // same shape

  double alpha() const { return alphas.empty() ? 0.0 : alphas[0]; }
  int num_bins() const { return fft_size / 2 + 1; }
};

// Warp factor from a source/target frequency pair:
//   alpha = sin(pi*(f_src - f_tgt)/f_s) / cos(pi*(f_src + f_tgt)/f_s)
// Throws DegenerateDenominator when the cosine argument sits at pi/2 within
// 1e-9.
double AlphaFromFreqs(double f_src_hz, double f_tgt_hz, double f_s_hz);

// Continuous all-pass phase warp on [0, pi]:
//   PhaseWarp(theta) = theta + 2*atan(alpha*sin(theta) / (1 - alpha*cos(theta)))
// Fixes 0 and pi, strictly increasing, and satisfies
//   tan(PhaseWarp) = (1-a^2) sin(theta) / ((1+a^2) cos(theta) - 2a).
double PhaseWarp(double theta, double alpha);

// d PhaseWarp / d alpha = 2 sin(theta) / (1 - 2 alpha cos(theta) + alpha^2).
double PhaseWarpAlphaDeriv(double theta, double alpha);

// Fractional position of a frequency on the band axis spanned by the given
// mel centers (piecewise linear in mel, clamped to [-0.5, M-0.5]).
// x(centers[m]) == m.
double BandPosition(double f_hz, const std::vector<double> &centers_hz);

Matrix BuildReferenceMatrix(int fft_size, int n_coeffs,
                            const std::vector<double> &mel_center_freqs_hz,
                            double f_s_hz);

// Scalar alpha for every band.
Matrix BuildWarpMatrix(double alpha, int fft_size, int n_coeffs,
                       const std::vector<double> &mel_center_freqs_hz,
                       double f_s_hz);
// Per-band alphas, one per cepstral order.
Matrix BuildWarpMatrix(const std::vector<double> &alphas, int fft_size,
                       int n_coeffs,
                       const std::vector<double> &mel_center_freqs_hz,
                       double f_s_hz);

// Mean-per-aligned-pair squared spectral mismatch:
//   E = (1/P) sum_pairs sum_k ( (D c)_k - (D* c*)_k )^2
double WarpCost(const Matrix &d, const Matrix &d_star, const MelCepstra &conv,
                const MelCepstra &ref, const AlignmentPath &path);

// Analytic dE/d alpha_b for the per-band parameterization, evaluated at
// `alphas`. Same normalization as WarpCost.
std::vector<double> WarpCostGradient(const std::vector<double> &alphas,
                                     const Matrix &d_star,
                                     const MelCepstra &conv,
                                     const MelCepstra &ref,
                                     const AlignmentPath &path, int fft_size,
                                     const std::vector<double> &mel_centers,
                                     double f_s_hz);

struct LearnOptions {
  double grid_min = -0.94;
  double grid_max = 0.94;
  double grid_step = 0.01;        // coarse scan; 0 is always a candidate
  double golden_tol = 1e-5;       // scalar refinement interval width
  int per_band_max_iters = 200;
  double per_band_step = 0.02;    // initial gradient step
  double alpha_box = 0.95;        // |alpha| clamp
};

// Learns the warp minimizing WarpCost. The DTW path is computed once on the
// unwarped features and held fixed. Scalar mode runs a coarse grid plus
// golden-section refinement; PerBand starts from the scalar solution and
// descends the analytic gradient coordinate-wise.
WarpModel LearnWarp(const MelCepstra &conv, const MelCepstra &ref,
                    WarpMode mode = WarpMode::kScalar,
                    const LearnOptions &opts = {});

// Rows of D * c_t: the warped log-magnitude spectra, T x (fft_size/2+1).
Matrix ApplyWarpToCepstra(const WarpModel &model, const MelCepstra &conv);

// Warped magnitude spectrogram of a waveform under `model` (exp of the
// warped log spectra). The pre-resynthesis product of ApplyWarp.
Spectrogram WarpedMagnitude(const WarpModel &model, const Waveform &conv,
                            const StftConfig &cfg);

// Full post-processing path: extract cepstra, warp the log-magnitude, and
// Griffin-Lim back to a waveform of (within one hop) the input duration.
Waveform ApplyWarp(const WarpModel &model, const Waveform &conv_audio,
                   const StftConfig &cfg, int gl_iters = 60);

// JSON round trip. D and D* are rebuilt on load, never stored.
std::string WarpModelToJson(const WarpModel &model);
WarpModel WarpModelFromJson(const std::string &json_text);
void SaveWarpModel(const WarpModel &model, const std::string &path);
WarpModel LoadWarpModel(const std::string &path);

}  // namespace vcwarp

#endif  // VCWARP_WARP_H_
