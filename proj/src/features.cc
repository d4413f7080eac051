// src/features.cc

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

#include "vcwarp/features.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "vcwarp/error.h"

namespace vcwarp {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::vector<double> DctOrtho(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> out(n, 0.0);
  const double s0 = std::sqrt(1.0 / n);
  const double s = std::sqrt(2.0 / n);
  for (int j = 0; j < n; ++j) {
    double acc = 0.0;
    for (int i = 0; i < n; ++i)
      acc += x[i] * std::cos(kPi * (2 * i + 1) * j / (2.0 * n));
    out[j] = acc * (j == 0 ? s0 : s);
  }
  return out;
}

std::vector<double> IdctOrtho(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> out(n, 0.0);
  const double s0 = std::sqrt(1.0 / n);
  const double s = std::sqrt(2.0 / n);
  for (int i = 0; i < n; ++i) {
    double acc = 0.0;
    for (int j = 0; j < n; ++j)
      acc += (j == 0 ? s0 : s) * x[j] *
             std::cos(kPi * (2 * i + 1) * j / (2.0 * n));
    out[i] = acc;
  }
  return out;
}

std::vector<double> FrameCepstra(std::span<const double> mag_frame,
                                 const MelFilterbank &fb, int n_coeffs) {
  if (static_cast<int>(mag_frame.size()) != fb.weights.cols())
    throw VcError(ErrorKind::kDimMismatch,
                  "magnitude frame width does not match filterbank");
  if (n_coeffs > fb.n_mels)
    throw VcError(ErrorKind::kDimMismatch,
                  "more cepstra requested than mel bands");

  std::vector<double> logmel(fb.n_mels);
  for (int m = 0; m < fb.n_mels; ++m) {
    double e = 0.0;
    const auto row = fb.weights.row(m);
    for (int k = 0; k < fb.weights.cols(); ++k) e += row[k] * mag_frame[k];
    logmel[m] = std::log(std::max(e, kLogFloor));
  }
  std::vector<double> c = DctOrtho(logmel);
  c.resize(n_coeffs);
  return c;
}

MelCepstra ExtractMelCepstra(const Waveform &w, int n_coeffs,
                             const StftConfig &cfg) {
  if (n_coeffs < 2)
    throw VcError(ErrorKind::kConfigMismatch, "need at least 2 coefficients");
  const int n_mels = std::max(80, n_coeffs);
  const MelFilterbank fb = MakeMelFilterbank(n_mels, cfg, w.sample_rate_hz);
  const Spectrogram mag = Magnitude(Stft(w, cfg));

  MelCepstra out;
  out.n_coeffs = n_coeffs;
  out.n_mels = n_mels;
  out.mel_center_freqs_hz = fb.center_freqs_hz;
  out.config = cfg;
  out.sample_rate_hz = w.sample_rate_hz;
  out.coeffs = Matrix(mag.frames.rows(), n_coeffs);
  for (int t = 0; t < mag.frames.rows(); ++t) {
    const std::vector<double> c = FrameCepstra(mag.frames.row(t), fb, n_coeffs);
    for (int m = 0; m < n_coeffs; ++m) out.coeffs(t, m) = c[m];
  }
  return out;
}

namespace {

// Normalized autocorrelation of frame x at lag tau.
double NormalizedAutocorr(std::span<const double> x, int tau) {
  const int n = static_cast<int>(x.size()) - tau;
  if (n <= 0) return 0.0;
  double xy = 0.0, xx = 0.0, yy = 0.0;
  for (int i = 0; i < n; ++i) {
    xy += x[i] * x[i + tau];
    xx += x[i] * x[i];
    yy += x[i + tau] * x[i + tau];
  }
  const double denom = std::sqrt(xx * yy);
  return denom > 0.0 ? xy / denom : 0.0;
}

}  // namespace

F0Contour EstimateF0(const Waveform &w, const StftConfig &cfg,
                     const F0Options &opts) {
  cfg.Validate(w.sample_rate_hz);
  if (!(opts.f0_min_hz < opts.f0_max_hz &&
        opts.f0_max_hz < w.sample_rate_hz / 2.0))
    throw VcError(ErrorKind::kConfigMismatch,
                  "need f0_min < f0_max < sample_rate/2");

  const int win = cfg.WindowLength(w.sample_rate_hz);
  const int hop = cfg.HopLength(w.sample_rate_hz);
  const int len = static_cast<int>(w.samples.size());
  if (len < win)
    throw VcError(ErrorKind::kSignalTooShort,
                  "signal shorter than one analysis window");
  const int num_frames = 1 + (len - win) / hop;

  const double fs = w.sample_rate_hz;
  const int lag_min =
      std::max(2, static_cast<int>(std::floor(fs / opts.f0_max_hz)));
  const int lag_max = std::min(
      win - 2, static_cast<int>(std::ceil(fs / opts.f0_min_hz)));

  F0Contour out;
  out.frame_shift_ms = cfg.hop_ms;
  out.f0_hz.assign(num_frames, 0.0);
  out.voiced.assign(num_frames, 0);
  if (lag_min >= lag_max) return out;  // window too short to see a period

  std::vector<double> r(lag_max + 2, 0.0);
  for (int t = 0; t < num_frames; ++t) {
    const std::span<const double> frame(w.samples.data() + t * hop,
                                        static_cast<size_t>(win));
    double energy = 0.0;
    for (double v : frame) energy += v * v;
    const double rms = std::sqrt(energy / win);
    if (rms < opts.rms_threshold) continue;

    for (int tau = lag_min - 1; tau <= std::min(lag_max + 1, win - 1); ++tau)
      r[tau] = NormalizedAutocorr(frame, tau);

    int best = lag_min;
    for (int tau = lag_min; tau <= lag_max; ++tau)
      if (r[tau] > r[best]) best = tau;

    // Prefer the shortest near-maximal sub-multiple: a sinusoid peaks at
    // every period multiple and the global max can land one octave down.
    for (int div = 4; div >= 2; --div) {
      const int center = (best + div / 2) / div;
      if (center < lag_min) continue;
      int cand = -1;
      for (int tau = std::max(lag_min, center - 2);
           tau <= std::min(lag_max, center + 2); ++tau)
        if (cand < 0 || r[tau] > r[cand]) cand = tau;
      if (cand >= 0 && r[cand] >= 0.95 * r[best]) {
        best = cand;
        break;
      }
    }

    if (r[best] < opts.voicing_threshold) continue;

    // parabolic refinement around the winning lag
    double lag = best;
    if (best > lag_min && best < lag_max) {
      const double rm = r[best - 1], r0 = r[best], rp = r[best + 1];
      const double denom = rm - 2.0 * r0 + rp;
      if (std::abs(denom) > 1e-12) {
        const double delta = std::clamp(0.5 * (rm - rp) / denom, -0.5, 0.5);
        lag += delta;
      }
    }

    out.voiced[t] = 1;
    out.f0_hz[t] = std::clamp(fs / lag, opts.f0_min_hz, opts.f0_max_hz);
  }
  return out;
}

FeatureFile CepstraToFeatureFile(const MelCepstra &c) {
  FeatureFile f;
  f.frame_count = static_cast<uint32_t>(c.coeffs.rows());
  f.dim = static_cast<uint32_t>(c.n_coeffs);
  f.frame_shift_ms = static_cast<float>(c.config.hop_ms);
  f.sample_rate_hz = static_cast<uint32_t>(c.sample_rate_hz);
  f.data.reserve(c.coeffs.data().size());
  for (double v : c.coeffs.data()) f.data.push_back(static_cast<float>(v));
  return f;
}

MelCepstra CepstraFromFeatureFile(const FeatureFile &f,
                                  const StftConfig &cfg) {
  if (f.dim < 2)
    throw VcError(ErrorKind::kDimMismatch, "cepstra need dim >= 2");
  MelCepstra c;
  c.n_coeffs = static_cast<int>(f.dim);
  c.n_mels = std::max(80, c.n_coeffs);
  c.sample_rate_hz = static_cast<int>(f.sample_rate_hz);
  c.mel_center_freqs_hz = MelCenterFreqs(c.n_mels, c.sample_rate_hz);
  c.config = cfg;
  c.config.hop_ms = f.frame_shift_ms;  // the file's framing wins
  c.coeffs = Matrix(static_cast<int>(f.frame_count), c.n_coeffs);
  for (size_t i = 0; i < f.data.size(); ++i)
    c.coeffs.data()[i] = static_cast<double>(f.data[i]);
  return c;
}

FeatureFile F0ToFeatureFile(const F0Contour &c, int sample_rate_hz) {
  FeatureFile f;
  f.frame_count = static_cast<uint32_t>(c.num_frames());
  f.dim = 2;
  f.frame_shift_ms = static_cast<float>(c.frame_shift_ms);
  f.sample_rate_hz = static_cast<uint32_t>(sample_rate_hz);
  f.data.reserve(c.f0_hz.size() * 2);
  for (int t = 0; t < c.num_frames(); ++t) {
    f.data.push_back(static_cast<float>(c.f0_hz[t]));
    f.data.push_back(c.voiced[t] ? 1.0f : 0.0f);
  }
  return f;
}

F0Contour F0FromFeatureFile(const FeatureFile &f) {
  if (f.dim != 2)
    throw VcError(ErrorKind::kDimMismatch, "F0 feature files have dim == 2");
  F0Contour c;
  c.frame_shift_ms = f.frame_shift_ms;
  c.f0_hz.resize(f.frame_count);
  c.voiced.resize(f.frame_count);
  for (uint32_t t = 0; t < f.frame_count; ++t) {
    c.f0_hz[t] = f.data[2 * t];
    c.voiced[t] = f.data[2 * t + 1] != 0.0f ? 1 : 0;
  }
  return c;
}

}  // namespace vcwarp
