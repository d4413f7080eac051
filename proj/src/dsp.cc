// src/dsp.cc

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

#include "vcwarp/dsp.h"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <random>

#include "vcwarp/error.h"

namespace vcwarp {

namespace {

constexpr double kPi = std::numbers::pi;

// FFTW plan creation is not thread-safe; execution on distinct buffers is.
std::mutex &PlannerMutex() {
  static std::mutex m;
  return m;
}

// Real<->complex FFT of one size. Holds plans plus aligned scratch; reuse
// across frames, one instance per thread.
class Rfft {
 public:
  explicit Rfft(int n) : n_(n) {
    real_ = fftw_alloc_real(n);
    cplx_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fwd_ = fftw_plan_dft_r2c_1d(n, real_, cplx_, FFTW_ESTIMATE);
    inv_ = fftw_plan_dft_c2r_1d(n, cplx_, real_, FFTW_ESTIMATE);
  }

  ~Rfft() {
    std::lock_guard<std::mutex> lock(PlannerMutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(inv_);
    fftw_free(real_);
    fftw_free(cplx_);
  }

  Rfft(const Rfft &) = delete;
  Rfft &operator=(const Rfft &) = delete;

  // in: n reals; out: n/2+1 bins.
  void Forward(const double *in, std::complex<double> *out) {
    std::copy(in, in + n_, real_);
    fftw_execute(fwd_);
    for (int k = 0; k <= n_ / 2; ++k)
      out[k] = {cplx_[k][0], cplx_[k][1]};
  }

  // Inverse with 1/n normalization.
  void Inverse(const std::complex<double> *in, double *out) {
    for (int k = 0; k <= n_ / 2; ++k) {
      cplx_[k][0] = in[k].real();
      cplx_[k][1] = in[k].imag();
    }
    fftw_execute(inv_);
    const double scale = 1.0 / n_;
    for (int i = 0; i < n_; ++i) out[i] = real_[i] * scale;
  }

 private:
  int n_;
  double *real_;
  fftw_complex *cplx_;
  fftw_plan fwd_;
  fftw_plan inv_;
};

bool IsPowerOfTwo(int n) { return n > 0 && (n & (n - 1)) == 0; }

}  // namespace

int StftConfig::WindowLength(int sample_rate_hz) const {
  return static_cast<int>(std::lround(window_ms * sample_rate_hz / 1000.0));
}

int StftConfig::HopLength(int sample_rate_hz) const {
  return static_cast<int>(std::lround(hop_ms * sample_rate_hz / 1000.0));
}

void StftConfig::Validate(int sample_rate_hz) const {
  if (!IsPowerOfTwo(fft_size))
    throw VcError(ErrorKind::kConfigMismatch,
                  "fft_size must be a power of two");
  if (sample_rate_hz <= 0)
    throw VcError(ErrorKind::kConfigMismatch, "sample rate must be positive");
  const int win = WindowLength(sample_rate_hz);
  const int hop = HopLength(sample_rate_hz);
  if (hop <= 0 || win <= 0 || hop > win)
    throw VcError(ErrorKind::kConfigMismatch, "need 0 < hop <= window");
  if (win > fft_size)
    throw VcError(ErrorKind::kConfigMismatch,
                  "window length exceeds fft_size");
}

StftConfig Mel80Config() {
  // 1024-sample window, 256-sample hop at 16 kHz
  return {.fft_size = 1024, .window_ms = 64.0, .hop_ms = 16.0};
}

StftConfig Mel512GrifConfig() {
  return {.fft_size = 1024, .window_ms = 50.0, .hop_ms = 12.5};
}

std::vector<double> HannWindow(int length) {
  // periodic form, COLA-friendly with hop = length/4
  std::vector<double> w(length);
  for (int i = 0; i < length; ++i)
    w[i] = 0.5 - 0.5 * std::cos(2.0 * kPi * i / length);
  return w;
}

ComplexSpectrogram Stft(const Waveform &w, const StftConfig &cfg) {
  cfg.Validate(w.sample_rate_hz);
  const int win = cfg.WindowLength(w.sample_rate_hz);
  const int hop = cfg.HopLength(w.sample_rate_hz);
  const int len = static_cast<int>(w.samples.size());
  if (len < win)
    throw VcError(ErrorKind::kSignalTooShort,
                  "signal shorter than one analysis window");

  const int num_frames = 1 + (len - win) / hop;
  const int bins = cfg.fft_size / 2 + 1;
  const std::vector<double> window = HannWindow(win);

  ComplexSpectrogram spec;
  spec.num_frames = num_frames;
  spec.num_bins = bins;
  spec.config = cfg;
  spec.sample_rate_hz = w.sample_rate_hz;
  spec.frames.resize(static_cast<size_t>(num_frames) * bins);

  Rfft fft(cfg.fft_size);
  std::vector<double> buf(cfg.fft_size, 0.0);
  for (int t = 0; t < num_frames; ++t) {
    const int start = t * hop;
    for (int i = 0; i < win; ++i)
      buf[i] = w.samples[start + i] * window[i];
    std::fill(buf.begin() + win, buf.end(), 0.0);
    fft.Forward(buf.data(), &spec.at(t, 0));
  }
  return spec;
}

Waveform Istft(const ComplexSpectrogram &spec) {
  const StftConfig &cfg = spec.config;
  cfg.Validate(spec.sample_rate_hz);
  if (spec.num_bins != cfg.fft_size / 2 + 1)
    throw VcError(ErrorKind::kDimMismatch,
                  "bin count does not match fft_size/2+1");
  if (spec.frames.size() !=
      static_cast<size_t>(spec.num_frames) * spec.num_bins)
    throw VcError(ErrorKind::kDimMismatch, "frame buffer size mismatch");

  const int win = cfg.WindowLength(spec.sample_rate_hz);
  const int hop = cfg.HopLength(spec.sample_rate_hz);
  const int len = win + (spec.num_frames - 1) * hop;
  const std::vector<double> window = HannWindow(win);

  std::vector<double> acc(len, 0.0);
  std::vector<double> norm(len, 0.0);
  Rfft fft(cfg.fft_size);
  std::vector<double> frame(cfg.fft_size);

  for (int t = 0; t < spec.num_frames; ++t) {
    fft.Inverse(&spec.at(t, 0), frame.data());
    const int start = t * hop;
    for (int i = 0; i < win; ++i) {
      acc[start + i] += frame[i] * window[i];
      norm[start + i] += window[i] * window[i];
    }
  }

  Waveform out;
  out.sample_rate_hz = spec.sample_rate_hz;
  out.samples.resize(len);
  for (int i = 0; i < len; ++i)
    out.samples[i] = norm[i] > 1e-12 ? acc[i] / norm[i] : 0.0;
  return out;
}

Spectrogram Magnitude(const ComplexSpectrogram &spec) {
  Spectrogram mag;
  mag.config = spec.config;
  mag.sample_rate_hz = spec.sample_rate_hz;
  mag.frames = Matrix(spec.num_frames, spec.num_bins);
  for (int t = 0; t < spec.num_frames; ++t)
    for (int k = 0; k < spec.num_bins; ++k)
      mag.frames(t, k) = std::abs(spec.at(t, k));
  return mag;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

std::vector<double> MelCenterFreqs(int n_mels, int sample_rate_hz) {
  const double mel_max = HzToMel(sample_rate_hz / 2.0);
  std::vector<double> centers(n_mels);
  for (int m = 0; m < n_mels; ++m)
    centers[m] = MelToHz(mel_max * (m + 1) / (n_mels + 1));
  return centers;
}

MelFilterbank MakeMelFilterbank(int n_mels, const StftConfig &cfg,
                                int sample_rate_hz) {
  if (n_mels < 2)
    throw VcError(ErrorKind::kConfigMismatch, "need at least 2 mel bands");
  cfg.Validate(sample_rate_hz);

  const int bins = cfg.fft_size / 2 + 1;
  const double mel_max = HzToMel(sample_rate_hz / 2.0);

  // n_mels + 2 edge points, equally spaced in mel
  std::vector<double> edges_hz(n_mels + 2);
  for (int i = 0; i < n_mels + 2; ++i)
    edges_hz[i] = MelToHz(mel_max * i / (n_mels + 1));

  MelFilterbank fb;
  fb.n_mels = n_mels;
  fb.center_freqs_hz = MelCenterFreqs(n_mels, sample_rate_hz);
  fb.weights = Matrix(n_mels, bins);

  const double bin_hz = static_cast<double>(sample_rate_hz) / cfg.fft_size;
  for (int m = 0; m < n_mels; ++m) {
    const double lo = edges_hz[m], center = edges_hz[m + 1],
                 hi = edges_hz[m + 2];
    double sum = 0.0;
    for (int k = 0; k < bins; ++k) {
      const double f = k * bin_hz;
      double v = 0.0;
      if (f > lo && f < hi)
        v = f <= center ? (f - lo) / (center - lo) : (hi - f) / (hi - center);
      sum += v;
      fb.weights(m, k) = v;
    }
    if (sum <= 0.0) {
      // triangle narrower than a bin: claim the nearest bin instead
      const int k = std::clamp(
          static_cast<int>(std::lround(center / bin_hz)), 0, bins - 1);
      fb.weights(m, k) = 1.0;
    } else {
      for (int k = 0; k < bins; ++k) fb.weights(m, k) /= sum;
    }
  }
  return fb;
}

Waveform GriffinLim(const Spectrogram &mag, int iters, GriffinLimInit init,
                    uint64_t seed, std::vector<double> *convergence_out) {
  if (iters < 1)
    throw VcError(ErrorKind::kConfigMismatch, "iters must be >= 1");
  const int T = mag.frames.rows();
  const int bins = mag.frames.cols();
  if (bins != mag.config.fft_size / 2 + 1)
    throw VcError(ErrorKind::kDimMismatch,
                  "magnitude bins do not match fft_size/2+1");

  ComplexSpectrogram spec;
  spec.num_frames = T;
  spec.num_bins = bins;
  spec.config = mag.config;
  spec.sample_rate_hz = mag.sample_rate_hz;
  spec.frames.resize(static_cast<size_t>(T) * bins);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(0.0, 2.0 * std::numbers::pi);
  for (int t = 0; t < T; ++t) {
    for (int k = 0; k < bins; ++k) {
      const double phase =
          init == GriffinLimInit::kRandomPhase ? uni(rng) : 0.0;
      spec.at(t, k) = std::polar(mag.frames(t, k), phase);
    }
  }

  double mag_norm = 0.0;
  for (double v : mag.frames.data()) mag_norm += v * v;
  mag_norm = std::sqrt(mag_norm);

  Waveform wave;
  if (convergence_out) convergence_out->clear();
  for (int it = 0; it < iters; ++it) {
    wave = Istft(spec);
    ComplexSpectrogram est = Stft(wave, mag.config);
    if (est.num_frames != T)
      throw VcError(ErrorKind::kDimMismatch,
                    "frame count changed inside Griffin-Lim");
    if (convergence_out) {
      double err = 0.0;
      for (int t = 0; t < T; ++t)
        for (int k = 0; k < bins; ++k) {
          const double d = std::abs(est.at(t, k)) - mag.frames(t, k);
          err += d * d;
        }
      convergence_out->push_back(mag_norm > 0.0 ? std::sqrt(err) / mag_norm
                                                : 0.0);
    }
    // keep the estimated phase, re-impose the target magnitude
    for (int t = 0; t < T; ++t)
      for (int k = 0; k < bins; ++k) {
        const std::complex<double> z = est.at(t, k);
        const double a = std::abs(z);
        spec.at(t, k) = a > 0.0 ? z * (mag.frames(t, k) / a)
                                : std::complex<double>(mag.frames(t, k), 0.0);
      }
  }
  return Istft(spec);
}

}  // namespace vcwarp
