// tests/test_dsp.cc

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

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "vcwarp/dsp.h"
#include "vcwarp/error.h"

using namespace vcwarp;

namespace {

constexpr double kPi = std::numbers::pi;

Waveform Sine(double freq_hz, double seconds, int fs, double amp = 0.5) {
  Waveform w;
  w.sample_rate_hz = fs;
  const int n = static_cast<int>(seconds * fs);
  w.samples.resize(n);
  for (int i = 0; i < n; ++i)
    w.samples[i] = amp * std::sin(2.0 * kPi * freq_hz * i / fs);
  return w;
}

Waveform NoiseSignal(int n, int fs, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  Waveform w;
  w.sample_rate_hz = fs;
  w.samples.resize(n);
  for (auto &s : w.samples) s = uni(rng);
  return w;
}

double SpectralError(const Spectrogram &mag, const Waveform &w) {
  const ComplexSpectrogram est = Stft(w, mag.config);
  double err = 0.0, ref = 0.0;
  for (int t = 0; t < mag.frames.rows(); ++t)
    for (int k = 0; k < mag.frames.cols(); ++k) {
      const double d = std::abs(est.at(t, k)) - mag.frames(t, k);
      err += d * d;
      ref += mag.frames(t, k) * mag.frames(t, k);
    }
  return std::sqrt(err / ref);
}

}  // namespace

TEST_CASE("stft: DC signal concentrates in bin 0 with |X0| = window sum") {
  const StftConfig cfg = Mel80Config();
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.assign(4096, 1.0);
  const ComplexSpectrogram spec = Stft(w, cfg);
  const std::vector<double> win = HannWindow(cfg.WindowLength(16000));
  double win_sum = 0.0;
  for (double v : win) win_sum += v;

  CHECK(std::abs(spec.at(0, 0)) == doctest::Approx(win_sum).epsilon(1e-12));
  for (int k = 3; k < spec.num_bins; ++k)
    CHECK(std::abs(spec.at(0, k)) < 1e-9 * win_sum);
}

TEST_CASE("stft: bin-exact sinusoid peaks at its bin") {
  // window == fft_size, so bin k sits exactly at k*fs/N
  const StftConfig cfg = Mel80Config();
  const int fs = 16000, k0 = 40;
  const double freq = static_cast<double>(k0) * fs / cfg.fft_size;
  const Waveform w = Sine(freq, 0.5, fs, 1.0);
  const ComplexSpectrogram spec = Stft(w, cfg);

  int argmax = 0;
  for (int k = 1; k < spec.num_bins; ++k)
    if (std::abs(spec.at(1, k)) > std::abs(spec.at(1, argmax))) argmax = k;
  CHECK(argmax == k0);
  // Hann-windowed full-scale sine: peak magnitude is win/4
  CHECK(std::abs(spec.at(1, k0)) ==
        doctest::Approx(cfg.WindowLength(fs) / 4.0).epsilon(1e-6));
}

TEST_CASE("stft: zeros give an all-zero spectrogram") {
  const StftConfig cfg = Mel512GrifConfig();
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.assign(3200, 0.0);
  const ComplexSpectrogram spec = Stft(w, cfg);
  for (const auto &z : spec.frames) CHECK(std::abs(z) == 0.0);
}

TEST_CASE("stft: too-short input throws SignalTooShort") {
  const StftConfig cfg = Mel80Config();
  Waveform w;
  w.sample_rate_hz = 16000;
  w.samples.assign(100, 0.1);
  try {
    Stft(w, cfg);
    FAIL("expected throw");
  } catch (const VcError &e) {
    CHECK(e.kind() == ErrorKind::kSignalTooShort);
  }
}

TEST_CASE("istft: inverts stft on the interior") {
  for (const StftConfig &cfg : {Mel80Config(), Mel512GrifConfig()}) {
    const Waveform w = NoiseSignal(8000, 16000, 42);
    const Waveform r = Istft(Stft(w, cfg));
    const int win = cfg.WindowLength(16000);
    REQUIRE(r.samples.size() <= w.samples.size());
    double max_err = 0.0;
    for (size_t i = win; i + win < r.samples.size(); ++i)
      max_err = std::max(max_err, std::abs(r.samples[i] - w.samples[i]));
    CHECK(max_err <= 1e-4);
  }
}

TEST_CASE("istft: zero spectrogram synthesizes silence") {
  ComplexSpectrogram spec;
  spec.config = Mel80Config();
  spec.sample_rate_hz = 16000;
  spec.num_frames = 4;
  spec.num_bins = spec.config.fft_size / 2 + 1;
  spec.frames.assign(static_cast<size_t>(4) * spec.num_bins, {0.0, 0.0});
  const Waveform w = Istft(spec);
  for (double s : w.samples) CHECK(s == 0.0);
}

TEST_CASE("istft: single frame comes back windowed-normalized") {
  const StftConfig cfg = Mel80Config();
  const int win = cfg.WindowLength(16000);
  Waveform w = NoiseSignal(win, 16000, 7);
  const Waveform r = Istft(Stft(w, cfg));
  REQUIRE(r.samples.size() == static_cast<size_t>(win));
  // away from the window's zero edges the frame is recovered exactly
  for (int i = win / 8; i < win - win / 8; ++i)
    CHECK(r.samples[i] == doctest::Approx(w.samples[i]).epsilon(1e-9));
}

TEST_CASE("stft: energy is proportional to signal energy") {
  // one-sided |X|^2 summed over frames ~= T * N * sum(w^2) * E[x^2] / 2
  const StftConfig cfg = Mel80Config();
  const int fs = 16000;
  const Waveform w = NoiseSignal(fs * 20, fs, 99);
  const ComplexSpectrogram spec = Stft(w, cfg);

  double stft_energy = 0.0;
  for (const auto &z : spec.frames) stft_energy += std::norm(z);

  const std::vector<double> win = HannWindow(cfg.WindowLength(fs));
  double win_sq = 0.0;
  for (double v : win) win_sq += v * v;

  double sig_power = 0.0;
  for (double s : w.samples) sig_power += s * s;
  sig_power /= static_cast<double>(w.samples.size());

  const double expected = static_cast<double>(spec.num_frames) *
                          cfg.fft_size * win_sq * sig_power / 2.0;
  CHECK(stft_energy / expected == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("mel: M=2 centers match the mel formula") {
  // mel(f) = 2595 log10(1 + f/700), nyquist 8000 -> mel_max = 2840.0230
  // centers at 1/3 and 2/3: 921.4557863447, 3055.8840958154 (30-digit eval)
  const MelFilterbank fb = MakeMelFilterbank(2, Mel80Config(), 16000);
  REQUIRE(fb.center_freqs_hz.size() == 2);
  CHECK(fb.center_freqs_hz[0] == doctest::Approx(921.45578634472232).epsilon(1e-10));
  CHECK(fb.center_freqs_hz[1] == doctest::Approx(3055.8840958154026).epsilon(1e-10));
}

TEST_CASE("mel: centers strictly increase and every filter has weight") {
  for (int m : {2, 8, 40, 80, 128}) {
    const MelFilterbank fb = MakeMelFilterbank(m, Mel80Config(), 16000);
    for (int i = 1; i < m; ++i)
      CHECK(fb.center_freqs_hz[i] > fb.center_freqs_hz[i - 1]);
    for (int i = 0; i < m; ++i) {
      double sum = 0.0;
      for (int k = 0; k < fb.weights.cols(); ++k) {
        CHECK(fb.weights(i, k) >= 0.0);
        sum += fb.weights(i, k);
      }
      CHECK(sum > 0.0);
    }
  }
}

TEST_CASE("mel: flat spectrum produces equal band energies") {
  const MelFilterbank fb = MakeMelFilterbank(80, Mel80Config(), 16000);
  std::vector<double> flat(fb.weights.cols(), 3.0);
  for (int m = 0; m < fb.n_mels; ++m) {
    double e = 0.0;
    for (int k = 0; k < fb.weights.cols(); ++k) e += fb.weights(m, k) * flat[k];
    CHECK(e == doctest::Approx(3.0).epsilon(1e-12));
  }
}

TEST_CASE("griffin-lim: reconstructs a sinusoid's magnitude") {
  // window == fft_size keeps analysis/synthesis fully consistent
  const StftConfig cfg = Mel80Config();
  const Waveform w = Sine(300.0, 0.6, 16000);
  const Spectrogram mag = Magnitude(Stft(w, cfg));
  const Waveform rec = GriffinLim(mag, 60);
  CHECK(SpectralError(mag, rec) <= 0.05);

  // a bin-exact line is reconstructed almost perfectly
  const Waveform w2 = Sine(437.5, 0.6, 16000);
  const Spectrogram mag2 = Magnitude(Stft(w2, cfg));
  CHECK(SpectralError(mag2, GriffinLim(mag2, 60)) <= 1e-3);
}

TEST_CASE("griffin-lim: zero magnitude synthesizes silence") {
  Spectrogram mag;
  mag.config = Mel80Config();
  mag.sample_rate_hz = 16000;
  mag.frames = Matrix(5, mag.config.fft_size / 2 + 1, 0.0);
  const Waveform w = GriffinLim(mag, 5);
  for (double s : w.samples) CHECK(s == 0.0);
}

TEST_CASE("griffin-lim: convergence error is non-increasing") {
  const StftConfig cfg = Mel512GrifConfig();
  const Waveform w = Sine(300.0, 0.5, 16000);
  const Spectrogram mag = Magnitude(Stft(w, cfg));
  std::vector<double> errs;
  GriffinLim(mag, 60, GriffinLimInit::kZeroPhase, 0, &errs);
  REQUIRE(errs.size() == 60);
  for (size_t i = 1; i < errs.size(); ++i) CHECK(errs[i] <= errs[i - 1] + 1e-6);
  CHECK(errs.back() <= errs.front());
}

TEST_CASE("griffin-lim: random-phase init is seed-deterministic") {
  const StftConfig cfg = Mel512GrifConfig();
  const Waveform w = Sine(250.0, 0.4, 16000);
  const Spectrogram mag = Magnitude(Stft(w, cfg));
  const Waveform a = GriffinLim(mag, 8, GriffinLimInit::kRandomPhase, 1234);
  const Waveform b = GriffinLim(mag, 8, GriffinLimInit::kRandomPhase, 1234);
  CHECK(a.samples == b.samples);
}
