// src/testkit.cc

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

#include "vcwarp/testkit.h"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include <json.hpp>

#include "vcwarp/error.h"
#include "vcwarp/warp.h"

namespace vcwarp {

namespace {
constexpr double kPi = std::numbers::pi;

void ValidateSpec(const SynthSpec &spec) {
  if (spec.sample_rate_hz <= 0)
    throw VcError(ErrorKind::kConfigMismatch, "sample rate must be positive");
  if (spec.duration_s < 0.3)
    throw VcError(ErrorKind::kConfigMismatch, "duration must be >= 0.3 s");
  if (spec.f0_hz < 60.0 || spec.f0_hz > 500.0)
    throw VcError(ErrorKind::kConfigMismatch, "f0 must lie in [60, 500] Hz");
  for (const auto &[fc, bw] : spec.formants) {
    if (!(fc > 0.0 && fc < spec.sample_rate_hz / 2.0))
      throw VcError(ErrorKind::kConfigMismatch,
                    "formant centers must lie below Nyquist");
    if (bw <= 0.0)
      throw VcError(ErrorKind::kConfigMismatch,
                    "formant bandwidths must be positive");
  }
}

}  // namespace

// Narrow resonators keep the spectrum peak-dominated, which is what warp
// recovery needs: formant peaks compose exactly through the bilinear map
// while resonator skirts do not. A low f0 packs harmonics densely enough
// that mel bands above ~700 Hz always straddle one.
SynthSpec DefaultSynthSpec() {
  SynthSpec spec;
  spec.f0_hz = 90.0;
  spec.formants = {{800.0, 48.0}, {1600.0, 64.0},
                   {2700.0, 80.0}, {4000.0, 100.0}};
  spec.duration_s = 1.0;
  spec.sample_rate_hz = 16000;
  spec.seed = 1;
  return spec;
}

Waveform GenVoice(const SynthSpec &spec) {
  ValidateSpec(spec);
  const double fs = spec.sample_rate_hz;
  const int n = static_cast<int>(std::lround(spec.duration_s * fs));

  // impulse train excitation
  std::vector<double> x(n, 0.0);
  const double period = fs / spec.f0_hz;
  for (double pos = 0.0; pos < n; pos += period)
    x[static_cast<int>(pos)] = 1.0;

  // cascaded two-pole resonators, unit gain at each center frequency
  for (const auto &[fc, bw] : spec.formants) {
    const double r = std::exp(-kPi * bw / fs);
    const double omega = 2.0 * kPi * fc / fs;
    const double a1 = 2.0 * r * std::cos(omega);
    const double a2 = -r * r;
    const std::complex<double> z = std::polar(1.0, -omega);
    const double g = std::abs(1.0 - a1 * z - a2 * z * z);

    double y1 = 0.0, y2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double y = g * x[i] + a1 * y1 + a2 * y2;
      y2 = y1;
      y1 = y;
      x[i] = y;
    }
  }

  double energy = 0.0;
  for (double v : x) energy += v * v;
  const double rms = std::sqrt(energy / n);

  // -40 dB noise floor, seeded
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double noise_amp = rms * 0.01;
  for (int i = 0; i < n; ++i) x[i] += noise_amp * gauss(rng);

  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  const double scale = peak > 0.0 ? 0.5 / peak : 1.0;

  Waveform w;
  w.sample_rate_hz = spec.sample_rate_hz;
  w.samples.resize(n);
  for (int i = 0; i < n; ++i) w.samples[i] = x[i] * scale;
  return w;
}

double WarpFrequencyHz(double f_hz, double alpha, double f_s_hz) {
  return f_s_hz * PhaseWarp(2.0 * kPi * f_hz / f_s_hz, alpha) / (2.0 * kPi);
}

WarpedPair GenWarpedPair(const SynthSpec &spec, double alpha_star) {
  if (std::abs(alpha_star) > 0.3)
    throw VcError(ErrorKind::kWarpOutOfRange,
                  "|alpha_star| must not exceed 0.3");
  ValidateSpec(spec);

  SynthSpec target_spec = spec;
  for (auto &[fc, bw] : target_spec.formants)
    fc = WarpFrequencyHz(fc, -alpha_star, spec.sample_rate_hz);

  WarpedPair pair;
  pair.alpha_star = alpha_star;
  pair.source = GenVoice(spec);
  pair.target = GenVoice(target_spec);
  return pair;
}

std::string SynthSpecToJson(const SynthSpec &spec) {
  nlohmann::json j;
  j["f0_hz"] = spec.f0_hz;
  j["formants"] = spec.formants;
  j["duration_s"] = spec.duration_s;
  j["sample_rate_hz"] = spec.sample_rate_hz;
  j["seed"] = spec.seed;
  return j.dump(2) + "\n";
}

SynthSpec SynthSpecFromJson(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw VcError(ErrorKind::kBadMagic,
                  std::string("synth spec is not valid JSON: ") + e.what());
  }
  SynthSpec spec = DefaultSynthSpec();
  try {
    if (j.contains("f0_hz")) spec.f0_hz = j["f0_hz"].get<double>();
    if (j.contains("formants"))
      spec.formants =
          j["formants"].get<std::vector<std::pair<double, double>>>();
    if (j.contains("duration_s")) spec.duration_s = j["duration_s"].get<double>();
    if (j.contains("sample_rate_hz"))
      spec.sample_rate_hz = j["sample_rate_hz"].get<int>();
    if (j.contains("seed")) spec.seed = j["seed"].get<uint64_t>();
  } catch (const nlohmann::json::exception &e) {
    throw VcError(ErrorKind::kTruncatedFile,
                  std::string("bad synth spec field: ") + e.what());
  }
  ValidateSpec(spec);
  return spec;
}

}  // namespace vcwarp
