// src/metrics.cc

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

#include "vcwarp/metrics.h"

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "vcwarp/error.h"

namespace vcwarp {

double McdFrame(std::span<const double> c, std::span<const double> c_ref) {
  if (c.size() != c_ref.size())
    throw VcError(ErrorKind::kDimMismatch, "frame lengths differ");
  if (c.size() < 2)
    throw VcError(ErrorKind::kDimMismatch, "need at least 2 coefficients");
  double acc = 0.0;
  for (size_t m = 1; m < c.size(); ++m) {  // c_0 carries energy, not shape
    const double d = c[m] - c_ref[m];
    acc += d * d;
  }
  return 10.0 / std::log(10.0) * std::sqrt(2.0 * acc);
}

double Mcd(const MelCepstra &conv, const MelCepstra &ref) {
  const AlignmentPath path = DtwAlign(conv, ref);
  double acc = 0.0;
  for (const auto &[i, j] : path.pairs)
    acc += McdFrame(conv.coeffs.row(i), ref.coeffs.row(j));
  return acc / static_cast<double>(path.pairs.size());
}

namespace {

// z-normalize over voiced frames (population stddev); a flat contour
// normalizes to zero rather than dividing by a vanishing sigma.
std::vector<double> ZNormVoiced(const F0Contour &c) {
  double sum = 0.0;
  int n = 0;
  for (int t = 0; t < c.num_frames(); ++t)
    if (c.voiced[t]) {
      sum += c.f0_hz[t];
      ++n;
    }
  std::vector<double> z(c.num_frames(), 0.0);
  if (n == 0) return z;
  const double mean = sum / n;
  double var = 0.0;
  for (int t = 0; t < c.num_frames(); ++t)
    if (c.voiced[t]) var += (c.f0_hz[t] - mean) * (c.f0_hz[t] - mean);
  const double sd = std::sqrt(var / n);
  if (sd < 1e-9) return z;
  for (int t = 0; t < c.num_frames(); ++t)
    if (c.voiced[t]) z[t] = (c.f0_hz[t] - mean) / sd;
  return z;
}

}  // namespace

double F0RmseNormalized(const F0Contour &conv_f0, const F0Contour &ref_f0,
                        const AlignmentPath &path, bool *degenerate_out) {
  const std::vector<double> zc = ZNormVoiced(conv_f0);
  const std::vector<double> zr = ZNormVoiced(ref_f0);

  double acc = 0.0;
  int n = 0;
  for (const auto &[i, j] : path.pairs) {
    if (i >= conv_f0.num_frames() || j >= ref_f0.num_frames())
      throw VcError(ErrorKind::kDimMismatch,
                    "path indexes beyond the F0 contours");
    if (conv_f0.voiced[i] && ref_f0.voiced[j]) {
      const double d = zc[i] - zr[j];
      acc += d * d;
      ++n;
    }
  }
  if (degenerate_out) *degenerate_out = (n == 0);
  return n > 0 ? std::sqrt(acc / n) : 0.0;
}

EvalReport EvaluatePair(const Waveform &conv_audio, const Waveform &ref_audio,
                        const Profile &profile) {
  Waveform ref = ref_audio;
  if (ref.sample_rate_hz != conv_audio.sample_rate_hz)
    ref = ResampleLinear(ref, conv_audio.sample_rate_hz);

  const MelCepstra conv_c =
      ExtractMelCepstra(conv_audio, profile.n_coeffs, profile.stft);
  const MelCepstra ref_c =
      ExtractMelCepstra(ref, profile.n_coeffs, profile.stft);
  const F0Contour conv_f0 =
      EstimateF0(conv_audio, profile.stft, profile.f0_options());
  const F0Contour ref_f0 = EstimateF0(ref, profile.stft, profile.f0_options());

  const AlignmentPath path = DtwAlign(conv_c, ref_c);

  EvalReport r;
  r.profile_name = profile.name;
  r.sample_rate_hz = conv_audio.sample_rate_hz;
  r.n_aligned_frames = static_cast<int>(path.pairs.size());
  r.dtw_cost = path.cost;

  double acc = 0.0;
  int covoiced = 0;
  for (const auto &[i, j] : path.pairs) {
    acc += McdFrame(conv_c.coeffs.row(i), ref_c.coeffs.row(j));
    if (conv_f0.voiced[i] && ref_f0.voiced[j]) ++covoiced;
  }
  r.mcd_db = acc / static_cast<double>(path.pairs.size());
  r.n_covoiced_frames = covoiced;
  r.f0_rmse_norm = F0RmseNormalized(conv_f0, ref_f0, path, &r.f0_degenerate);
  return r;
}

std::string ReportToJson(const EvalReport &r) {
  nlohmann::json j;
  j["mcd_db"] = r.mcd_db;
  j["f0_rmse_norm"] = r.f0_rmse_norm;
  j["n_aligned_frames"] = r.n_aligned_frames;
  j["n_covoiced_frames"] = r.n_covoiced_frames;
  j["dtw_cost"] = r.dtw_cost;
  j["f0_degenerate"] = r.f0_degenerate;
  j["profile"] = r.profile_name;
  j["sample_rate_hz"] = r.sample_rate_hz;
  return j.dump(2) + "\n";
}

const char *ReportCsvHeader() {
  return "conv,ref,mcd_db,f0_rmse_norm,n_aligned_frames,n_covoiced_frames";
}

std::string ReportToCsvLine(const EvalReport &r, const std::string &conv_path,
                            const std::string &ref_path) {
  std::ostringstream os;
  os.precision(17);
  os << conv_path << "," << ref_path << "," << r.mcd_db << ","
     << r.f0_rmse_norm << "," << r.n_aligned_frames << ","
     << r.n_covoiced_frames;
  return os.str();
}

}  // namespace vcwarp
