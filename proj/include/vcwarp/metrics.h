// include/vcwarp/metrics.h

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

#ifndef VCWARP_METRICS_H_
#define VCWARP_METRICS_H_

#include <span>
#include <string>

#include "vcwarp/align.h"
#include "vcwarp/audio_io.h"
#include "vcwarp/features.h"
#include "vcwarp/profile.h"

namespace vcwarp {

struct EvalReport {
  double mcd_db = 0.0;
  double f0_rmse_norm = 0.0;
  int n_aligned_frames = 0;
  int n_covoiced_frames = 0;
  double dtw_cost = 0.0;
  bool f0_degenerate = false;  // no co-voiced pairs
  std::string profile_name;
  int sample_rate_hz = 0;
};

// Frame-level mel-cepstral distortion in dB, c_0 excluded:
//   (10/ln 10) * sqrt(2 * sum_{m>=1} (c_m - c_ref_m)^2)
double McdFrame(std::span<const double> c, std::span<const double> c_ref);

// DTW-aligned mean of McdFrame over the path.
double Mcd(const MelCepstra &conv, const MelCepstra &ref);

// RMSE between z-normalized contours over co-voiced aligned pairs. Each
// contour is normalized by its own voiced-frame mean/stddev (population).
// With no co-voiced pairs returns 0 and sets *degenerate_out.
double F0RmseNormalized(const F0Contour &conv_f0, const F0Contour &ref_f0,
                        const AlignmentPath &path,
                        bool *degenerate_out = nullptr);

// Extract, align, measure: the whole objective-evaluation pass for one pair.
EvalReport EvaluatePair(const Waveform &conv_audio, const Waveform &ref_audio,
                        const Profile &profile);

std::string ReportToJson(const EvalReport &r);
// One line: conv_path,ref_path,mcd_db,f0_rmse_norm,n_aligned,n_covoiced
std::string ReportToCsvLine(const EvalReport &r, const std::string &conv_path,
                            const std::string &ref_path);
const char *ReportCsvHeader();

}  // namespace vcwarp

#endif  // VCWARP_METRICS_H_
