// src/warp.cc

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

#include "vcwarp/warp.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "vcwarp/dsp.h"
#include "vcwarp/error.h"

namespace vcwarp {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

double AlphaFromFreqs(double f_src_hz, double f_tgt_hz, double f_s_hz) {
  if (!(f_src_hz > 0.0 && f_src_hz < f_s_hz / 2.0) ||
      !(f_tgt_hz > 0.0 && f_tgt_hz < f_s_hz / 2.0))
    throw VcError(ErrorKind::kConfigMismatch,
                  "frequencies must lie in (0, f_s/2)");
  const double cos_arg = kPi * (f_src_hz + f_tgt_hz) / f_s_hz;
  if (std::abs(cos_arg - kPi / 2.0) < 1e-9)
    throw VcError(ErrorKind::kDegenerateDenominator,
                  "f_src + f_tgt puts the cosine argument at pi/2");
  return std::sin(kPi * (f_src_hz - f_tgt_hz) / f_s_hz) / std::cos(cos_arg);
}

double PhaseWarp(double theta, double alpha) {
  // unwrapped all-pass phase; equals the atan ratio form modulo branch
  return theta +
         2.0 * std::atan(alpha * std::sin(theta) /
                         (1.0 - alpha * std::cos(theta)));
}

double PhaseWarpAlphaDeriv(double theta, double alpha) {
  const double denom = 1.0 - 2.0 * alpha * std::cos(theta) + alpha * alpha;
  return 2.0 * std::sin(theta) / denom;
}

namespace {

void CheckMatrixArgs(int fft_size, int n_coeffs,
                     const std::vector<double> &centers, double f_s_hz) {
  if (fft_size < 2 || (fft_size & (fft_size - 1)) != 0)
    throw VcError(ErrorKind::kConfigMismatch,
                  "fft_size must be a power of two");
  // centers span the whole band axis; truncated cepstra keep fewer columns
  if (static_cast<int>(centers.size()) < n_coeffs)
    throw VcError(ErrorKind::kDimMismatch,
                  "fewer mel centers than coefficients");
  double prev = 0.0;
  for (double f : centers) {
    if (!(f > prev && f <= f_s_hz / 2.0))
      throw VcError(ErrorKind::kConfigMismatch,
                    "mel centers must be increasing and lie in (0, f_s/2]");
    prev = f;
  }
}

void CheckAlpha(double alpha) {
  if (!(std::abs(alpha) < 1.0))
    throw VcError(ErrorKind::kWarpOutOfRange, "|alpha| must be below 1");
}

// Band-position map m(f) for a set of mel centers: piecewise linear in mel,
// extended past the first/last center with the edge spacing, clamped to the
// half-open band axis [-0.5, M-0.5].
class BandMap {
 public:
  explicit BandMap(const std::vector<double> &centers_hz) {
    mels_.reserve(centers_hz.size());
    for (double f : centers_hz) mels_.push_back(HzToMel(f));
  }

  double XOfMel(double mel) const {
    const int m = static_cast<int>(mels_.size());
    int i = static_cast<int>(std::upper_bound(mels_.begin(), mels_.end(), mel) -
                             mels_.begin()) -
            1;
    i = std::clamp(i, 0, m - 2);
    const double x = i + (mel - mels_[i]) / (mels_[i + 1] - mels_[i]);
    return std::clamp(x, -0.5, m - 0.5);
  }

  double XOfHz(double f_hz) const { return XOfMel(HzToMel(f_hz)); }

  // d x / d f, zero where the clamp is active
  double SlopeAtHz(double f_hz) const {
    const int m = static_cast<int>(mels_.size());
    const double mel = HzToMel(f_hz);
    int i = static_cast<int>(std::upper_bound(mels_.begin(), mels_.end(), mel) -
                             mels_.begin()) -
            1;
    i = std::clamp(i, 0, m - 2);
    const double x = i + (mel - mels_[i]) / (mels_[i + 1] - mels_[i]);
    if (x <= -0.5 || x >= m - 0.5) return 0.0;
    const double dmel_df = 2595.0 / (std::log(10.0) * (700.0 + f_hz));
    return dmel_df / (mels_[i + 1] - mels_[i]);
  }

 private:
  std::vector<double> mels_;
};

// Angle of FFT bin k on the mel-band axis after warping bin frequency by
// alpha: psi = pi*(2 x(f~) + 1) / (2 n_bands), with n_bands the DCT length
// of the cepstra and f~ = (f_s/2pi) PhaseWarp(2pi k/N, alpha).
double WarpedBandAngle(int k, int fft_size, double alpha, const BandMap &map,
                       int n_bands, double f_s_hz) {
  const double omega = kTwoPi * k / fft_size;  // in [0, pi] for k <= N/2
  const double warped = PhaseWarp(omega, alpha);
  const double f_hz = warped * f_s_hz / kTwoPi;
  return kPi * (2.0 * map.XOfHz(f_hz) + 1.0) / (2.0 * n_bands);
}

// d psi / d alpha at bin k.
double WarpedBandAngleAlphaDeriv(int k, int fft_size, double alpha,
                                 const BandMap &map, int n_bands,
                                 double f_s_hz) {
  const double omega = kTwoPi * k / fft_size;
  const double warped = PhaseWarp(omega, alpha);
  const double f_hz = warped * f_s_hz / kTwoPi;
  return f_s_hz / (2.0 * n_bands) * map.SlopeAtHz(f_hz) *
         PhaseWarpAlphaDeriv(omega, alpha);
}

}  // namespace

double BandPosition(double f_hz, const std::vector<double> &centers_hz) {
  if (centers_hz.size() < 2)
    throw VcError(ErrorKind::kDimMismatch, "need at least 2 mel centers");
  return BandMap(centers_hz).XOfHz(f_hz);
}

Matrix BuildReferenceMatrix(int fft_size, int n_coeffs,
                            const std::vector<double> &centers,
                            double f_s_hz) {
  // alpha = 0 walks the identical code path, so D(0) == D* bitwise
  return BuildWarpMatrix(std::vector<double>(n_coeffs, 0.0), fft_size,
                         n_coeffs, centers, f_s_hz);
}

Matrix BuildWarpMatrix(double alpha, int fft_size, int n_coeffs,
                       const std::vector<double> &centers, double f_s_hz) {
  return BuildWarpMatrix(std::vector<double>(n_coeffs, alpha), fft_size,
                         n_coeffs, centers, f_s_hz);
}

Matrix BuildWarpMatrix(const std::vector<double> &alphas, int fft_size,
                       int n_coeffs, const std::vector<double> &centers,
                       double f_s_hz) {
  CheckMatrixArgs(fft_size, n_coeffs, centers, f_s_hz);
  if (static_cast<int>(alphas.size()) != n_coeffs)
    throw VcError(ErrorKind::kDimMismatch, "need one alpha per band");
  for (double a : alphas) CheckAlpha(a);

  const BandMap map(centers);
  const int n_bands = static_cast<int>(centers.size());
  const int bins = fft_size / 2 + 1;
  // DCT-III synthesis scaling, so D*c reproduces the log mel values the
  // orthonormal DCT-II cepstra came from
  const double s0 = std::sqrt(1.0 / n_bands);
  const double s = std::sqrt(2.0 / n_bands);
  Matrix d(bins, n_coeffs);
  for (int k = 0; k < bins; ++k) {
    double psi = 0.0;
    double last_alpha = std::numeric_limits<double>::quiet_NaN();
    for (int m = 0; m < n_coeffs; ++m) {
      if (alphas[m] != last_alpha) {
        last_alpha = alphas[m];
        psi = WarpedBandAngle(k, fft_size, alphas[m], map, n_bands, f_s_hz);
      }
      d(k, m) = (m == 0 ? s0 : s) * std::cos(m * psi);
    }
  }
  return d;
}

namespace {

void CheckCostArgs(const Matrix &d, const Matrix &d_star,
                   const MelCepstra &conv, const MelCepstra &ref,
                   const AlignmentPath &path) {
  if (d.rows() != d_star.rows() || d.cols() != d_star.cols())
    throw VcError(ErrorKind::kDimMismatch, "D and D* shapes differ");
  if (d.cols() != conv.n_coeffs || d.cols() != ref.n_coeffs)
    throw VcError(ErrorKind::kDimMismatch,
                  "cepstra order does not match the matrices");
  if (path.pairs.empty())
    throw VcError(ErrorKind::kEmptySequence, "empty alignment path");
  for (const auto &[i, j] : path.pairs)
    if (i < 0 || i >= conv.num_frames() || j < 0 || j >= ref.num_frames())
      throw VcError(ErrorKind::kDimMismatch, "path indexes out of range");
}

}  // namespace

double WarpCost(const Matrix &d, const Matrix &d_star, const MelCepstra &conv,
                const MelCepstra &ref, const AlignmentPath &path) {
  CheckCostArgs(d, d_star, conv, ref, path);
  const int bins = d.rows();

  // project each distinct frame once; paths revisit frames
  std::vector<std::vector<double>> u(conv.num_frames()), v(ref.num_frames());
  double total = 0.0;
  for (const auto &[i, j] : path.pairs) {
    if (u[i].empty()) u[i] = d.MatVec(conv.coeffs.row(i));
    if (v[j].empty()) v[j] = d_star.MatVec(ref.coeffs.row(j));
    double e = 0.0;
    for (int k = 0; k < bins; ++k) {
      const double r = u[i][k] - v[j][k];
      e += r * r;
    }
    total += e;
  }
  const double cost = total / static_cast<double>(path.pairs.size());
  if (!std::isfinite(cost))
    throw VcError(ErrorKind::kNonFiniteCost, "warp cost is not finite");
  return cost;
}

std::vector<double> WarpCostGradient(const std::vector<double> &alphas,
                                     const Matrix &d_star,
                                     const MelCepstra &conv,
                                     const MelCepstra &ref,
                                     const AlignmentPath &path, int fft_size,
                                     const std::vector<double> &centers,
                                     double f_s_hz) {
  const int n_coeffs = static_cast<int>(alphas.size());
  const Matrix d = BuildWarpMatrix(alphas, fft_size, n_coeffs, centers, f_s_hz);
  CheckCostArgs(d, d_star, conv, ref, path);
  const int bins = d.rows();
  const double inv_pairs = 1.0 / static_cast<double>(path.pairs.size());

  std::vector<std::vector<double>> u(conv.num_frames()), v(ref.num_frames());
  // s[k] = sum over pairs of residual[k] * c_conv[b], accumulated per band
  std::vector<double> grad(n_coeffs, 0.0);
  std::vector<double> s(static_cast<size_t>(bins) * n_coeffs, 0.0);
  for (const auto &[i, j] : path.pairs) {
    if (u[i].empty()) u[i] = d.MatVec(conv.coeffs.row(i));
    if (v[j].empty()) v[j] = d_star.MatVec(ref.coeffs.row(j));
    const auto c = conv.coeffs.row(i);
    for (int k = 0; k < bins; ++k) {
      const double r = u[i][k] - v[j][k];
      double *sk = s.data() + static_cast<size_t>(k) * n_coeffs;
      for (int b = 0; b < n_coeffs; ++b) sk[b] += r * c[b];
    }
  }
  const BandMap map(centers);
  const int n_bands = static_cast<int>(centers.size());
  const double scale = std::sqrt(2.0 / n_bands);  // band 0 has zero gradient
  for (int b = 0; b < n_coeffs; ++b) {
    double acc = 0.0;
    for (int k = 0; k < bins; ++k) {
      const double psi =
          WarpedBandAngle(k, fft_size, alphas[b], map, n_bands, f_s_hz);
      // dD[k][b]/d alpha_b
      const double dd =
          -scale * std::sin(b * psi) * b *
          WarpedBandAngleAlphaDeriv(k, fft_size, alphas[b], map, n_bands,
                                    f_s_hz);
      acc += s[static_cast<size_t>(k) * n_coeffs + b] * dd;
    }
    grad[b] = 2.0 * inv_pairs * acc;
    if (!std::isfinite(grad[b]))
      throw VcError(ErrorKind::kNonFiniteCost, "gradient is not finite");
  }
  return grad;
}

namespace {

// Cost as a function of scalar alpha with the reference side precomputed.
class ScalarCostEvaluator {
 public:
  ScalarCostEvaluator(const MelCepstra &conv, const MelCepstra &ref,
                      const AlignmentPath &path, const Matrix &d_star,
                      int fft_size, const std::vector<double> &centers,
                      double f_s_hz)
      : conv_(conv), path_(path), fft_size_(fft_size), centers_(centers),
        f_s_hz_(f_s_hz) {
    v_.resize(ref.num_frames());
    for (const auto &[i, j] : path.pairs)
      if (v_[j].empty()) v_[j] = d_star.MatVec(ref.coeffs.row(j));
  }

  double operator()(double alpha) const {
    const Matrix d = BuildWarpMatrix(alpha, fft_size_, conv_.n_coeffs,
                                     centers_, f_s_hz_);
    const int bins = d.rows();
    std::vector<std::vector<double>> u(conv_.num_frames());
    double total = 0.0;
    for (const auto &[i, j] : path_.pairs) {
      if (u[i].empty()) u[i] = d.MatVec(conv_.coeffs.row(i));
      const auto &vj = v_[j];
      for (int k = 0; k < bins; ++k) {
        const double r = u[i][k] - vj[k];
        total += r * r;
      }
    }
    const double cost = total / static_cast<double>(path_.pairs.size());
    if (!std::isfinite(cost))
      throw VcError(ErrorKind::kNonFiniteCost, "warp cost is not finite");
    return cost;
  }

 private:
  const MelCepstra &conv_;
  const AlignmentPath &path_;
  int fft_size_;
  const std::vector<double> &centers_;
  double f_s_hz_;
  std::vector<std::vector<double>> v_;
};

// Golden-section minimization on [lo, hi], returns the midpoint of the final
// bracket.
double GoldenSection(const ScalarCostEvaluator &cost, double lo, double hi,
                     double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = cost(x1), f2 = cost(x2);
  while (b - a > tol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = cost(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = cost(x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

WarpModel LearnWarp(const MelCepstra &conv, const MelCepstra &ref,
                    WarpMode mode, const LearnOptions &opts) {
  if (conv.num_frames() == 0 || ref.num_frames() == 0)
    throw VcError(ErrorKind::kEmptySequence, "empty feature sequence");
  if (conv.n_coeffs != ref.n_coeffs)
    throw VcError(ErrorKind::kDimMismatch,
                  "coefficient counts differ: " +
                      std::to_string(conv.n_coeffs) + " vs " +
                      std::to_string(ref.n_coeffs));
  if (conv.sample_rate_hz != ref.sample_rate_hz)
    throw VcError(ErrorKind::kConfigMismatch, "sample rates differ");
  if (static_cast<int>(conv.mel_center_freqs_hz.size()) < conv.n_coeffs)
    throw VcError(ErrorKind::kDimMismatch, "missing mel center frequencies");

  const int n_coeffs = conv.n_coeffs;
  const int fft_size = conv.config.fft_size;
  const double f_s = conv.sample_rate_hz;
  const std::vector<double> &centers = conv.mel_center_freqs_hz;

  // alignment is computed once, unwarped, and held fixed: re-aligning inside
  // the loop makes the objective discontinuous in alpha
  const AlignmentPath path = DtwAlign(conv, ref);
  const Matrix d_star =
      BuildReferenceMatrix(fft_size, n_coeffs, centers, f_s);
  const ScalarCostEvaluator cost(conv, ref, path, d_star, fft_size, centers,
                                 f_s);

  // coarse grid; integer stepping keeps 0 an exact candidate
  const int lo_i = static_cast<int>(std::ceil(opts.grid_min / opts.grid_step));
  const int hi_i = static_cast<int>(std::floor(opts.grid_max / opts.grid_step));
  double best_alpha = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (int i = lo_i; i <= hi_i; ++i) {
    const double a = i * opts.grid_step;
    const double e = cost(a);
    if (e < best_cost) {
      best_cost = e;
      best_alpha = a;
    }
  }
  const double refine_lo = std::max(opts.grid_min, best_alpha - opts.grid_step);
  const double refine_hi = std::min(opts.grid_max, best_alpha + opts.grid_step);
  double alpha_hat = GoldenSection(cost, refine_lo, refine_hi,
                                   opts.golden_tol);
  // the refined point must not lose to the grid winner
  if (cost(alpha_hat) > best_cost) alpha_hat = best_alpha;

  WarpModel model;
  model.fft_size = fft_size;
  model.n_coeffs = n_coeffs;
  model.sample_rate_hz = conv.sample_rate_hz;
  model.mel_center_freqs_hz = centers;

  if (mode == WarpMode::kScalar) {
    model.mode = WarpMode::kScalar;
    model.alphas = {alpha_hat};
    model.d = BuildWarpMatrix(alpha_hat, fft_size, n_coeffs, centers, f_s);
    model.d_star = d_star;
    return model;
  }

  // PerBand: coordinate-wise descent on the analytic gradient, starting from
  // the scalar solution.
  std::vector<double> alphas(n_coeffs, alpha_hat);
  const int bins = fft_size / 2 + 1;

  // residuals per path pair, updated incrementally as one band moves
  Matrix d = BuildWarpMatrix(alphas, fft_size, n_coeffs, centers, f_s);
  std::vector<std::vector<double>> v(ref.num_frames());
  for (const auto &[i, j] : path.pairs)
    if (v[j].empty()) v[j] = d_star.MatVec(ref.coeffs.row(j));

  const int P = static_cast<int>(path.pairs.size());
  Matrix res(P, bins);
  {
    std::vector<std::vector<double>> u(conv.num_frames());
    for (int p = 0; p < P; ++p) {
      const auto &[i, j] = path.pairs[p];
      if (u[i].empty()) u[i] = d.MatVec(conv.coeffs.row(i));
      for (int k = 0; k < bins; ++k) res(p, k) = u[i][k] - v[j][k];
    }
  }
  auto total_cost = [&]() {
    double e = 0.0;
    for (double r : res.data()) e += r * r;
    return e / P;
  };

  double cur_cost = total_cost();
  const BandMap band_map(centers);
  const int n_bands = static_cast<int>(centers.size());
  const double col_scale = std::sqrt(2.0 / n_bands);
  std::vector<double> step(n_coeffs, opts.per_band_step);
  std::vector<double> col_new(bins);
  for (int iter = 0; iter < opts.per_band_max_iters; ++iter) {
    double improved = 0.0;
    for (int b = 1; b < n_coeffs; ++b) {  // band 0's column is constant
      // analytic dE/d alpha_b from the current residuals
      double g = 0.0;
      for (int k = 0; k < bins; ++k) {
        double sk = 0.0;
        for (int p = 0; p < P; ++p)
          sk += res(p, k) * conv.coeffs(path.pairs[p].first, b);
        const double psi =
            WarpedBandAngle(k, fft_size, alphas[b], band_map, n_bands, f_s);
        g += sk * (-col_scale * std::sin(b * psi)) * b *
             WarpedBandAngleAlphaDeriv(k, fft_size, alphas[b], band_map,
                                       n_bands, f_s);
      }
      g *= 2.0 / P;
      if (g == 0.0) continue;

      // backtracking step on this coordinate
      bool accepted = false;
      for (int tries = 0; tries < 8 && !accepted; ++tries) {
        const double cand = std::clamp(alphas[b] - step[b] * g,
                                       -opts.alpha_box, opts.alpha_box);
        if (cand == alphas[b]) break;
        for (int k = 0; k < bins; ++k)
          col_new[k] =
              col_scale *
              std::cos(b * WarpedBandAngle(k, fft_size, cand, band_map,
                                           n_bands, f_s));

        // residual delta from this one column, per distinct conv frame
        double new_cost = 0.0;
        {
          double e = 0.0;
          for (int p = 0; p < P; ++p) {
            const double cb = conv.coeffs(path.pairs[p].first, b);
            for (int k = 0; k < bins; ++k) {
              const double r = res(p, k) + cb * (col_new[k] - d(k, b));
              e += r * r;
            }
          }
          new_cost = e / P;
        }
        if (new_cost < cur_cost) {
          for (int p = 0; p < P; ++p) {
            const double cb = conv.coeffs(path.pairs[p].first, b);
            for (int k = 0; k < bins; ++k)
              res(p, k) += cb * (col_new[k] - d(k, b));
          }
          for (int k = 0; k < bins; ++k) d(k, b) = col_new[k];
          improved += cur_cost - new_cost;
          cur_cost = new_cost;
          alphas[b] = cand;
          step[b] *= 1.5;
          accepted = true;
        } else {
          step[b] *= 0.5;
        }
      }
    }
    if (!std::isfinite(cur_cost))
      throw VcError(ErrorKind::kNonFiniteCost, "per-band cost diverged");
    if (improved < 1e-12 * (1.0 + cur_cost)) break;
  }

  model.mode = WarpMode::kPerBand;
  model.alphas = alphas;
  model.d = std::move(d);
  model.d_star = d_star;
  return model;
}

Matrix ApplyWarpToCepstra(const WarpModel &model, const MelCepstra &conv) {
  if (conv.n_coeffs != model.n_coeffs)
    throw VcError(ErrorKind::kDimMismatch,
                  "cepstra order does not match the model");
  Matrix out(conv.num_frames(), model.d.rows());
  for (int t = 0; t < conv.num_frames(); ++t) {
    const std::vector<double> row = model.d.MatVec(conv.coeffs.row(t));
    for (int k = 0; k < model.d.rows(); ++k) out(t, k) = row[k];
  }
  return out;
}

Spectrogram WarpedMagnitude(const WarpModel &model, const Waveform &conv,
                            const StftConfig &cfg) {
  if (cfg.fft_size != model.fft_size ||
      conv.sample_rate_hz != model.sample_rate_hz)
    throw VcError(ErrorKind::kConfigMismatch,
                  "model was built for a different analysis setup");
  const MelCepstra cepstra = ExtractMelCepstra(conv, model.n_coeffs, cfg);
  const Matrix log_spec = ApplyWarpToCepstra(model, cepstra);

  Spectrogram mag;
  mag.config = cfg;
  mag.sample_rate_hz = conv.sample_rate_hz;
  mag.frames = Matrix(log_spec.rows(), log_spec.cols());
  for (int t = 0; t < log_spec.rows(); ++t)
    for (int k = 0; k < log_spec.cols(); ++k)
      mag.frames(t, k) = std::exp(log_spec(t, k));
  return mag;
}

Waveform ApplyWarp(const WarpModel &model, const Waveform &conv_audio,
                   const StftConfig &cfg, int gl_iters) {
  const Spectrogram mag = WarpedMagnitude(model, conv_audio, cfg);
  return GriffinLim(mag, gl_iters);
}

std::string WarpModelToJson(const WarpModel &model) {
  nlohmann::json j;
  j["mode"] = model.mode == WarpMode::kScalar ? "scalar" : "per_band";
  if (model.mode == WarpMode::kScalar)
    j["alpha"] = model.alpha();
  else
    j["alphas"] = model.alphas;
  j["fft_size"] = model.fft_size;
  j["n_coeffs"] = model.n_coeffs;
  j["sample_rate_hz"] = model.sample_rate_hz;
  j["mel_center_freqs"] = model.mel_center_freqs_hz;
  return j.dump(2) + "\n";
}

WarpModel WarpModelFromJson(const std::string &json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception &e) {
    throw VcError(ErrorKind::kBadMagic,
                  std::string("warp model is not valid JSON: ") + e.what());
  }
  WarpModel model;
  try {
    const std::string mode = j.at("mode").get<std::string>();
    if (mode == "scalar") {
      model.mode = WarpMode::kScalar;
      model.alphas = {j.at("alpha").get<double>()};
    } else if (mode == "per_band") {
      model.mode = WarpMode::kPerBand;
      model.alphas = j.at("alphas").get<std::vector<double>>();
    } else {
      throw VcError(ErrorKind::kBadMagic, "unknown warp mode " + mode);
    }
    model.fft_size = j.at("fft_size").get<int>();
    model.n_coeffs = j.at("n_coeffs").get<int>();
    model.sample_rate_hz = j.at("sample_rate_hz").get<int>();
    model.mel_center_freqs_hz =
        j.at("mel_center_freqs").get<std::vector<double>>();
  } catch (const nlohmann::json::exception &e) {
    throw VcError(ErrorKind::kTruncatedFile,
                  std::string("warp model JSON missing fields: ") + e.what());
  }

  for (double a : model.alphas) CheckAlpha(a);
  const std::vector<double> alphas =
      model.mode == WarpMode::kScalar
          ? std::vector<double>(model.n_coeffs, model.alpha())
          : model.alphas;
  if (static_cast<int>(alphas.size()) != model.n_coeffs)
    throw VcError(ErrorKind::kDimMismatch,
                  "alphas length does not match n_coeffs");
  // D and D* are rebuilt, never stored; construction is deterministic
  model.d = BuildWarpMatrix(alphas, model.fft_size, model.n_coeffs,
                            model.mel_center_freqs_hz, model.sample_rate_hz);
  model.d_star =
      BuildReferenceMatrix(model.fft_size, model.n_coeffs,
                           model.mel_center_freqs_hz, model.sample_rate_hz);
  return model;
}

void SaveWarpModel(const WarpModel &model, const std::string &path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw VcError(ErrorKind::kIoError, "cannot open " + path);
  os << WarpModelToJson(model);
}

WarpModel LoadWarpModel(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw VcError(ErrorKind::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return WarpModelFromJson(ss.str());
}

}  // namespace vcwarp
