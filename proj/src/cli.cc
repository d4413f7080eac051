// src/cli.cc

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

#include "vcwarp/cli.h"

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vcwarp/audio_io.h"
#include "vcwarp/error.h"
#include "vcwarp/metrics.h"
#include "vcwarp/profile.h"
#include "vcwarp/testkit.h"
#include "vcwarp/warp.h"

namespace vcwarp {

namespace {

void PrintError(const std::string &kind, const std::string &msg) {
  nlohmann::json j;
  j["error"] = kind;
  j["message"] = msg;
  std::cerr << j.dump() << std::endl;
}

// --profile beats VCWARP_PROFILE beats the subcommand default.
Profile ResolveProfile(const std::string &flag_value,
                       const std::string &fallback) {
  if (!flag_value.empty()) return ProfileByName(flag_value);
  if (const char *env = std::getenv("VCWARP_PROFILE"); env && *env)
    return ProfileByName(env);
  return ProfileByName(fallback);
}

bool LooksLikeFeatureFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw VcError(ErrorKind::kIoError, "cannot open " + path);
  char magic[8] = {};
  is.read(magic, 8);
  return is.gcount() == 8 && std::string(magic, 8) == "VCFEAT01";
}

// learn-warp accepts either audio (extracted on the fly) or VCF1 cepstra.
MelCepstra LoadCepstraAny(const std::string &path, const Profile &profile) {
  if (LooksLikeFeatureFile(path))
    return CepstraFromFeatureFile(ReadFeatures(path), profile.stft);
  const Waveform w = ReadWav(path);
  return ExtractMelCepstra(w, profile.n_coeffs, profile.stft);
}

std::string ReadTextFile(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw VcError(ErrorKind::kIoError, "cannot open " + path);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::string &path, const std::string &text) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw VcError(ErrorKind::kIoError, "cannot open " + path);
  os << text;
  if (!os) throw VcError(ErrorKind::kIoError, "short write to " + path);
}

WarpMode ParseMode(const std::string &mode) {
  if (mode == "scalar") return WarpMode::kScalar;
  if (mode == "per-band") return WarpMode::kPerBand;
  throw VcError(ErrorKind::kUsage,
                "unknown mode '" + mode + "' (scalar | per-band)");
}

struct PipelineResult {
  WarpModel model;
  EvalReport before;
  EvalReport after;
};

PipelineResult RunPipeline(const Waveform &conv, const Waveform &ref,
                           const Profile &learn_profile,
                           const Profile &eval_profile, WarpMode mode,
                           int gl_iters, Waveform *warped_out) {
  Waveform ref_n = ref;
  if (ref_n.sample_rate_hz != conv.sample_rate_hz)
    ref_n = ResampleLinear(ref_n, conv.sample_rate_hz);

  const MelCepstra conv_c =
      ExtractMelCepstra(conv, learn_profile.n_coeffs, learn_profile.stft);
  const MelCepstra ref_c =
      ExtractMelCepstra(ref_n, learn_profile.n_coeffs, learn_profile.stft);

  PipelineResult res;
  res.model = LearnWarp(conv_c, ref_c, mode);
  Waveform warped = ApplyWarp(res.model, conv, learn_profile.stft, gl_iters);
  res.before = EvaluatePair(conv, ref_n, eval_profile);
  res.after = EvaluatePair(warped, ref_n, eval_profile);
  if (warped_out) *warped_out = std::move(warped);
  return res;
}

int CmdExtract(const std::string &in, const std::string &out,
               const std::string &profile_flag, int coeffs_override) {
  Profile profile = ResolveProfile(profile_flag, "mcd36");
  if (coeffs_override > 0) profile.n_coeffs = coeffs_override;
  const Waveform w = ReadWav(in);
  const MelCepstra c = ExtractMelCepstra(w, profile.n_coeffs, profile.stft);
  WriteFeatures(CepstraToFeatureFile(c), out);
  return 0;
}

int CmdF0(const std::string &in, const std::string &out,
          const std::string &profile_flag) {
  const Profile profile = ResolveProfile(profile_flag, "mcd36");
  const Waveform w = ReadWav(in);
  const F0Contour c = EstimateF0(w, profile.stft, profile.f0_options());
  WriteFeatures(F0ToFeatureFile(c, w.sample_rate_hz), out);
  return 0;
}

int CmdLearnWarp(const std::string &conv_path, const std::string &ref_path,
                 const std::string &out, const std::string &profile_flag,
                 const std::string &mode) {
  const Profile profile = ResolveProfile(profile_flag, "warp80");
  const MelCepstra conv = LoadCepstraAny(conv_path, profile);
  const MelCepstra ref = LoadCepstraAny(ref_path, profile);
  const WarpModel model = LearnWarp(conv, ref, ParseMode(mode));
  SaveWarpModel(model, out);
  return 0;
}

int CmdApplyWarp(const std::string &model_path, const std::string &in,
                 const std::string &out, const std::string &profile_flag,
                 int gl_iters, bool random_phase,
                 std::optional<uint64_t> seed) {
  const Profile profile = ResolveProfile(profile_flag, "warp80");
  if (random_phase && !seed)
    throw VcError(ErrorKind::kUsage, "--random-phase requires --seed");
  const WarpModel model = LoadWarpModel(model_path);
  const Waveform w = ReadWav(in);
  const Spectrogram mag = WarpedMagnitude(model, w, profile.stft);
  const Waveform warped =
      GriffinLim(mag, gl_iters > 0 ? gl_iters : profile.gl_iters,
                 random_phase ? GriffinLimInit::kRandomPhase
                              : GriffinLimInit::kZeroPhase,
                 seed.value_or(0));
  WriteWav(warped, out);
  return 0;
}

int CmdEvaluate(const std::string &conv_path, const std::string &ref_path,
                const std::string &json_out, const std::string &csv_out,
                const std::string &list_path, const std::string &profile_flag,
                int jobs) {
  const Profile profile = ResolveProfile(profile_flag, "mcd36");

  if (!list_path.empty()) {
    // batch mode: one "conv,ref" pair per line, output rows in input order
    std::ifstream is(list_path);
    if (!is) throw VcError(ErrorKind::kIoError, "cannot open " + list_path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const size_t comma = line.find(',');
      if (comma == std::string::npos)
        throw VcError(ErrorKind::kUsage,
                      "list lines must be 'conv_path,ref_path'");
      pairs.emplace_back(line.substr(0, comma), line.substr(comma + 1));
    }

    std::vector<std::future<EvalReport>> futures;
    futures.reserve(pairs.size());
    const auto policy = jobs == 1 ? std::launch::deferred : std::launch::async;
    for (const auto &[c, r] : pairs)
      futures.push_back(std::async(policy, [&profile, c, r] {
        return EvaluatePair(ReadWav(c), ReadWav(r), profile);
      }));

    std::ostringstream csv;
    csv << ReportCsvHeader() << "\n";
    for (size_t i = 0; i < pairs.size(); ++i)
      csv << ReportToCsvLine(futures[i].get(), pairs[i].first,
                             pairs[i].second)
          << "\n";
    if (!csv_out.empty())
      WriteTextFile(csv_out, csv.str());
    else
      std::cout << csv.str();
    return 0;
  }

  const EvalReport r =
      EvaluatePair(ReadWav(conv_path), ReadWav(ref_path), profile);
  const std::string json = ReportToJson(r);
  std::cout << json;
  if (!json_out.empty()) WriteTextFile(json_out, json);
  if (!csv_out.empty())
    WriteTextFile(csv_out, std::string(ReportCsvHeader()) + "\n" +
                               ReportToCsvLine(r, conv_path, ref_path) + "\n");
  return 0;
}

int CmdGenTest(const std::string &spec_path, const std::string &prefix,
               double alpha_star) {
  const SynthSpec spec = spec_path.empty()
                             ? DefaultSynthSpec()
                             : SynthSpecFromJson(ReadTextFile(spec_path));
  const WarpedPair pair = GenWarpedPair(spec, alpha_star);
  WriteWav(pair.source, prefix + ".source.wav");
  WriteWav(pair.target, prefix + ".target.wav");
  nlohmann::json j;
  j["alpha_star"] = pair.alpha_star;
  WriteTextFile(prefix + ".alpha.json", j.dump(2) + "\n");
  return 0;
}

int CmdPipeline(const std::string &conv_path, const std::string &ref_path,
                const std::string &prefix, const std::string &learn_flag,
                const std::string &eval_flag, const std::string &mode,
                int gl_iters) {
  const Profile learn_profile = ResolveProfile(learn_flag, "warp80");
  const Profile eval_profile = ResolveProfile(eval_flag, "mcd36");
  const Waveform conv = ReadWav(conv_path);
  const Waveform ref = ReadWav(ref_path);

  Waveform warped;
  const PipelineResult res = RunPipeline(
      conv, ref, learn_profile, eval_profile, ParseMode(mode),
      gl_iters > 0 ? gl_iters : learn_profile.gl_iters, &warped);
  WriteWav(warped, prefix + ".warped.wav");
  SaveWarpModel(res.model, prefix + ".warp.json");

  nlohmann::json j;
  if (res.model.mode == WarpMode::kScalar)
    j["alpha"] = res.model.alpha();
  else
    j["alphas"] = res.model.alphas;
  j["mode"] = res.model.mode == WarpMode::kScalar ? "scalar" : "per_band";
  j["mcd_before"] = res.before.mcd_db;
  j["mcd_after"] = res.after.mcd_db;
  j["f0_rmse_before"] = res.before.f0_rmse_norm;
  j["f0_rmse_after"] = res.after.f0_rmse_norm;
  j["before"] = nlohmann::json::parse(ReportToJson(res.before));
  j["after"] = nlohmann::json::parse(ReportToJson(res.after));
  const std::string report = j.dump(2) + "\n";
  std::cout << report;
  WriteTextFile(prefix + ".report.json", report);
  return 0;
}

}  // namespace

int RunCli(const std::vector<std::string> &args) {
  CLI::App app{"learned frequency-warping post-processing and evaluation "
               "for voice conversion output"};
  app.require_subcommand(1);

  std::string in, out, conv_path, ref_path, model_path, prefix, spec_path;
  std::string profile_flag, learn_flag, eval_flag;
  std::string mode = "scalar";
  std::string json_out, csv_out, list_path;
  int coeffs = 0, gl_iters = 0, jobs = 0;
  double alpha_star = 0.1;
  bool random_phase = false;
  std::optional<uint64_t> seed;

  auto *extract = app.add_subcommand("extract", "wav -> VCF1 mel cepstra");
  extract->add_option("input", in, "input wav")->required();
  extract->add_option("output", out, "output VCF1 file")->required();
  extract->add_option("--profile", profile_flag, "mcd36 | warp80");
  extract->add_option("--coeffs", coeffs, "override coefficient count");

  auto *f0 = app.add_subcommand("f0", "wav -> VCF1 F0 contour");
  f0->add_option("input", in, "input wav")->required();
  f0->add_option("output", out, "output VCF1 file")->required();
  f0->add_option("--profile", profile_flag, "mcd36 | warp80");

  auto *learn = app.add_subcommand(
      "learn-warp", "converted + reference (wav or VCF1) -> warp JSON");
  learn->add_option("converted", conv_path, "converted input")->required();
  learn->add_option("reference", ref_path, "reference input")->required();
  learn->add_option("output", out, "output warp JSON")->required();
  learn->add_option("--profile", profile_flag, "mcd36 | warp80");
  learn->add_option("--mode", mode, "scalar | per-band");

  auto *apply = app.add_subcommand("apply-warp", "warp JSON + wav -> wav");
  apply->add_option("model", model_path, "warp JSON")->required();
  apply->add_option("input", in, "input wav")->required();
  apply->add_option("output", out, "output wav")->required();
  apply->add_option("--profile", profile_flag, "mcd36 | warp80");
  apply->add_option("--gl-iters", gl_iters, "Griffin-Lim iterations");
  apply->add_flag("--random-phase", random_phase,
                  "random instead of zero phase init (needs --seed)");
  apply->add_option("--seed", seed, "seed for --random-phase");

  auto *eval = app.add_subcommand("evaluate",
                                  "two wavs -> MCD / F0-RMSE report");
  eval->add_option("converted", conv_path, "converted wav");
  eval->add_option("reference", ref_path, "reference wav");
  eval->add_option("--json", json_out, "also write report JSON here");
  eval->add_option("--csv", csv_out, "also write one-line CSV here");
  eval->add_option("--list", list_path, "batch file, 'conv,ref' per line");
  eval->add_option("--profile", profile_flag, "mcd36 | warp80");
  eval->add_option("--jobs", jobs, "parallel workers in batch mode");

  auto *gen = app.add_subcommand("gen-test",
                                 "synth spec JSON -> warped wav pair");
  gen->add_option("prefix", prefix, "output prefix")->required();
  gen->add_option("--spec", spec_path, "synth spec JSON (omit for defaults)");
  gen->add_option("--alpha", alpha_star, "planted warp factor");

  auto *pipe = app.add_subcommand(
      "pipeline", "learn + apply + before/after evaluation in one pass");
  pipe->add_option("converted", conv_path, "converted wav")->required();
  pipe->add_option("reference", ref_path, "reference wav")->required();
  pipe->add_option("prefix", prefix, "output prefix")->required();
  pipe->add_option("--learn-profile", learn_flag, "warp-learning profile");
  pipe->add_option("--eval-profile", eval_flag, "evaluation profile");
  pipe->add_option("--mode", mode, "scalar | per-band");
  pipe->add_option("--gl-iters", gl_iters, "Griffin-Lim iterations");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    PrintError("Usage", e.what());
    return 2;
  }

  try {
    if (*extract) return CmdExtract(in, out, profile_flag, coeffs);
    if (*f0) return CmdF0(in, out, profile_flag);
    if (*learn)
      return CmdLearnWarp(conv_path, ref_path, out, profile_flag, mode);
    if (*apply)
      return CmdApplyWarp(model_path, in, out, profile_flag, gl_iters,
                          random_phase, seed);
    if (*eval) {
      if (list_path.empty() && (conv_path.empty() || ref_path.empty()))
        throw VcError(ErrorKind::kUsage,
                      "evaluate needs two wavs or --list");
      return CmdEvaluate(conv_path, ref_path, json_out, csv_out, list_path,
                         profile_flag, jobs);
    }
    if (*gen) return CmdGenTest(spec_path, prefix, alpha_star);
    if (*pipe)
      return CmdPipeline(conv_path, ref_path, prefix, learn_flag, eval_flag,
                         mode, gl_iters);
    throw VcError(ErrorKind::kUsage, "no subcommand given");
  } catch (const VcError &e) {
    PrintError(ErrorKindName(e.kind()), e.what());
    return ExitCodeFor(e.kind());
  } catch (const std::exception &e) {
    PrintError("Error", e.what());
    return 3;
  }
}

}  // namespace vcwarp
