// src/audio_io.cc

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

#include "vcwarp/audio_io.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "vcwarp/error.h"

namespace vcwarp {

namespace {

constexpr char kFeatureMagic[8] = {'V', 'C', 'F', 'E', 'A', 'T', '0', '1'};

// Little-endian scalar I/O. The build targets LE hosts; memcpy keeps it
// alias-safe.
template <typename T>
void PutLe(std::string &out, T v) {
  char buf[sizeof(T)];
  std::memcpy(buf, &v, sizeof(T));
  out.append(buf, sizeof(T));
}

template <typename T>
T GetLe(const std::string &in, size_t &pos) {
  T v;
  std::memcpy(&v, in.data() + pos, sizeof(T));
  pos += sizeof(T);
  return v;
}

std::string ReadWholeFile(const std::string &path, ErrorKind missing_kind) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw VcError(missing_kind, "cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(is)),
                    std::istreambuf_iterator<char>());
  return bytes;
}

void WriteWholeFile(const std::string &path, const std::string &bytes) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw VcError(ErrorKind::kIoError, "cannot open " + path);
  os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!os) throw VcError(ErrorKind::kIoError, "short write to " + path);
}

}  // namespace

Waveform ReadWav(const std::string &path) {
  const std::string bytes = ReadWholeFile(path, ErrorKind::kIoError);
  if (bytes.size() < 12 || bytes.compare(0, 4, "RIFF") != 0 ||
      bytes.compare(8, 4, "WAVE") != 0) {
    throw VcError(ErrorKind::kMalformedWav, path + ": not a RIFF/WAVE file");
  }

  uint16_t format = 0, channels = 0, bits = 0;
  uint32_t sample_rate = 0;
  bool have_fmt = false;
  size_t data_pos = 0, data_len = 0;

  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::string id = bytes.substr(pos, 4);
    size_t p = pos + 4;
    const uint32_t chunk_len = GetLe<uint32_t>(bytes, p);
    if (p + chunk_len > bytes.size()) {
      throw VcError(ErrorKind::kMalformedWav,
                    path + ": chunk '" + id + "' overruns file");
    }
    if (id == "fmt ") {
      if (chunk_len < 16)
        throw VcError(ErrorKind::kMalformedWav, path + ": fmt chunk too small");
      format = GetLe<uint16_t>(bytes, p);
      channels = GetLe<uint16_t>(bytes, p);
      sample_rate = GetLe<uint32_t>(bytes, p);
      p += 6;  // byte rate + block align
      bits = GetLe<uint16_t>(bytes, p);
      have_fmt = true;
    } else if (id == "data") {
      data_pos = pos + 8;
      data_len = chunk_len;
    }
    pos += 8 + chunk_len + (chunk_len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data_pos == 0)
    throw VcError(ErrorKind::kMalformedWav, path + ": missing fmt or data chunk");
  if (channels != 1)
    throw VcError(ErrorKind::kUnsupportedEncoding,
                  path + ": " + std::to_string(channels) +
                      " channels (mono required)");
  if (sample_rate == 0)
    throw VcError(ErrorKind::kMalformedWav, path + ": zero sample rate");

  Waveform w;
  w.sample_rate_hz = static_cast<int>(sample_rate);
  if (format == 1 && bits == 16) {
    const size_t n = data_len / 2;
    w.samples.resize(n);
    size_t p = data_pos;
    for (size_t i = 0; i < n; ++i) {
      const int16_t s = GetLe<int16_t>(bytes, p);
      w.samples[i] = static_cast<double>(s) / 32768.0;
    }
  } else if (format == 3 && bits == 32) {
    const size_t n = data_len / 4;
    w.samples.resize(n);
    size_t p = data_pos;
    for (size_t i = 0; i < n; ++i)
      w.samples[i] = static_cast<double>(GetLe<float>(bytes, p));
  } else {
    throw VcError(ErrorKind::kUnsupportedEncoding,
                  path + ": format tag " + std::to_string(format) + " / " +
                      std::to_string(bits) + " bits (PCM16 or float32 only)");
  }
  return w;
}

void WriteWav(const Waveform &w, const std::string &path) {
  const uint32_t n = static_cast<uint32_t>(w.samples.size());
  const uint32_t data_len = n * 2;
  std::string out;
  out.reserve(44 + data_len);

  out.append("RIFF");
  PutLe<uint32_t>(out, 36 + data_len);
  out.append("WAVE");
  out.append("fmt ");
  PutLe<uint32_t>(out, 16);
  PutLe<uint16_t>(out, 1);  // PCM
  PutLe<uint16_t>(out, 1);  // mono
  PutLe<uint32_t>(out, static_cast<uint32_t>(w.sample_rate_hz));
  PutLe<uint32_t>(out, static_cast<uint32_t>(w.sample_rate_hz) * 2);
  PutLe<uint16_t>(out, 2);   // block align
  PutLe<uint16_t>(out, 16);  // bits
  out.append("data");
  PutLe<uint32_t>(out, data_len);

  for (double x : w.samples) {
    const double clipped = std::clamp(x, -1.0, 1.0);
    // round half away from zero, then saturate (+1.0 -> 32767)
    const double scaled = std::round(clipped * 32768.0);
    const int16_t q = static_cast<int16_t>(
        std::clamp(scaled, -32768.0, 32767.0));
    PutLe<int16_t>(out, q);
  }
  WriteWholeFile(path, out);
}

Waveform ResampleLinear(const Waveform &w, int target_hz) {
  if (target_hz <= 0)
    throw VcError(ErrorKind::kConfigMismatch, "target rate must be positive");
  if (target_hz == w.sample_rate_hz) return w;

  const size_t len = w.samples.size();
  const size_t out_len = static_cast<size_t>(std::llround(
      static_cast<double>(len) * target_hz / w.sample_rate_hz));
  Waveform out;
  out.sample_rate_hz = target_hz;
  out.samples.resize(out_len);
  if (out_len == 0) return out;
  if (len == 1 || out_len == 1) {
    std::fill(out.samples.begin(), out.samples.end(), w.samples[0]);
    return out;
  }

  // endpoint-matched positions: output i sits at i*(len-1)/(out_len-1)
  const double scale = static_cast<double>(len - 1) / (out_len - 1);
  for (size_t i = 0; i < out_len; ++i) {
    const double pos = i * scale;
    const size_t i0 = std::min(static_cast<size_t>(pos), len - 2);
    const double frac = pos - static_cast<double>(i0);
    out.samples[i] = (1.0 - frac) * w.samples[i0] + frac * w.samples[i0 + 1];
  }
  return out;
}

void WriteFeatures(const FeatureFile &f, const std::string &path) {
  if (f.data.size() != static_cast<size_t>(f.frame_count) * f.dim)
    throw VcError(ErrorKind::kDimMismatch,
                  "feature data length does not match frame_count*dim");
  std::string out;
  out.reserve(24 + f.data.size() * 4);
  out.append(kFeatureMagic, sizeof(kFeatureMagic));
  PutLe<uint32_t>(out, f.frame_count);
  PutLe<uint32_t>(out, f.dim);
  PutLe<float>(out, f.frame_shift_ms);
  PutLe<uint32_t>(out, f.sample_rate_hz);
  for (float v : f.data) PutLe<float>(out, v);
  WriteWholeFile(path, out);
}

FeatureFile ReadFeatures(const std::string &path) {
  const std::string bytes = ReadWholeFile(path, ErrorKind::kIoError);
  if (bytes.size() < 8 ||
      bytes.compare(0, 8, std::string(kFeatureMagic, 8)) != 0)
    throw VcError(ErrorKind::kBadMagic, path + ": not a VCF1 feature file");
  if (bytes.size() < 24)
    throw VcError(ErrorKind::kTruncatedFile, path + ": header truncated");

  FeatureFile f;
  size_t pos = 8;
  f.frame_count = GetLe<uint32_t>(bytes, pos);
  f.dim = GetLe<uint32_t>(bytes, pos);
  f.frame_shift_ms = GetLe<float>(bytes, pos);
  f.sample_rate_hz = GetLe<uint32_t>(bytes, pos);
  if (f.dim == 0)
    throw VcError(ErrorKind::kDimMismatch, path + ": dim must be positive");

  const size_t want = static_cast<size_t>(f.frame_count) * f.dim;
  if (bytes.size() - pos < want * 4)
    throw VcError(ErrorKind::kTruncatedFile,
                  path + ": body holds fewer than frame_count*dim values");
  f.data.resize(want);
  for (size_t i = 0; i < want; ++i) f.data[i] = GetLe<float>(bytes, pos);
  return f;
}

}  // namespace vcwarp
