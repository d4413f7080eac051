// src/error.cc

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

#include "vcwarp/error.h"

namespace vcwarp {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kIoError: return "IoError";
    case ErrorKind::kMalformedWav: return "MalformedWav";
    case ErrorKind::kUnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorKind::kBadMagic: return "BadMagic";
    case ErrorKind::kTruncatedFile: return "TruncatedFile";
    case ErrorKind::kDimMismatch: return "DimMismatch";
    case ErrorKind::kSignalTooShort: return "SignalTooShort";
    case ErrorKind::kEmptySequence: return "EmptySequence";
    case ErrorKind::kDegenerateDenominator: return "DegenerateDenominator";
    case ErrorKind::kNonFiniteCost: return "NonFiniteCost";
    case ErrorKind::kConfigMismatch: return "ConfigMismatch";
    case ErrorKind::kWarpOutOfRange: return "WarpOutOfRange";
    case ErrorKind::kUsage: return "Usage";
  }
  return "Unknown";
}

int ExitCodeFor(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUsage:
      return 2;
    case ErrorKind::kDegenerateDenominator:
    case ErrorKind::kNonFiniteCost:
      return 4;
    default:
      return 3;
  }
}

}  // namespace vcwarp
