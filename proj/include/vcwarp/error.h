// include/vcwarp/error.h

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

#ifndef VCWARP_ERROR_H_
#define VCWARP_ERROR_H_

#include <stdexcept>
#include <string>

namespace vcwarp {

enum class ErrorKind {
  kIoError,
  kMalformedWav,
  kUnsupportedEncoding,
  kBadMagic,
  kTruncatedFile,
  kDimMismatch,
  kSignalTooShort,
  kEmptySequence,
  kDegenerateDenominator,
  kNonFiniteCost,
  kConfigMismatch,
  kWarpOutOfRange,
  kUsage,
};

const char *ErrorKindName(ErrorKind kind);

class VcError : public std::runtime_error {
 public:
  VcError(ErrorKind kind, const std::string &msg)
      : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + msg),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

// Exit codes used by the CLI. Input-shaped failures map to 3, numerical
// breakdowns to 4.
int ExitCodeFor(ErrorKind kind);

}  // namespace vcwarp

#endif  // VCWARP_ERROR_H_
