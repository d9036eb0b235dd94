// Copyright 2026 The divrit Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIVRIT_ERROR_HPP_
#define DIVRIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace divrit {

enum class ErrorCode {
  // niqqud
  EmptyInput,
  OrphanMark,
  UnsupportedMark,
  InvalidCluster,
  LengthMismatch,
  InvalidBase,
  // candidate generation
  NoNeighbors,
  // rendering
  TooWide,
  MissingGlyph,
  // scoring / training
  ShapeMismatch,
  DimensionMismatch,
  EmptyCandidates,
  BadTargetIndex,
  TargetDerivationError,
  ConfigError,
  Divergence,
  // evaluation
  StripMismatch,
  AlignmentError,
  // persistence
  FormatError,
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what),
        code_(code),
        detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  // The message without the code-name prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace divrit

#endif  // DIVRIT_ERROR_HPP_
