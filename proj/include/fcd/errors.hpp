// Copyright 2026 The FCD Authors.
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

#pragma once

#include <stdexcept>
#include <string>

namespace fcd {

// Failure categories. Each maps onto one stable CLI exit code.
enum class ErrorKind {
  kConfig,             // bad manifest, flag, or missing label
  kPrecondition,       // caller violated an operation's precondition
  kIo,                 // file could not be opened, read, or written
  kFormat,             // malformed magic/version/header or CSV shape
  kCorruption,         // structurally valid file with broken invariants
  kEncoding,           // invalid UTF-8
  kUndefinedDistance,  // distance requested on empty input
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

#define FCD_DEFINE_ERROR(Name, Kind)                                  \
  class Name : public Error {                                         \
   public:                                                            \
    explicit Name(const std::string& what) : Error(Kind, what) {}     \
  }

FCD_DEFINE_ERROR(ConfigError, ErrorKind::kConfig);
FCD_DEFINE_ERROR(PreconditionError, ErrorKind::kPrecondition);
FCD_DEFINE_ERROR(IoError, ErrorKind::kIo);
FCD_DEFINE_ERROR(FormatError, ErrorKind::kFormat);
FCD_DEFINE_ERROR(CorruptionError, ErrorKind::kCorruption);
FCD_DEFINE_ERROR(EncodingError, ErrorKind::kEncoding);
FCD_DEFINE_ERROR(UndefinedDistanceError, ErrorKind::kUndefinedDistance);

#undef FCD_DEFINE_ERROR

// 0 success, 1 user/config error, 2 I/O error, 3 data-format error.
inline int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::kConfig:
    case ErrorKind::kPrecondition:
      return 1;
    case ErrorKind::kIo:
      return 2;
    case ErrorKind::kFormat:
    case ErrorKind::kCorruption:
    case ErrorKind::kEncoding:
    case ErrorKind::kUndefinedDistance:
      return 3;
  }
  return 1;
}

}  // namespace fcd
