// Copyright 2026 The lexdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LEXDIST_ERROR_HPP
#define LEXDIST_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace lexdist {

enum class ErrorCode {
  // input errors
  FileNotFound,
  EmptyFile,
  MissingHeader,
  MalformedRow,
  InvalidConfig,
  InvalidArgument,
  // analysis errors
  EmptyAfterFilter,
  NegativeEntropy,
  DuplicatePeriod,
  TooFewPoints,
  ZeroVariance,
  TooFewPairs,
  TooFewRanks,
  Unsatisfiable,
  NoConvergence,
  InsufficientSupport,
  PopulationExtinct,
  NoMatches,
  NoTaggedEntries,
  TooFewSharedPeriods,
  NonPositiveValueUnderLog,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::MissingHeader: return "MissingHeader";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::EmptyAfterFilter: return "EmptyAfterFilter";
    case ErrorCode::NegativeEntropy: return "NegativeEntropy";
    case ErrorCode::DuplicatePeriod: return "DuplicatePeriod";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::ZeroVariance: return "ZeroVariance";
    case ErrorCode::TooFewPairs: return "TooFewPairs";
    case ErrorCode::TooFewRanks: return "TooFewRanks";
    case ErrorCode::Unsatisfiable: return "Unsatisfiable";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InsufficientSupport: return "InsufficientSupport";
    case ErrorCode::PopulationExtinct: return "PopulationExtinct";
    case ErrorCode::NoMatches: return "NoMatches";
    case ErrorCode::NoTaggedEntries: return "NoTaggedEntries";
    case ErrorCode::TooFewSharedPeriods: return "TooFewSharedPeriods";
    case ErrorCode::NonPositiveValueUnderLog: return "NonPositiveValueUnderLog";
  }
  return "Unknown";
}

/// True for errors caused by unreadable or ill-formed input rather than by
/// the analysis itself. The CLI maps these to exit code 2.
constexpr bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::FileNotFound:
    case ErrorCode::EmptyFile:
    case ErrorCode::MissingHeader:
    case ErrorCode::MalformedRow:
    case ErrorCode::InvalidConfig:
    case ErrorCode::InvalidArgument:
      return true;
    default:
      return false;
  }
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string context = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code),
        detail_(message),
        context_(std::move(context)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  const std::string& context() const noexcept { return context_; }

 private:
  ErrorCode code_;
  std::string detail_;
  std::string context_;
};

}  // namespace lexdist

#endif  // LEXDIST_ERROR_HPP
