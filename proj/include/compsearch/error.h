// Copyright 2026 The compsearch Authors.
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

#ifndef COMPSEARCH_ERROR_H_
#define COMPSEARCH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace compsearch {

enum class ErrorCode {
  kEmptyQuery,
  kNoDatabaseMatches,
  kInvalidDescriptor,
  kInvalidPattern,
  kFetchTimeout,
  kFetchFailed,
  kDuplicateAbscissa,
  kInsufficientPoints,
  kDegenerateInterval,
  kEmptyGraph,
  kUnknownDatabase,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported as an Error carrying a code that callers
// can branch on. Per-source failures inside a run are caught by the pipeline
// and turned into diagnostics; only configuration errors escape to the CLI.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// A failed fetch. `status` is the HTTP status when the origin answered, 404
// for a missing fixture file, and 0 for transport-level failures.
class FetchError : public Error {
 public:
  FetchError(ErrorCode code, int status, const std::string& message)
      : Error(code, message), status_(status) {}

  int status() const { return status_; }
  bool not_found() const { return status_ == 404 || status_ == 410; }

 private:
  int status_;
};

}  // namespace compsearch

#endif  // COMPSEARCH_ERROR_H_
