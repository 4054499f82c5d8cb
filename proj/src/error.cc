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

#include "compsearch/error.h"

namespace compsearch {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptyQuery: return "EmptyQuery";
    case ErrorCode::kNoDatabaseMatches: return "NoDatabaseMatches";
    case ErrorCode::kInvalidDescriptor: return "InvalidDescriptor";
    case ErrorCode::kInvalidPattern: return "InvalidPattern";
    case ErrorCode::kFetchTimeout: return "FetchTimeout";
    case ErrorCode::kFetchFailed: return "FetchFailed";
    case ErrorCode::kDuplicateAbscissa: return "DuplicateAbscissa";
    case ErrorCode::kInsufficientPoints: return "InsufficientPoints";
    case ErrorCode::kDegenerateInterval: return "DegenerateInterval";
    case ErrorCode::kEmptyGraph: return "EmptyGraph";
    case ErrorCode::kUnknownDatabase: return "UnknownDatabase";
    case ErrorCode::kConfig: return "ConfigError";
  }
  return "Unknown";
}

}  // namespace compsearch
