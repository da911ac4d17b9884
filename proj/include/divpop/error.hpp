// Copyright 2026 The divpop Authors
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

#ifndef DIVPOP_ERROR_HPP
#define DIVPOP_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace divpop {

enum class ErrorCode {
  domain,
  divisibility,
  duplicate_id,
  rank_length,
  color_mismatch,
  wrong_room_size,
  missing_agent,
  duplicate_agent,
  unknown_agent,
  resource_limit,
  invalid_instance,
  invalid_cover,
  invalid_distribution,
  not_room_size_two,
  schema,
  io,
  internal,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::domain: return "domain";
    case ErrorCode::divisibility: return "divisibility";
    case ErrorCode::duplicate_id: return "duplicate_id";
    case ErrorCode::rank_length: return "rank_length";
    case ErrorCode::color_mismatch: return "color_mismatch";
    case ErrorCode::wrong_room_size: return "wrong_room_size";
    case ErrorCode::missing_agent: return "missing_agent";
    case ErrorCode::duplicate_agent: return "duplicate_agent";
    case ErrorCode::unknown_agent: return "unknown_agent";
    case ErrorCode::resource_limit: return "resource_limit";
    case ErrorCode::invalid_instance: return "invalid_instance";
    case ErrorCode::invalid_cover: return "invalid_cover";
    case ErrorCode::invalid_distribution: return "invalid_distribution";
    case ErrorCode::not_room_size_two: return "not_room_size_two";
    case ErrorCode::schema: return "schema";
    case ErrorCode::io: return "io";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

/// Every failure raised by the library carries one of the codes above so
/// callers (and the CLI) can distinguish error classes without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace divpop

#endif  // DIVPOP_ERROR_HPP
