/*
   Copyright 2026 The posepart Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
 */

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace posepart {

enum class ErrorCode {
  invalid_argument,
  io,
  format,
  kind_mismatch,
  dimension,
  schema,
  annotation,
  parameter,
  config,
  evaluation,
};

/// Base of every exception thrown by the library. The C API maps `code()`
/// onto its status values.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Malformed binary map file. `offset` is the byte offset of the first
/// offending byte.
class FormatError : public Error {
 public:
  FormatError(const std::string& file, std::uint64_t offset,
              const std::string& detail)
      : Error(ErrorCode::format, file + ": offset " + std::to_string(offset) +
                                     ": " + detail),
        file_(file),
        offset_(offset) {}

  const std::string& file() const noexcept { return file_; }
  std::uint64_t offset() const noexcept { return offset_; }

 private:
  std::string file_;
  std::uint64_t offset_;
};

inline Error io_error(const std::string& msg) { return {ErrorCode::io, msg}; }
inline Error dimension_error(const std::string& msg) {
  return {ErrorCode::dimension, msg};
}
inline Error schema_error(const std::string& msg) {
  return {ErrorCode::schema, msg};
}
inline Error annotation_error(const std::string& msg) {
  return {ErrorCode::annotation, msg};
}
inline Error parameter_error(const std::string& msg) {
  return {ErrorCode::parameter, msg};
}
inline Error config_error(const std::string& msg) {
  return {ErrorCode::config, msg};
}

}  // namespace posepart
