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

// PMAP1 binary map files.
//
//   offset  size  field
//   0       5     magic "PMAP1"
//   5       1     kind (0 = confidence, 1 = regression)
//   6       4     K, little-endian u32
//   10      4     H
//   14      4     W
//   18      ...   f32 little-endian values, [joint][row][col][component]
//
// Decoding rejects anything else with a FormatError naming the byte offset.
// A file of the other kind raises an ErrorCode::kind_mismatch error.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "posepart/maps.hpp"

namespace posepart::pmap {

enum class Kind : std::uint8_t { confidence = 0, regression = 1 };

inline constexpr std::size_t kHeaderSize = 18;

std::vector<std::uint8_t> encode(const ConfidenceMapSet& maps);
std::vector<std::uint8_t> encode(const RegressionMapSet& maps);

/// `source` names the input in diagnostics.
ConfidenceMapSet decode_confidence(std::span<const std::uint8_t> bytes,
                                   const std::string& source = "<memory>");
RegressionMapSet decode_regression(std::span<const std::uint8_t> bytes,
                                   const std::string& source = "<memory>");

ConfidenceMapSet load_confidence(const std::string& path);
RegressionMapSet load_regression(const std::string& path);
void save(const ConfidenceMapSet& maps, const std::string& path);
void save(const RegressionMapSet& maps, const std::string& path);

std::vector<std::uint8_t> read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace posepart::pmap
