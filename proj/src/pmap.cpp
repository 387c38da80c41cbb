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

#include "posepart/pmap.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <iterator>

#include "posepart/error.hpp"

namespace posepart::pmap {

namespace {

constexpr char kMagic[5] = {'P', 'M', 'A', 'P', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(std::span<const std::uint8_t> bytes, std::size_t at) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(bytes[at + i]) << (8 * i);
  return v;
}

std::vector<std::uint8_t> encode_raw(Kind kind, const MapDims& dims, std::span<const float> values) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + values.size() * 4);
  out.insert(out.end(), std::begin(kMagic), std::end(kMagic));
  out.push_back(static_cast<std::uint8_t>(kind));
  put_u32(out, static_cast<std::uint32_t>(dims.joints));
  put_u32(out, static_cast<std::uint32_t>(dims.height));
  put_u32(out, static_cast<std::uint32_t>(dims.width));
  for (const float f : values) put_u32(out, std::bit_cast<std::uint32_t>(f));
  return out;
}

struct Decoded {
  MapDims dims;
  std::vector<float> values;
};

Decoded decode_raw(std::span<const std::uint8_t> bytes, Kind expected, const std::string& source) {
  for (std::size_t i = 0; i < sizeof(kMagic); ++i) {
    if (i >= bytes.size() || bytes[i] != static_cast<std::uint8_t>(kMagic[i]))
      throw FormatError(source, 0, "bad magic, expected \"PMAP1\"");
  }
  if (bytes.size() < kHeaderSize)
    throw FormatError(source, bytes.size(), "truncated header");

  const std::uint8_t kind = bytes[5];
  if (kind > 1) throw FormatError(source, 5, "unknown map kind " + std::to_string(kind));
  if (kind != static_cast<std::uint8_t>(expected)) {
    const char* want = expected == Kind::confidence ? "confidence (0)" : "regression (1)";
    const char* got = kind == 0 ? "confidence (0)" : "regression (1)";
    throw Error(ErrorCode::kind_mismatch,
                source + ": offset 5: map kind is " + got + ", expected " + want);
  }

  const std::uint32_t k = get_u32(bytes, 6);
  const std::uint32_t h = get_u32(bytes, 10);
  const std::uint32_t w = get_u32(bytes, 14);
  if (k == 0) throw FormatError(source, 6, "K must be positive");
  if (h == 0) throw FormatError(source, 10, "H must be positive");
  if (w == 0) throw FormatError(source, 14, "W must be positive");
  constexpr std::uint64_t kMaxDim = 0x7fffffffu;
  if (k > kMaxDim || h > kMaxDim || w > kMaxDim)
    throw FormatError(source, 6, "dimension exceeds 2^31-1");

  const std::uint64_t channels = expected == Kind::regression ? 2 : 1;
  const unsigned __int128 count128 =
      static_cast<unsigned __int128>(k) * h * w * channels;
  const unsigned __int128 want128 = kHeaderSize + count128 * 4;
  if (want128 > bytes.size())
    throw FormatError(source, bytes.size(), "payload truncated");
  const auto count = static_cast<std::size_t>(count128);
  const std::size_t want = kHeaderSize + count * 4;
  if (bytes.size() > want) throw FormatError(source, want, "trailing bytes after payload");

  Decoded out;
  out.dims = {static_cast<int>(k), static_cast<int>(h), static_cast<int>(w)};
  out.values.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t at = kHeaderSize + i * 4;
    const float v = std::bit_cast<float>(get_u32(bytes, at));
    if (!std::isfinite(v)) throw FormatError(source, at, "non-finite value");
    if (expected == Kind::confidence && (v < 0.0f || v > 1.0f))
      throw FormatError(source, at, "confidence value outside [0, 1]");
    out.values[i] = v;
  }
  return out;
}

}  // namespace

std::vector<std::uint8_t> encode(const ConfidenceMapSet& maps) {
  return encode_raw(Kind::confidence, maps.dims(), maps.values());
}

std::vector<std::uint8_t> encode(const RegressionMapSet& maps) {
  return encode_raw(Kind::regression, maps.dims(), maps.values());
}

ConfidenceMapSet decode_confidence(std::span<const std::uint8_t> bytes, const std::string& source) {
  auto raw = decode_raw(bytes, Kind::confidence, source);
  return ConfidenceMapSet(raw.dims, std::move(raw.values));
}

RegressionMapSet decode_regression(std::span<const std::uint8_t> bytes, const std::string& source) {
  auto raw = decode_raw(bytes, Kind::regression, source);
  return RegressionMapSet(raw.dims, std::move(raw.values));
}

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return bytes;
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw io_error("write to '" + path + "' failed");
}

ConfidenceMapSet load_confidence(const std::string& path) {
  return decode_confidence(read_file(path), path);
}

RegressionMapSet load_regression(const std::string& path) {
  return decode_regression(read_file(path), path);
}

void save(const ConfidenceMapSet& maps, const std::string& path) { write_file(path, encode(maps)); }
void save(const RegressionMapSet& maps, const std::string& path) { write_file(path, encode(maps)); }

}  // namespace posepart::pmap
