// Copyright 2026 The DGVSE Authors.
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

// Model container layout:
//
//   bytes 0..5   magic "DGVSE\0"
//   bytes 6..9   header length N, uint32 little-endian
//   next N bytes UTF-8 JSON header:
//                {format_version: 1, d, r, s, distance, margin, vocabulary,
//                 payload_bytes}
//   payload      little-endian IEEE-754 float64, in order:
//                w_item (d x r, row-major), b_item (d), var_head (r),
//                var_bias (1), tag_means (s x d, row-major), tag_logvars (s)

#ifndef DGVSE_MODEL_IO_HPP
#define DGVSE_MODEL_IO_HPP

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dgvse/divergences.hpp"
#include "dgvse/encoders.hpp"
#include "dgvse/error.hpp"

namespace dgvse {

inline constexpr std::array<char, 6> kModelMagic{'D', 'G', 'V', 'S', 'E', '\0'};
inline constexpr int kModelFormatVersion = 1;

namespace detail {

inline void put_u64_le(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

inline std::uint64_t get_u64_le(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | p[i];
  return v;
}

}  // namespace detail

inline std::string serialize_model(const ModelParams& p) {
  if (!p.vocabulary.empty() && p.vocabulary.size() != p.s) {
    throw Error(ErrorKind::InvalidValue, "vocabulary size does not match s");
  }
  std::string payload;
  payload.reserve(8 * parameter_count(p));
  for_each_array(p, [&](const char*, std::span<const double> values) {
    for (double v : values) detail::put_u64_le(payload, std::bit_cast<std::uint64_t>(v));
  });

  nlohmann::json header = {
      {"format_version", kModelFormatVersion},
      {"d", p.d},
      {"r", p.r},
      {"s", p.s},
      {"distance", std::string(to_string(p.distance_kind))},
      {"margin", p.margin},
      {"vocabulary", p.vocabulary},
      {"payload_bytes", payload.size()},
  };
  const std::string text = header.dump();
  std::string out(kModelMagic.begin(), kModelMagic.end());
  const auto len = static_cast<std::uint32_t>(text.size());
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((len >> (8 * i)) & 0xff));
  out += text;
  out += payload;
  return out;
}

inline ModelParams deserialize_model(std::span<const unsigned char> bytes) {
  const std::size_t prefix = kModelMagic.size() + 4;
  if (bytes.size() < prefix) throw Error(ErrorKind::TruncatedFile, "model prefix");
  if (std::memcmp(bytes.data(), kModelMagic.data(), kModelMagic.size()) != 0) {
    throw Error(ErrorKind::HeaderCorrupt, "bad magic bytes");
  }
  std::uint32_t len = 0;
  for (int i = 3; i >= 0; --i) len = (len << 8) | bytes[kModelMagic.size() + i];
  if (bytes.size() < prefix + len) throw Error(ErrorKind::TruncatedFile, "model header");

  nlohmann::json h;
  try {
    h = nlohmann::json::parse(bytes.begin() + prefix, bytes.begin() + prefix + len);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::HeaderCorrupt, e.what());
  }

  ModelParams p;
  std::size_t payload_bytes = 0;
  try {
    const int version = h.at("format_version").get<int>();
    if (version != kModelFormatVersion) {
      throw Error(ErrorKind::VersionMismatch,
                  "format_version " + std::to_string(version) + " (expected " +
                      std::to_string(kModelFormatVersion) + ")");
    }
    const auto d = h.at("d").get<std::size_t>();
    const auto r = h.at("r").get<std::size_t>();
    const auto s = h.at("s").get<std::size_t>();
    if (d == 0 || r == 0 || s == 0) throw Error(ErrorKind::HeaderCorrupt, "zero dimension");
    p = make_zero_params(d, r, s);
    auto kind = parse_distance_kind(h.at("distance").get<std::string>());
    if (!kind) throw Error(ErrorKind::HeaderCorrupt, "unknown distance");
    p.distance_kind = *kind;
    p.margin = h.at("margin").get<double>();
    p.vocabulary = h.at("vocabulary").get<std::vector<std::string>>();
    payload_bytes = h.at("payload_bytes").get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::HeaderCorrupt, e.what());
  }
  if (!p.vocabulary.empty() && p.vocabulary.size() != p.s) {
    throw Error(ErrorKind::HeaderCorrupt, "vocabulary length differs from s");
  }
  if (payload_bytes != 8 * parameter_count(p)) {
    throw Error(ErrorKind::HeaderCorrupt,
                "header dimensions imply " + std::to_string(8 * parameter_count(p)) +
                    " payload bytes, header records " + std::to_string(payload_bytes));
  }
  const std::size_t available = bytes.size() - prefix - len;
  if (available < payload_bytes) {
    throw Error(ErrorKind::TruncatedFile,
                "payload has " + std::to_string(available) + " of " +
                    std::to_string(payload_bytes) + " bytes");
  }
  if (available > payload_bytes) {
    throw Error(ErrorKind::HeaderCorrupt, "trailing bytes after payload");
  }

  const unsigned char* cursor = bytes.data() + prefix + len;
  for_each_array(p, [&](const char*, std::span<double> values) {
    for (double& v : values) {
      v = std::bit_cast<double>(detail::get_u64_le(cursor));
      cursor += 8;
    }
  });
  return p;
}

inline void save_model(const ModelParams& p, const std::string& path) {
  const std::string bytes = serialize_model(p);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write model '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

inline ModelParams load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open model '" + path + "'");
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  return deserialize_model(bytes);
}

}  // namespace dgvse

#endif  // DGVSE_MODEL_IO_HPP
