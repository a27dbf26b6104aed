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

#ifndef DGVSE_ENCODERS_HPP
#define DGVSE_ENCODERS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dgvse/divergences.hpp"
#include "dgvse/error.hpp"
#include "dgvse/gaussian.hpp"

namespace dgvse {

/// softplus^{-1}(1): a raw log-variance of this value yields variance 1.
inline const double kUnitVarianceLogit = std::log(std::expm1(1.0));

inline double softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

inline double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

/// Trainable parameters of the joint image/tag embedding.
///
/// Dimensions: d = embedding size, r = item feature size, s = tag
/// vocabulary size. Matrices are row-major.
struct ModelParams {
  std::size_t d = 0;
  std::size_t r = 0;
  std::size_t s = 0;

  Vector w_item;       // d x r
  Vector b_item;       // d
  Vector var_head;     // r
  double var_bias = 0.0;
  Vector tag_means;    // s x d
  Vector tag_logvars;  // s

  DistanceKind distance_kind = DistanceKind::Wasserstein2Sq;
  double margin = 0.2;

  /// Tag names indexed by tag id; empty or of size s.
  std::vector<std::string> vocabulary;

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Visits every trainable array of a parameter or gradient block in the
/// fixed serialization order, as (name, span) pairs. var_bias is exposed as
/// a one-element span.
template <typename Block, typename Fn>
void for_each_array(Block& block, Fn&& fn) {
  fn("w_item", std::span(block.w_item));
  fn("b_item", std::span(block.b_item));
  fn("var_head", std::span(block.var_head));
  fn("var_bias", std::span(&block.var_bias, 1));
  fn("tag_means", std::span(block.tag_means));
  fn("tag_logvars", std::span(block.tag_logvars));
}

inline std::size_t parameter_count(const ModelParams& p) {
  return p.d * p.r + p.d + p.r + 1 + p.s * p.d + p.s;
}

/// Zero-filled parameters with consistent shapes.
inline ModelParams make_zero_params(std::size_t d, std::size_t r,
                                    std::size_t s) {
  if (d == 0 || r == 0 || s == 0) {
    throw Error(ErrorKind::InvalidValue, "model dimensions must be >= 1");
  }
  ModelParams p;
  p.d = d;
  p.r = r;
  p.s = s;
  p.w_item.assign(d * r, 0.0);
  p.b_item.assign(d, 0.0);
  p.var_head.assign(r, 0.0);
  p.tag_means.assign(s * d, 0.0);
  p.tag_logvars.assign(s, 0.0);
  return p;
}

/// Random initialization: mean weights uniform in +-1/sqrt(fan-in), every
/// variance starting at exactly softplus(kUnitVarianceLogit) + floor.
template <typename Rng>
ModelParams init_params(std::size_t d, std::size_t r, std::size_t s, Rng& rng) {
  ModelParams p = make_zero_params(d, r, s);
  const double item_scale = 1.0 / std::sqrt(static_cast<double>(r));
  const double tag_scale = 1.0 / std::sqrt(static_cast<double>(d));
  std::uniform_real_distribution<double> item_dist(-item_scale, item_scale);
  std::uniform_real_distribution<double> tag_dist(-tag_scale, tag_scale);
  for (double& w : p.w_item) w = item_dist(rng);
  for (double& w : p.tag_means) w = tag_dist(rng);
  p.var_bias = kUnitVarianceLogit;
  std::fill(p.tag_logvars.begin(), p.tag_logvars.end(), kUnitVarianceLogit);
  return p;
}

/// Pre-activation of the item variance head, h . f + c.
inline double item_variance_logit(const ModelParams& p,
                                  std::span<const double> features) {
  double z = p.var_bias;
  for (std::size_t j = 0; j < p.r; ++j) z += p.var_head[j] * features[j];
  return z;
}

inline SphericalGaussian encode_item(const ModelParams& p,
                                     std::span<const double> features) {
  if (features.size() != p.r) {
    throw Error(ErrorKind::DimensionMismatch,
                "item features have length " + std::to_string(features.size()) +
                    ", model expects " + std::to_string(p.r));
  }
  Vector mean(p.b_item);
  for (std::size_t i = 0; i < p.d; ++i) {
    const double* row = p.w_item.data() + i * p.r;
    double acc = 0.0;
    for (std::size_t j = 0; j < p.r; ++j) acc += row[j] * features[j];
    mean[i] += acc;
  }
  return SphericalGaussian(std::move(mean),
                           softplus(item_variance_logit(p, features)) + kVarFloor);
}

inline void require_tag(const ModelParams& p, std::size_t tag_id) {
  if (tag_id >= p.s) {
    throw Error(ErrorKind::UnknownTag,
                "tag id " + std::to_string(tag_id) + " outside vocabulary of " +
                    std::to_string(p.s));
  }
}

inline SphericalGaussian encode_tag(const ModelParams& p, std::size_t tag_id) {
  require_tag(p, tag_id);
  const double* row = p.tag_means.data() + tag_id * p.d;
  return SphericalGaussian(Vector(row, row + p.d),
                           softplus(p.tag_logvars[tag_id]) + kVarFloor);
}

/// Validates a tag set and returns it in ascending id order.
inline std::vector<std::size_t> canonical_tag_set(
    const ModelParams& p, std::span<const std::size_t> tag_ids) {
  if (tag_ids.empty()) throw Error(ErrorKind::EmptyTagSet, "no tags given");
  std::vector<std::size_t> ids(tag_ids.begin(), tag_ids.end());
  for (std::size_t id : ids) require_tag(p, id);
  std::sort(ids.begin(), ids.end());
  if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) {
    throw Error(ErrorKind::DuplicateTag, "tag set lists a tag twice");
  }
  return ids;
}

/// Fuses the member tag distributions in natural-parameter space. Members
/// are fused in ascending id order, so the result does not depend on the
/// order of tag_ids.
inline SphericalGaussian encode_tag_set(const ModelParams& p,
                                        std::span<const std::size_t> tag_ids) {
  const auto ids = canonical_tag_set(p, tag_ids);
  if (ids.size() == 1) return encode_tag(p, ids.front());
  std::vector<NaturalParams> parts;
  parts.reserve(ids.size());
  for (std::size_t id : ids) parts.push_back(to_natural(encode_tag(p, id)));
  return from_natural(fuse(parts));
}

}  // namespace dgvse

#endif  // DGVSE_ENCODERS_HPP
