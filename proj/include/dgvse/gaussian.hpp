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

#ifndef DGVSE_GAUSSIAN_HPP
#define DGVSE_GAUSSIAN_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dgvse/error.hpp"

namespace dgvse {

/// Lower bound applied to every variance the library produces.
inline constexpr double kVarFloor = 1e-8;
/// theta2 must stay at or below -kTheta2Ceil to describe a distribution.
inline constexpr double kTheta2Ceil = 1e-8;

using Vector = std::vector<double>;

namespace detail {

inline bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

inline void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    throw Error(ErrorKind::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a) + " vs " +
                    std::to_string(b));
  }
}

}  // namespace detail

/// Gaussian N(mean, variance * I_d) with a single shared variance.
///
/// The constructor rejects non-finite input and lifts the variance to
/// kVarFloor, so every live instance is a valid distribution.
class SphericalGaussian {
 public:
  SphericalGaussian(Vector mean, double variance)
      : mean_(std::move(mean)), variance_(variance) {
    if (mean_.empty()) {
      throw Error(ErrorKind::InvalidValue, "gaussian dimension must be >= 1");
    }
    if (!detail::all_finite(mean_) || !std::isfinite(variance_)) {
      throw Error(ErrorKind::InvalidValue, "non-finite gaussian parameter");
    }
    variance_ = std::max(variance_, kVarFloor);
  }

  const Vector& mean() const { return mean_; }
  double variance() const { return variance_; }
  double stddev() const { return std::sqrt(variance_); }
  std::size_t dim() const { return mean_.size(); }

  friend bool operator==(const SphericalGaussian&,
                         const SphericalGaussian&) = default;

 private:
  Vector mean_;
  double variance_;
};

/// Natural (canonical) coordinates of a spherical Gaussian:
/// theta1 = mean / variance, theta2 = -1 / (2 variance).
///
/// Linear combinations of natural parameters are meaningful, so this type
/// supports the affine operations used by fusion and query algebra. It may
/// transiently hold theta2 >= 0; from_natural() rejects such values.
struct NaturalParams {
  Vector theta1;
  double theta2 = -0.5;

  std::size_t dim() const { return theta1.size(); }

  NaturalParams& operator+=(const NaturalParams& o) {
    detail::require_same_dim(dim(), o.dim(), "natural params");
    for (std::size_t i = 0; i < theta1.size(); ++i) theta1[i] += o.theta1[i];
    theta2 += o.theta2;
    return *this;
  }
  NaturalParams& operator-=(const NaturalParams& o) {
    detail::require_same_dim(dim(), o.dim(), "natural params");
    for (std::size_t i = 0; i < theta1.size(); ++i) theta1[i] -= o.theta1[i];
    theta2 -= o.theta2;
    return *this;
  }
  NaturalParams& operator*=(double s) {
    for (double& t : theta1) t *= s;
    theta2 *= s;
    return *this;
  }

  friend bool operator==(const NaturalParams&, const NaturalParams&) = default;
};

/// Expectation (dual) coordinates, per coordinate: eta1 = E[x], eta2 = E[x^2].
struct ExpectationParams {
  Vector eta1;
  Vector eta2;
};

inline NaturalParams to_natural(const SphericalGaussian& g) {
  NaturalParams n;
  n.theta1.resize(g.dim());
  const double precision = 1.0 / g.variance();
  for (std::size_t i = 0; i < g.dim(); ++i) {
    n.theta1[i] = g.mean()[i] * precision;
  }
  n.theta2 = -0.5 * precision;
  return n;
}

inline SphericalGaussian from_natural(const NaturalParams& n) {
  if (!(n.theta2 <= -kTheta2Ceil)) {
    throw Error(ErrorKind::DegenerateNaturalParams,
                "theta2 = " + std::to_string(n.theta2) +
                    " does not describe a distribution");
  }
  const double variance = -0.5 / n.theta2;
  Vector mean(n.dim());
  for (std::size_t i = 0; i < n.dim(); ++i) mean[i] = variance * n.theta1[i];
  return SphericalGaussian(std::move(mean), variance);
}

/// Unweighted centroid of natural parameters.
///
/// Accumulated as a running mean, so a set of identical parts fuses to
/// that part bit-for-bit.
inline NaturalParams fuse(std::span<const NaturalParams> parts) {
  if (parts.empty()) {
    throw Error(ErrorKind::EmptyFusionSet, "cannot fuse an empty set");
  }
  NaturalParams out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const NaturalParams& p = parts[k];
    detail::require_same_dim(out.dim(), p.dim(), "fuse");
    const double w = 1.0 / static_cast<double>(k + 1);
    for (std::size_t i = 0; i < out.dim(); ++i) {
      out.theta1[i] += (p.theta1[i] - out.theta1[i]) * w;
    }
    out.theta2 += (p.theta2 - out.theta2) * w;
  }
  return out;
}

inline ExpectationParams to_expectation(const SphericalGaussian& g) {
  ExpectationParams e;
  e.eta1 = g.mean();
  e.eta2.resize(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    e.eta2[i] = g.mean()[i] * g.mean()[i] + g.variance();
  }
  return e;
}

}  // namespace dgvse

#endif  // DGVSE_GAUSSIAN_HPP
