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

#ifndef DGVSE_DIVERGENCES_HPP
#define DGVSE_DIVERGENCES_HPP

#include <cmath>
#include <optional>
#include <string>
#include <string_view>

#include "dgvse/error.hpp"
#include "dgvse/gaussian.hpp"

namespace dgvse {

enum class DistanceKind { Mahalanobis, KL, Jeffreys, Wasserstein2Sq };

inline std::string_view to_string(DistanceKind kind) {
  switch (kind) {
    case DistanceKind::Mahalanobis: return "mahalanobis";
    case DistanceKind::KL: return "kl";
    case DistanceKind::Jeffreys: return "jeffreys";
    case DistanceKind::Wasserstein2Sq: return "w2";
  }
  return "unknown";
}

inline std::optional<DistanceKind> parse_distance_kind(std::string_view s) {
  if (s == "mahalanobis") return DistanceKind::Mahalanobis;
  if (s == "kl") return DistanceKind::KL;
  if (s == "jeffreys") return DistanceKind::Jeffreys;
  if (s == "w2") return DistanceKind::Wasserstein2Sq;
  return std::nullopt;
}

namespace detail {

inline double squared_gap(const SphericalGaussian& a,
                          const SphericalGaussian& b) {
  require_same_dim(a.dim(), b.dim(), "divergence");
  double q = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    const double diff = a.mean()[i] - b.mean()[i];
    q += diff * diff;
  }
  return q;
}

}  // namespace detail

/// Mahalanobis distance between the means under the joint covariance
/// (a.variance + b.variance) / 2 * I.
inline double mahalanobis(const SphericalGaussian& a,
                          const SphericalGaussian& b) {
  const double q = detail::squared_gap(a, b);
  const double joint = 0.5 * (a.variance() + b.variance());
  return std::sqrt(q / joint);
}

/// D_KL[a || b].
inline double kl(const SphericalGaussian& a, const SphericalGaussian& b) {
  const double q = detail::squared_gap(a, b);
  const double d = static_cast<double>(a.dim());
  const double ratio = a.variance() / b.variance();
  return 0.5 * d * (ratio - 1.0 - std::log(ratio)) + 0.5 * q / b.variance();
}

/// D_KL[a || b] + D_KL[b || a].
inline double jeffreys(const SphericalGaussian& a, const SphericalGaussian& b) {
  return kl(a, b) + kl(b, a);
}

/// Squared 2-Wasserstein distance: |mu_a - mu_b|^2 + d (sigma_a - sigma_b)^2.
inline double wasserstein2_sq(const SphericalGaussian& a,
                              const SphericalGaussian& b) {
  const double q = detail::squared_gap(a, b);
  const double gap = a.stddev() - b.stddev();
  return q + static_cast<double>(a.dim()) * gap * gap;
}

/// Training/ranking distance d(x, y).
///
/// For KL the orientation is D_KL[y || x]: with x an image and y a tag set,
/// the image covariance sits in the inverse positions of the loss term.
/// Wasserstein2Sq returns the squared distance.
inline double distance(DistanceKind kind, const SphericalGaussian& x,
                       const SphericalGaussian& y) {
  switch (kind) {
    case DistanceKind::Mahalanobis: return mahalanobis(x, y);
    case DistanceKind::KL: return kl(y, x);
    case DistanceKind::Jeffreys: return jeffreys(x, y);
    case DistanceKind::Wasserstein2Sq: return wasserstein2_sq(x, y);
  }
  return 0.0;
}

/// Value of distance(kind, x, y) with its partial derivatives with respect
/// to both means and both variances.
struct DistanceGrad {
  double value = 0.0;
  Vector d_mean_x;
  double d_var_x = 0.0;
  Vector d_mean_y;
  double d_var_y = 0.0;
};

namespace detail {

// Partials of D_KL[p || q] accumulated into the slots for p and q.
inline void add_kl_grad(const SphericalGaussian& p, const SphericalGaussian& q,
                        Vector& d_mean_p, double& d_var_p, Vector& d_mean_q,
                        double& d_var_q) {
  const double d = static_cast<double>(p.dim());
  const double vp = p.variance();
  const double vq = q.variance();
  double sq = 0.0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const double diff = p.mean()[i] - q.mean()[i];
    sq += diff * diff;
    d_mean_p[i] += diff / vq;
    d_mean_q[i] -= diff / vq;
  }
  d_var_p += 0.5 * d * (1.0 / vq - 1.0 / vp);
  d_var_q += 0.5 * d / vq - 0.5 * (sq + d * vp) / (vq * vq);
}

}  // namespace detail

/// Analytic gradient of distance(kind, x, y).
///
/// Mahalanobis is not differentiable at coincident means; the zero
/// subgradient is returned there.
inline DistanceGrad distance_grad(DistanceKind kind, const SphericalGaussian& x,
                                  const SphericalGaussian& y) {
  detail::require_same_dim(x.dim(), y.dim(), "divergence");
  const std::size_t n = x.dim();
  DistanceGrad g;
  g.d_mean_x.assign(n, 0.0);
  g.d_mean_y.assign(n, 0.0);
  switch (kind) {
    case DistanceKind::Mahalanobis: {
      const double joint = 0.5 * (x.variance() + y.variance());
      g.value = mahalanobis(x, y);
      if (g.value == 0.0) break;
      const double scale = 1.0 / (joint * g.value);
      for (std::size_t i = 0; i < n; ++i) {
        const double diff = x.mean()[i] - y.mean()[i];
        g.d_mean_x[i] = diff * scale;
        g.d_mean_y[i] = -diff * scale;
      }
      g.d_var_x = -g.value / (4.0 * joint);
      g.d_var_y = g.d_var_x;
      break;
    }
    case DistanceKind::KL:
      g.value = kl(y, x);
      detail::add_kl_grad(y, x, g.d_mean_y, g.d_var_y, g.d_mean_x, g.d_var_x);
      break;
    case DistanceKind::Jeffreys:
      g.value = jeffreys(x, y);
      detail::add_kl_grad(x, y, g.d_mean_x, g.d_var_x, g.d_mean_y, g.d_var_y);
      detail::add_kl_grad(y, x, g.d_mean_y, g.d_var_y, g.d_mean_x, g.d_var_x);
      break;
    case DistanceKind::Wasserstein2Sq: {
      g.value = wasserstein2_sq(x, y);
      for (std::size_t i = 0; i < n; ++i) {
        const double diff = x.mean()[i] - y.mean()[i];
        g.d_mean_x[i] = 2.0 * diff;
        g.d_mean_y[i] = -2.0 * diff;
      }
      const double sx = x.stddev();
      const double sy = y.stddev();
      const double d = static_cast<double>(n);
      g.d_var_x = d * (sx - sy) / sx;
      g.d_var_y = -d * (sx - sy) / sy;
      break;
    }
  }
  return g;
}

}  // namespace dgvse

#endif  // DGVSE_DIVERGENCES_HPP
