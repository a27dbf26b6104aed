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

#ifndef DGVSE_TRAINING_HPP
#define DGVSE_TRAINING_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "dgvse/dataset.hpp"
#include "dgvse/divergences.hpp"
#include "dgvse/encoders.hpp"
#include "dgvse/error.hpp"
#include "dgvse/gaussian.hpp"

namespace dgvse {

struct TrainConfig {
  DistanceKind distance_kind = DistanceKind::Wasserstein2Sq;
  double margin = 0.2;
  double learning_rate = 0.001;
  std::size_t epochs = 50;
  std::size_t batch_size = 32;
  std::size_t embed_dim = 64;
  std::uint64_t seed = 0;
  std::size_t negatives_per_positive = 1;

  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Switches that are not part of the persisted configuration.
struct TrainOptions {
  /// Pick, for every positive, the in-batch tag set closest to its item
  /// instead of a uniformly random one.
  bool hardest_negative = false;
  /// Keep every variance parameter at its initial value.
  bool freeze_variances = false;
  /// Compare analytic and finite-difference gradients on one batch of the
  /// initial model and record the result in the report.
  bool gradient_check = false;
};

inline void validate(const TrainConfig& c) {
  if (!(c.margin >= 0.0) || !std::isfinite(c.margin)) {
    throw Error(ErrorKind::InvalidConfig, "margin must be >= 0");
  }
  // lr = 0 is accepted so that a run can reproduce its initialization.
  if (!(c.learning_rate >= 0.0) || !std::isfinite(c.learning_rate)) {
    throw Error(ErrorKind::InvalidConfig, "lr must be >= 0");
  }
  if (c.batch_size < 2) {
    throw Error(ErrorKind::InvalidConfig, "batch_size must be >= 2");
  }
  if (c.embed_dim < 1) throw Error(ErrorKind::InvalidConfig, "dim must be >= 1");
  if (c.embed_dim < 1) {
    throw Error(ErrorKind::InvalidConfig, "dim must be >= 1");
  }
  if (c.negatives_per_positive < 1) {
    throw Error(ErrorKind::InvalidConfig, "negatives must be >= 1");
  }
}

/// Flat `key = value` form with keys distance, margin, lr, epochs,
/// batch_size, dim, seed, negatives. '#' starts a comment.
inline void write_config(const TrainConfig& c, std::ostream& out) {
  char buf[64];
  out << "distance = " << to_string(c.distance_kind) << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", c.margin);
  out << "margin = " << buf << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", c.learning_rate);
  out << "lr = " << buf << '\n';
  out << "epochs = " << c.epochs << '\n';
  out << "batch_size = " << c.batch_size << '\n';
  out << "dim = " << c.embed_dim << '\n';
  out << "seed = " << c.seed << '\n';
  out << "negatives = " << c.negatives_per_positive << '\n';
}

namespace detail {

inline std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (!in || !(in >> std::ws).eof()) {
    throw Error(ErrorKind::InvalidConfig,
                "bad value for '" + key + "': '" + value + "'");
  }
  if constexpr (std::is_unsigned_v<T>) {
    if (value.find('-') != std::string::npos) {
      throw Error(ErrorKind::InvalidConfig, "'" + key + "' must be non-negative");
    }
  }
  return out;
}

}  // namespace detail

/// Applies `key = value` lines on top of `base`. Unknown keys are errors.
inline TrainConfig read_config(std::istream& in, TrainConfig base = {}) {
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorKind::InvalidConfig, "expected key = value", lineno);
    }
    const std::string key = detail::trim(line.substr(0, eq));
    const std::string value = detail::trim(line.substr(eq + 1));
    if (key == "distance") {
      auto kind = parse_distance_kind(value);
      if (!kind) throw Error(ErrorKind::InvalidConfig, "unknown distance '" + value + "'", lineno);
      base.distance_kind = *kind;
    } else if (key == "margin") {
      base.margin = detail::parse_number<double>(key, value);
    } else if (key == "lr") {
      base.learning_rate = detail::parse_number<double>(key, value);
    } else if (key == "epochs") {
      base.epochs = detail::parse_number<std::size_t>(key, value);
    } else if (key == "batch_size") {
      base.batch_size = detail::parse_number<std::size_t>(key, value);
    } else if (key == "dim") {
      base.embed_dim = detail::parse_number<std::size_t>(key, value);
    } else if (key == "seed") {
      base.seed = detail::parse_number<std::uint64_t>(key, value);
    } else if (key == "negatives") {
      base.negatives_per_positive = detail::parse_number<std::size_t>(key, value);
    } else {
      throw Error(ErrorKind::InvalidConfig, "unknown key '" + key + "'", lineno);
    }
  }
  validate(base);
  return base;
}

// ---------------------------------------------------------------------------
// Contrastive loss

/// One training example viewed through spans into a Dataset.
struct BatchItem {
  std::span<const double> features;
  std::span<const std::size_t> tags;
};
using Batch = std::vector<BatchItem>;

/// Negative assignment: the tag set (and item) of batch entry `negative`
/// is contrasted against batch entry `positive`.
struct NegativePair {
  std::size_t positive = 0;
  std::size_t negative = 0;
  friend bool operator==(const NegativePair&, const NegativePair&) = default;
};
using Pairing = std::vector<NegativePair>;

inline Batch make_batch(const Dataset& ds, std::span<const std::size_t> indices) {
  Batch batch;
  batch.reserve(indices.size());
  for (std::size_t idx : indices) {
    const Item& item = ds.items().at(idx);
    batch.push_back({item.features, item.tag_ids});
  }
  return batch;
}

/// For each positive i, `per_positive` independent uniform draws j != i.
template <typename Rng>
Pairing sample_negatives(std::size_t batch_size, Rng& rng,
                         std::size_t per_positive = 1) {
  if (batch_size < 2) {
    throw Error(ErrorKind::BatchTooSmall, "need at least 2 items per batch");
  }
  Pairing pairs;
  pairs.reserve(batch_size * per_positive);
  std::uniform_int_distribution<std::size_t> pick(0, batch_size - 2);
  for (std::size_t i = 0; i < batch_size; ++i) {
    for (std::size_t k = 0; k < per_positive; ++k) {
      std::size_t j = pick(rng);
      if (j >= i) ++j;
      pairs.push_back({i, j});
    }
  }
  return pairs;
}

/// Gradient block with the same array layout as ModelParams.
struct ModelGradients {
  Vector w_item;
  Vector b_item;
  Vector var_head;
  double var_bias = 0.0;
  Vector tag_means;
  Vector tag_logvars;

  static ModelGradients zeros_like(const ModelParams& p) {
    ModelGradients g;
    g.w_item.assign(p.w_item.size(), 0.0);
    g.b_item.assign(p.b_item.size(), 0.0);
    g.var_head.assign(p.var_head.size(), 0.0);
    g.tag_means.assign(p.tag_means.size(), 0.0);
    g.tag_logvars.assign(p.tag_logvars.size(), 0.0);
    return g;
  }

  ModelGradients& operator+=(const ModelGradients& o) {
    auto add = [](Vector& a, const Vector& b) {
      for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    };
    add(w_item, o.w_item);
    add(b_item, o.b_item);
    add(var_head, o.var_head);
    var_bias += o.var_bias;
    add(tag_means, o.tag_means);
    add(tag_logvars, o.tag_logvars);
    return *this;
  }
};

struct LossAndGradients {
  double loss = 0.0;
  ModelGradients grads;
};

namespace detail {

struct EncodedBatch {
  std::vector<SphericalGaussian> items;
  std::vector<SphericalGaussian> tag_sets;
};

inline EncodedBatch encode_batch(const ModelParams& p, const Batch& batch) {
  EncodedBatch e;
  e.items.reserve(batch.size());
  e.tag_sets.reserve(batch.size());
  for (const auto& b : batch) {
    e.items.push_back(encode_item(p, b.features));
    e.tag_sets.push_back(encode_tag_set(p, b.tags));
  }
  return e;
}

inline void check_pairing(const Batch& batch, const Pairing& pairing) {
  if (batch.size() < 2) {
    throw Error(ErrorKind::BatchTooSmall, "need at least 2 items per batch");
  }
  for (const auto& pr : pairing) {
    if (pr.positive >= batch.size() || pr.negative >= batch.size() ||
        pr.positive == pr.negative) {
      throw Error(ErrorKind::InvalidValue, "invalid negative pairing");
    }
  }
}

// The two hinge arguments of one (positive, negative) pair:
//   m + d(x+, v+) - d(x+, v-)   and   m + d(v+, x+) - d(v-, x+).
struct HingeArgs {
  double image_anchor;
  double tag_anchor;
};

inline HingeArgs hinge_args(DistanceKind kind, double margin,
                            const EncodedBatch& e, const NegativePair& pr) {
  const auto& x = e.items[pr.positive];
  const auto& vp = e.tag_sets[pr.positive];
  const auto& vn = e.tag_sets[pr.negative];
  return {margin + distance(kind, x, vp) - distance(kind, x, vn),
          margin + distance(kind, vp, x) - distance(kind, vn, x)};
}

inline void axpy(double a, const Vector& x, Vector& y) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace detail

/// Loss of one (positive, negative) pair from its four distances:
///   max(0, m + d(x+, v+) - d(x+, v-)) + max(0, m + d(v+, x+) - d(v-, x+)).
inline double pair_loss(double d_img_pos, double d_img_neg, double d_tag_pos,
                        double d_tag_neg, double margin) {
  return std::max(0.0, margin + d_img_pos - d_img_neg) +
         std::max(0.0, margin + d_tag_pos - d_tag_neg);
}

/// Bidirectional hinge loss summed over every pair in `pairing`.
inline double contrastive_loss(const ModelParams& p, const Batch& batch,
                               const Pairing& pairing, DistanceKind kind,
                               double margin) {
  detail::check_pairing(batch, pairing);
  const auto e = detail::encode_batch(p, batch);
  double loss = 0.0;
  for (const auto& pr : pairing) {
    const auto h = detail::hinge_args(kind, margin, e, pr);
    loss += std::max(0.0, h.image_anchor) + std::max(0.0, h.tag_anchor);
  }
  return loss;
}

/// All hinge arguments of the batch, two per pair, in pairing order.
inline std::vector<double> hinge_arguments(const ModelParams& p,
                                           const Batch& batch,
                                           const Pairing& pairing,
                                           DistanceKind kind, double margin) {
  detail::check_pairing(batch, pairing);
  const auto e = detail::encode_batch(p, batch);
  std::vector<double> out;
  out.reserve(2 * pairing.size());
  for (const auto& pr : pairing) {
    const auto h = detail::hinge_args(kind, margin, e, pr);
    out.push_back(h.image_anchor);
    out.push_back(h.tag_anchor);
  }
  return out;
}

/// Loss and its exact gradient with respect to every trainable array.
/// A hinge contributes nothing when its argument is <= 0.
inline LossAndGradients loss_gradients(const ModelParams& p, const Batch& batch,
                                       const Pairing& pairing,
                                       DistanceKind kind, double margin) {
  detail::check_pairing(batch, pairing);
  const auto e = detail::encode_batch(p, batch);
  const std::size_t n = batch.size();

  // Adjoints with respect to each encoded Gaussian's mean and variance.
  std::vector<Vector> item_gm(n, Vector(p.d, 0.0));
  std::vector<double> item_gv(n, 0.0);
  std::vector<Vector> set_gm(n, Vector(p.d, 0.0));
  std::vector<double> set_gv(n, 0.0);

  LossAndGradients out{0.0, ModelGradients::zeros_like(p)};
  for (const auto& pr : pairing) {
    const std::size_t i = pr.positive;
    const std::size_t j = pr.negative;
    const auto h = detail::hinge_args(kind, margin, e, pr);
    if (h.image_anchor > 0.0) {
      out.loss += h.image_anchor;
      const auto pos = distance_grad(kind, e.items[i], e.tag_sets[i]);
      const auto neg = distance_grad(kind, e.items[i], e.tag_sets[j]);
      detail::axpy(1.0, pos.d_mean_x, item_gm[i]);
      item_gv[i] += pos.d_var_x;
      detail::axpy(1.0, pos.d_mean_y, set_gm[i]);
      set_gv[i] += pos.d_var_y;
      detail::axpy(-1.0, neg.d_mean_x, item_gm[i]);
      item_gv[i] -= neg.d_var_x;
      detail::axpy(-1.0, neg.d_mean_y, set_gm[j]);
      set_gv[j] -= neg.d_var_y;
    }
    if (h.tag_anchor > 0.0) {
      out.loss += h.tag_anchor;
      const auto pos = distance_grad(kind, e.tag_sets[i], e.items[i]);
      const auto neg = distance_grad(kind, e.tag_sets[j], e.items[i]);
      detail::axpy(1.0, pos.d_mean_x, set_gm[i]);
      set_gv[i] += pos.d_var_x;
      detail::axpy(1.0, pos.d_mean_y, item_gm[i]);
      item_gv[i] += pos.d_var_y;
      detail::axpy(-1.0, neg.d_mean_x, set_gm[j]);
      set_gv[j] -= neg.d_var_x;
      detail::axpy(-1.0, neg.d_mean_y, item_gm[i]);
      item_gv[i] -= neg.d_var_y;
    }
  }

  auto& g = out.grads;
  for (std::size_t b = 0; b < n; ++b) {
    // Item encoder: mean = W f + b, variance = softplus(h . f + c) + floor.
    const auto f = batch[b].features;
    for (std::size_t row = 0; row < p.d; ++row) {
      const double gm = item_gm[b][row];
      if (gm == 0.0) continue;
      g.b_item[row] += gm;
      double* w = g.w_item.data() + row * p.r;
      for (std::size_t col = 0; col < p.r; ++col) w[col] += gm * f[col];
    }
    if (item_gv[b] != 0.0) {
      const double dz = item_gv[b] * sigmoid(item_variance_logit(p, f));
      g.var_bias += dz;
      for (std::size_t col = 0; col < p.r; ++col) g.var_head[col] += dz * f[col];
    }

    // Tag-set encoder. With P = sum 1/v_t, the fused Gaussian is
    // mean M = (sum mu_t / v_t) / P and variance V = |T| / P.
    const auto ids = canonical_tag_set(p, batch[b].tags);
    const auto& fused = e.tag_sets[b];
    double precision = 0.0;
    for (std::size_t t : ids) {
      precision += 1.0 / (softplus(p.tag_logvars[t]) + kVarFloor);
    }
    for (std::size_t t : ids) {
      const double vt = softplus(p.tag_logvars[t]) + kVarFloor;
      const double* mu = p.tag_means.data() + t * p.d;
      double* gmu = g.tag_means.data() + t * p.d;
      double dvt = set_gv[b] * fused.variance() / (precision * vt * vt);
      const double wt = 1.0 / (vt * precision);
      for (std::size_t k = 0; k < p.d; ++k) {
        gmu[k] += set_gm[b][k] * wt;
        dvt += set_gm[b][k] * (fused.mean()[k] - mu[k]) / (vt * vt * precision);
      }
      g.tag_logvars[t] += dvt * sigmoid(p.tag_logvars[t]);
    }
  }
  return out;
}

/// For each positive, the negative j != i minimizing d(x_i, v_j).
inline Pairing hardest_negatives(const ModelParams& p, const Batch& batch,
                                 DistanceKind kind) {
  if (batch.size() < 2) {
    throw Error(ErrorKind::BatchTooSmall, "need at least 2 items per batch");
  }
  const auto e = detail::encode_batch(p, batch);
  Pairing pairs;
  for (std::size_t i = 0; i < batch.size(); ++i) {
    std::size_t best = i == 0 ? 1 : 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < batch.size(); ++j) {
      if (j == i) continue;
      const double dij = distance(kind, e.items[i], e.tag_sets[j]);
      if (dij < best_d) {
        best_d = dij;
        best = j;
      }
    }
    pairs.push_back({i, best});
  }
  return pairs;
}

// ---------------------------------------------------------------------------
// Finite-difference verification

struct GradientCheckResult {
  double max_rel_error = 0.0;
  std::size_t checked = 0;
  std::size_t skipped = 0;
};

/// Compares `analytic` against central differences of contrastive_loss,
/// element by element. The relative error uses max(|a|, |b|, 1e-8) as the
/// denominator. Elements whose perturbation moves a hinge argument that
/// sits within 1e-3 of zero, or flips any hinge, are skipped.
inline GradientCheckResult check_gradients(const ModelParams& params,
                                           const ModelGradients& analytic,
                                           const Batch& batch,
                                           const Pairing& pairing,
                                           DistanceKind kind, double margin,
                                           double step) {
  constexpr double kKinkBand = 1e-3;
  ModelParams probe = params;
  ModelGradients grads = analytic;
  const auto base_hinges = hinge_arguments(params, batch, pairing, kind, margin);

  std::vector<std::span<double>> probe_arrays;
  std::vector<std::span<double>> grad_arrays;
  for_each_array(probe, [&](const char*, std::span<double> s) {
    probe_arrays.push_back(s);
  });
  for_each_array(grads, [&](const char*, std::span<double> s) {
    grad_arrays.push_back(s);
  });

  GradientCheckResult result;
  for (std::size_t a = 0; a < probe_arrays.size(); ++a) {
    for (std::size_t k = 0; k < probe_arrays[a].size(); ++k) {
      double& x = probe_arrays[a][k];
      const double saved = x;
      x = saved + step;
      const double loss_plus = contrastive_loss(probe, batch, pairing, kind, margin);
      const auto hinge_plus = hinge_arguments(probe, batch, pairing, kind, margin);
      x = saved - step;
      const double loss_minus = contrastive_loss(probe, batch, pairing, kind, margin);
      const auto hinge_minus = hinge_arguments(probe, batch, pairing, kind, margin);
      x = saved;

      bool near_kink = false;
      for (std::size_t h = 0; h < base_hinges.size() && !near_kink; ++h) {
        const bool moved = hinge_plus[h] != base_hinges[h] ||
                           hinge_minus[h] != base_hinges[h];
        const bool flips = (hinge_plus[h] > 0.0) != (hinge_minus[h] > 0.0);
        near_kink = flips || (moved && std::abs(base_hinges[h]) < kKinkBand);
      }
      if (near_kink) {
        ++result.skipped;
        continue;
      }
      const double numeric = (loss_plus - loss_minus) / (2.0 * step);
      const double exact = grad_arrays[a][k];
      const double denom = std::max({std::abs(numeric), std::abs(exact), 1e-8});
      result.max_rel_error =
          std::max(result.max_rel_error, std::abs(numeric - exact) / denom);
      ++result.checked;
    }
  }
  return result;
}

inline GradientCheckResult gradient_check(const ModelParams& params,
                                          const Batch& batch,
                                          const Pairing& pairing,
                                          DistanceKind kind, double margin,
                                          double step = 1e-5) {
  const auto analytic = loss_gradients(params, batch, pairing, kind, margin);
  return check_gradients(params, analytic.grads, batch, pairing, kind, margin,
                         step);
}

// ---------------------------------------------------------------------------
// Training loop

struct TrainReport {
  std::vector<double> epoch_mean_loss;  // per pair
  double final_loss = 0.0;
  std::optional<double> gradient_check_max_rel_error;
  double wall_seconds = 0.0;
};

struct FitResult {
  ModelParams params;
  TrainReport report;
};

inline void sgd_step(ModelParams& p, const ModelGradients& g, double lr,
                     bool freeze_variances) {
  auto step = [lr](Vector& w, const Vector& dw) {
    for (std::size_t i = 0; i < w.size(); ++i) w[i] -= lr * dw[i];
  };
  step(p.w_item, g.w_item);
  step(p.b_item, g.b_item);
  step(p.tag_means, g.tag_means);
  if (!freeze_variances) {
    step(p.var_head, g.var_head);
    p.var_bias -= lr * g.var_bias;
    step(p.tag_logvars, g.tag_logvars);
  }
}

/// Plain mini-batch SGD on the summed contrastive loss. Deterministic for a
/// fixed (config, dataset, options). A trailing batch of a single item is
/// dropped because it admits no in-batch negative.
inline FitResult fit(const TrainConfig& config, const Dataset& ds,
                     const TrainOptions& options = {}) {
  validate(config);
  if (ds.empty()) throw Error(ErrorKind::EmptyDataset, "dataset has no items");
  for (const auto& item : ds.items()) {
    if (item.tag_ids.empty()) {
      throw Error(ErrorKind::ItemWithoutTags, "item '" + item.id + "' has no tags");
    }
  }
  if (ds.size() < 2) {
    throw Error(ErrorKind::BatchTooSmall, "training needs at least 2 items");
  }
  const auto start = std::chrono::steady_clock::now();

  std::mt19937_64 rng(config.seed);
  FitResult out{init_params(config.embed_dim, ds.feature_dim(),
                            ds.vocabulary().size(), rng),
                {}};
  ModelParams& params = out.params;
  params.distance_kind = config.distance_kind;
  params.margin = config.margin;
  params.vocabulary = ds.vocabulary();

  std::vector<std::size_t> order(ds.size());
  std::iota(order.begin(), order.end(), 0);
  if (options.gradient_check) {
    std::mt19937_64 probe_rng(config.seed ^ 0x9e3779b97f4a7c15ULL);
    const std::size_t n = std::min(order.size(), config.batch_size);
    const auto batch = make_batch(ds, std::span<const std::size_t>(order).first(n));
    const auto pairing = sample_negatives(n, probe_rng, config.negatives_per_positive);
    out.report.gradient_check_max_rel_error =
        gradient_check(params, batch, pairing, config.distance_kind, config.margin)
            .max_rel_error;
  }
  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    std::size_t epoch_pairs = 0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      if (end - begin < 2) continue;
      const auto batch = make_batch(
          ds, std::span<const std::size_t>(order).subspan(begin, end - begin));
      const Pairing pairing =
          options.hardest_negative
              ? hardest_negatives(params, batch, config.distance_kind)
              : sample_negatives(batch.size(), rng, config.negatives_per_positive);
      const auto lg = loss_gradients(params, batch, pairing,
                                     config.distance_kind, config.margin);
      epoch_loss += lg.loss;
      epoch_pairs += pairing.size();
      sgd_step(params, lg.grads, config.learning_rate, options.freeze_variances);
    }
    out.report.epoch_mean_loss.push_back(
        epoch_pairs ? epoch_loss / static_cast<double>(epoch_pairs) : 0.0);
  }
  if (!out.report.epoch_mean_loss.empty()) {
    out.report.final_loss = out.report.epoch_mean_loss.back();
  }
  out.report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace dgvse

#endif  // DGVSE_TRAINING_HPP
