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

#ifndef DGVSE_APPLICATIONS_HPP
#define DGVSE_APPLICATIONS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dgvse/dataset.hpp"
#include "dgvse/divergences.hpp"
#include "dgvse/encoders.hpp"
#include "dgvse/error.hpp"
#include "dgvse/gaussian.hpp"

namespace dgvse {

/// A trained model bound to the dataset it indexes, with every item
/// Gaussian precomputed. Immutable after construction.
class EmbeddingIndex {
 public:
  EmbeddingIndex(ModelParams params, Dataset dataset)
      : params_(std::move(params)), dataset_(std::move(dataset)) {
    if (params_.r != dataset_.feature_dim() && !dataset_.empty()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "model expects " + std::to_string(params_.r) +
                      " features, dataset has " +
                      std::to_string(dataset_.feature_dim()));
    }
    const bool vocab_ok = params_.vocabulary.empty()
                              ? params_.s == dataset_.vocabulary().size()
                              : params_.vocabulary == dataset_.vocabulary();
    if (!vocab_ok) {
      throw Error(ErrorKind::InvalidValue,
                  "model vocabulary does not match the dataset");
    }
    items_.reserve(dataset_.size());
    for (const auto& item : dataset_.items()) {
      items_.push_back(encode_item(params_, item.features));
    }
  }

  const ModelParams& params() const { return params_; }
  const Dataset& dataset() const { return dataset_; }
  const std::vector<SphericalGaussian>& item_gaussians() const { return items_; }
  DistanceKind kind() const { return params_.distance_kind; }

  std::size_t require_item(const std::string& id) const {
    auto idx = dataset_.item_index(id);
    if (!idx) throw Error(ErrorKind::UnknownId, "unknown item '" + id + "'");
    return *idx;
  }

  std::size_t require_tag(const std::string& name) const {
    auto id = dataset_.tag_id(name);
    if (!id) throw Error(ErrorKind::UnknownTag, "unknown tag '" + name + "'");
    return *id;
  }

  const std::string& tag_name(std::size_t id) const {
    return dataset_.vocabulary().at(id);
  }

 private:
  ModelParams params_;
  Dataset dataset_;
  std::vector<SphericalGaussian> items_;
};

// ---------------------------------------------------------------------------
// Retrieval

/// How tag edits are applied to the query base.
enum class QueryMode {
  /// Natural-parameter arithmetic on the base Gaussian.
  Algebra,
  /// Re-fuse the edited tag set from scratch (the base item's own features
  /// are not used).
  Refuse,
};

struct QuerySpec {
  /// Either an item id or a list of tag ids.
  std::variant<std::string, std::vector<std::size_t>> base;
  std::vector<std::size_t> remove;
  std::vector<std::size_t> add;
  std::size_t k = 10;
  QueryMode mode = QueryMode::Algebra;
};

struct ScoredItem {
  std::string id;
  double score = 0.0;
  friend bool operator==(const ScoredItem&, const ScoredItem&) = default;
};

/// Items ordered by score descending, ties by ascending id.
struct RankedResult {
  std::vector<ScoredItem> results;
  /// Set when query algebra had to clamp theta2 to keep a distribution.
  bool degenerate = false;
  friend bool operator==(const RankedResult&, const RankedResult&) = default;
};

namespace detail {

inline Error query_error(ErrorKind kind, const std::string& what,
                         const char* field) {
  Error e(kind, what);
  e.with_field(field);
  return e;
}

inline void check_tag_list(const EmbeddingIndex& index,
                           const std::vector<std::size_t>& ids,
                           const char* field) {
  std::vector<std::size_t> sorted = ids;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw query_error(ErrorKind::InvalidQuery, "duplicate tag", field);
  }
  for (std::size_t id : ids) {
    if (id >= index.params().s) {
      throw query_error(ErrorKind::UnknownTag,
                        "unknown tag id " + std::to_string(id), field);
    }
  }
}

inline std::vector<std::size_t> base_tags(const EmbeddingIndex& index,
                                          const QuerySpec& q) {
  if (const auto* id = std::get_if<std::string>(&q.base)) {
    const auto idx = index.dataset().item_index(*id);
    if (!idx) throw query_error(ErrorKind::UnknownId, "unknown item '" + *id + "'", "base");
    return index.dataset().items()[*idx].tag_ids;
  }
  return std::get<std::vector<std::size_t>>(q.base);
}

inline std::vector<std::size_t> edited_tags(std::vector<std::size_t> tags,
                                            const QuerySpec& q) {
  std::erase_if(tags, [&](std::size_t t) {
    return std::find(q.remove.begin(), q.remove.end(), t) != q.remove.end();
  });
  for (std::size_t t : q.add) {
    if (std::find(tags.begin(), tags.end(), t) == tags.end()) tags.push_back(t);
  }
  return tags;
}

}  // namespace detail

/// Throws Error (with field() set) when `q` is not a valid query.
inline void validate_query(const EmbeddingIndex& index, const QuerySpec& q) {
  if (q.k < 1) throw detail::query_error(ErrorKind::InvalidQuery, "k must be >= 1", "k");
  detail::check_tag_list(index, q.remove, "remove");
  detail::check_tag_list(index, q.add, "add");
  for (std::size_t t : q.add) {
    if (std::find(q.remove.begin(), q.remove.end(), t) != q.remove.end()) {
      throw detail::query_error(ErrorKind::InvalidQuery,
                                "tag '" + index.tag_name(t) +
                                    "' is both added and removed",
                                "add");
    }
  }
  if (const auto* tags = std::get_if<std::vector<std::size_t>>(&q.base)) {
    if (tags->empty()) {
      throw detail::query_error(ErrorKind::InvalidQuery, "base tag list is empty", "base");
    }
    detail::check_tag_list(index, *tags, "base");
  }
  const auto base = detail::base_tags(index, q);
  if (detail::edited_tags(base, q).empty()) {
    throw detail::query_error(ErrorKind::InvalidQuery,
                              "query has no tags left after edits", "remove");
  }
}

struct QueryGaussian {
  SphericalGaussian gaussian;
  bool degenerate = false;
};

/// Builds the query distribution. In Algebra mode:
///   theta_q = theta_base + (sum theta_add - sum theta_remove) / |T_base|
/// with theta2 clamped to -kTheta2Ceil when the edit leaves the cone.
inline QueryGaussian build_query(const EmbeddingIndex& index, const QuerySpec& q) {
  validate_query(index, q);
  const auto& p = index.params();
  const auto base = detail::base_tags(index, q);
  if (q.mode == QueryMode::Refuse) {
    return {encode_tag_set(p, detail::edited_tags(base, q)), false};
  }

  const auto* item_id = std::get_if<std::string>(&q.base);
  SphericalGaussian base_gaussian = item_id
                                        ? index.item_gaussians()[index.require_item(*item_id)]
                                        : encode_tag_set(p, base);
  if (q.add.empty() && q.remove.empty()) return {std::move(base_gaussian), false};
  NaturalParams theta = to_natural(base_gaussian);
  NaturalParams edit{Vector(p.d, 0.0), 0.0};
  for (std::size_t t : q.add) edit += to_natural(encode_tag(p, t));
  for (std::size_t t : q.remove) edit -= to_natural(encode_tag(p, t));
  edit *= 1.0 / static_cast<double>(base.size());
  theta += edit;

  bool degenerate = false;
  if (!(theta.theta2 <= -kTheta2Ceil)) {
    theta.theta2 = -kTheta2Ceil;
    degenerate = true;
  }
  return {from_natural(theta), degenerate};
}

/// Ranks `candidates` (dataset indices) by distance(kind, item, query),
/// ascending, ties by id; keeps the first `k`.
inline std::vector<ScoredItem> rank_items(const EmbeddingIndex& index,
                                          const SphericalGaussian& query,
                                          const std::vector<std::size_t>& candidates,
                                          std::size_t k) {
  std::vector<ScoredItem> scored;
  scored.reserve(candidates.size());
  for (std::size_t idx : candidates) {
    const double dist = distance(index.kind(), index.item_gaussians()[idx], query);
    scored.push_back({index.dataset().items()[idx].id, 0.0 - dist});
  }
  auto better = [](const ScoredItem& a, const ScoredItem& b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  };
  if (k < scored.size()) {
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(k),
                      scored.end(), better);
    scored.resize(k);
  } else {
    std::sort(scored.begin(), scored.end(), better);
  }
  return scored;
}

inline RankedResult retrieve(const EmbeddingIndex& index, const QuerySpec& q) {
  const auto query = build_query(index, q);
  std::vector<std::size_t> all(index.dataset().size());
  std::iota(all.begin(), all.end(), 0);
  return {rank_items(index, query.gaussian, all, q.k), query.degenerate};
}

/// Orders items by relevance to a tag, score = -distance(kind, item, tag).
/// An empty `subset` means every item carrying the tag.
inline RankedResult reorder(const EmbeddingIndex& index, std::size_t tag_id,
                            const std::vector<std::string>& subset = {}) {
  if (tag_id >= index.params().s) {
    throw Error(ErrorKind::UnknownTag, "unknown tag id " + std::to_string(tag_id));
  }
  std::vector<std::size_t> candidates;
  if (subset.empty()) {
    const auto& items = index.dataset().items();
    for (std::size_t i = 0; i < items.size(); ++i) {
      const auto& ids = items[i].tag_ids;
      if (std::find(ids.begin(), ids.end(), tag_id) != ids.end()) candidates.push_back(i);
    }
  } else {
    for (const auto& id : subset) candidates.push_back(index.require_item(id));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  }
  if (candidates.empty()) {
    throw Error(ErrorKind::EmptySubset, "no items to reorder for tag '" +
                                            index.tag_name(tag_id) + "'");
  }
  const auto tag = encode_tag(index.params(), tag_id);
  return {rank_items(index, tag, candidates, candidates.size()), false};
}

// ---------------------------------------------------------------------------
// Variance analysis

struct TagVarianceRow {
  std::string tag;
  std::size_t tag_id = 0;
  double variance = 0.0;
  std::size_t count = 0;
};

/// Every tag with its embedded variance and item count, sorted by
/// variance descending (stable in tag id).
inline std::vector<TagVarianceRow> tag_variance_report(const EmbeddingIndex& index) {
  const auto& p = index.params();
  const auto& counts = index.dataset().tag_counts();
  std::vector<TagVarianceRow> rows;
  rows.reserve(p.s);
  for (std::size_t t = 0; t < p.s; ++t) {
    rows.push_back({index.tag_name(t), t, encode_tag(p, t).variance(),
                    t < counts.size() ? counts[t] : 0});
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TagVarianceRow& a, const TagVarianceRow& b) {
                     return a.variance > b.variance;
                   });
  return rows;
}

/// Pearson correlation matrix; entries involving a constant column are
/// left empty.
struct CorrelationMatrix {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> values;

  std::optional<double> at(std::size_t i, std::size_t j) const { return values[i][j]; }
};

inline CorrelationMatrix pearson_matrix(std::vector<std::string> names,
                                        const std::vector<std::vector<double>>& cols) {
  const std::size_t m = cols.size();
  const std::size_t n = cols.empty() ? 0 : cols.front().size();
  std::vector<Vector> centered(m, Vector(n));
  std::vector<double> norms(m, 0.0);
  std::vector<bool> constant(m, true);
  for (std::size_t c = 0; c < m; ++c) {
    const double mean = std::accumulate(cols[c].begin(), cols[c].end(), 0.0) /
                        static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
      centered[c][i] = cols[c][i] - mean;
      norms[c] += centered[c][i] * centered[c][i];
      if (cols[c][i] != cols[c][0]) constant[c] = false;
    }
    norms[c] = std::sqrt(norms[c]);
  }
  CorrelationMatrix out{std::move(names),
                        std::vector<std::vector<std::optional<double>>>(
                            m, std::vector<std::optional<double>>(m))};
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      if (constant[a] || constant[b]) continue;
      if (a == b) {
        out.values[a][b] = 1.0;
        continue;
      }
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += centered[a][i] * centered[b][i];
      out.values[a][b] = std::clamp(dot / (norms[a] * norms[b]), -1.0, 1.0);
    }
  }
  return out;
}

/// Correlations between each item's embedded variance and statistics of its
/// tags: [item variance, tag count, mean/min/max tag frequency].
inline CorrelationMatrix image_variance_correlation(const EmbeddingIndex& index) {
  const auto& items = index.dataset().items();
  if (items.size() < 3) {
    throw Error(ErrorKind::TooFewItems, "correlation needs at least 3 items");
  }
  const auto& counts = index.dataset().tag_counts();
  std::vector<std::vector<double>> cols(5, std::vector<double>(items.size()));
  for (std::size_t i = 0; i < items.size(); ++i) {
    const auto& ids = items[i].tag_ids;
    double sum = 0.0;
    double lo = static_cast<double>(counts[ids.front()]);
    double hi = lo;
    for (std::size_t t : ids) {
      const double f = static_cast<double>(counts[t]);
      sum += f;
      lo = std::min(lo, f);
      hi = std::max(hi, f);
    }
    cols[0][i] = index.item_gaussians()[i].variance();
    cols[1][i] = static_cast<double>(ids.size());
    cols[2][i] = sum / static_cast<double>(ids.size());
    cols[3][i] = lo;
    cols[4][i] = hi;
  }
  return pearson_matrix({"item_variance", "tag_count", "mean_tag_frequency",
                         "min_tag_frequency", "max_tag_frequency"},
                        cols);
}

// ---------------------------------------------------------------------------
// Attribute map

struct MapPoint {
  std::string tag;
  std::size_t tag_id = 0;
  double x = 0.0;
  double y = 0.0;
};

struct AttributeMap {
  std::vector<MapPoint> points;
  std::array<double, 2> eigenvalues{};
  /// Share of the total variance captured by the two axes.
  double explained = 0.0;
};

namespace detail {

using Matrix = std::vector<Vector>;

inline Vector mat_vec(const Matrix& m, const Vector& v) {
  Vector out(v.size(), 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += m[i][j] * v[j];
  }
  return out;
}

inline double norm(const Vector& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

inline void orthogonalize(Vector& v, const std::vector<Vector>& basis) {
  for (const auto& b : basis) {
    const double c = std::inner_product(v.begin(), v.end(), b.begin(), 0.0);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
  }
}

// Leading eigenpair of the symmetric PSD matrix `m` restricted to the
// orthogonal complement of `basis`.
inline std::pair<double, Vector> power_iteration(const Matrix& m,
                                                 const std::vector<Vector>& basis,
                                                 double tol) {
  constexpr int kMaxIter = 200000;
  const std::size_t n = m.size();
  // Seed with the column of m of largest norm outside the known basis.
  Vector v(n, 0.0);
  double best = -1.0;
  for (std::size_t j = 0; j < n; ++j) {
    Vector col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = m[i][j];
    orthogonalize(col, basis);
    const double c = norm(col);
    if (c > best) {
      best = c;
      v = col;
    }
  }
  if (!(best > 0.0)) {
    // Null space: any unit vector orthogonal to the basis.
    for (std::size_t j = 0; j < n; ++j) {
      Vector e(n, 0.0);
      e[j] = 1.0;
      orthogonalize(e, basis);
      if (norm(e) > 1e-6) {
        const double c = norm(e);
        for (double& x : e) x /= c;
        return {0.0, e};
      }
    }
  }
  for (double& x : v) x /= best;

  double lambda = 0.0;
  for (int it = 0; it < kMaxIter; ++it) {
    Vector w = mat_vec(m, v);
    orthogonalize(w, basis);
    lambda = norm(w);
    if (!(lambda > 0.0)) return {0.0, v};
    for (double& x : w) x /= lambda;
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta = std::max(delta, std::abs(w[i] - v[i]));
    v = std::move(w);
    if (delta < tol) break;
  }
  return {lambda, v};
}

inline void fix_sign(Vector& v) {
  for (double x : v) {
    if (std::abs(x) > 1e-12) {
      if (x < 0.0) {
        for (double& y : v) y = -y;
      }
      return;
    }
  }
}

}  // namespace detail

/// Projects the tag means onto their top two principal directions (power
/// iteration with deflation). Each axis is oriented so that its first
/// non-negligible loading is positive.
inline AttributeMap export_map(const ModelParams& p,
                               const std::vector<std::size_t>& tag_ids) {
  constexpr double kTol = 1e-9;
  if (tag_ids.size() < 2) throw Error(ErrorKind::TooFewTags, "map needs at least 2 tags");
  if (p.d < 2) throw Error(ErrorKind::DimensionMismatch, "map needs d >= 2");
  for (std::size_t t : tag_ids) require_tag(p, t);

  const std::size_t n = tag_ids.size();
  Vector center(p.d, 0.0);
  for (std::size_t t : tag_ids) {
    for (std::size_t k = 0; k < p.d; ++k) center[k] += p.tag_means[t * p.d + k];
  }
  for (double& c : center) c /= static_cast<double>(n);
  std::vector<Vector> rows(n, Vector(p.d));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < p.d; ++k) {
      rows[i][k] = p.tag_means[tag_ids[i] * p.d + k] - center[k];
    }
  }
  detail::Matrix cov(p.d, Vector(p.d, 0.0));
  double trace = 0.0;
  for (const auto& row : rows) {
    for (std::size_t a = 0; a < p.d; ++a) {
      for (std::size_t b = 0; b < p.d; ++b) cov[a][b] += row[a] * row[b];
    }
  }
  for (std::size_t a = 0; a < p.d; ++a) {
    for (double& x : cov[a]) x /= static_cast<double>(n);
    trace += cov[a][a];
  }

  std::vector<Vector> axes;
  AttributeMap out;
  for (int c = 0; c < 2; ++c) {
    auto [lambda, v] = detail::power_iteration(cov, axes, kTol);
    detail::fix_sign(v);
    out.eigenvalues[c] = lambda;
    axes.push_back(std::move(v));
  }
  out.explained = trace > 0.0 ? (out.eigenvalues[0] + out.eigenvalues[1]) / trace : 1.0;

  for (std::size_t i = 0; i < n; ++i) {
    MapPoint pt{p.vocabulary.empty() ? std::to_string(tag_ids[i])
                                     : p.vocabulary[tag_ids[i]],
                tag_ids[i], 0.0, 0.0};
    for (std::size_t k = 0; k < p.d; ++k) {
      pt.x += rows[i][k] * axes[0][k];
      pt.y += rows[i][k] * axes[1][k];
    }
    out.points.push_back(std::move(pt));
  }
  return out;
}

}  // namespace dgvse

#endif  // DGVSE_APPLICATIONS_HPP
