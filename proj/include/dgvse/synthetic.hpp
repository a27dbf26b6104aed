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

#ifndef DGVSE_SYNTHETIC_HPP
#define DGVSE_SYNTHETIC_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "dgvse/dataset.hpp"
#include "dgvse/error.hpp"

namespace dgvse {

/// Parameters of the clustered toy corpus.
struct SyntheticSpec {
  std::size_t n_clusters = 8;
  std::size_t items_per_cluster = 40;
  std::size_t r = 16;
  double cluster_spread = 0.1;
  std::size_t n_generic_tags = 4;
  std::size_t n_specific_tags = 8;
  std::uint64_t seed = 1;
};

inline std::string specific_tag_name(std::size_t k) {
  return "specific_" + std::to_string(k);
}
inline std::string generic_tag_name(std::size_t k) {
  return "generic_" + std::to_string(k);
}
inline std::string synthetic_item_id(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "item%05zu", k);
  return buf;
}

/// Clustered corpus: cluster centers on the unit sphere, item features are
/// center + N(0, spread^2 I). Cluster c carries the exclusive tag
/// specific_c on every item. Every generic tag is attached to each item
/// independently with probability 1/2, and to at least one item of every
/// cluster, so its items span all clusters.
///
/// Items are emitted cluster by cluster; item ids are zero-padded so that
/// lexical order equals generation order.
inline Dataset generate_synthetic(const SyntheticSpec& spec) {
  if (spec.n_clusters == 0 || spec.items_per_cluster == 0 || spec.r == 0 ||
      !(spec.cluster_spread > 0.0)) {
    throw Error(ErrorKind::InvalidValue, "synthetic spec counts must be >= 1");
  }
  if (spec.n_specific_tags != spec.n_clusters) {
    throw Error(ErrorKind::InvalidValue,
                "synthetic spec needs exactly one specific tag per cluster");
  }
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::bernoulli_distribution coin(0.5);

  std::vector<Vector> centers(spec.n_clusters, Vector(spec.r));
  for (auto& c : centers) {
    double norm = 0.0;
    do {
      norm = 0.0;
      for (double& x : c) {
        x = normal(rng);
        norm += x * x;
      }
    } while (norm == 0.0);
    norm = std::sqrt(norm);
    for (double& x : c) x /= norm;
  }

  // membership[g][c][i]: item i of cluster c carries generic tag g.
  std::vector<std::vector<std::vector<bool>>> membership(
      spec.n_generic_tags,
      std::vector<std::vector<bool>>(spec.n_clusters,
                                     std::vector<bool>(spec.items_per_cluster)));
  std::uniform_int_distribution<std::size_t> pick(0, spec.items_per_cluster - 1);
  for (auto& per_cluster : membership) {
    for (auto& flags : per_cluster) {
      for (std::size_t i = 0; i < flags.size(); ++i) flags[i] = coin(rng);
      flags[pick(rng)] = true;
    }
  }

  Dataset ds;
  std::size_t serial = 0;
  for (std::size_t c = 0; c < spec.n_clusters; ++c) {
    for (std::size_t i = 0; i < spec.items_per_cluster; ++i) {
      Vector f(spec.r);
      for (std::size_t j = 0; j < spec.r; ++j) {
        f[j] = centers[c][j] + spec.cluster_spread * normal(rng);
      }
      std::vector<std::string> tags{specific_tag_name(c)};
      for (std::size_t g = 0; g < spec.n_generic_tags; ++g) {
        if (membership[g][c][i]) tags.push_back(generic_tag_name(g));
      }
      ds.add_item(synthetic_item_id(serial++), std::move(f), std::move(tags));
    }
  }
  return ds;
}

}  // namespace dgvse

#endif  // DGVSE_SYNTHETIC_HPP
