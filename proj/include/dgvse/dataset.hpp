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

#ifndef DGVSE_DATASET_HPP
#define DGVSE_DATASET_HPP

#include <algorithm>
#include <cstddef>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "dgvse/error.hpp"
#include "dgvse/gaussian.hpp"

namespace dgvse {

struct Item {
  std::string id;
  Vector features;
  std::vector<std::string> tags;
  std::vector<std::size_t> tag_ids;  // parallel to tags

  friend bool operator==(const Item&, const Item&) = default;
};

/// Items with precomputed feature vectors and their tag lists. The tag
/// vocabulary is assigned ids in order of first appearance.
class Dataset {
 public:
  Dataset() = default;

  /// Appends an item; throws on any invariant violation. `line` is only
  /// used to annotate errors.
  void add_item(std::string id, Vector features, std::vector<std::string> tags,
                long line = 0) {
    if (items_.empty()) {
      if (features.empty()) {
        throw at(ErrorKind::InconsistentFeatureLength, "empty feature vector",
                 line);
      }
      r_ = features.size();
    } else if (features.size() != r_) {
      throw at(ErrorKind::InconsistentFeatureLength,
               "expected " + std::to_string(r_) + " features, got " +
                   std::to_string(features.size()),
               line);
    }
    if (!detail::all_finite(features)) {
      throw at(ErrorKind::ParseError, "non-finite feature value", line);
    }
    if (tags.empty()) {
      throw at(ErrorKind::EmptyTagsList, "item '" + id + "' has no tags", line);
    }
    if (index_.contains(id)) {
      throw at(ErrorKind::DuplicateId, "duplicate item id '" + id + "'", line);
    }
    std::vector<std::string> sorted = tags;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw at(ErrorKind::DuplicateTag, "item '" + id + "' repeats a tag", line);
    }

    Item item{std::move(id), std::move(features), std::move(tags), {}};
    item.tag_ids.reserve(item.tags.size());
    for (const auto& tag : item.tags) {
      auto [it, inserted] = tag_index_.try_emplace(tag, vocabulary_.size());
      if (inserted) {
        vocabulary_.push_back(tag);
        tag_counts_.push_back(0);
      }
      ++tag_counts_[it->second];
      item.tag_ids.push_back(it->second);
    }
    index_.emplace(item.id, items_.size());
    items_.push_back(std::move(item));
  }

  const std::vector<Item>& items() const { return items_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  std::size_t feature_dim() const { return r_; }
  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }

  /// Number of items carrying each tag, indexed by tag id.
  const std::vector<std::size_t>& tag_counts() const { return tag_counts_; }

  std::optional<std::size_t> tag_id(const std::string& name) const {
    auto it = tag_index_.find(name);
    if (it == tag_index_.end()) return std::nullopt;
    return it->second;
  }

  std::optional<std::size_t> item_index(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.r_ == b.r_ && a.items_ == b.items_ && a.vocabulary_ == b.vocabulary_;
  }

 private:
  static Error at(ErrorKind kind, const std::string& what, long line) {
    return line > 0 ? Error(kind, what, line) : Error(kind, what);
  }

  std::vector<Item> items_;
  std::vector<std::string> vocabulary_;
  std::vector<std::size_t> tag_counts_;
  std::unordered_map<std::string, std::size_t> tag_index_;
  std::unordered_map<std::string, std::size_t> index_;
  std::size_t r_ = 0;
};

/// Reads one JSON object per line: {"id": str, "features": [num], "tags": [str]}.
/// Blank lines are skipped.
inline Dataset read_dataset(std::istream& in) {
  Dataset ds;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::ParseError, e.what(), lineno);
    }
    std::string id;
    Vector features;
    std::vector<std::string> tags;
    try {
      if (!rec.is_object()) throw Error(ErrorKind::ParseError, "not an object", lineno);
      const auto& jid = rec.at("id");
      const auto& jfeat = rec.at("features");
      const auto& jtags = rec.at("tags");
      if (!jid.is_string() || !jfeat.is_array() || !jtags.is_array()) {
        throw Error(ErrorKind::ParseError, "wrong field types", lineno);
      }
      id = jid.get<std::string>();
      for (const auto& v : jfeat) {
        if (!v.is_number()) throw Error(ErrorKind::ParseError, "non-numeric feature", lineno);
        features.push_back(v.get<double>());
      }
      for (const auto& t : jtags) {
        if (!t.is_string()) throw Error(ErrorKind::ParseError, "non-string tag", lineno);
        tags.push_back(t.get<std::string>());
      }
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorKind::ParseError, e.what(), lineno);
    }
    ds.add_item(std::move(id), std::move(features), std::move(tags), lineno);
  }
  return ds;
}

inline Dataset load_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open dataset '" + path + "'");
  return read_dataset(in);
}

inline void write_dataset(const Dataset& ds, std::ostream& out) {
  for (const auto& item : ds.items()) {
    nlohmann::json rec = {
        {"id", item.id}, {"features", item.features}, {"tags", item.tags}};
    out << rec.dump() << '\n';
  }
}

inline void save_dataset(const Dataset& ds, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write dataset '" + path + "'");
  write_dataset(ds, out);
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path + "'");
}

}  // namespace dgvse

#endif  // DGVSE_DATASET_HPP
