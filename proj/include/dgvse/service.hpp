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

// JSON wire format shared by the command-line tool and the HTTP service.
// Both produce their payloads through the encoders below, so identical
// logical requests yield byte-identical bodies.

#ifndef DGVSE_SERVICE_HPP
#define DGVSE_SERVICE_HPP

#include <cstdlib>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "dgvse/applications.hpp"
#include "dgvse/error.hpp"

namespace dgvse {

using Json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Decoding

namespace detail {

inline std::size_t tag_from_json(const EmbeddingIndex& index, const Json& v,
                                 const char* field) {
  if (v.is_string()) {
    const auto name = v.get<std::string>();
    const auto id = index.dataset().tag_id(name);
    if (!id) {
      Error e(ErrorKind::UnknownTag, "unknown tag '" + name + "'");
      e.with_field(field);
      throw e;
    }
    return *id;
  }
  if (v.is_number_unsigned()) {
    const auto id = v.get<std::size_t>();
    if (id >= index.params().s) {
      Error e(ErrorKind::UnknownTag, "unknown tag id " + std::to_string(id));
      e.with_field(field);
      throw e;
    }
    return id;
  }
  throw query_error(ErrorKind::InvalidQuery, "tags are names or non-negative ids", field);
}

inline std::vector<std::size_t> tags_from_json(const EmbeddingIndex& index,
                                               const Json& body, const char* field) {
  std::vector<std::size_t> out;
  if (!body.contains(field)) return out;
  const Json& v = body.at(field);
  if (!v.is_array()) throw query_error(ErrorKind::InvalidQuery, "expected a list", field);
  for (const auto& t : v) out.push_back(tag_from_json(index, t, field));
  return out;
}

inline Json parse_body(const std::string& body) {
  try {
    Json j = Json::parse(body);
    if (!j.is_object()) throw Error(ErrorKind::ParseError, "body must be a JSON object");
    return j;
  } catch (const Json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace detail

/// Decodes {base: {item} | {tags}, remove, add, k, mode}. Tags may be given
/// by name or by id. Throws Error with field() naming the offending key.
inline QuerySpec query_from_json(const EmbeddingIndex& index, const Json& body) {
  using detail::query_error;
  QuerySpec q;
  if (!body.is_object()) throw query_error(ErrorKind::InvalidQuery, "expected an object", "base");
  if (!body.contains("base") || !body.at("base").is_object()) {
    throw query_error(ErrorKind::InvalidQuery, "base must be {item} or {tags}", "base");
  }
  const Json& base = body.at("base");
  const bool has_item = base.contains("item");
  const bool has_tags = base.contains("tags");
  if (has_item == has_tags) {
    throw query_error(ErrorKind::InvalidQuery, "base needs exactly one of item, tags", "base");
  }
  if (has_item) {
    if (!base.at("item").is_string()) {
      throw query_error(ErrorKind::InvalidQuery, "base.item must be a string", "base");
    }
    q.base = base.at("item").get<std::string>();
  } else {
    q.base = detail::tags_from_json(index, base, "tags");
  }
  q.remove = detail::tags_from_json(index, body, "remove");
  q.add = detail::tags_from_json(index, body, "add");
  if (body.contains("k")) {
    const Json& k = body.at("k");
    if (!k.is_number_integer() || k.get<long long>() < 1) {
      throw query_error(ErrorKind::InvalidQuery, "k must be an integer >= 1", "k");
    }
    q.k = k.get<std::size_t>();
  }
  if (body.contains("mode")) {
    const Json& m = body.at("mode");
    if (m == "algebra") {
      q.mode = QueryMode::Algebra;
    } else if (m == "refuse") {
      q.mode = QueryMode::Refuse;
    } else {
      throw query_error(ErrorKind::InvalidQuery, "mode is algebra or refuse", "mode");
    }
  }
  return q;
}

// ---------------------------------------------------------------------------
// Encoding

inline Json to_json(const QuerySpec& q, const EmbeddingIndex& index) {
  Json base = Json::object();
  if (const auto* id = std::get_if<std::string>(&q.base)) {
    base["item"] = *id;
  } else {
    Json tags = Json::array();
    for (auto t : std::get<std::vector<std::size_t>>(q.base)) tags.push_back(index.tag_name(t));
    base["tags"] = tags;
  }
  auto names = [&](const std::vector<std::size_t>& ids) {
    Json out = Json::array();
    for (auto t : ids) out.push_back(index.tag_name(t));
    return out;
  };
  return Json{{"base", base},
              {"remove", names(q.remove)},
              {"add", names(q.add)},
              {"k", q.k},
              {"mode", q.mode == QueryMode::Algebra ? "algebra" : "refuse"}};
}

inline Json to_json(const RankedResult& r) {
  Json results = Json::array();
  for (const auto& s : r.results) results.push_back(Json{{"id", s.id}, {"score", s.score}});
  return Json{{"results", results}, {"degenerate", r.degenerate}};
}

/// Keeps the first `top` and last `bottom` rows; everything when both are
/// absent or they overlap.
inline std::vector<std::pair<std::size_t, TagVarianceRow>> select_variance_rows(
    const std::vector<TagVarianceRow>& rows, std::optional<std::size_t> top,
    std::optional<std::size_t> bottom) {
  std::vector<std::pair<std::size_t, TagVarianceRow>> out;
  const std::size_t n = rows.size();
  const std::size_t t = top.value_or(0);
  const std::size_t b = bottom.value_or(0);
  const bool all = (!top && !bottom) || t + b >= n;
  for (std::size_t i = 0; i < n; ++i) {
    if (all || i < t || i >= n - b) out.emplace_back(i + 1, rows[i]);
  }
  return out;
}

inline Json variance_json(const EmbeddingIndex& index, std::optional<std::size_t> top,
                          std::optional<std::size_t> bottom) {
  const auto rows = tag_variance_report(index);
  std::size_t total = 0;
  for (const auto& r : rows) total += r.count;
  Json out = Json::array();
  for (const auto& [rank, r] : select_variance_rows(rows, top, bottom)) {
    out.push_back(Json{{"rank", rank},
                       {"tag", r.tag},
                       {"id", r.tag_id},
                       {"variance", r.variance},
                       {"count", r.count}});
  }
  return Json{{"rows", out}, {"total_count", total}, {"tags", rows.size()}};
}

inline Json to_json(const CorrelationMatrix& m) {
  Json matrix = Json::array();
  for (const auto& row : m.values) {
    Json r = Json::array();
    for (const auto& v : row) r.push_back(v ? Json(*v) : Json(nullptr));
    matrix.push_back(r);
  }
  return Json{{"columns", m.columns}, {"matrix", matrix}};
}

inline Json to_json(const AttributeMap& m) {
  Json points = Json::array();
  for (const auto& p : m.points) {
    points.push_back(Json{{"tag", p.tag}, {"id", p.tag_id}, {"x", p.x}, {"y", p.y}});
  }
  return Json{{"projector", "pca"},
              {"eigenvalues", Json::array({m.eigenvalues[0], m.eigenvalues[1]})},
              {"explained", m.explained},
              {"points", points}};
}

inline AttributeMap map_all_tags(const EmbeddingIndex& index) {
  std::vector<std::size_t> ids(index.params().s);
  std::iota(ids.begin(), ids.end(), 0);
  return export_map(index.params(), ids);
}

inline Json error_json(const Error& e) {
  Json err{{"kind", to_string(e.kind())}, {"message", e.what()}};
  if (!e.field().empty()) err["field"] = e.field();
  return Json{{"error", err}};
}

inline int http_status(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownTag:
    case ErrorKind::UnknownId:
      return 404;
    case ErrorKind::ParseError:
      return 400;
    default:
      return 422;
  }
}

// ---------------------------------------------------------------------------
// Service

struct Response {
  int status = 200;
  std::string body;
};

/// Read-only request handler over an immutable index. Safe to call from
/// many threads at once.
class Service {
 public:
  explicit Service(EmbeddingIndex index) : index_(std::move(index)) {}

  const EmbeddingIndex& index() const { return index_; }

  Response health() const {
    return ok(Json{{"status", "ok"},
                   {"items", index_.dataset().size()},
                   {"tags", index_.params().s}});
  }

  Response tags() const {
    Json out = Json::array();
    const auto& counts = index_.dataset().tag_counts();
    for (std::size_t t = 0; t < index_.params().s; ++t) {
      out.push_back(Json{{"id", t}, {"name", index_.tag_name(t)}, {"count", counts[t]}});
    }
    return ok(Json{{"tags", out}});
  }

  Response map(const std::string& projector) const {
    return guarded([&] {
      if (projector != "pca") {
        Error e(ErrorKind::InvalidQuery, "unsupported projector '" + projector + "'");
        e.with_field("projector");
        throw e;
      }
      return to_json(map_all_tags(index_));
    });
  }

  Response variance(std::optional<std::size_t> top = std::nullopt,
                    std::optional<std::size_t> bottom = std::nullopt) const {
    return ok(variance_json(index_, top, bottom));
  }

  Response correlation() const {
    return guarded([&] { return to_json(image_variance_correlation(index_)); });
  }

  Response retrieve(const std::string& body) const {
    return guarded([&] {
      return to_json(dgvse::retrieve(index_, query_from_json(index_, detail::parse_body(body))));
    });
  }

  /// Body: {tag: name|id, subset?: [item ids]}.
  Response reorder(const std::string& body) const {
    return guarded([&] {
      const Json j = detail::parse_body(body);
      if (!j.contains("tag")) {
        throw detail::query_error(ErrorKind::InvalidQuery, "missing tag", "tag");
      }
      const std::size_t tag = detail::tag_from_json(index_, j.at("tag"), "tag");
      std::vector<std::string> subset;
      if (j.contains("subset")) {
        const Json& s = j.at("subset");
        if (!s.is_array()) {
          throw detail::query_error(ErrorKind::InvalidQuery, "expected a list", "subset");
        }
        for (const auto& id : s) {
          if (!id.is_string()) {
            throw detail::query_error(ErrorKind::InvalidQuery, "item ids are strings", "subset");
          }
          subset.push_back(id.get<std::string>());
        }
        if (subset.empty()) {
          throw detail::query_error(ErrorKind::EmptySubset, "subset is empty", "subset");
        }
      }
      return to_json(dgvse::reorder(index_, tag, subset));
    });
  }

  /// Registers every endpoint on `server`.
  void mount(httplib::Server& server) const {
    auto send = [](httplib::Response& res, const Response& r) {
      res.status = r.status;
      res.set_content(r.body, "application/json");
    };
    server.Get("/health", [=, this](const httplib::Request&, httplib::Response& res) {
      send(res, health());
    });
    server.Get("/tags", [=, this](const httplib::Request&, httplib::Response& res) {
      send(res, tags());
    });
    server.Get("/map", [=, this](const httplib::Request& req, httplib::Response& res) {
      send(res, map(req.has_param("projector") ? req.get_param_value("projector") : "pca"));
    });
    server.Get("/variance", [=, this](const httplib::Request& req, httplib::Response& res) {
      auto count = [&](const char* key) -> std::optional<std::size_t> {
        if (!req.has_param(key)) return std::nullopt;
        return std::stoul(req.get_param_value(key));
      };
      try {
        send(res, variance(count("top"), count("bottom")));
      } catch (const std::exception&) {
        Error e(ErrorKind::InvalidQuery, "top and bottom are non-negative integers");
        e.with_field("top");
        send(res, {422, error_json(e).dump()});
      }
    });
    server.Get("/correlation", [=, this](const httplib::Request&, httplib::Response& res) {
      send(res, correlation());
    });
    server.Post("/retrieve", [=, this](const httplib::Request& req, httplib::Response& res) {
      send(res, retrieve(req.body));
    });
    server.Post("/reorder", [=, this](const httplib::Request& req, httplib::Response& res) {
      send(res, reorder(req.body));
    });
  }

 private:
  static Response ok(const Json& j) { return {200, j.dump()}; }

  template <typename Fn>
  static Response guarded(Fn&& fn) {
    try {
      return ok(fn());
    } catch (const Error& e) {
      return {http_status(e.kind()), error_json(e).dump()};
    }
  }

  EmbeddingIndex index_;
};

/// Splits "host:port"; the port defaults to 8080.
inline std::pair<std::string, int> parse_bind(const std::string& bind) {
  const auto colon = bind.rfind(':');
  if (colon == std::string::npos) return {bind, 8080};
  const std::string port = bind.substr(colon + 1);
  char* end = nullptr;
  const long p = std::strtol(port.c_str(), &end, 10);
  if (port.empty() || *end != '\0' || p < 0 || p > 65535) {
    throw Error(ErrorKind::InvalidConfig, "bad port in bind address '" + bind + "'");
  }
  return {bind.substr(0, colon), static_cast<int>(p)};
}

/// DGVSE_BIND wins over the flag value when set and nonempty.
inline std::string effective_bind(const std::string& flag) {
  const char* env = std::getenv("DGVSE_BIND");
  return env && *env ? std::string(env) : flag;
}

}  // namespace dgvse

#endif  // DGVSE_SERVICE_HPP
