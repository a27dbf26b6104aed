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

// dgvse: train models and run retrieval, re-ordering and variance reports
// from the command line, or serve them over HTTP.
//
// Exit codes: 0 ok, 2 usage/config, 3 I/O or dataset, 4 unknown tag/id,
// 5 bind failure.

#include <pthread.h>
#include <signal.h>

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "dgvse/applications.hpp"
#include "dgvse/dataset.hpp"
#include "dgvse/model_io.hpp"
#include "dgvse/service.hpp"
#include "dgvse/synthetic.hpp"
#include "dgvse/training.hpp"

namespace {

using namespace dgvse;

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitUnknown = 4;
constexpr int kExitBind = 5;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownTag:
    case ErrorKind::UnknownId:
      return kExitUnknown;
    case ErrorKind::InvalidConfig:
    case ErrorKind::InvalidQuery:
    case ErrorKind::EmptySubset:
    case ErrorKind::TooFewTags:
      return kExitConfig;
    default:
      return kExitData;
  }
}

std::vector<std::string> split_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& entry : raw) {
    std::stringstream ss(entry);
    std::string part;
    while (std::getline(ss, part, ',')) {
      if (!part.empty()) out.push_back(part);
    }
  }
  return out;
}

struct IndexArgs {
  std::string model;
  std::string data;
  std::string format = "text";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--model", model, "Model file")->required();
    cmd->add_option("--data", data, "Dataset (JSON lines)")->required();
    cmd->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "jsonl", "json"}));
  }

  EmbeddingIndex load() const { return EmbeddingIndex(load_model(model), load_dataset(data)); }
};

void print_ranked(const RankedResult& r, const std::string& format) {
  if (r.degenerate) std::cerr << "warning: query natural parameters were clamped\n";
  if (format == "json") {
    std::cout << to_json(r).dump() << '\n';
  } else if (format == "jsonl") {
    std::size_t rank = 0;
    for (const auto& s : r.results) {
      std::cout << Json{{"rank", ++rank}, {"id", s.id}, {"score", s.score}}.dump() << '\n';
    }
  } else {
    std::size_t width = 2;
    for (const auto& s : r.results) width = std::max(width, s.id.size());
    std::cout << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(width) + 2)
              << "id" << "score\n";
    std::size_t rank = 0;
    for (const auto& s : r.results) {
      std::cout << std::left << std::setw(6) << ++rank
                << std::setw(static_cast<int>(width) + 2) << s.id
                << std::setprecision(10) << s.score << '\n';
    }
  }
}

// ---------------------------------------------------------------------------

struct TrainArgs {
  std::string data;
  std::string out;
  std::string config_file;
  std::string distance;
  std::optional<std::size_t> dim, epochs, batch, negatives;
  std::optional<double> margin, lr;
  std::optional<std::uint64_t> seed;
  bool hardest = false;
  bool freeze = false;
  bool check = false;
  std::string format = "text";
};

int run_train(const TrainArgs& a) {
  TrainConfig config;
  try {
    if (!a.config_file.empty()) {
      std::ifstream in(a.config_file);
      if (!in) throw Error(ErrorKind::InvalidConfig, "cannot open config '" + a.config_file + "'");
      config = read_config(in, config);
    }
    if (!a.distance.empty()) {
      auto kind = parse_distance_kind(a.distance);
      if (!kind) throw Error(ErrorKind::InvalidConfig, "unknown distance '" + a.distance + "'");
      config.distance_kind = *kind;
    }
    if (a.dim) config.embed_dim = *a.dim;
    if (a.epochs) config.epochs = *a.epochs;
    if (a.batch) config.batch_size = *a.batch;
    if (a.negatives) config.negatives_per_positive = *a.negatives;
    if (a.margin) config.margin = *a.margin;
    if (a.lr) config.learning_rate = *a.lr;
    if (a.seed) config.seed = *a.seed;
    validate(config);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }

  Dataset ds = load_dataset(a.data);
  const auto result = fit(config, ds, {a.hardest, a.freeze, a.check});
  save_model(result.params, a.out);

  const auto& rep = result.report;
  if (a.format == "text") {
    for (std::size_t e = 0; e < rep.epoch_mean_loss.size(); ++e) {
      std::cout << "epoch " << std::setw(4) << e + 1 << "  loss " << std::setprecision(8)
                << rep.epoch_mean_loss[e] << '\n';
    }
    std::cout << "final_loss " << rep.final_loss << '\n';
    if (rep.gradient_check_max_rel_error) {
      std::cout << "gradient_check_max_rel_error " << *rep.gradient_check_max_rel_error << '\n';
    }
    std::cout << "wall_seconds " << rep.wall_seconds << '\n'
              << "model " << a.out << '\n';
  } else {
    Json j{{"epoch_mean_loss", rep.epoch_mean_loss},
           {"final_loss", rep.final_loss},
           {"gradient_check_max_rel_error",
            rep.gradient_check_max_rel_error ? Json(*rep.gradient_check_max_rel_error)
                                             : Json(nullptr)},
           {"wall_seconds", rep.wall_seconds},
           {"model", a.out}};
    std::cout << j.dump() << '\n';
  }
  return 0;
}

// ---------------------------------------------------------------------------

struct RetrieveArgs {
  IndexArgs index;
  std::string base;
  std::vector<std::string> remove, add;
  std::size_t k = 10;
  std::string mode = "algebra";
};

int run_retrieve(const RetrieveArgs& a) {
  const auto index = a.index.load();
  Json body = Json::object();
  if (a.base.rfind("item:", 0) == 0) {
    body["base"] = Json{{"item", a.base.substr(5)}};
  } else if (a.base.rfind("tags:", 0) == 0) {
    body["base"] = Json{{"tags", split_list({a.base.substr(5)})}};
  } else {
    std::cerr << "error: --base must be item:<id> or tags:<a,b,...>\n";
    return kExitConfig;
  }
  body["remove"] = split_list(a.remove);
  body["add"] = split_list(a.add);
  body["k"] = a.k;
  body["mode"] = a.mode;
  print_ranked(retrieve(index, query_from_json(index, body)), a.index.format);
  return 0;
}

struct ReorderArgs {
  IndexArgs index;
  std::string tag;
  std::vector<std::string> subset;
};

int run_reorder(const ReorderArgs& a) {
  const auto index = a.index.load();
  print_ranked(reorder(index, index.require_tag(a.tag), split_list(a.subset)), a.index.format);
  return 0;
}

struct VarianceArgs {
  IndexArgs index;
  std::optional<std::size_t> top, bottom;
};

int run_variance(const VarianceArgs& a) {
  const auto index = a.index.load();
  if (a.index.format == "json") {
    std::cout << variance_json(index, a.top, a.bottom).dump() << '\n';
    return 0;
  }
  const auto rows = select_variance_rows(tag_variance_report(index), a.top, a.bottom);
  if (a.index.format == "jsonl") {
    for (const auto& [rank, r] : rows) {
      std::cout << Json{{"rank", rank}, {"tag", r.tag}, {"id", r.tag_id},
                        {"variance", r.variance}, {"count", r.count}}
                       .dump()
                << '\n';
    }
    return 0;
  }
  std::size_t width = 3;
  for (const auto& [rank, r] : rows) width = std::max(width, r.tag.size());
  std::cout << std::left << std::setw(6) << "rank" << std::setw(static_cast<int>(width) + 2)
            << "tag" << std::setw(16) << "variance" << "count\n";
  std::size_t prev = 0;
  for (const auto& [rank, r] : rows) {
    if (prev && rank != prev + 1) std::cout << "...\n";
    prev = rank;
    std::cout << std::left << std::setw(6) << rank << std::setw(static_cast<int>(width) + 2)
              << r.tag << std::setw(16) << std::setprecision(8) << r.variance << r.count
              << '\n';
  }
  return 0;
}

int run_corr(const IndexArgs& a) {
  const auto index = a.load();
  const auto m = image_variance_correlation(index);
  if (a.format == "json") {
    std::cout << to_json(m).dump() << '\n';
    return 0;
  }
  if (a.format == "jsonl") {
    for (std::size_t i = 0; i < m.columns.size(); ++i) {
      Json row = Json::array();
      for (const auto& v : m.values[i]) row.push_back(v ? Json(*v) : Json(nullptr));
      std::cout << Json{{"column", m.columns[i]}, {"values", row}}.dump() << '\n';
    }
    return 0;
  }
  std::cout << std::left << std::setw(20) << "";
  for (const auto& c : m.columns) std::cout << std::setw(20) << c;
  std::cout << '\n';
  for (std::size_t i = 0; i < m.columns.size(); ++i) {
    std::cout << std::setw(20) << m.columns[i];
    for (const auto& v : m.values[i]) {
      std::ostringstream cell;
      if (v) {
        cell << std::fixed << std::setprecision(4) << *v;
      } else {
        cell << "undefined";
      }
      std::cout << std::setw(20) << cell.str();
    }
    std::cout << '\n';
  }
  return 0;
}

int run_map(const IndexArgs& a, const std::string& projector) {
  if (projector != "pca") {
    std::cerr << "error: unsupported projector '" << projector << "'\n";
    return kExitConfig;
  }
  const auto index = a.load();
  const auto m = map_all_tags(index);
  if (a.format == "json") {
    std::cout << to_json(m).dump() << '\n';
  } else if (a.format == "jsonl") {
    for (const auto& p : m.points) {
      std::cout << Json{{"tag", p.tag}, {"id", p.tag_id}, {"x", p.x}, {"y", p.y}}.dump() << '\n';
    }
  } else {
    std::cout << "# explained " << std::setprecision(6) << m.explained << '\n';
    for (const auto& p : m.points) {
      std::cout << std::setprecision(10) << p.x << ' ' << p.y << ' ' << p.tag << '\n';
    }
  }
  return 0;
}

int run_serve(const std::string& model, const std::string& data, const std::string& bind_flag,
              int threads) {
  // Block the shutdown signals before any thread starts so that only the
  // waiter below receives them.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  const auto [host, port] = parse_bind(effective_bind(bind_flag));
  const Service service(EmbeddingIndex(load_model(model), load_dataset(data)));
  httplib::Server server;
  if (threads > 0) {
    server.new_task_queue = [threads] { return new httplib::ThreadPool(static_cast<size_t>(threads)); };
  }
  // No SO_REUSEPORT: a second instance on the same port must fail to bind.
  server.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
  });
  service.mount(server);
  if (!server.bind_to_port(host, port)) {
    std::cerr << "error: cannot bind " << host << ':' << port << '\n';
    return kExitBind;
  }
  std::thread waiter([&server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  std::cerr << "listening on " << host << ':' << port << '\n';
  server.listen_after_bind();
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  std::cerr << "shut down\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dual-Gaussian visual-semantic embedding engine"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  TrainArgs train;
  auto* train_cmd = app.add_subcommand("train", "Fit a model on a dataset");
  train_cmd->add_option("--data", train.data, "Dataset (JSON lines)")->required();
  train_cmd->add_option("--out", train.out, "Model output path")->required();
  train_cmd->add_option("--config", train.config_file, "key = value config file");
  train_cmd->add_option("--distance", train.distance, "mahalanobis|kl|jeffreys|w2");
  train_cmd->add_option("--dim", train.dim, "Embedding dimension");
  train_cmd->add_option("--margin", train.margin, "Contrastive margin");
  train_cmd->add_option("--lr", train.lr, "SGD learning rate");
  train_cmd->add_option("--epochs", train.epochs, "Training epochs");
  train_cmd->add_option("--batch", train.batch, "Mini-batch size");
  train_cmd->add_option("--negatives", train.negatives, "Negatives per positive");
  train_cmd->add_option("--seed", train.seed, "RNG seed");
  train_cmd->add_flag("--hardest-negative", train.hardest, "Use the hardest in-batch negative");
  train_cmd->add_flag("--freeze-variances", train.freeze, "Do not update variances");
  train_cmd->add_flag("--gradient-check", train.check, "Finite-difference check first");
  train_cmd->add_option("--format", train.format, "Report format")
      ->check(CLI::IsMember({"text", "json", "jsonl"}));

  RetrieveArgs retrieve;
  auto* retrieve_cmd = app.add_subcommand("retrieve", "Tag-algebra retrieval");
  retrieve.index.add_to(retrieve_cmd);
  retrieve_cmd->add_option("--base", retrieve.base, "item:<id> or tags:<a,b,...>")->required();
  retrieve_cmd->add_option("--remove", retrieve.remove, "Tags to remove");
  retrieve_cmd->add_option("--add", retrieve.add, "Tags to add");
  retrieve_cmd->add_option("-k", retrieve.k, "Result count");
  retrieve_cmd->add_option("--mode", retrieve.mode, "algebra|refuse")
      ->check(CLI::IsMember({"algebra", "refuse"}));

  ReorderArgs reorder;
  auto* reorder_cmd = app.add_subcommand("reorder", "Order items by relevance to a tag");
  reorder.index.add_to(reorder_cmd);
  reorder_cmd->add_option("--tag", reorder.tag, "Target tag")->required();
  reorder_cmd->add_option("--subset", reorder.subset, "Item ids (default: all with the tag)");

  VarianceArgs variance;
  auto* variance_cmd = app.add_subcommand("variance", "Tags by embedded variance");
  variance.index.add_to(variance_cmd);
  variance_cmd->add_option("--top", variance.top, "Largest-variance rows to show");
  variance_cmd->add_option("--bottom", variance.bottom, "Smallest-variance rows to show");

  IndexArgs corr;
  auto* corr_cmd = app.add_subcommand("corr", "Item variance vs tag statistics");
  corr.add_to(corr_cmd);

  IndexArgs map;
  std::string projector = "pca";
  auto* map_cmd = app.add_subcommand("map", "2-D map of tag means");
  map.add_to(map_cmd);
  map_cmd->add_option("--projector", projector, "Projection method (pca)");

  std::string serve_model, serve_data, bind = "127.0.0.1:8080";
  int threads = 0;
  auto* serve_cmd = app.add_subcommand("serve", "HTTP/JSON service");
  serve_cmd->add_option("--model", serve_model, "Model file")->required();
  serve_cmd->add_option("--data", serve_data, "Dataset (JSON lines)")->required();
  serve_cmd->add_option("--bind", bind, "host:port (DGVSE_BIND overrides)");
  serve_cmd->add_option("--threads", threads, "Worker threads (0 = library default)");

  SyntheticSpec synth;
  std::string synth_out;
  auto* synth_cmd = app.add_subcommand("synth", "Write a clustered synthetic dataset");
  synth_cmd->add_option("--out", synth_out, "Output path")->required();
  synth_cmd->add_option("--clusters", synth.n_clusters, "Cluster count");
  synth_cmd->add_option("--items-per-cluster", synth.items_per_cluster, "Items per cluster");
  synth_cmd->add_option("--features", synth.r, "Feature dimension");
  synth_cmd->add_option("--spread", synth.cluster_spread, "Within-cluster noise scale");
  synth_cmd->add_option("--generic", synth.n_generic_tags, "Generic tag count");
  synth_cmd->add_option("--seed", synth.seed, "RNG seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (*train_cmd) return run_train(train);
    if (*retrieve_cmd) return run_retrieve(retrieve);
    if (*reorder_cmd) return run_reorder(reorder);
    if (*variance_cmd) return run_variance(variance);
    if (*corr_cmd) return run_corr(corr);
    if (*map_cmd) return run_map(map, projector);
    if (*serve_cmd) return run_serve(serve_model, serve_data, bind, threads);
    if (*synth_cmd) {
      synth.n_specific_tags = synth.n_clusters;
      save_dataset(generate_synthetic(synth), synth_out);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what();
    if (!e.field().empty()) std::cerr << " (field " << e.field() << ")";
    std::cerr << '\n';
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitConfig;
}
