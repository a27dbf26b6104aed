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


// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "dgvse/applications.hpp"
#include "dgvse/model_io.hpp"
#include "dgvse/oracles.hpp"
#include "dgvse/service.hpp"
#include "dgvse/synthetic.hpp"
#include "dgvse/training.hpp"

namespace {

using namespace dgvse;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& why) {
    if (!ok && pass) detail << "first failure: " << why << "; ";
    pass = pass && ok;
  }
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

double rel_err(double a, double b) {
  return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300});
}

SphericalGaussian random_gaussian(std::mt19937_64& rng, std::size_t d) {
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> logvar(-2.0, 2.0);
  Vector m(d);
  for (auto& x : m) x = normal(rng);
  return SphericalGaussian(std::move(m), std::exp(logvar(rng)));
}

Eigen::VectorXd eig(const Vector& v) { return Eigen::Map<const Eigen::VectorXd>(v.data(), v.size()); }
Eigen::MatrixXd iso(double var, std::size_t d) {
  return var * Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
}

// ---------------------------------------------------------------------------

Outcome divergence_identities() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(101);
  bool kl_asymmetric = false;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 1 + i % 10;
    const auto a = random_gaussian(rng, d), b = random_gaussian(rng, d);
    o.require(std::abs(kl(a, a)) <= 1e-12 && std::abs(jeffreys(a, a)) <= 1e-12 &&
                  std::abs(mahalanobis(a, a)) <= 1e-12 && std::abs(wasserstein2_sq(a, a)) <= 1e-12,
              "self-distance");
    o.require(kl(a, b) >= 0 && jeffreys(a, b) >= 0 && mahalanobis(a, b) >= 0 &&
                  wasserstein2_sq(a, b) >= 0,
              "non-negativity");
    o.require(rel_err(mahalanobis(a, b), mahalanobis(b, a)) <= 1e-12 &&
                  rel_err(jeffreys(a, b), jeffreys(b, a)) <= 1e-12 &&
                  rel_err(wasserstein2_sq(a, b), wasserstein2_sq(b, a)) <= 1e-12,
              "symmetry");
    kl_asymmetric = kl_asymmetric || rel_err(kl(a, b), kl(b, a)) > 1e-6;
  }
  o.require(kl_asymmetric, "kl asymmetry not exhibited");
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const std::size_t d = 1 + i % 8;
    const auto a = random_gaussian(rng, d), b = random_gaussian(rng, d);
    const auto ma = eig(a.mean()), mb = eig(b.mean());
    const auto ca = iso(a.variance(), d), cb = iso(b.variance(), d);
    worst = std::max({worst, rel_err(kl(a, b), oracle::kl_full(ma, ca, mb, cb)),
                      rel_err(jeffreys(a, b), oracle::jeffreys_full(ma, ca, mb, cb)),
                      rel_err(wasserstein2_sq(a, b), oracle::w2_full(ma, ca, mb, cb)),
                      rel_err(mahalanobis(a, b), oracle::mahalanobis_full(ma, mb, 0.5 * (ca + cb)))});
  }
  o.require(worst <= 1e-10, "oracle mismatch");
  const double t = seconds_since(t0);
  o.require(t < 5.0, "runtime");
  o.detail << "1000 pairs, 200 oracle cases, worst rel " << worst << ", " << t << " s";
  return o;
}

Outcome equal_variance_identity() {
  Outcome o;
  std::mt19937_64 rng(102);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const std::size_t d = 1 + i % 10;
    const auto a = random_gaussian(rng, d);
    const SphericalGaussian b(random_gaussian(rng, d).mean(), a.variance());
    const double m = mahalanobis(a, b);
    worst = std::max(worst, rel_err(jeffreys(a, b), m * m));
  }
  o.require(worst <= 1e-9, "jeffreys != mahalanobis^2");
  o.detail << "1000 equal-variance pairs, worst rel " << worst;
  return o;
}

Outcome monte_carlo_kl() {
  Outcome o;
  const auto t0 = Clock::now();
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> var(0.5, 2.0);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int pair = 0; pair < 10; ++pair) {
    const SphericalGaussian a({normal(rng), normal(rng)}, var(rng));
    const SphericalGaussian b({normal(rng), normal(rng)}, var(rng));
    auto log_density = [](const SphericalGaussian& g, double x0, double x1) {
      const double q = (x0 - g.mean()[0]) * (x0 - g.mean()[0]) + (x1 - g.mean()[1]) * (x1 - g.mean()[1]);
      return -std::log(2.0 * M_PI * g.variance()) - 0.5 * q / g.variance();
    };
    const int n = 1000000;
    double sum = 0.0;
    for (int s = 0; s < n; ++s) {
      const double x0 = a.mean()[0] + a.stddev() * normal(rng);
      const double x1 = a.mean()[1] + a.stddev() * normal(rng);
      sum += log_density(a, x0, x1) - log_density(b, x0, x1);
    }
    worst = std::max(worst, std::abs(kl(a, b) - sum / n));
  }
  const double t = seconds_since(t0);
  o.require(worst <= 1e-2, "estimate too far");
  o.require(t < 30.0, "runtime");
  o.detail << "10 pairs x 1e6 samples, worst abs " << worst << ", " << t << " s";
  return o;
}

Outcome coordinate_geometry() {
  Outcome o;
  std::mt19937_64 rng(104);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const auto g = random_gaussian(rng, 1 + i % 7);
    const auto back = from_natural(to_natural(g));
    worst = std::max(worst, rel_err(back.variance(), g.variance()));
    for (std::size_t k = 0; k < g.dim(); ++k) {
      worst = std::max(worst, std::abs(back.mean()[k] - g.mean()[k]) / std::max(1.0, std::abs(g.mean()[k])));
    }
    const auto e = to_expectation(g);
    for (std::size_t k = 0; k < g.dim(); ++k) {
      worst = std::max(worst, std::abs(e.eta2[k] - e.eta1[k] * e.eta1[k] - g.variance()) /
                                  std::max(1.0, e.eta2[k]));
    }
  }
  o.require(worst <= 1e-12, "round trip");
  const std::vector<NaturalParams> parts{to_natural(SphericalGaussian({0.0}, 1.0)),
                                         to_natural(SphericalGaussian({4.0}, 1.0 / 3.0))};
  const auto fused = fuse(parts);
  o.require(fused == NaturalParams{{6.0}, -1.0}, "fusion hand value");
  o.require(from_natural(fused) == SphericalGaussian({3.0}, 0.5), "fusion back-transform");
  const std::vector<NaturalParams> same(5, to_natural(SphericalGaussian({0.7, -2.0}, 0.3)));
  o.require(fuse(same) == same.front(), "identical parts");
  const auto uni = to_expectation(SphericalGaussian({2.0}, 1.0));
  o.require(uni.eta1 == Vector{2.0} && uni.eta2 == Vector{5.0}, "univariate eta");
  o.detail << "1000 round trips, worst " << worst << "; fusion and eta examples exact";
  return o;
}

struct SmallProblem {
  ModelParams params;
  Dataset ds;
  Batch batch;
  Pairing pairing;
};

SmallProblem small_problem(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SmallProblem pr;
  pr.params = make_zero_params(3, 4, 5);
  std::normal_distribution<double> normal(0.0, 0.7);
  for_each_array(pr.params, [&](const char*, std::span<double> a) {
    for (double& x : a) x = normal(rng);
  });
  std::uniform_int_distribution<int> count(1, 3);
  const std::vector<std::string> names{"t0", "t1", "t2", "t3", "t4"};
  for (std::size_t i = 0; i < 4; ++i) {
    Vector f(4);
    for (double& x : f) x = normal(rng);
    std::vector<std::string> tags = names;
    std::shuffle(tags.begin(), tags.end(), rng);
    tags.resize(static_cast<std::size_t>(count(rng)));
    if (i == 0) tags = names;
    pr.ds.add_item("i" + std::to_string(i), f, tags);
  }
  std::vector<std::size_t> idx(4);
  std::iota(idx.begin(), idx.end(), 0);
  pr.batch = make_batch(pr.ds, idx);
  pr.pairing = sample_negatives(4, rng);
  return pr;
}

Outcome gradient_correctness() {
  Outcome o;
  const auto t0 = Clock::now();
  for (auto kind : {DistanceKind::Mahalanobis, DistanceKind::KL, DistanceKind::Wasserstein2Sq}) {
    double worst = 0.0;
    std::size_t checked = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto pr = small_problem(1000 + seed);
      const auto r = gradient_check(pr.params, pr.batch, pr.pairing, kind, 0.2);
      worst = std::max(worst, r.max_rel_error);
      checked += r.checked;
    }
    o.require(worst < 1e-4 && checked > 0, std::string(to_string(kind)));
    o.detail << to_string(kind) << " " << worst << " (" << checked << " elems); ";
  }
  const double t = seconds_since(t0);
  o.require(t < 60.0, "runtime");
  o.detail << t << " s";
  return o;
}

// ---------------------------------------------------------------------------
// Synthetic runs shared by the trend, correlation and retrieval criteria.

struct SyntheticRun {
  DistanceKind kind;
  std::uint64_t seed;
  Dataset ds;
  ModelParams params;
  double seconds;
};

std::vector<SyntheticRun>& synthetic_runs() {
  static std::vector<SyntheticRun> runs = [] {
    std::vector<SyntheticRun> out;
    for (auto kind : {DistanceKind::KL, DistanceKind::Wasserstein2Sq}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SyntheticSpec spec;
        spec.seed = seed;
        auto ds = generate_synthetic(spec);
        TrainConfig c;
        c.distance_kind = kind;
        c.embed_dim = 8;
        c.seed = seed;
        const auto t0 = Clock::now();
        auto params = fit(c, ds).params;
        out.push_back({kind, seed, std::move(ds), std::move(params), seconds_since(t0)});
      }
    }
    return out;
  }();
  return runs;
}

Outcome variance_trend() {
  Outcome o;
  for (auto kind : {DistanceKind::KL, DistanceKind::Wasserstein2Sq}) {
    int hits = 0;
    for (const auto& run : synthetic_runs()) {
      if (run.kind != kind) continue;
      o.require(run.seconds < 300.0, "runtime");
      const EmbeddingIndex index(run.params, run.ds);
      double min_generic = INFINITY, max_specific = -INFINITY;
      for (const auto& row : tag_variance_report(index)) {
        if (row.tag.rfind("generic_", 0) == 0) min_generic = std::min(min_generic, row.variance);
        if (row.tag.rfind("specific_", 0) == 0) max_specific = std::max(max_specific, row.variance);
      }
      hits += min_generic > max_specific;
    }
    o.require(hits >= 4, std::string(to_string(kind)) + " trend");
    o.detail << to_string(kind) << " " << hits << "/5 seeds; ";
  }
  return o;
}

Outcome variance_tag_count_correlation() {
  Outcome o;
  for (auto kind : {DistanceKind::KL, DistanceKind::Wasserstein2Sq}) {
    int hits = 0;
    std::ostringstream values;
    for (const auto& run : synthetic_runs()) {
      if (run.kind != kind) continue;
      const auto m = image_variance_correlation(EmbeddingIndex(run.params, run.ds));
      const auto r = m.at(0, 1);
      values << (r ? std::to_string(*r).substr(0, 6) : "undef") << ' ';
      hits += r && *r < 0.0;
    }
    o.require(hits >= 4, std::string(to_string(kind)) + " sign");
    o.detail << to_string(kind) << " " << hits << "/5 negative [ " << values.str() << "]; ";
  }
  return o;
}

std::vector<ScoredItem> brute_force(const EmbeddingIndex& index, const SphericalGaussian& query,
                                    const std::vector<std::size_t>& candidates, std::size_t k) {
  std::vector<std::pair<double, std::string>> all;
  for (std::size_t i : candidates) {
    const auto& item = index.dataset().items()[i];
    all.emplace_back(distance(index.kind(), encode_item(index.params(), item.features), query), item.id);
  }
  std::sort(all.begin(), all.end());
  std::vector<ScoredItem> out;
  for (std::size_t i = 0; i < std::min(k, all.size()); ++i) out.push_back({all[i].second, 0.0 - all[i].first});
  return out;
}

Outcome retrieval_oracle() {
  Outcome o;
  std::size_t queries = 0, reorders = 0;
  for (const auto& run : synthetic_runs()) {
    const EmbeddingIndex index(run.params, run.ds);
    std::mt19937_64 rng(run.seed * 31 + static_cast<int>(run.kind));
    std::vector<std::size_t> all(run.ds.size());
    std::iota(all.begin(), all.end(), 0);
    std::uniform_int_distribution<std::size_t> item(0, run.ds.size() - 1), tag(0, index.params().s - 1);
    for (int trial = 0; trial < 50; ++trial) {
      QuerySpec q;
      const auto& base = run.ds.items()[item(rng)];
      if (trial % 3 == 0) {
        q.base = base.tag_ids;
      } else {
        q.base = base.id;
      }
      const std::size_t add = tag(rng);
      if (std::find(base.tag_ids.begin(), base.tag_ids.end(), add) == base.tag_ids.end()) q.add = {add};
      if (base.tag_ids.size() > 1 && trial % 2) q.remove = {base.tag_ids.front()};
      q.k = 1 + static_cast<std::size_t>(trial) * 7;
      q.mode = trial % 4 == 3 ? QueryMode::Refuse : QueryMode::Algebra;
      const auto got = retrieve(index, q);
      o.require(got.results == brute_force(index, build_query(index, q).gaussian, all, q.k), "retrieve");
      ++queries;
    }
    for (std::size_t t = 0; t < index.params().s; ++t) {
      std::vector<std::size_t> with_tag;
      for (std::size_t i = 0; i < run.ds.size(); ++i) {
        const auto& ids = run.ds.items()[i].tag_ids;
        if (std::find(ids.begin(), ids.end(), t) != ids.end()) with_tag.push_back(i);
      }
      o.require(reorder(index, t).results ==
                    brute_force(index, encode_tag(index.params(), t), with_tag, with_tag.size()),
                "reorder");
      ++reorders;
    }
  }
  o.detail << synthetic_runs().size() << " runs, " << queries << " retrievals, " << reorders
           << " re-orderings";
  return o;
}

Outcome mahalanobis_degeneracy() {
  Outcome o;
  SyntheticSpec spec;
  const auto ds = generate_synthetic(spec);
  TrainConfig c;
  c.distance_kind = DistanceKind::Mahalanobis;
  c.embed_dim = 8;
  c.epochs = 10;
  TrainOptions opt;
  opt.freeze_variances = true;
  const EmbeddingIndex index(fit(c, ds, opt).params, ds);
  const double v0 = index.item_gaussians()[0].variance();
  for (const auto& g : index.item_gaussians()) o.require(g.variance() == v0, "variances differ");
  std::mt19937_64 rng(105);
  std::uniform_int_distribution<std::size_t> item(0, ds.size() - 1);
  const int n_queries = 25;
  for (int trial = 0; trial < n_queries; ++trial) {
    // Candidates share one variance; the query is another item so it does
    // too, and ranking must then ignore variance entirely.
    QuerySpec q;
    q.base = ds.items()[item(rng)].id;
    q.k = ds.size();
    const auto query = build_query(index, q).gaussian;
    std::vector<std::pair<double, std::string>> euclid;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      double e = 0.0;
      for (std::size_t k = 0; k < query.dim(); ++k) {
        const double diff = index.item_gaussians()[i].mean()[k] - query.mean()[k];
        e += diff * diff;
      }
      euclid.emplace_back(e, ds.items()[i].id);
    }
    std::sort(euclid.begin(), euclid.end());
    const auto r = retrieve(index, q);
    bool same = r.results.size() == euclid.size();
    for (std::size_t i = 0; same && i < euclid.size(); ++i) same = r.results[i].id == euclid[i].second;
    o.require(same, "argsort differs");
  }
  o.detail << n_queries << " full rankings, shared variance " << v0;
  return o;
}

Outcome determinism_and_persistence(const fs::path& dir) {
  Outcome o;
  SyntheticSpec spec;
  spec.seed = 7;
  const auto ds = generate_synthetic(spec);
  TrainConfig c;
  c.distance_kind = DistanceKind::Wasserstein2Sq;
  c.embed_dim = 8;
  c.seed = 7;
  const auto a = fit(c, ds), b = fit(c, ds);
  o.require(serialize_model(a.params) == serialize_model(b.params), "fit not bit-identical");
  o.require(a.report.epoch_mean_loss == b.report.epoch_mean_loss, "loss curve differs");

  const auto data_path = (dir / "persist.jsonl").string();
  save_dataset(ds, data_path);
  const auto ds2 = load_dataset(data_path);
  bool same = ds2.size() == ds.size() && ds2.vocabulary() == ds.vocabulary();
  for (std::size_t i = 0; same && i < ds.size(); ++i) {
    const auto& x = ds.items()[i];
    const auto& y = ds2.items()[i];
    same = x.id == y.id && x.tags == y.tags && x.tag_ids == y.tag_ids &&
           x.features.size() == y.features.size() &&
           std::equal(x.features.begin(), x.features.end(), y.features.begin(),
                      [](double p, double q) { return std::bit_cast<std::uint64_t>(p) == std::bit_cast<std::uint64_t>(q); });
  }
  o.require(same, "dataset round trip");

  const auto model_path = (dir / "persist.bin").string();
  save_model(a.params, model_path);
  const auto back = load_model(model_path);
  o.require(serialize_model(back) == serialize_model(a.params), "model round trip");
  bool values_equal = true;
  std::vector<double> flat_a, flat_b;
  for_each_array(a.params, [&](const char*, std::span<const double> v) { flat_a.insert(flat_a.end(), v.begin(), v.end()); });
  for_each_array(back, [&](const char*, std::span<const double> v) { flat_b.insert(flat_b.end(), v.begin(), v.end()); });
  values_equal = flat_a.size() == flat_b.size() &&
                 std::equal(flat_a.begin(), flat_a.end(), flat_b.begin(),
                            [](double p, double q) { return std::bit_cast<std::uint64_t>(p) == std::bit_cast<std::uint64_t>(q); });
  o.require(values_equal && back.vocabulary == a.params.vocabulary &&
                back.distance_kind == a.params.distance_kind && back.margin == a.params.margin,
            "model values");
  o.detail << "two fits bit-identical; dataset and model (" << flat_a.size()
           << " values) round trip exact";
  return o;
}

std::string run_capture(const std::vector<std::string>& argv, int& code) {
  int pipefd[2];
  if (::pipe(pipefd) != 0) {
    code = -1;
    return {};
  }
  const pid_t pid = ::fork();
  if (pid == 0) {
    ::dup2(pipefd[1], STDOUT_FILENO);
    ::close(pipefd[0]);
    ::close(pipefd[1]);
    if (!std::freopen("/dev/null", "w", stderr)) ::_exit(126);
    std::vector<char*> args;
    for (const auto& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    ::execv(args[0], args.data());
    ::_exit(127);
  }
  ::close(pipefd[1]);
  std::string out;
  char buf[4096];
  ssize_t n;
  while ((n = ::read(pipefd[0], buf, sizeof buf)) > 0) out.append(buf, static_cast<std::size_t>(n));
  ::close(pipefd[0]);
  int status = 0;
  ::waitpid(pid, &status, 0);
  code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : ",") + s;
  return out;
}

Outcome cli_service_parity(const fs::path& dir) {
  Outcome o;
  SyntheticSpec spec;
  spec.items_per_cluster = 20;
  spec.seed = 3;
  const auto ds = generate_synthetic(spec);
  TrainConfig c;
  c.distance_kind = DistanceKind::KL;
  c.embed_dim = 8;
  c.epochs = 20;
  const auto params = fit(c, ds).params;
  const auto data_path = (dir / "parity.jsonl").string();
  const auto model_path = (dir / "parity.bin").string();
  save_dataset(ds, data_path);
  save_model(params, model_path);

  const Service service(EmbeddingIndex(params, ds));
  httplib::Server server;
  service.mount(server);
  const int port = server.bind_to_any_port("127.0.0.1");
  std::thread listener([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);

  std::mt19937_64 rng(106);
  const auto& vocab = ds.vocabulary();
  std::uniform_int_distribution<std::size_t> item(0, ds.size() - 1), tag(0, vocab.size() - 1),
      kdist(1, 30);
  int matched = 0;
  const int n_queries = 50;
  for (int trial = 0; trial < n_queries; ++trial) {
    const auto& base = ds.items()[item(rng)];
    Json body = Json::object();
    std::vector<std::string> cli_args{DGVSE_CLI_PATH, "retrieve", "--model", model_path, "--data",
                                      data_path, "--format", "json"};
    std::vector<std::string> base_tags = base.tags;
    if (trial % 3 == 0) {
      body["base"] = Json{{"tags", base_tags}};
      cli_args.push_back("--base=tags:" + join(base_tags));
    } else {
      body["base"] = Json{{"item", base.id}};
      cli_args.push_back("--base=item:" + base.id);
    }
    std::vector<std::string> remove, add;
    if (base.tags.size() > 1 && trial % 2) remove.push_back(base.tags.back());
    const auto& candidate = vocab[tag(rng)];
    if (std::find(base.tags.begin(), base.tags.end(), candidate) == base.tags.end()) add.push_back(candidate);
    body["remove"] = remove;
    body["add"] = add;
    if (!remove.empty()) cli_args.push_back("--remove=" + join(remove));
    if (!add.empty()) cli_args.push_back("--add=" + join(add));
    const std::size_t k = kdist(rng);
    body["k"] = k;
    cli_args.push_back("-k");
    cli_args.push_back(std::to_string(k));
    const std::string mode = trial % 5 == 4 ? "refuse" : "algebra";
    body["mode"] = mode;
    cli_args.push_back("--mode=" + mode);

    int code = 0;
    const auto cli_out = run_capture(cli_args, code);
    const auto res = client.Post("/retrieve", body.dump(), "application/json");
    const bool same = code == 0 && res && res->status == 200 && cli_out == res->body + "\n";
    o.require(same, "query " + std::to_string(trial) + " " + body.dump());
    matched += same;
  }
  server.stop();
  listener.join();
  o.detail << matched << "/" << n_queries << " identical payloads";
  return o;
}

}  // namespace

int main() {
  const fs::path dir = fs::temp_directory_path() / ("dgvse_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"divergence-identities", divergence_identities},
      {"equal-variance-jeffreys-mahalanobis", equal_variance_identity},
      {"monte-carlo-kl", monte_carlo_kl},
      {"coordinate-geometry", coordinate_geometry},
      {"gradient-correctness", gradient_correctness},
      {"synthetic-variance-trend", variance_trend},
      {"variance-tag-count-correlation", variance_tag_count_correlation},
      {"mahalanobis-degeneracy", mahalanobis_degeneracy},
      {"retrieval-oracle", retrieval_oracle},
      {"determinism-persistence", [&] { return determinism_and_persistence(dir); }},
      {"cli-service-parity", [&] { return cli_service_parity(dir); }},
  };

  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail.str() << std::endl;
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
