#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "gsketch/bounds.hpp"
#include "gsketch/graph.hpp"
#include "gsketch/rng.hpp"
#include "gsketch/sketch.hpp"
#include "gsketch/sparse.hpp"

namespace gsketch {

// One config type serves every experiment; fields irrelevant to a given
// experiment id are ignored. Zero (or -1 for the planted counts) means
// "derive the default for this experiment", and the derived values are echoed
// back in the report's config.
struct ExperimentConfig {
  std::string experiment;
  std::uint64_t seed = 1;
  std::int64_t trials = 1000;
  std::uint32_t dimension = 0;
  std::int64_t k = 0;            // edges in the (first) graph
  std::int64_t n = 0;            // vertex universe for generated graphs
  std::int64_t degree_cap_l = 0; // tail-formula parameter l; generators cap at l/2
  std::int64_t order = 2;        // matrix power for the m-order experiment
  std::vector<double> epsilons = {0.25, 0.5};
  double threshold = 0.5;
  std::int64_t planted_m1 = -1;  // second-order nuisance edges out of v
  std::int64_t planted_m2 = -1;  // second-order nuisance edges out of u
  std::int64_t k2 = 0;           // edges in the second graph (inner product)
  std::int64_t shared_edges = 0; // planted overlap (inner product)
  double band = 0.3;             // relative band for the norm experiment
  std::int64_t graph_count = 0;  // N for the distance-preservation experiment
  double jl_epsilon = 0.5;
  double jl_failure = 0.01;
  std::int64_t repetitions = 20;
  std::int64_t min_full_pass = 0;
  std::vector<std::int64_t> grid; // benchmark size grid

  bool operator==(const ExperimentConfig&) const = default;
};

struct TailRow {
  double epsilon = 0.0;
  double true_tail = 0.0;
  double true_bound = 0.0;
  double false_tail = 0.0;
  double false_bound = 0.0;
  bool pass = true;

  bool operator==(const TailRow&) const = default;
};

struct BenchRow {
  std::string method;
  std::string operation;
  std::int64_t size = 0;
  double median_us = 0.0;

  bool operator==(const BenchRow&) const = default;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<TailRow> tails;
  double true_mean = 0.0;
  double true_variance = 0.0;
  double false_mean = 0.0;
  double false_variance = 0.0;
  double predicted_true_variance = 0.0;
  double predicted_false_variance = 0.0;
  double misclassification = 0.0;
  double variance_ratio = 0.0;     // m-order: empirical over predicted noise variance
  double mean_estimate = 0.0;      // inner product / norm: average estimate
  double predicted_sigma = 0.0;    // inner product: sigma from the counted pairs
  double fraction_in_band = 0.0;   // norm: share of trials inside the band
  std::int64_t full_pass_count = 0;
  std::int64_t pair_violations = 0;
  double slope = 0.0;              // benchmark: log-log query-time slope
  std::vector<BenchRow> bench;
  std::vector<double> true_scores;
  std::vector<double> false_scores;
  std::vector<std::string> warnings;
  bool verdict = false;
  double wall_ms = 0.0;

  bool operator==(const ExperimentReport&) const = default;
};

namespace detail {

inline void validate_config(const ExperimentConfig& cfg) {
  if (cfg.trials < 1) throw std::invalid_argument("trial count must be at least 1");
  for (double e : cfg.epsilons) {
    if (!(e > 0.0 && e < 2.0)) {
      throw std::invalid_argument("tail deviations must lie in (0, 2)");
    }
  }
  if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
    throw std::invalid_argument("threshold must lie in (0, 1)");
  }
}

inline std::pair<double, double> mean_variance(const std::vector<double>& xs) {
  if (xs.empty()) return {0.0, 0.0};
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= double(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  var /= double(xs.size());
  return {mean, var};
}

inline double tail_fraction(const std::vector<double>& deviations, double eps) {
  std::int64_t over = 0;
  for (double dev : deviations) {
    if (std::abs(dev) > eps) ++over;
  }
  return double(over) / double(deviations.size());
}

// One-sided acceptance: the theory gives upper bounds, so only an excess over
// bound + 3 binomial standard errors + 0.01 fails.
inline bool tail_pass(double empirical, double bound, std::int64_t trials) {
  const double b = std::min(bound, 1.0);
  const double slack = 3.0 * std::sqrt(b * (1.0 - b) / double(trials)) + 0.01;
  return empirical <= b + slack;
}

inline bool all_rows_pass(const std::vector<TailRow>& rows) {
  return std::all_of(rows.begin(), rows.end(), [](const TailRow& r) { return r.pass; });
}

// Number of edges sharing at least one endpoint with (s, t), not counting
// (s, t) or (t, s) themselves more than once each.
inline std::int64_t adjacent_edge_count(const ExactGraph& g,
                                        const std::vector<std::int64_t>& total_degree,
                                        const std::string& s, const std::string& t) {
  std::int64_t sum = 0;
  if (auto i = g.find_vertex(s)) sum += total_degree[*i];
  if (auto i = g.find_vertex(t)) sum += total_degree[*i];
  if (g.has_edge(s, t)) --sum;
  if (g.has_edge(t, s)) --sum;
  return sum;
}

inline std::vector<std::int64_t> total_degrees(const ExactGraph& g) {
  std::vector<std::int64_t> deg(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    ++deg[g.vertex_index(e.source)];
    ++deg[g.vertex_index(e.target)];
  }
  return deg;
}

inline double wall_ms_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

}  // namespace detail

// Balanced true/false single-hop edge queries on degree-capped random graphs,
// tabulated against the first-order tail bounds.
inline ExperimentReport run_first_order_experiment(ExperimentConfig cfg) {
  detail::validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.k < 1) throw std::invalid_argument("first-order experiment needs k >= 1");
  if (cfg.degree_cap_l == 0) {
    cfg.degree_cap_l = 2 * std::int64_t(std::ceil(std::sqrt(double(cfg.k))));
  }
  const std::int64_t cap = std::max<std::int64_t>(1, cfg.degree_cap_l / 2);
  if (cfg.dimension == 0) cfg.dimension = recommend_dimension(cfg.k, 1, 10.0);
  if (cfg.n == 0) cfg.n = std::max<std::int64_t>(100, 4 * cfg.k / cap);

  ExperimentReport rep;
  rep.config = cfg;
  std::int64_t wrong = 0;
  double predicted_true = 0.0, predicted_false = 0.0;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t base = derive_seed(cfg.seed, std::uint64_t(trial));
    const ExactGraph g = degree_capped_graph(cfg.n, cfg.k, cap, derive_seed(base, 1));
    const Sketch s = build_sketch(g, CodebookSpec{derive_seed(base, 2), cfg.dimension});
    const auto degrees = detail::total_degrees(g);
    SplitMix64 rng(derive_seed(base, 3));

    const double dd = double(cfg.dimension);
    const Edge& true_edge = g.edges()[rng.bounded(std::uint64_t(cfg.k))];
    const double t_score = query_edge(s, true_edge, cfg.threshold).score;
    rep.true_scores.push_back(t_score - 1.0);
    if (!(t_score > cfg.threshold)) ++wrong;
    const double m_true = double(
        detail::adjacent_edge_count(g, degrees, true_edge.source, true_edge.target) - 1);
    predicted_true += m_true / dd + std::max(0.0, double(cfg.k) - 1.0 - m_true) / (dd * dd);

    for (;;) {
      const std::string u = std::to_string(rng.bounded(std::uint64_t(cfg.n)));
      const std::string v = std::to_string(rng.bounded(std::uint64_t(cfg.n)));
      if (u == v || g.has_edge(u, v)) continue;
      const double f_score = query_edge(s, Edge(u, v), cfg.threshold).score;
      rep.false_scores.push_back(f_score);
      if (f_score > cfg.threshold) ++wrong;
      const double m_false = double(detail::adjacent_edge_count(g, degrees, u, v));
      predicted_false +=
          m_false / dd + std::max(0.0, double(cfg.k) - m_false) / (dd * dd);
      break;
    }
  }
  rep.misclassification = double(wrong) / double(2 * cfg.trials);
  std::tie(rep.true_mean, rep.true_variance) = detail::mean_variance(rep.true_scores);
  rep.true_mean += 1.0;
  std::tie(rep.false_mean, rep.false_variance) = detail::mean_variance(rep.false_scores);
  rep.predicted_true_variance = predicted_true / double(cfg.trials);
  rep.predicted_false_variance = predicted_false / double(cfg.trials);

  bool clamped = false;
  for (double eps : cfg.epsilons) {
    TailRow row;
    row.epsilon = eps;
    row.true_tail = detail::tail_fraction(rep.true_scores, eps);
    row.false_tail = detail::tail_fraction(rep.false_scores, eps);
    row.true_bound = bernstein_bound_first_order(eps, double(cfg.k),
                                                 double(cfg.degree_cap_l),
                                                 double(cfg.dimension), true, &clamped);
    row.false_bound = bernstein_bound_first_order(eps, double(cfg.k),
                                                  double(cfg.degree_cap_l),
                                                  double(cfg.dimension), false, &clamped);
    row.pass = detail::tail_pass(row.true_tail, row.true_bound, cfg.trials) &&
               detail::tail_pass(row.false_tail, row.false_bound, cfg.trials);
    rep.tails.push_back(row);
  }
  if (clamped) rep.warnings.push_back("variance terms clamped at zero for this k, l");
  rep.verdict = detail::all_rows_pass(rep.tails);
  rep.wall_ms = detail::wall_ms_since(start);
  return rep;
}

namespace detail {

// Proof-shaped second-order instance: chain u->v->w, m1 extra edges out of v,
// m2 out of u, and the rest generic over a fresh degree-capped pool.
inline ExactGraph second_order_graph(std::int64_t k, std::int64_t n, std::int64_t cap,
                                     std::int64_t m1, std::int64_t m2,
                                     std::uint64_t seed) {
  if (2 + m1 > cap || 1 + m2 > cap) {
    throw InfeasibleConfigError("planted nuisance exceeds the degree cap");
  }
  const std::int64_t generic = k - 2 - m1 - m2;
  if (generic < 0) throw InfeasibleConfigError("k too small for the planted edges");
  ExactGraph g;
  g.add_edge("u", "v");
  g.add_edge("v", "w");
  for (std::int64_t i = 0; i < m1; ++i) g.add_edge("v", "a" + std::to_string(i));
  for (std::int64_t j = 0; j < m2; ++j) g.add_edge("u", "b" + std::to_string(j));
  if (generic > 0) {
    const ExactGraph pool = degree_capped_graph(n, generic, cap, seed);
    for (const Edge& e : pool.edges()) g.add_edge("g" + e.source, "g" + e.target);
  }
  return g;
}

}  // namespace detail

// Queries against the second matrix power of the planted-chain construction.
inline ExperimentReport run_second_order_experiment(ExperimentConfig cfg) {
  detail::validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.k < 2) throw std::invalid_argument("second-order experiment needs k >= 2");
  if (cfg.degree_cap_l == 0) {
    cfg.degree_cap_l = 2 * std::int64_t(std::ceil(std::cbrt(double(cfg.k)) - 1e-9));
  }
  const std::int64_t cap = std::max<std::int64_t>(1, cfg.degree_cap_l / 2);
  if (cfg.dimension == 0) {
    cfg.dimension =
        std::uint32_t(4.0 * std::ceil(std::pow(double(cfg.k), 2.0 / 3.0) - 1e-9));
  }
  if (cfg.planted_m1 < 0) cfg.planted_m1 = std::min<std::int64_t>(2, std::max<std::int64_t>(0, cap - 2));
  if (cfg.planted_m2 < 0) cfg.planted_m2 = std::min<std::int64_t>(2, std::max<std::int64_t>(0, cap - 1));
  const std::int64_t generic = cfg.k - 2 - cfg.planted_m1 - cfg.planted_m2;
  if (cfg.n == 0) cfg.n = std::max<std::int64_t>(100, 4 * std::max<std::int64_t>(generic, 1) / cap);

  ExperimentReport rep;
  rep.config = cfg;
  const double d = double(cfg.dimension);
  const double m = double(cfg.planted_m1 + cfg.planted_m2);
  const double m2 = double(cfg.planted_m2);
  const double kd = double(cfg.k);
  rep.predicted_true_variance =
      (m + 1.0) / d + std::max(0.0, kd * m2 - m2 - m - 3.0) / (d * d) +
      std::max(0.0, kd * kd - kd * (m2 + 2.0) + m2 + 1.0) / (d * d * d);
  rep.predicted_false_variance = kd * kd / (d * d * d);

  std::int64_t wrong = 0;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t base = derive_seed(cfg.seed, std::uint64_t(trial));
    const ExactGraph g = detail::second_order_graph(cfg.k, cfg.n, cap, cfg.planted_m1,
                                                    cfg.planted_m2, derive_seed(base, 1));
    const Sketch s = build_sketch(g, CodebookSpec{derive_seed(base, 2), cfg.dimension});
    const Sketch squared = power(s, 2);

    const double t_score = query_edge(squared, Edge("u", "w"), cfg.threshold).score;
    rep.true_scores.push_back(t_score - 1.0);
    if (!(t_score > cfg.threshold)) ++wrong;

    const double f_score = query_edge(squared, Edge("zs", "zt"), cfg.threshold).score;
    rep.false_scores.push_back(f_score);
    if (f_score > cfg.threshold) ++wrong;
  }
  rep.misclassification = double(wrong) / double(2 * cfg.trials);
  std::tie(rep.true_mean, rep.true_variance) = detail::mean_variance(rep.true_scores);
  rep.true_mean += 1.0;
  std::tie(rep.false_mean, rep.false_variance) = detail::mean_variance(rep.false_scores);

  bool clamped = false;
  for (double eps : cfg.epsilons) {
    TailRow row;
    row.epsilon = eps;
    row.true_tail = detail::tail_fraction(rep.true_scores, eps);
    row.false_tail = detail::tail_fraction(rep.false_scores, eps);
    row.true_bound = bernstein_bound_second_order(eps, kd, double(cfg.degree_cap_l), d,
                                                  true, &clamped);
    row.false_bound = bernstein_bound_second_order(eps, kd, double(cfg.degree_cap_l), d,
                                                   false, &clamped);
    row.pass = detail::tail_pass(row.true_tail, row.true_bound, cfg.trials) &&
               detail::tail_pass(row.false_tail, row.false_bound, cfg.trials);
    rep.tails.push_back(row);
  }
  if (clamped) rep.warnings.push_back("variance terms clamped at zero for this k, l");
  rep.verdict = detail::all_rows_pass(rep.tails);
  rep.wall_ms = detail::wall_ms_since(start);
  return rep;
}

// Path queries on the m-th matrix power of a chain plus generic nuisance
// edges; checks the k^m / d^(m+1) noise-variance heuristic within factor 4.
inline ExperimentReport run_m_order_experiment(ExperimentConfig cfg) {
  detail::validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.order < 3) {
    throw std::invalid_argument("m-order experiment wants order >= 3; lower orders have "
                                "their own experiments");
  }
  if (cfg.k < cfg.order) throw std::invalid_argument("need at least m edges for the chain");
  if (cfg.degree_cap_l == 0) {
    cfg.degree_cap_l = 2 * std::int64_t(std::ceil(
                               std::pow(double(cfg.k), 1.0 / double(cfg.order + 1)) - 1e-9));
  }
  const std::int64_t cap = std::max<std::int64_t>(2, cfg.degree_cap_l / 2);
  if (cfg.dimension == 0) {
    cfg.dimension = std::uint32_t(
        3.0 * std::ceil(std::pow(double(cfg.k), double(cfg.order) / double(cfg.order + 1)) -
                        1e-9));
  }
  const std::int64_t generic = cfg.k - cfg.order;
  if (cfg.n == 0) cfg.n = std::max<std::int64_t>(100, 4 * std::max<std::int64_t>(generic, 1) / cap);

  ExperimentReport rep;
  rep.config = cfg;
  const double d = double(cfg.dimension);
  const double predicted = std::pow(double(cfg.k), double(cfg.order)) /
                           std::pow(d, double(cfg.order + 1));
  rep.predicted_true_variance = predicted;
  rep.predicted_false_variance = predicted;

  const std::string chain_end = "c" + std::to_string(cfg.order);
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t base = derive_seed(cfg.seed, std::uint64_t(trial));
    ExactGraph g;
    for (std::int64_t i = 0; i < cfg.order; ++i) {
      g.add_edge("c" + std::to_string(i), "c" + std::to_string(i + 1));
    }
    if (generic > 0) {
      const ExactGraph pool = degree_capped_graph(cfg.n, generic, cap, derive_seed(base, 1));
      for (const Edge& e : pool.edges()) g.add_edge("g" + e.source, "g" + e.target);
    }
    const Sketch s = build_sketch(g, CodebookSpec{derive_seed(base, 2), cfg.dimension});
    const Sketch walked = power(s, cfg.order);
    rep.true_scores.push_back(query_edge(walked, Edge("c0", chain_end), cfg.threshold).score -
                              1.0);
    rep.false_scores.push_back(query_edge(walked, Edge("zs", "zt"), cfg.threshold).score);
  }
  std::tie(rep.true_mean, rep.true_variance) = detail::mean_variance(rep.true_scores);
  rep.true_mean += 1.0;
  std::tie(rep.false_mean, rep.false_variance) = detail::mean_variance(rep.false_scores);
  rep.variance_ratio = rep.false_variance / predicted;

  for (double eps : cfg.epsilons) {
    TailRow row;
    row.epsilon = eps;
    row.true_tail = detail::tail_fraction(rep.true_scores, eps);
    row.false_tail = detail::tail_fraction(rep.false_scores, eps);
    row.true_bound = detail::bernstein_tail(eps, predicted);
    row.false_bound = detail::bernstein_tail(eps, predicted);
    row.pass = detail::tail_pass(row.true_tail, row.true_bound, cfg.trials) &&
               detail::tail_pass(row.false_tail, row.false_bound, cfg.trials);
    rep.tails.push_back(row);
  }
  rep.verdict = detail::all_rows_pass(rep.tails) && rep.variance_ratio >= 0.25 &&
                rep.variance_ratio <= 4.0;
  rep.wall_ms = detail::wall_ms_since(start);
  return rep;
}

namespace detail {

// Overlap instance with a known shared-edge count; about half of H's own
// edges hang off one endpoint of a G edge so the one-shared-vertex pair count
// is exercised, and that count is then taken from the exact graphs.
inline std::pair<ExactGraph, ExactGraph> overlap_graphs(std::int64_t n1, std::int64_t n2,
                                                        std::int64_t shared) {
  if (shared > n1 || shared > n2) throw InfeasibleConfigError("overlap exceeds a graph");
  ExactGraph g, h;
  for (std::int64_t i = 0; i < shared; ++i) {
    const std::string tag = std::to_string(i);
    g.add_edge("s" + tag + "a", "s" + tag + "b");
    h.add_edge("s" + tag + "a", "s" + tag + "b");
  }
  const std::int64_t g_own = n1 - shared;
  const std::int64_t h_own = n2 - shared;
  for (std::int64_t i = 0; i < g_own; ++i) {
    const std::string tag = std::to_string(i);
    g.add_edge("g" + tag + "a", "g" + tag + "b");
  }
  const std::int64_t hanging = std::min(h_own / 2, g_own);
  for (std::int64_t i = 0; i < h_own; ++i) {
    const std::string tag = std::to_string(i);
    if (i < hanging) {
      h.add_edge("g" + tag + "a", "h" + tag + "b");
    } else {
      h.add_edge("h" + tag + "a", "h" + tag + "b");
    }
  }
  return {std::move(g), std::move(h)};
}

}  // namespace detail

// Sketch inner products against the exact overlap count, with the tail bound
// assembled from the exactly counted pair statistics.
inline ExperimentReport run_inner_product_experiment(ExperimentConfig cfg) {
  detail::validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.k < 1) throw std::invalid_argument("inner-product experiment needs k >= 1");
  if (cfg.k2 == 0) cfg.k2 = cfg.k;
  if (cfg.shared_edges < 0 || cfg.shared_edges > std::min(cfg.k, cfg.k2)) {
    throw std::invalid_argument("shared edge count out of range");
  }
  if (cfg.dimension == 0) cfg.dimension = 1024;

  const auto [g, h] = detail::overlap_graphs(cfg.k, cfg.k2, cfg.shared_edges);
  const std::int64_t shared = std::int64_t(edge_intersection_count(g, h));
  if (shared != cfg.shared_edges) {
    throw InfeasibleConfigError("constructed overlap disagrees with the request");
  }
  const double q = double(count_pairs_sharing_one_vertex(g, h));
  const double pairs = double(cfg.k) * double(cfg.k2);
  const double d = double(cfg.dimension);
  const double sigma_sq = q / d + (pairs - double(shared) - q) / (d * d);

  ExperimentReport rep;
  rep.config = cfg;
  rep.predicted_sigma = std::sqrt(sigma_sq);
  rep.predicted_true_variance = sigma_sq;
  rep.predicted_false_variance = sigma_sq;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t base = derive_seed(cfg.seed, std::uint64_t(trial));
    const CodebookSpec spec{derive_seed(base, 1), cfg.dimension};
    const double est = inner_product(build_sketch(g, spec), build_sketch(h, spec));
    rep.true_scores.push_back(est - double(shared));
  }
  auto [dev_mean, dev_var] = detail::mean_variance(rep.true_scores);
  rep.mean_estimate = dev_mean + double(shared);
  rep.true_mean = rep.mean_estimate;
  rep.true_variance = dev_var;

  bool clamped = false;
  for (double eps : cfg.epsilons) {
    TailRow row;
    row.epsilon = eps;
    row.true_tail = detail::tail_fraction(rep.true_scores, eps);
    row.true_bound = inner_product_bound(eps, double(cfg.k), double(cfg.k2),
                                         double(shared), q, d, &clamped);
    row.false_tail = 0.0;
    row.false_bound = 1.0;
    row.pass = detail::tail_pass(row.true_tail, row.true_bound, cfg.trials);
    rep.tails.push_back(row);
  }
  if (clamped) rep.warnings.push_back("variance terms clamped at zero for this overlap");
  rep.verdict = detail::all_rows_pass(rep.tails);
  rep.wall_ms = detail::wall_ms_since(start);
  return rep;
}

// Squared-norm concentration around the edge count, with relative deviations
// against the 2 exp(-d eps^2) tail.
inline ExperimentReport run_norm_experiment(ExperimentConfig cfg) {
  detail::validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.k < 1) throw std::invalid_argument("norm experiment needs k >= 1");
  if (cfg.dimension == 0) cfg.dimension = 512;
  if (cfg.n == 0) cfg.n = std::max<std::int64_t>(100, cfg.k);
  if (!(cfg.band > 0.0)) throw std::invalid_argument("band must be positive");

  ExperimentReport rep;
  rep.config = cfg;
  std::int64_t in_band = 0;
  for (std::int64_t trial = 0; trial < cfg.trials; ++trial) {
    const std::uint64_t base = derive_seed(cfg.seed, std::uint64_t(trial));
    const ExactGraph g = erdos_renyi_graph(cfg.n, cfg.k, derive_seed(base, 1));
    const Sketch s = build_sketch(g, CodebookSpec{derive_seed(base, 2), cfg.dimension});
    const double norm = frobenius_norm_sq(s);
    rep.true_scores.push_back((norm - double(cfg.k)) / double(cfg.k));
    if (std::abs(norm - double(cfg.k)) <= cfg.band * double(cfg.k)) ++in_band;
  }
  rep.fraction_in_band = double(in_band) / double(cfg.trials);
  auto [dev_mean, dev_var] = detail::mean_variance(rep.true_scores);
  rep.mean_estimate = (dev_mean + 1.0) * double(cfg.k);
  rep.true_mean = rep.mean_estimate;
  rep.true_variance = dev_var;

  for (double eps : cfg.epsilons) {
    TailRow row;
    row.epsilon = eps;
    row.true_tail = detail::tail_fraction(rep.true_scores, eps);
    row.true_bound = self_norm_bound(eps, double(cfg.dimension));
    row.false_tail = 0.0;
    row.false_bound = 1.0;
    row.pass = detail::tail_pass(row.true_tail, row.true_bound, cfg.trials);
    rep.tails.push_back(row);
  }
  rep.verdict = detail::all_rows_pass(rep.tails);
  rep.wall_ms = detail::wall_ms_since(start);
  return rep;
}

// Pairwise distance preservation across a family of sketched graphs, judged
// by the two-sided distortion inequality at the union-bound dimension.
inline ExperimentReport run_jl_experiment(ExperimentConfig cfg) {
  detail::validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.graph_count < 2) throw std::invalid_argument("need at least two graphs");
  if (cfg.k < 1) throw std::invalid_argument("graphs need at least one edge");
  if (cfg.repetitions < 1) throw std::invalid_argument("need at least one repetition");
  if (cfg.n == 0) cfg.n = 200;
  if (cfg.dimension == 0) {
    cfg.dimension = jl_dimension(cfg.jl_failure, cfg.graph_count, cfg.jl_epsilon);
  }
  if (cfg.min_full_pass == 0) cfg.min_full_pass = (9 * cfg.repetitions + 9) / 10;

  ExperimentReport rep;
  rep.config = cfg;
  const double eps = cfg.jl_epsilon;
  for (std::int64_t r = 0; r < cfg.repetitions; ++r) {
    const std::uint64_t base = derive_seed(cfg.seed, std::uint64_t(r));
    std::vector<ExactGraph> graphs;
    std::vector<Sketch> sketches;
    const CodebookSpec spec{derive_seed(base, 1), cfg.dimension};
    for (std::int64_t i = 0; i < cfg.graph_count; ++i) {
      graphs.push_back(erdos_renyi_graph(cfg.n, cfg.k, derive_seed(base, 10 + std::uint64_t(i))));
      sketches.push_back(build_sketch(graphs.back(), spec));
    }
    std::int64_t violations = 0;
    for (std::size_t i = 0; i < graphs.size(); ++i) {
      for (std::size_t j = i + 1; j < graphs.size(); ++j) {
        const double exact = double(symmetric_difference_count(graphs[i], graphs[j]));
        const double sketched = frobenius_norm_sq(difference(sketches[i], sketches[j]));
        if (sketched < (1.0 - eps) * exact || sketched > (1.0 + eps) * exact) ++violations;
      }
    }
    rep.pair_violations += violations;
    if (violations == 0) ++rep.full_pass_count;
  }
  rep.verdict = rep.full_pass_count >= cfg.min_full_pass;
  rep.wall_ms = detail::wall_ms_since(start);
  return rep;
}

namespace detail {

// Median wall time of one call, sampled in batches sized so each sample is
// long enough for the clock to resolve.
template <class F>
double median_call_us(F&& op, std::int64_t reps) {
  using clock = std::chrono::steady_clock;
  auto once = [&]() {
    const auto t0 = clock::now();
    op();
    return std::chrono::duration<double, std::micro>(clock::now() - t0).count();
  };
  const double probe = std::max(once(), 1e-3);
  const std::int64_t batch =
      std::clamp<std::int64_t>(std::int64_t(50.0 / probe), 1, 20000);
  std::vector<double> samples;
  for (std::int64_t r = 0; r < reps; ++r) {
    const auto t0 = clock::now();
    for (std::int64_t b = 0; b < batch; ++b) op();
    samples.push_back(
        std::chrono::duration<double, std::micro>(clock::now() - t0).count() /
        double(batch));
  }
  std::sort(samples.begin(), samples.end());
  return samples[samples.size() / 2];
}

}  // namespace detail

// Informational timing sweep: edge query and composition medians for the
// sketch across a dimension grid and for the exact formats across a vertex
// grid, plus the log-log slope of sketch query time.
inline ExperimentReport run_benchmarks(ExperimentConfig cfg) {
  detail::validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();
  if (cfg.grid.empty()) cfg.grid = {128, 256, 512, 1024};
  const std::int64_t reps = std::min<std::int64_t>(std::max<std::int64_t>(cfg.trials, 3), 9);

  ExperimentReport rep;
  rep.config = cfg;
  std::vector<double> log_d, log_t;
  for (std::int64_t d : cfg.grid) {
    const ExactGraph g = erdos_renyi_graph(50, 100, derive_seed(cfg.seed, 1));
    const Sketch s = build_sketch(g, CodebookSpec{derive_seed(cfg.seed, 2), std::uint32_t(d)});
    volatile double sink = 0.0;
    const double query_us = detail::median_call_us(
        [&] { sink = sink + query_edge(s, Edge("3", "7")).score; }, reps);
    rep.bench.push_back({"sketch", "query", d, query_us});
    log_d.push_back(std::log(double(d)));
    log_t.push_back(std::log(query_us));

    const double compose_us =
        detail::median_call_us([&] { sink = sink + compose(s, s).matrix.data[0]; },
                               std::min<std::int64_t>(reps, 5));
    rep.bench.push_back({"sketch", "compose", d, compose_us});
  }
  const std::size_t points = log_d.size();
  if (points >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < points; ++i) {
      sx += log_d[i];
      sy += log_t[i];
      sxx += log_d[i] * log_d[i];
      sxy += log_d[i] * log_t[i];
    }
    rep.slope = (double(points) * sxy - sx * sy) / (double(points) * sxx - sx * sx);
    if (rep.slope < 1.6 || rep.slope > 2.4) {
      rep.warnings.push_back("sketch query slope outside [1.6, 2.4]");
    }
  }

  std::vector<double> dok_medians;
  for (std::int64_t n : cfg.grid) {
    const ExactGraph g = erdos_renyi_graph(n, 5 * n, derive_seed(cfg.seed, 3));
    const auto cl = adjacency_coordinate_list(g);
    const auto dok = to_dictionary(cl);
    const auto csr = to_compressed(cl);
    SplitMix64 rng(derive_seed(cfg.seed, 4));
    const std::size_t qi = rng.bounded(std::uint64_t(cl.rows));
    const std::size_t qj = rng.bounded(std::uint64_t(cl.cols));
    volatile int isink = 0;
    rep.bench.push_back({"coordinate_list", "query", n,
                         detail::median_call_us([&] { isink = isink + exact_query(cl, qi, qj); }, reps)});
    const double dok_us =
        detail::median_call_us([&] { isink = isink + exact_query(dok, qi, qj); }, reps);
    rep.bench.push_back({"dictionary_of_keys", "query", n, dok_us});
    dok_medians.push_back(dok_us);
    rep.bench.push_back({"compressed_sparse_row", "query", n,
                         detail::median_call_us([&] { isink = isink + exact_query(csr, qi, qj); }, reps)});
    volatile std::size_t zsink = 0;
    rep.bench.push_back({"compressed_sparse_row", "compose", n,
                         detail::median_call_us(
                             [&] { zsink = zsink + exact_compose(csr, csr).entries.size(); },
                             std::min<std::int64_t>(reps, 5))});
  }
  if (!dok_medians.empty()) {
    const auto [lo, hi] = std::minmax_element(dok_medians.begin(), dok_medians.end());
    if (*hi > 10.0 * std::max(*lo, 1e-6)) {
      rep.warnings.push_back("dictionary query time not flat across the grid");
    }
  }
  rep.verdict = true;
  rep.wall_ms = detail::wall_ms_since(start);
  return rep;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg) {
  if (cfg.experiment == "first_order") return run_first_order_experiment(cfg);
  if (cfg.experiment == "second_order") return run_second_order_experiment(cfg);
  if (cfg.experiment == "m_order") return run_m_order_experiment(cfg);
  if (cfg.experiment == "inner_product") return run_inner_product_experiment(cfg);
  if (cfg.experiment == "norm") return run_norm_experiment(cfg);
  if (cfg.experiment == "jl") return run_jl_experiment(cfg);
  if (cfg.experiment == "bench") return run_benchmarks(cfg);
  throw std::invalid_argument("unknown experiment id: " + cfg.experiment);
}

}  // namespace gsketch
