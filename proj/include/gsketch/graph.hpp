#pragma once

// Exact directed graphs over string vertex labels. This is the ground truth
// side of the library: everything here is deterministic, integer-exact, and
// independent of the sketching machinery it validates.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gsketch/error.hpp"
#include "gsketch/rng.hpp"

namespace gsketch {

struct Edge {
  std::string source;
  std::string target;

  Edge(std::string s, std::string t) : source(std::move(s)), target(std::move(t)) {
    if (source.empty() || target.empty()) {
      throw std::invalid_argument("edge labels must be non-empty");
    }
  }

  bool operator==(const Edge&) const = default;
};

namespace detail {

// Unambiguous composite key for a (source, target) pair; the length prefix
// keeps "ab|c" and "a|bc" distinct whatever bytes the labels contain.
inline std::string edge_key(const std::string& s, const std::string& t) {
  return std::to_string(s.size()) + ':' + s + t;
}

}  // namespace detail

// Ordered edge collection plus a vertex index assigned by first appearance
// in the edge stream (source before target). Duplicate (source, target)
// pairs are dropped unless the multigraph flag is set.
class ExactGraph {
 public:
  ExactGraph() = default;
  explicit ExactGraph(bool multigraph) : multigraph_(multigraph) {}

  // Returns true when the edge was stored, false when it was a suppressed
  // duplicate.
  bool add_edge(const std::string& source, const std::string& target) {
    Edge e(source, target);
    const std::string key = detail::edge_key(source, target);
    const bool fresh = edge_keys_.insert(key).second;
    if (!fresh && !multigraph_) return false;
    intern(source);
    intern(target);
    edges_.push_back(std::move(e));
    return true;
  }

  // Interns a vertex with no incident edge; returns false if already known.
  bool add_vertex(const std::string& label) {
    if (label.empty()) throw std::invalid_argument("vertex label must be non-empty");
    if (index_.count(label) != 0) return false;
    intern(label);
    return true;
  }

  std::size_t edge_count() const { return edges_.size(); }
  std::size_t vertex_count() const { return labels_.size(); }
  bool multigraph() const { return multigraph_; }

  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::string>& vertex_labels() const { return labels_; }

  bool has_vertex(const std::string& label) const { return index_.count(label) != 0; }

  std::optional<std::size_t> find_vertex(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t vertex_index(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) throw std::out_of_range("unknown vertex label: " + label);
    return it->second;
  }

  bool has_edge(const std::string& source, const std::string& target) const {
    return edge_keys_.count(detail::edge_key(source, target)) != 0;
  }

 private:
  void intern(const std::string& label) {
    auto [it, fresh] = index_.try_emplace(label, labels_.size());
    if (fresh) labels_.push_back(label);
  }

  bool multigraph_ = false;
  std::vector<Edge> edges_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::unordered_set<std::string> edge_keys_;
};

struct DegreeStats {
  std::int64_t max_out = 0;
  std::int64_t max_in = 0;
  std::int64_t max_total = 0;

  bool operator==(const DegreeStats&) const = default;
};

inline DegreeStats degree_stats(const ExactGraph& g) {
  std::vector<std::int64_t> out(g.vertex_count(), 0), in(g.vertex_count(), 0);
  for (const Edge& e : g.edges()) {
    ++out[g.vertex_index(e.source)];
    ++in[g.vertex_index(e.target)];
  }
  DegreeStats st;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    st.max_out = std::max(st.max_out, out[v]);
    st.max_in = std::max(st.max_in, in[v]);
    st.max_total = std::max(st.max_total, out[v] + in[v]);
  }
  return st;
}

// Shared distinct (source, target) pairs under union labeling.
inline std::size_t edge_intersection_count(const ExactGraph& g, const ExactGraph& h) {
  std::unordered_set<std::string> keys;
  for (const Edge& e : g.edges()) keys.insert(detail::edge_key(e.source, e.target));
  std::size_t shared = 0;
  std::unordered_set<std::string> counted;
  for (const Edge& e : h.edges()) {
    const std::string key = detail::edge_key(e.source, e.target);
    if (keys.count(key) && counted.insert(key).second) ++shared;
  }
  return shared;
}

inline std::size_t symmetric_difference_count(const ExactGraph& g, const ExactGraph& h) {
  return g.edge_count() + h.edge_count() - 2 * edge_intersection_count(g, h);
}

// Number of (edge of g, edge of h) pairs whose endpoint label sets share
// exactly one label. This is the q of the inner-product variance term.
inline std::size_t count_pairs_sharing_one_vertex(const ExactGraph& g, const ExactGraph& h) {
  std::size_t q = 0;
  for (const Edge& a : g.edges()) {
    for (const Edge& b : h.edges()) {
      int shared = 0;
      if (a.source == b.source || a.source == b.target) ++shared;
      if (a.target != a.source && (a.target == b.source || a.target == b.target)) ++shared;
      if (shared == 1) ++q;
    }
  }
  return q;
}

// --- generators -----------------------------------------------------------
// All generators label vertices with decimal strings of dense integer ids
// and are deterministic per seed.

inline ExactGraph chain_graph(std::int64_t edges) {
  if (edges < 0) throw InfeasibleConfigError("chain length must be nonnegative");
  ExactGraph g;
  for (std::int64_t i = 0; i < edges; ++i) {
    g.add_edge(std::to_string(i), std::to_string(i + 1));
  }
  return g;
}

inline ExactGraph star_graph(std::int64_t leaves) {
  if (leaves < 0) throw InfeasibleConfigError("leaf count must be nonnegative");
  ExactGraph g;
  for (std::int64_t i = 1; i <= leaves; ++i) {
    g.add_edge("0", std::to_string(i));
  }
  return g;
}

// k distinct directed edges over n vertices, no self loops, uniform without
// replacement by rejection.
inline ExactGraph erdos_renyi_graph(std::int64_t n, std::int64_t k, std::uint64_t seed) {
  if (n < 1) throw InfeasibleConfigError("vertex count must be at least 1");
  if (k < 0 || k > n * (n - 1)) {
    throw InfeasibleConfigError("edge count " + std::to_string(k) + " out of range for " +
                                std::to_string(n) + " vertices");
  }
  ExactGraph g;
  for (std::int64_t v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
  SplitMix64 rng(seed);
  while (std::int64_t(g.edge_count()) < k) {
    const auto s = rng.bounded(std::uint64_t(n));
    const auto t = rng.bounded(std::uint64_t(n));
    if (s == t) continue;
    g.add_edge(std::to_string(s), std::to_string(t));
  }
  return g;
}

// Like erdos_renyi_graph but rejects any edge that would push the total
// degree (in + out) of either endpoint above cap.
inline ExactGraph degree_capped_graph(std::int64_t n, std::int64_t k, std::int64_t cap,
                                      std::uint64_t seed) {
  if (n < 1) throw InfeasibleConfigError("vertex count must be at least 1");
  if (cap < 1) throw InfeasibleConfigError("degree cap must be at least 1");
  if (k < 0 || k > n * (n - 1)) {
    throw InfeasibleConfigError("edge count " + std::to_string(k) + " out of range for " +
                                std::to_string(n) + " vertices");
  }
  if (2 * k > n * cap) {
    throw InfeasibleConfigError("cannot place " + std::to_string(k) + " edges: " +
                                std::to_string(n) + " vertices with total degree cap " +
                                std::to_string(cap) + " hold at most " +
                                std::to_string(n * cap / 2));
  }
  ExactGraph g;
  for (std::int64_t v = 0; v < n; ++v) g.add_vertex(std::to_string(v));
  SplitMix64 rng(seed);
  std::vector<std::int64_t> degree(std::size_t(n), 0);
  // Feasible configurations can still wedge when all remaining free pairs
  // sit on saturated vertices; bail out rather than spin forever.
  std::uint64_t attempts = 0;
  const std::uint64_t attempt_limit = 1000 * std::uint64_t(k) + 1000;
  while (std::int64_t(g.edge_count()) < k) {
    if (++attempts > attempt_limit) {
      throw InfeasibleConfigError("degree-capped sampling stalled; configuration too tight");
    }
    const auto s = rng.bounded(std::uint64_t(n));
    const auto t = rng.bounded(std::uint64_t(n));
    if (s == t) continue;
    if (degree[s] >= cap || degree[t] >= cap) continue;
    if (!g.add_edge(std::to_string(s), std::to_string(t))) continue;
    ++degree[s];
    ++degree[t];
  }
  return g;
}

enum class GraphKind { erdos_renyi, chain, star, degree_capped };

// k: edge count (chain length / leaf count for the deterministic kinds),
// n: vertex universe, cap: total-degree bound for degree_capped.
struct GraphParams {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::int64_t cap = 0;
};

inline ExactGraph generate_graph(GraphKind kind, const GraphParams& params,
                                 std::uint64_t seed) {
  switch (kind) {
    case GraphKind::erdos_renyi:
      return erdos_renyi_graph(params.n, params.k, seed);
    case GraphKind::chain:
      return chain_graph(params.k);
    case GraphKind::star:
      return star_graph(params.k);
    case GraphKind::degree_capped:
      return degree_capped_graph(params.n, params.k, params.cap, seed);
  }
  throw InfeasibleConfigError("unknown graph kind");
}

}  // namespace gsketch
