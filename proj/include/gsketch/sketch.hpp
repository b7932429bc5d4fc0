#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsketch/codebook.hpp"
#include "gsketch/error.hpp"
#include "gsketch/graph.hpp"
#include "gsketch/matrix.hpp"

namespace gsketch {

// Edge count carries net added minus removed edges for sketches assembled
// edge by edge. Operations that lose the edge multiset (compose, power above
// one, restrict) set it to kDerivedEdgeCount.
inline constexpr std::int64_t kDerivedEdgeCount = -1;

struct Sketch {
  CodebookSpec spec;
  Matrix matrix;
  std::int64_t edge_count = 0;

  std::uint32_t dimension() const { return spec.dimension; }

  bool operator==(const Sketch&) const = default;
};

struct QueryResult {
  double score = 0.0;
  bool decision = false;
  double threshold = 0.0;
};

namespace detail {

inline void require_same_codebook(const CodebookSpec& a, const CodebookSpec& b) {
  if (!(a == b)) {
    throw IncompatibleCodebookError("sketches were built under different codebooks");
  }
}

inline void require_spec_match(const Sketch& s, const CodebookSpec& expected,
                               const char* what) {
  if (!(s.spec == expected)) {
    throw IncompatibleCodebookError(std::string(what) +
                                    ": sketch codebook does not match the given spec");
  }
}

// Sentinel-aware sum: a derived operand poisons the count.
inline std::int64_t combine_edge_counts(std::int64_t a, std::int64_t b, int sign) {
  if (a == kDerivedEdgeCount || b == kDerivedEdgeCount) return kDerivedEdgeCount;
  return a + sign * b;
}

}  // namespace detail

inline Sketch empty_sketch(const CodebookSpec& spec) {
  validate_spec(spec);
  return Sketch{spec, Matrix(spec.dimension, spec.dimension), 0};
}

inline Sketch add_edge(const Sketch& s, const Edge& e) {
  Sketch out = s;
  const VertexCode u = derive_code(s.spec, e.source);
  const VertexCode v = derive_code(s.spec, e.target);
  add_outer(out.matrix, u.values, v.values, 1.0);
  ++out.edge_count;
  return out;
}

inline Sketch remove_edge(const Sketch& s, const Edge& e) {
  Sketch out = s;
  const VertexCode u = derive_code(s.spec, e.source);
  const VertexCode v = derive_code(s.spec, e.target);
  add_outer(out.matrix, u.values, v.values, -1.0);
  --out.edge_count;
  return out;
}

// Accumulates rank-one terms in the graph's edge order, so repeated builds of
// the same graph under the same spec are bit-identical. Codes are derived
// once per distinct label.
inline Sketch build_sketch(const ExactGraph& g, const CodebookSpec& spec) {
  Sketch out = empty_sketch(spec);
  std::unordered_map<std::string, VertexCode> cache;
  cache.reserve(g.vertex_count());
  auto code_of = [&](const std::string& label) -> const VertexCode& {
    auto it = cache.find(label);
    if (it == cache.end()) it = cache.emplace(label, derive_code(spec, label)).first;
    return it->second;
  };
  for (const Edge& e : g.edges()) {
    add_outer(out.matrix, code_of(e.source).values, code_of(e.target).values, 1.0);
  }
  out.edge_count = std::int64_t(g.edge_count());
  return out;
}

inline QueryResult query_edge(const Sketch& s, const Edge& e, double threshold = 0.5) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw std::invalid_argument("query threshold must lie strictly between 0 and 1");
  }
  const VertexCode u = derive_code(s.spec, e.source);
  const VertexCode v = derive_code(s.spec, e.target);
  const double score = bilinear(u.values, s.matrix, v.values);
  return QueryResult{score, score > threshold, threshold};
}

inline Sketch compose(const Sketch& a, const Sketch& b) {
  detail::require_same_codebook(a.spec, b.spec);
  return Sketch{a.spec, multiply(a.matrix, b.matrix), kDerivedEdgeCount};
}

inline Sketch power(const Sketch& s, std::int64_t m) {
  if (m < 1) throw std::invalid_argument("matrix power wants a positive exponent");
  if (m == 1) return s;
  Sketch out = compose(s, s);
  for (std::int64_t step = 2; step < m; ++step) out = compose(out, s);
  return out;
}

namespace detail {

// Evaluates Q (Pᵀ M P) Qᵀ without forming either translation matrix, which
// keeps the cost at O(d²L + dL²) for L supplied labels.
inline Matrix sandwich(const Matrix& q, const Matrix& p, const Matrix& m) {
  const Matrix inner = multiply(multiply(transpose(p), m), p);
  return multiply(multiply(q, inner), transpose(q));
}

}  // namespace detail

// Re-expresses s under the `to` codebook across the supplied labels: the
// mapped sketch answers queries with `to` codes for exactly those vertices.
// Labels absent from the set are attenuated toward zero.
inline Sketch translate(const Sketch& s, const CodebookSpec& from, const CodebookSpec& to,
                        std::span<const std::string> labels) {
  detail::require_spec_match(s, from, "translate");
  validate_spec(to);
  if (labels.empty()) {
    throw std::invalid_argument("translate needs at least one label to carry over");
  }
  const Matrix p = code_matrix(from, labels);
  const Matrix q = code_matrix(to, labels);
  return Sketch{to, detail::sandwich(q, p, s.matrix), s.edge_count};
}

// Keeps (approximately) the edges with both endpoints in the label set.
inline Sketch restrict(const Sketch& s, std::span<const std::string> labels) {
  if (labels.empty()) {
    throw std::invalid_argument("restrict needs a non-empty label set");
  }
  const Matrix p = code_matrix(s.spec, labels);
  return Sketch{s.spec, detail::sandwich(p, p, s.matrix), kDerivedEdgeCount};
}

inline Sketch merge(const Sketch& a, const Sketch& b) {
  detail::require_same_codebook(a.spec, b.spec);
  return Sketch{a.spec, add(a.matrix, b.matrix),
                detail::combine_edge_counts(a.edge_count, b.edge_count, +1)};
}

// Signed edge-set difference: queries on the result read +1 on edges only in
// a, -1 on edges only in b, 0 on shared edges.
inline Sketch difference(const Sketch& a, const Sketch& b) {
  detail::require_same_codebook(a.spec, b.spec);
  return Sketch{a.spec, subtract(a.matrix, b.matrix),
                detail::combine_edge_counts(a.edge_count, b.edge_count, -1)};
}

// Entrywise product sum, which estimates the number of shared edges.
inline double inner_product(const Sketch& a, const Sketch& b) {
  detail::require_same_codebook(a.spec, b.spec);
  return entrywise_dot(a.matrix, b.matrix);
}

inline double frobenius_norm_sq(const Sketch& s) { return frobenius_sq(s.matrix); }

// Smallest dimension the calibrated scaling rule asks for: safety · k^(m/(m+1)),
// rounded up. The 1e-9 nudge keeps pow() roundoff from bumping exact integer
// targets to the next one.
inline std::uint32_t recommend_dimension(std::int64_t k, std::int64_t order,
                                         double safety = 10.0) {
  if (k < 1) throw std::invalid_argument("edge count must be at least 1");
  if (order < 1) throw std::invalid_argument("operation order must be at least 1");
  if (!(safety > 0.0)) throw std::invalid_argument("safety factor must be positive");
  const double exponent = double(order) / double(order + 1);
  const double raw = safety * std::pow(double(k), exponent);
  const double d = std::ceil(raw - 1e-9);
  if (!(d >= 1.0)) return 1;
  return std::uint32_t(d);
}

}  // namespace gsketch
