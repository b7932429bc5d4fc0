#pragma once

// Vertex codebooks: every label maps to a deterministic point on the unit
// sphere S^{d-1}. Codes are derived, never stored; the (seed, dimension,
// scheme_id) triple plus the label is the entire identity of a code.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "gsketch/error.hpp"
#include "gsketch/matrix.hpp"
#include "gsketch/rng.hpp"

namespace gsketch {

// Scheme 1: i.i.d. standard normals, normalized to unit length. The only
// scheme defined so far; the id exists so serialized specs can survive a
// future change of derivation.
inline constexpr std::uint32_t kSchemeSphereGaussian = 1;

struct CodebookSpec {
  std::uint64_t seed = 0;
  std::uint32_t dimension = 0;
  std::uint32_t scheme_id = kSchemeSphereGaussian;

  bool operator==(const CodebookSpec&) const = default;
};

inline void validate_spec(const CodebookSpec& spec) {
  if (spec.dimension == 0) {
    throw InvalidSpecError("codebook dimension must be positive");
  }
  if (spec.scheme_id != kSchemeSphereGaussian) {
    throw InvalidSpecError("unknown codebook scheme id " + std::to_string(spec.scheme_id));
  }
}

// Unit vector in R^d. ||values|| = 1 within 1e-12 by construction.
struct VertexCode {
  std::vector<double> values;

  std::size_t dimension() const { return values.size(); }
  bool operator==(const VertexCode&) const = default;
};

inline double dot(const VertexCode& a, const VertexCode& b) {
  if (a.dimension() != b.dimension()) {
    throw DimensionMismatchError("code dimensions differ: " + std::to_string(a.dimension()) +
                                 " vs " + std::to_string(b.dimension()));
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i) acc += a.values[i] * b.values[i];
  return acc;
}

inline VertexCode derive_code(const CodebookSpec& spec, std::string_view label) {
  validate_spec(spec);
  CounterStream stream(derive_key(spec.seed, spec.scheme_id, label));
  const std::size_t d = spec.dimension;
  VertexCode code;
  code.values.resize(d);
  for (;;) {
    double n0 = 0.0, n1 = 0.0;
    for (std::size_t i = 0; i + 1 < d; i += 2) {
      stream.next_normal_pair(n0, n1);
      code.values[i] = n0;
      code.values[i + 1] = n1;
    }
    if (d % 2 == 1) {
      stream.next_normal_pair(n0, n1);
      code.values[d - 1] = n0;
    }
    double norm_sq = 0.0;
    for (double x : code.values) norm_sq += x * x;
    // A degenerate draw is astronomically unlikely but must not divide by
    // (near) zero; the stream just continues, so the redraw stays
    // deterministic.
    if (norm_sq >= 1e-300) {
      const double inv = 1.0 / std::sqrt(norm_sq);
      for (double& x : code.values) x *= inv;
      return code;
    }
  }
}

// Integer labels are canonicalized to their decimal string, so the code for
// 42 and for "42" is the same vector.
inline VertexCode derive_code(const CodebookSpec& spec, std::int64_t label) {
  return derive_code(spec, std::string_view(std::to_string(label)));
}

// d x |labels| matrix whose columns are the codes of the given labels.
inline Matrix code_matrix(const CodebookSpec& spec, std::span<const std::string> labels) {
  validate_spec(spec);
  std::unordered_set<std::string_view> seen;
  for (const auto& label : labels) {
    if (!seen.insert(label).second) {
      throw DuplicateLabelError("duplicate label in code matrix: " + label);
    }
  }
  Matrix m(spec.dimension, labels.size());
  for (std::size_t c = 0; c < labels.size(); ++c) {
    const VertexCode code = derive_code(spec, labels[c]);
    for (std::size_t r = 0; r < spec.dimension; ++r) m(r, c) = code.values[r];
  }
  return m;
}

}  // namespace gsketch
