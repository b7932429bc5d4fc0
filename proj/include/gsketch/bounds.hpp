#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace gsketch {

namespace detail {

inline void require_bound_args(double eps, double k, double l, double d) {
  if (!(eps > 0.0)) throw std::invalid_argument("deviation must be positive");
  if (!(d >= 1.0)) throw std::invalid_argument("dimension must be at least 1");
  if (k < 0.0 || l < 0.0) throw std::invalid_argument("edge and degree counts must be non-negative");
}

// Variance polynomials go negative for tiny k and l, outside the regime the
// tail formulas describe; clamp to zero and let the caller surface a warning.
inline double clamp_term(double value, bool* clamped) {
  if (value < 0.0) {
    if (clamped != nullptr) *clamped = true;
    return 0.0;
  }
  return value;
}

inline double bernstein_tail(double eps, double variance) {
  return 2.0 * std::exp(-(eps * eps) / (2.0 * (variance + eps / 3.0)));
}

}  // namespace detail

// Tail bound for a single edge query against a sketch of a k-edge graph whose
// vertices touch at most l edges each. True queries read 1 plus noise, false
// queries pure noise; only the second-order variance coefficient differs.
inline double bernstein_bound_first_order(double eps, double k, double l, double d,
                                          bool true_query, bool* clamped = nullptr) {
  detail::require_bound_args(eps, k, l, d);
  const double quadratic = true_query ? (k - l) : (k + 1.0 - l);
  const double variance = detail::clamp_term(l / d, clamped) +
                          detail::clamp_term(quadratic / (d * d), clamped);
  return detail::bernstein_tail(eps, variance);
}

// Same shape for queries against the second matrix power.
inline double bernstein_bound_second_order(double eps, double k, double l, double d,
                                           bool true_query, bool* clamped = nullptr) {
  detail::require_bound_args(eps, k, l, d);
  const double d2 = d * d;
  const double d3 = d2 * d;
  double variance;
  if (true_query) {
    variance = detail::clamp_term((2.0 * l + 1.0) / d, clamped) +
               detail::clamp_term((k * l - 3.0 * l - 3.0) / d2, clamped) +
               detail::clamp_term((k * k - k * (l + 2.0) + l + 1.0) / d3, clamped);
  } else {
    variance = detail::clamp_term(k * l / d2, clamped) +
               detail::clamp_term((k * k - k * l) / d3, clamped);
  }
  return detail::bernstein_tail(eps, variance);
}

// Tail bound on |<pi(G), pi(H)> - k| for graphs with n1 and n2 edges, k of
// them shared, and q cross pairs sharing exactly one vertex. The deviation
// eps is absolute here and the denominator carries no factor of two.
inline double inner_product_bound(double eps, double n1, double n2, double k, double q,
                                  double d, bool* clamped = nullptr) {
  if (!(eps > 0.0)) throw std::invalid_argument("deviation must be positive");
  if (!(d >= 1.0)) throw std::invalid_argument("dimension must be at least 1");
  if (n1 < 0.0 || n2 < 0.0 || k < 0.0 || q < 0.0) {
    throw std::invalid_argument("pair counts must be non-negative");
  }
  const double denom = detail::clamp_term(q / d, clamped) +
                       detail::clamp_term((n1 * n2 - k - q) / (d * d), clamped) +
                       eps / 3.0;
  return 2.0 * std::exp(-(eps * eps) / denom);
}

// Tail bound on the relative deviation of a sketch's squared norm from its
// edge count: P(|norm^2 - k| > k*eps) <= 2 exp(-d eps^2).
inline double self_norm_bound(double eps, double d) {
  if (!(eps > 0.0)) throw std::invalid_argument("deviation must be positive");
  if (!(d >= 1.0)) throw std::invalid_argument("dimension must be at least 1");
  return 2.0 * std::exp(-d * eps * eps);
}

// Smallest dimension at which a union bound over all graph pairs keeps the
// probability of any distance distortion beyond eps below `failure`.
inline std::uint32_t jl_dimension(double failure, std::int64_t graph_count, double eps) {
  if (!(failure > 0.0 && failure < 1.0)) {
    throw std::invalid_argument("failure probability must lie in (0,1)");
  }
  if (graph_count < 2) throw std::invalid_argument("need at least two graphs");
  if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("distortion must lie in (0,1)");
  const double raw = (std::log(1.0 / failure) + 2.0 * std::log(double(graph_count))) /
                     (eps * eps);
  return std::uint32_t(std::ceil(raw - 1e-9));
}

}  // namespace gsketch
