#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "gsketch/bounds.hpp"

using namespace gsketch;

namespace {

// Straight-line re-evaluations of the closed forms, kept deliberately
// separate from the library's assembly of the same expressions.
double first_order_oracle(double eps, double k, double l, double d, bool true_query) {
  const double quad = std::max(0.0, true_query ? k - l : k + 1 - l);
  return 2.0 * std::exp(-eps * eps / (2.0 * (l / d + quad / (d * d) + eps / 3.0)));
}

double second_order_oracle(double eps, double k, double l, double d, bool true_query) {
  double var;
  if (true_query) {
    var = (2 * l + 1) / d + std::max(0.0, k * l - 3 * l - 3) / (d * d) +
          std::max(0.0, k * k - k * (l + 2) + l + 1) / (d * d * d);
  } else {
    var = k * l / (d * d) + std::max(0.0, k * k - k * l) / (d * d * d);
  }
  return 2.0 * std::exp(-eps * eps / (2.0 * (var + eps / 3.0)));
}

}  // namespace

TEST_CASE("first-order bound matches an independent evaluation") {
  CHECK(bernstein_bound_first_order(0.5, 1000, 64, 320, true) ==
        Catch::Approx(1.4340891346790148).epsilon(1e-12));
  CHECK(bernstein_bound_first_order(0.5, 1000, 64, 320, false) ==
        Catch::Approx(1.4341015296749489).epsilon(1e-12));

  for (double eps : {0.1, 0.25, 0.5, 1.0}) {
    for (double k : {10.0, 100.0, 1000.0}) {
      for (double l : {2.0, 8.0, 64.0}) {
        for (double d : {32.0, 320.0}) {
          CHECK(bernstein_bound_first_order(eps, k, l, d, true) ==
                Catch::Approx(first_order_oracle(eps, k, l, d, true)).epsilon(1e-12));
          CHECK(bernstein_bound_first_order(eps, k, l, d, false) ==
                Catch::Approx(first_order_oracle(eps, k, l, d, false)).epsilon(1e-12));
        }
      }
    }
  }
}

TEST_CASE("second-order bound matches an independent evaluation") {
  CHECK(bernstein_bound_second_order(0.5, 216, 6, 144, true) ==
        Catch::Approx(1.3748058283207307).epsilon(1e-12));
  CHECK(bernstein_bound_second_order(0.5, 216, 6, 144, false) ==
        Catch::Approx(1.1991367075116133).epsilon(1e-12));

  for (double eps : {0.25, 0.5, 1.0}) {
    for (double k : {100.0, 216.0, 1000.0}) {
      for (double l : {6.0, 12.0}) {
        CHECK(bernstein_bound_second_order(eps, k, l, 144, true) ==
              Catch::Approx(second_order_oracle(eps, k, l, 144, true)).epsilon(1e-12));
        CHECK(bernstein_bound_second_order(eps, k, l, 144, false) ==
              Catch::Approx(second_order_oracle(eps, k, l, 144, false)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("inner-product and norm bounds match independent evaluations") {
  CHECK(inner_product_bound(0.5, 100, 100, 20, 40, 1024) ==
        Catch::Approx(0.625930490967804).epsilon(1e-12));
  const double denom = 40.0 / 1024 + (100.0 * 100 - 20 - 40) / (1024.0 * 1024) + 0.5 / 3;
  CHECK(inner_product_bound(0.5, 100, 100, 20, 40, 1024) ==
        Catch::Approx(2.0 * std::exp(-0.25 / denom)).epsilon(1e-12));

  CHECK(self_norm_bound(0.25, 512) == Catch::Approx(2.532833109818835e-14).epsilon(1e-9));
  CHECK(self_norm_bound(0.1, 100) == Catch::Approx(2.0 * std::exp(-1.0)).epsilon(1e-12));
}

TEST_CASE("bounds decrease in deviation and dimension") {
  const std::vector<double> eps_grid = {0.05, 0.1, 0.2, 0.4, 0.8, 1.6};
  const std::vector<double> d_grid = {16, 32, 64, 128, 256, 512};

  for (std::size_t i = 1; i < eps_grid.size(); ++i) {
    for (bool truth : {true, false}) {
      CHECK(bernstein_bound_first_order(eps_grid[i], 500, 40, 100, truth) <
            bernstein_bound_first_order(eps_grid[i - 1], 500, 40, 100, truth));
      CHECK(bernstein_bound_second_order(eps_grid[i], 500, 16, 250, truth) <
            bernstein_bound_second_order(eps_grid[i - 1], 500, 16, 250, truth));
    }
    CHECK(inner_product_bound(eps_grid[i], 100, 100, 10, 50, 256) <
          inner_product_bound(eps_grid[i - 1], 100, 100, 10, 50, 256));
    CHECK(self_norm_bound(eps_grid[i], 256) < self_norm_bound(eps_grid[i - 1], 256));
  }
  for (std::size_t i = 1; i < d_grid.size(); ++i) {
    for (bool truth : {true, false}) {
      CHECK(bernstein_bound_first_order(0.5, 500, 40, d_grid[i], truth) <
            bernstein_bound_first_order(0.5, 500, 40, d_grid[i - 1], truth));
      CHECK(bernstein_bound_second_order(0.5, 500, 16, d_grid[i], truth) <
            bernstein_bound_second_order(0.5, 500, 16, d_grid[i - 1], truth));
    }
    CHECK(inner_product_bound(0.5, 100, 100, 10, 50, d_grid[i]) <
          inner_product_bound(0.5, 100, 100, 10, 50, d_grid[i - 1]));
    CHECK(self_norm_bound(0.5, d_grid[i]) < self_norm_bound(0.5, d_grid[i - 1]));
  }
}

TEST_CASE("limits and edge cases") {
  CHECK(bernstein_bound_first_order(50.0, 1000, 64, 320, true) < 1e-12);
  CHECK(bernstein_bound_second_order(50.0, 216, 12, 144, true) < 1e-10);

  // k = l makes the quadratic true-query term vanish.
  const double kl = bernstein_bound_first_order(0.5, 64, 64, 128, true);
  CHECK(kl == Catch::Approx(2.0 * std::exp(-0.25 / (2.0 * (0.5 + 0.5 / 3)))).epsilon(1e-12));

  SECTION("negative variance polynomials clamp with a flag") {
    bool clamped = false;
    const double b = bernstein_bound_second_order(0.5, 4, 0, 64, true, &clamped);
    CHECK(clamped);
    // l = 0 leaves 1/d plus the clamped terms plus the cubic.
    const double var = 1.0 / 64 + 0.0 + (16.0 - 8.0 + 1.0) / (64.0 * 64 * 64);
    CHECK(b == Catch::Approx(2.0 * std::exp(-0.25 / (2.0 * (var + 0.5 / 3)))).epsilon(1e-12));

    clamped = false;
    bernstein_bound_second_order(0.5, 216, 12, 144, true, &clamped);
    CHECK_FALSE(clamped);

    clamped = false;
    bernstein_bound_first_order(0.5, 2, 8, 64, true, &clamped);  // k < l
    CHECK(clamped);
  }

  SECTION("argument validation") {
    CHECK_THROWS_AS(bernstein_bound_first_order(0.0, 10, 2, 16, true),
                    std::invalid_argument);
    CHECK_THROWS_AS(bernstein_bound_second_order(0.5, 10, 2, 0, true),
                    std::invalid_argument);
    CHECK_THROWS_AS(inner_product_bound(-1.0, 10, 10, 2, 2, 16), std::invalid_argument);
    CHECK_THROWS_AS(self_norm_bound(0.5, 0.5), std::invalid_argument);
  }
}

TEST_CASE("union-bound dimension") {
  CHECK(jl_dimension(0.01, 32, 0.5) == 47);
  CHECK(jl_dimension(0.01, 2, 0.5) == 24);
  CHECK(jl_dimension(0.05, 100, 0.3) == 136);

  // Monotone: more graphs or tighter distortion or smaller failure need more.
  CHECK(jl_dimension(0.01, 64, 0.5) > jl_dimension(0.01, 32, 0.5));
  CHECK(jl_dimension(0.01, 32, 0.25) > jl_dimension(0.01, 32, 0.5));
  CHECK(jl_dimension(0.001, 32, 0.5) > jl_dimension(0.01, 32, 0.5));

  CHECK_THROWS_AS(jl_dimension(0.0, 32, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(jl_dimension(0.01, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(jl_dimension(0.01, 32, 1.0), std::invalid_argument);
}
