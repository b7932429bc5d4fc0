#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "gsketch/graph.hpp"
#include "gsketch/sparse.hpp"

using namespace gsketch;

namespace {

// Independent dense oracle: plain integer arrays and triple loops.
using Dense = std::vector<std::vector<std::int64_t>>;

template <class T>
Dense to_dense(const CoordinateList<T>& m) {
  Dense d(m.rows, std::vector<std::int64_t>(m.cols, 0));
  for (const auto& e : m.entries) d[e.row][e.col] = std::int64_t(e.value);
  return d;
}

Dense dense_multiply(const Dense& a, const Dense& b) {
  Dense c(a.size(), std::vector<std::int64_t>(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      for (std::size_t k = 0; k < c[i].size(); ++k) c[i][k] += a[i][j] * b[j][k];
    }
  }
  return c;
}

CoordinateList<std::uint8_t> random_adjacency(std::int64_t n, std::int64_t k,
                                              std::uint64_t seed) {
  return adjacency_coordinate_list(erdos_renyi_graph(n, k, seed));
}

}  // namespace

TEST_CASE("graph construction, dedup, and vertex indexing") {
  ExactGraph g;
  CHECK(g.add_edge("a", "b"));
  CHECK(g.add_edge("b", "c"));
  CHECK_FALSE(g.add_edge("a", "b"));  // duplicate suppressed
  CHECK(g.edge_count() == 2);
  CHECK(g.vertex_count() == 3);

  // Insertion order of first appearance, source before target.
  CHECK(g.vertex_labels() == std::vector<std::string>{"a", "b", "c"});
  CHECK(g.vertex_index("a") == 0);
  CHECK(g.vertex_index("c") == 2);
  CHECK_THROWS_AS(g.vertex_index("zz"), std::out_of_range);

  CHECK(g.has_edge("a", "b"));
  CHECK_FALSE(g.has_edge("b", "a"));

  CHECK_THROWS_AS(g.add_edge("", "x"), std::invalid_argument);

  ExactGraph multi(true);
  CHECK(multi.add_edge("a", "b"));
  CHECK(multi.add_edge("a", "b"));
  CHECK(multi.edge_count() == 2);
}

TEST_CASE("degree statistics") {
  CHECK(degree_stats(ExactGraph{}) == DegreeStats{0, 0, 0});

  const ExactGraph star = star_graph(5);
  const DegreeStats st = degree_stats(star);
  CHECK(st.max_out == 5);
  CHECK(st.max_in == 1);
  CHECK(st.max_total == 5);

  SECTION("matches brute-force recount on a random graph") {
    const ExactGraph g = erdos_renyi_graph(60, 300, 17);
    std::vector<std::int64_t> out(g.vertex_count(), 0), in(g.vertex_count(), 0);
    for (const Edge& e : g.edges()) {
      ++out[g.vertex_index(e.source)];
      ++in[g.vertex_index(e.target)];
    }
    DegreeStats expect;
    for (std::size_t v = 0; v < g.vertex_count(); ++v) {
      expect.max_out = std::max(expect.max_out, out[v]);
      expect.max_in = std::max(expect.max_in, in[v]);
      expect.max_total = std::max(expect.max_total, out[v] + in[v]);
    }
    CHECK(degree_stats(g) == expect);
  }
}

TEST_CASE("edge intersection counts") {
  ExactGraph g, h;
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  h.add_edge("x", "y");
  CHECK(edge_intersection_count(g, h) == 0);

  const ExactGraph same = erdos_renyi_graph(30, 37, 5);
  CHECK(edge_intersection_count(same, same) == 37);
  CHECK(symmetric_difference_count(same, same) == 0);

  SECTION("equals the trace of Ag^T Ah under union labels") {
    const ExactGraph p = erdos_renyi_graph(25, 80, 11);
    const ExactGraph q = erdos_renyi_graph(25, 80, 12);
    const auto labels = union_vertex_labels(p, q);
    const Dense ap = to_dense(adjacency_coordinate_list(p, labels));
    const Dense aq = to_dense(adjacency_coordinate_list(q, labels));
    std::int64_t trace = 0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      for (std::size_t j = 0; j < labels.size(); ++j) trace += ap[i][j] * aq[i][j];
    }
    CHECK(std::int64_t(edge_intersection_count(p, q)) == trace);
    CHECK(symmetric_difference_count(p, q) ==
          p.edge_count() + q.edge_count() - 2 * std::size_t(trace));
  }
}

TEST_CASE("pairs sharing exactly one vertex") {
  ExactGraph g, h;
  g.add_edge("a", "b");
  h.add_edge("a", "c");
  CHECK(count_pairs_sharing_one_vertex(g, h) == 1);

  ExactGraph same_edge;
  same_edge.add_edge("a", "b");
  CHECK(count_pairs_sharing_one_vertex(g, same_edge) == 0);  // shares both endpoints

  ExactGraph disjoint;
  disjoint.add_edge("x", "y");
  CHECK(count_pairs_sharing_one_vertex(g, disjoint) == 0);

  ExactGraph loop;
  loop.add_edge("a", "a");
  CHECK(count_pairs_sharing_one_vertex(loop, g) == 1);  // {a} vs {a,b}
}

TEST_CASE("graph generators") {
  SECTION("chain") {
    const ExactGraph g = chain_graph(3);
    REQUIRE(g.edge_count() == 3);
    CHECK(g.edges()[0] == Edge("0", "1"));
    CHECK(g.edges()[1] == Edge("1", "2"));
    CHECK(g.edges()[2] == Edge("2", "3"));
    CHECK(chain_graph(0).edge_count() == 0);
  }

  SECTION("star") {
    const ExactGraph g = star_graph(5);
    CHECK(g.edge_count() == 5);
    for (const Edge& e : g.edges()) CHECK(e.source == "0");
  }

  SECTION("erdos-renyi determinism and bounds") {
    const ExactGraph a = erdos_renyi_graph(100, 200, 42);
    const ExactGraph b = erdos_renyi_graph(100, 200, 42);
    CHECK(a.edges() == b.edges());
    CHECK(a.edge_count() == 200);

    const ExactGraph c = erdos_renyi_graph(100, 200, 43);
    CHECK(a.edges() != c.edges());

    CHECK(erdos_renyi_graph(1, 0, 9).edge_count() == 0);
    CHECK_THROWS_AS(erdos_renyi_graph(0, 0, 1), InfeasibleConfigError);
    CHECK_THROWS_AS(erdos_renyi_graph(10, 91, 1), InfeasibleConfigError);
  }

  SECTION("degree-capped") {
    const ExactGraph g = degree_capped_graph(40, 100, 10, 7);
    CHECK(g.edge_count() == 100);
    CHECK(degree_stats(g).max_total <= 10);

    const ExactGraph h = degree_capped_graph(40, 100, 10, 7);
    CHECK(g.edges() == h.edges());

    CHECK_THROWS_AS(degree_capped_graph(10, 11, 2, 1), InfeasibleConfigError);
  }

  SECTION("dispatcher") {
    const ExactGraph g = generate_graph(GraphKind::erdos_renyi, {50, 80, 0}, 3);
    const ExactGraph h = erdos_renyi_graph(50, 80, 3);
    CHECK(g.edges() == h.edges());
    CHECK(generate_graph(GraphKind::chain, {0, 4, 0}, 0).edge_count() == 4);
  }
}

TEST_CASE("sparse conversions are round-trip identities") {
  SECTION("empty matrix") {
    CoordinateList<std::uint8_t> empty;
    empty.rows = 4;
    empty.cols = 4;
    CHECK(to_coordinate(to_compressed(empty)) == empty);
    CHECK(to_coordinate(to_dictionary(empty)) == empty);
  }

  SECTION("three-edge matrix over all six paths") {
    ExactGraph g;
    g.add_edge("a", "b");
    g.add_edge("b", "c");
    g.add_edge("c", "a");
    const auto cl = adjacency_coordinate_list(g);
    const auto dok = to_dictionary(cl);
    const auto csr = to_compressed(cl);

    CHECK(to_coordinate(dok) == cl);
    CHECK(to_coordinate(csr) == cl);
    CHECK(to_dictionary(csr) == dok);
    CHECK(to_compressed(dok) == csr);
    CHECK(to_dictionary(to_coordinate(dok)) == dok);
    CHECK(to_compressed(to_coordinate(csr)) == csr);
  }

  SECTION("random 500-edge matrix") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto x = random_adjacency(80, 500, seed);
      CHECK(to_compressed(to_dictionary(x)) == to_compressed(x));
      CHECK(to_coordinate(to_dictionary(x)) == x);
      CHECK(to_coordinate(to_compressed(x)) == x);
    }
  }
}

TEST_CASE("malformed sparse structures are rejected") {
  CoordinateList<std::uint8_t> dup;
  dup.rows = 2;
  dup.cols = 2;
  dup.entries = {{0, 1, 1}, {0, 1, 1}};
  CHECK_THROWS_AS(to_dictionary(dup), MalformedMatrixError);

  CoordinateList<std::uint8_t> zero;
  zero.rows = 2;
  zero.cols = 2;
  zero.entries = {{0, 1, 0}};
  CHECK_THROWS_AS(to_compressed(zero), MalformedMatrixError);

  CoordinateList<std::uint8_t> oob;
  oob.rows = 2;
  oob.cols = 2;
  oob.entries = {{0, 5, 1}};
  CHECK_THROWS_AS(to_compressed(oob), MalformedMatrixError);

  CompressedSparseRow<std::uint8_t> bad;
  bad.rows = 2;
  bad.cols = 2;
  bad.row_start = {0, 2, 2};
  bad.col_index = {1, 0};  // unsorted within row 0
  bad.values = {1, 1};
  CHECK_THROWS_AS(validate_structure(bad), MalformedMatrixError);

  bad.row_start = {0, 1};  // wrong length
  CHECK_THROWS_AS(validate_structure(bad), MalformedMatrixError);
}

TEST_CASE("exact queries agree across formats and with the dense oracle") {
  const auto cl = random_adjacency(30, 100, 21);
  const auto dok = to_dictionary(cl);
  const auto csr = to_compressed(cl);
  const Dense dense = to_dense(cl);

  for (std::size_t i = 0; i < cl.rows; ++i) {
    for (std::size_t j = 0; j < cl.cols; ++j) {
      const int expect = dense[i][j] != 0 ? 1 : 0;
      REQUIRE(exact_query(cl, i, j) == expect);
      REQUIRE(exact_query(dok, i, j) == expect);
      REQUIRE(exact_query(csr, i, j) == expect);
    }
  }

  CHECK_THROWS_AS(exact_query(cl, 30, 0), std::out_of_range);
  CHECK_THROWS_AS(exact_query(dok, 0, 30), std::out_of_range);
  CHECK_THROWS_AS(exact_query(csr, 99, 99), std::out_of_range);
}

TEST_CASE("exact composition") {
  SECTION("chain composes to its two-hop edge") {
    const auto adj = adjacency_coordinate_list(chain_graph(2));  // (0,1),(1,2)
    const auto composed = exact_compose(adj, adj);
    REQUIRE(composed.entries.size() == 1);
    CHECK(composed.entries[0].row == 0);
    CHECK(composed.entries[0].col == 2);
    CHECK(composed.entries[0].value == 1);
  }

  SECTION("composition with empty is empty") {
    const auto adj = random_adjacency(10, 20, 3);
    CoordinateList<std::uint8_t> empty;
    empty.rows = 10;
    empty.cols = 10;
    CHECK(exact_compose(adj, empty).entries.empty());
    CHECK(exact_compose(empty, adj).entries.empty());
  }

  SECTION("dimension mismatch is rejected") {
    const auto a = random_adjacency(10, 20, 3);
    const auto b = random_adjacency(12, 20, 3);
    CHECK_THROWS_AS(exact_compose(a, b), DimensionMismatchError);
  }

  SECTION("matches the dense multiply oracle on random graphs") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto a = random_adjacency(20, 50, 100 + seed);
      const auto b = random_adjacency(20, 50, 200 + seed);
      const Dense expect = dense_multiply(to_dense(a), to_dense(b));

      const auto counts = exact_compose_counts(a, b);
      CHECK(to_dense(counts) == expect);

      const auto boolean = exact_compose(to_compressed(a), to_dictionary(b));
      Dense clamped = expect;
      for (auto& row : clamped) {
        for (auto& v : row) v = v != 0 ? 1 : 0;
      }
      CHECK(to_dense(boolean) == clamped);
    }
  }
}

TEST_CASE("csr row pointers are a prefix sum of row counts") {
  const auto csr = to_compressed(random_adjacency(40, 250, 8));
  validate_structure(csr);
  std::vector<std::size_t> counts(csr.rows, 0);
  for (std::size_t r = 0; r < csr.rows; ++r) counts[r] = csr.row_start[r + 1] - csr.row_start[r];
  std::size_t acc = 0;
  for (std::size_t r = 0; r < csr.rows; ++r) {
    CHECK(csr.row_start[r] == acc);
    acc += counts[r];
  }
  CHECK(csr.row_start[csr.rows] == acc);
  CHECK(acc == csr.values.size());
}
