#pragma once

// The three classic sparse layouts for adjacency matrices, mutual
// conversions, and exact query/composition. Value type is a template
// parameter: adjacency uses 8-bit 0/1 entries, composition multiplicities
// use 64-bit counts.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gsketch/error.hpp"
#include "gsketch/graph.hpp"

namespace gsketch {

// A sparse structure whose arrays contradict its own invariants.
class MalformedMatrixError : public Error {
 public:
  using Error::Error;
};

template <class T>
struct CoordinateList {
  struct Entry {
    std::size_t row = 0;
    std::size_t col = 0;
    T value{};

    bool operator==(const Entry&) const = default;
  };

  using value_type = T;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Entry> entries;  // unique by (row, col); values nonzero

  bool operator==(const CoordinateList&) const = default;
};

template <class T>
struct DictionaryOfKeys {
  using value_type = T;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::map<std::pair<std::size_t, std::size_t>, T> cells;  // no zero values

  bool operator==(const DictionaryOfKeys&) const = default;
};

template <class T>
struct CompressedSparseRow {
  using value_type = T;

  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::size_t> row_start;  // length rows + 1, nondecreasing
  std::vector<std::size_t> col_index;  // sorted within each row
  std::vector<T> values;

  bool operator==(const CompressedSparseRow&) const = default;
};

// --- validation -----------------------------------------------------------

template <class T>
void validate_structure(const CoordinateList<T>& m) {
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  keys.reserve(m.entries.size());
  for (const auto& e : m.entries) {
    if (e.row >= m.rows || e.col >= m.cols) {
      throw MalformedMatrixError("coordinate entry out of bounds");
    }
    if (e.value == T{}) throw MalformedMatrixError("coordinate entry with zero value");
    keys.emplace_back(e.row, e.col);
  }
  std::sort(keys.begin(), keys.end());
  if (std::adjacent_find(keys.begin(), keys.end()) != keys.end()) {
    throw MalformedMatrixError("duplicate (row, col) in coordinate list");
  }
}

template <class T>
void validate_structure(const DictionaryOfKeys<T>& m) {
  for (const auto& [key, value] : m.cells) {
    if (key.first >= m.rows || key.second >= m.cols) {
      throw MalformedMatrixError("dictionary key out of bounds");
    }
    if (value == T{}) throw MalformedMatrixError("dictionary cell with zero value");
  }
}

template <class T>
void validate_structure(const CompressedSparseRow<T>& m) {
  if (m.row_start.size() != m.rows + 1) {
    throw MalformedMatrixError("row pointer array must have rows + 1 entries");
  }
  if (m.row_start.front() != 0 || m.row_start.back() != m.values.size() ||
      m.col_index.size() != m.values.size()) {
    throw MalformedMatrixError("row pointers do not frame the value arrays");
  }
  for (std::size_t r = 0; r < m.rows; ++r) {
    if (m.row_start[r] > m.row_start[r + 1]) {
      throw MalformedMatrixError("row pointers must be nondecreasing");
    }
    for (std::size_t i = m.row_start[r]; i < m.row_start[r + 1]; ++i) {
      if (m.col_index[i] >= m.cols) throw MalformedMatrixError("column index out of bounds");
      if (i > m.row_start[r] && m.col_index[i - 1] >= m.col_index[i]) {
        throw MalformedMatrixError("column indices must be strictly increasing per row");
      }
      if (m.values[i] == T{}) throw MalformedMatrixError("stored zero value");
    }
  }
}

// --- conversions ----------------------------------------------------------
// All six paths produce canonical row-major order, so any round trip
// reproduces its input exactly.

template <class T>
DictionaryOfKeys<T> to_dictionary(const CoordinateList<T>& m) {
  validate_structure(m);
  DictionaryOfKeys<T> out;
  out.rows = m.rows;
  out.cols = m.cols;
  for (const auto& e : m.entries) out.cells.emplace(std::make_pair(e.row, e.col), e.value);
  return out;
}

template <class T>
CompressedSparseRow<T> to_compressed(const CoordinateList<T>& m) {
  validate_structure(m);
  auto sorted = m.entries;
  std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  CompressedSparseRow<T> out;
  out.rows = m.rows;
  out.cols = m.cols;
  out.row_start.assign(m.rows + 1, 0);
  for (const auto& e : sorted) ++out.row_start[e.row + 1];
  for (std::size_t r = 0; r < m.rows; ++r) out.row_start[r + 1] += out.row_start[r];
  out.col_index.reserve(sorted.size());
  out.values.reserve(sorted.size());
  for (const auto& e : sorted) {
    out.col_index.push_back(e.col);
    out.values.push_back(e.value);
  }
  return out;
}

template <class T>
CoordinateList<T> to_coordinate(const DictionaryOfKeys<T>& m) {
  validate_structure(m);
  CoordinateList<T> out;
  out.rows = m.rows;
  out.cols = m.cols;
  out.entries.reserve(m.cells.size());
  for (const auto& [key, value] : m.cells) {
    out.entries.push_back({key.first, key.second, value});
  }
  return out;
}

template <class T>
CompressedSparseRow<T> to_compressed(const DictionaryOfKeys<T>& m) {
  return to_compressed(to_coordinate(m));
}

template <class T>
CoordinateList<T> to_coordinate(const CompressedSparseRow<T>& m) {
  validate_structure(m);
  CoordinateList<T> out;
  out.rows = m.rows;
  out.cols = m.cols;
  out.entries.reserve(m.values.size());
  for (std::size_t r = 0; r < m.rows; ++r) {
    for (std::size_t i = m.row_start[r]; i < m.row_start[r + 1]; ++i) {
      out.entries.push_back({r, m.col_index[i], m.values[i]});
    }
  }
  return out;
}

template <class T>
DictionaryOfKeys<T> to_dictionary(const CompressedSparseRow<T>& m) {
  return to_dictionary(to_coordinate(m));
}

namespace detail {

template <class T>
const CompressedSparseRow<T>& as_compressed(const CompressedSparseRow<T>& m,
                                            CompressedSparseRow<T>&) {
  return m;
}

template <class T>
const CompressedSparseRow<T>& as_compressed(const CoordinateList<T>& m,
                                            CompressedSparseRow<T>& storage) {
  storage = to_compressed(m);
  return storage;
}

template <class T>
const CompressedSparseRow<T>& as_compressed(const DictionaryOfKeys<T>& m,
                                            CompressedSparseRow<T>& storage) {
  storage = to_compressed(m);
  return storage;
}

}  // namespace detail

// --- exact queries --------------------------------------------------------

template <class T>
int exact_query(const CoordinateList<T>& m, std::size_t i, std::size_t j) {
  if (i >= m.rows || j >= m.cols) throw std::out_of_range("query index out of range");
  for (const auto& e : m.entries) {
    if (e.row == i && e.col == j) return e.value != T{} ? 1 : 0;
  }
  return 0;
}

template <class T>
int exact_query(const DictionaryOfKeys<T>& m, std::size_t i, std::size_t j) {
  if (i >= m.rows || j >= m.cols) throw std::out_of_range("query index out of range");
  return m.cells.count(std::make_pair(i, j)) != 0 ? 1 : 0;
}

template <class T>
int exact_query(const CompressedSparseRow<T>& m, std::size_t i, std::size_t j) {
  if (i >= m.rows || j >= m.cols) throw std::out_of_range("query index out of range");
  const auto begin = m.col_index.begin() + std::ptrdiff_t(m.row_start[i]);
  const auto end = m.col_index.begin() + std::ptrdiff_t(m.row_start[i + 1]);
  return std::binary_search(begin, end, j) ? 1 : 0;
}

// --- composition ----------------------------------------------------------

// Path-count matrix product: out[i][k] = sum_j a[i][j] * b[j][k]. Accepts
// any of the three formats on either side.
template <class MA, class MB>
CoordinateList<std::int64_t> exact_compose_counts(const MA& a, const MB& b) {
  CompressedSparseRow<typename MA::value_type> sa;
  CompressedSparseRow<typename MB::value_type> sb;
  const auto& ca = detail::as_compressed(a, sa);
  const auto& cb = detail::as_compressed(b, sb);
  if (ca.cols != cb.rows) {
    throw DimensionMismatchError("composition needs inner dimensions to match: " +
                                 std::to_string(ca.cols) + " vs " + std::to_string(cb.rows));
  }
  CoordinateList<std::int64_t> out;
  out.rows = ca.rows;
  out.cols = cb.cols;
  std::vector<std::int64_t> acc(cb.cols, 0);
  std::vector<bool> seen(cb.cols, false);
  std::vector<std::size_t> touched;
  for (std::size_t r = 0; r < ca.rows; ++r) {
    touched.clear();
    for (std::size_t i = ca.row_start[r]; i < ca.row_start[r + 1]; ++i) {
      const std::size_t j = ca.col_index[i];
      const std::int64_t av = std::int64_t(ca.values[i]);
      for (std::size_t jj = cb.row_start[j]; jj < cb.row_start[j + 1]; ++jj) {
        const std::size_t k = cb.col_index[jj];
        if (!seen[k]) {
          seen[k] = true;
          touched.push_back(k);
        }
        acc[k] += av * std::int64_t(cb.values[jj]);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::size_t k : touched) {
      if (acc[k] != 0) out.entries.push_back({r, k, acc[k]});
      acc[k] = 0;
      seen[k] = false;
    }
  }
  return out;
}

// Boolean matrix product: the same walk with entries clamped to {0, 1}.
template <class MA, class MB>
CoordinateList<std::uint8_t> exact_compose(const MA& a, const MB& b) {
  const CoordinateList<std::int64_t> counts = exact_compose_counts(a, b);
  CoordinateList<std::uint8_t> out;
  out.rows = counts.rows;
  out.cols = counts.cols;
  out.entries.reserve(counts.entries.size());
  for (const auto& e : counts.entries) out.entries.push_back({e.row, e.col, 1});
  return out;
}

// --- adjacency ------------------------------------------------------------

// Binary adjacency of g under an explicit label table (the union-indexing
// hook for cross-graph work). The table must cover every vertex of g.
inline CoordinateList<std::uint8_t> adjacency_coordinate_list(
    const ExactGraph& g, const std::vector<std::string>& labels) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < labels.size(); ++i) index.emplace(labels[i], i);
  CoordinateList<std::uint8_t> out;
  out.rows = labels.size();
  out.cols = labels.size();
  std::vector<std::pair<std::size_t, std::size_t>> keys;
  for (const Edge& e : g.edges()) {
    const auto s = index.find(e.source);
    const auto t = index.find(e.target);
    if (s == index.end() || t == index.end()) {
      throw MalformedMatrixError("label table does not cover vertex of graph");
    }
    keys.emplace_back(s->second, t->second);
  }
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  out.entries.reserve(keys.size());
  for (const auto& [r, c] : keys) out.entries.push_back({r, c, 1});
  return out;
}

inline CoordinateList<std::uint8_t> adjacency_coordinate_list(const ExactGraph& g) {
  return adjacency_coordinate_list(g, g.vertex_labels());
}

inline CompressedSparseRow<std::uint8_t> adjacency_compressed(const ExactGraph& g) {
  return to_compressed(adjacency_coordinate_list(g));
}

inline DictionaryOfKeys<std::uint8_t> adjacency_dictionary(const ExactGraph& g) {
  return to_dictionary(adjacency_coordinate_list(g));
}

// Labels of g followed by the labels of h not already present; the shared
// table both graphs can be indexed against.
inline std::vector<std::string> union_vertex_labels(const ExactGraph& g,
                                                    const ExactGraph& h) {
  std::vector<std::string> labels = g.vertex_labels();
  std::unordered_set<std::string> seen(labels.begin(), labels.end());
  for (const std::string& label : h.vertex_labels()) {
    if (seen.insert(label).second) labels.push_back(label);
  }
  return labels;
}

}  // namespace gsketch
