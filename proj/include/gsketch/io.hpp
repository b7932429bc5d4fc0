#pragma once

// Persistence layer: binary sketch files with CRC-32 integrity, SNAP-style
// whitespace-delimited edge lists, and experiment reports as JSON or CSV.
//
// The sketch file layout is fixed little-endian regardless of host order:
//
//   offset  size  field
//        0     4  "GSKT"
//        4     2  format version (u16, currently 1)
//        6     4  "GSCB"  codebook record
//       10     4  codebook record version (u32, currently 1)
//       14     4  scheme id (u32)
//       18     4  codebook dimension (u32)
//       22     8  codebook seed (u64)
//       30     8  edge count (i64, -1 when not tracked)
//       38     4  payload dimension d (u32, must equal codebook dimension)
//       42  8d^2  matrix entries, row-major IEEE-754 doubles
//   42+8d^2    4  CRC-32 over everything above
//
// Total size is exactly 46 + 8*d^2 bytes. The checksum covers the header as
// well as the payload, so any single corrupted byte is rejected.

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "gsketch/error.hpp"
#include "gsketch/experiments.hpp"
#include "gsketch/graph.hpp"
#include "gsketch/sketch.hpp"

namespace gsketch {

inline constexpr std::uint16_t kSketchFormatVersion = 1;
inline constexpr std::uint32_t kCodebookRecordVersion = 1;
inline constexpr std::size_t kSketchHeaderBytes = 42;

// Exact on-disk size of a sketch with the given dimension.
inline constexpr std::uint64_t sketch_file_bytes(std::uint32_t d) {
  return 46 + 8ull * d * d;
}

namespace detail {

constexpr std::array<std::uint32_t, 256> make_crc_table() {
  std::array<std::uint32_t, 256> t{};
  for (std::uint32_t i = 0; i < 256; ++i) {
    std::uint32_t c = i;
    for (int k = 0; k < 8; ++k) c = (c & 1u) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
    t[i] = c;
  }
  return t;
}

inline constexpr std::array<std::uint32_t, 256> kCrcTable = make_crc_table();

// Reflected CRC-32 (the zlib/PNG polynomial).
inline std::uint32_t crc32(const unsigned char* data, std::size_t size) {
  std::uint32_t c = 0xFFFFFFFFu;
  for (std::size_t i = 0; i < size; ++i) {
    c = kCrcTable[(c ^ data[i]) & 0xFFu] ^ (c >> 8);
  }
  return c ^ 0xFFFFFFFFu;
}

inline void put_u16(std::vector<unsigned char>& b, std::uint16_t v) {
  b.push_back(static_cast<unsigned char>(v & 0xFF));
  b.push_back(static_cast<unsigned char>((v >> 8) & 0xFF));
}

inline void put_u32(std::vector<unsigned char>& b, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) b.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

inline void put_u64(std::vector<unsigned char>& b, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) b.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xFF));
}

inline void put_i64(std::vector<unsigned char>& b, std::int64_t v) {
  put_u64(b, static_cast<std::uint64_t>(v));
}

inline void put_f64(std::vector<unsigned char>& b, double v) {
  put_u64(b, std::bit_cast<std::uint64_t>(v));
}

inline std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline std::uint32_t get_u32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v |= std::uint32_t(p[i]) << (8 * i);
  return v;
}

inline std::uint64_t get_u64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= std::uint64_t(p[i]) << (8 * i);
  return v;
}

inline std::int64_t get_i64(const unsigned char* p) {
  return static_cast<std::int64_t>(get_u64(p));
}

inline double get_f64(const unsigned char* p) {
  return std::bit_cast<double>(get_u64(p));
}

inline std::vector<unsigned char> serialize_sketch(const Sketch& s) {
  validate_spec(s.spec);
  const std::uint32_t d = s.spec.dimension;
  if (s.matrix.rows != d || s.matrix.cols != d) {
    throw DimensionMismatchError("sketch matrix is " + std::to_string(s.matrix.rows) +
                                 "x" + std::to_string(s.matrix.cols) +
                                 " but the codebook dimension is " + std::to_string(d));
  }
  std::vector<unsigned char> b;
  b.reserve(sketch_file_bytes(d));
  b.insert(b.end(), {'G', 'S', 'K', 'T'});
  put_u16(b, kSketchFormatVersion);
  b.insert(b.end(), {'G', 'S', 'C', 'B'});
  put_u32(b, kCodebookRecordVersion);
  put_u32(b, s.spec.scheme_id);
  put_u32(b, s.spec.dimension);
  put_u64(b, s.spec.seed);
  put_i64(b, s.edge_count);
  put_u32(b, d);
  for (double x : s.matrix.data) put_f64(b, x);
  put_u32(b, crc32(b.data(), b.size()));
  return b;
}

inline Sketch parse_sketch(const std::vector<unsigned char>& b) {
  if (b.size() < kSketchHeaderBytes + 4) {
    throw FormatError(FormatFault::truncated,
                      "sketch file holds " + std::to_string(b.size()) +
                          " bytes, shorter than any valid header");
  }
  if (std::memcmp(b.data(), "GSKT", 4) != 0) {
    throw FormatError(FormatFault::bad_magic, "not a sketch file: bad leading magic");
  }
  const std::uint16_t version = get_u16(b.data() + 4);
  if (version != kSketchFormatVersion) {
    throw FormatError(FormatFault::unsupported_version,
                      "sketch format version " + std::to_string(version) +
                          " is not supported (expected " +
                          std::to_string(kSketchFormatVersion) + ")");
  }
  if (std::memcmp(b.data() + 6, "GSCB", 4) != 0) {
    throw FormatError(FormatFault::bad_magic, "bad codebook record magic");
  }
  const std::uint32_t record_version = get_u32(b.data() + 10);
  if (record_version != kCodebookRecordVersion) {
    throw FormatError(FormatFault::unsupported_version,
                      "codebook record version " + std::to_string(record_version) +
                          " is not supported");
  }
  CodebookSpec spec;
  spec.scheme_id = get_u32(b.data() + 14);
  spec.dimension = get_u32(b.data() + 18);
  spec.seed = get_u64(b.data() + 22);
  const std::int64_t edge_count = get_i64(b.data() + 30);
  const std::uint32_t d = get_u32(b.data() + 38);
  if (d == 0) {
    throw FormatError(FormatFault::malformed, "payload dimension is zero");
  }
  const std::uint64_t expected = sketch_file_bytes(d);
  if (b.size() < expected) {
    throw FormatError(FormatFault::truncated,
                      "sketch file holds " + std::to_string(b.size()) + " bytes but d=" +
                          std::to_string(d) + " needs " + std::to_string(expected));
  }
  if (b.size() > expected) {
    throw FormatError(FormatFault::malformed,
                      std::to_string(b.size() - expected) + " trailing bytes after payload");
  }
  const std::uint32_t stored = get_u32(b.data() + expected - 4);
  const std::uint32_t computed = crc32(b.data(), expected - 4);
  if (stored != computed) {
    throw FormatError(FormatFault::checksum_mismatch, "sketch checksum does not match");
  }
  if (spec.scheme_id != kSchemeSphereGaussian) {
    throw FormatError(FormatFault::malformed,
                      "unknown codebook scheme id " + std::to_string(spec.scheme_id));
  }
  if (spec.dimension != d) {
    throw FormatError(FormatFault::malformed,
                      "codebook dimension " + std::to_string(spec.dimension) +
                          " disagrees with payload dimension " + std::to_string(d));
  }
  if (edge_count < kDerivedEdgeCount) {
    throw FormatError(FormatFault::malformed,
                      "edge count " + std::to_string(edge_count) + " is out of range");
  }
  Sketch s;
  s.spec = spec;
  s.edge_count = edge_count;
  s.matrix = Matrix(d, d);
  const unsigned char* p = b.data() + kSketchHeaderBytes;
  for (std::size_t i = 0; i < s.matrix.data.size(); ++i, p += 8) {
    s.matrix.data[i] = get_f64(p);
  }
  return s;
}

// Strips one trailing '\r' so CRLF files parse like LF files.
inline void chomp(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline bool blank_or_comment(const std::string& line, bool* comment) {
  const std::size_t pos = line.find_first_not_of(" \t");
  *comment = pos != std::string::npos && line[pos] == '#';
  return pos == std::string::npos || *comment;
}

}  // namespace detail

inline void save_sketch(const Sketch& s, std::ostream& out) {
  const std::vector<unsigned char> bytes = detail::serialize_sketch(s);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("sketch write failed");
}

inline void save_sketch(const Sketch& s, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + file.string());
  save_sketch(s, out);
  out.flush();
  if (!out) throw IoError("sketch write failed: " + file.string());
}

inline Sketch load_sketch(std::istream& in) {
  std::vector<unsigned char> bytes{std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>()};
  if (in.bad()) throw IoError("sketch read failed");
  return detail::parse_sketch(bytes);
}

inline Sketch load_sketch(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + file.string());
  return load_sketch(in);
}

struct EdgeListStats {
  std::int64_t line_count = 0;      // physical lines, including comments and blanks
  std::int64_t comment_count = 0;   // lines whose first non-blank character is '#'
  std::int64_t duplicate_count = 0; // edge lines repeating an earlier (source, target)

  bool operator==(const EdgeListStats&) const = default;
};

// Reads "source target" lines; '#' comments and blank lines are skipped.
// Vertices are indexed by first appearance. Duplicate edges are dropped
// unless keep_duplicates is set, in which case the graph keeps multiplicity
// (so a sketch built from it superposes repeated edges). Either way the
// stats report how many duplicates were seen.
inline ExactGraph read_edge_list(std::istream& in, EdgeListStats* stats = nullptr,
                                 bool keep_duplicates = false) {
  ExactGraph g(keep_duplicates);
  EdgeListStats local;
  std::string line;
  while (std::getline(in, line)) {
    ++local.line_count;
    detail::chomp(line);
    bool comment = false;
    if (detail::blank_or_comment(line, &comment)) {
      if (comment) ++local.comment_count;
      continue;
    }
    std::istringstream tokens(line);
    std::string source, target, extra;
    tokens >> source >> target;
    if (target.empty() || (tokens >> extra)) {
      throw FormatError(FormatFault::malformed,
                        "edge list line " + std::to_string(local.line_count) +
                            ": expected exactly two whitespace-separated labels");
    }
    const bool seen = g.has_edge(source, target);
    g.add_edge(source, target);
    if (seen) ++local.duplicate_count;
  }
  if (in.bad()) throw IoError("edge list read failed");
  if (stats != nullptr) *stats = local;
  return g;
}

inline ExactGraph read_edge_list(const std::filesystem::path& file,
                                 EdgeListStats* stats = nullptr,
                                 bool keep_duplicates = false) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open for reading: " + file.string());
  return read_edge_list(in, stats, keep_duplicates);
}

inline void write_edge_list(const ExactGraph& g, std::ostream& out) {
  out << "# directed edge list: " << g.vertex_count() << " vertices, "
      << g.edge_count() << " edges\n";
  for (const Edge& e : g.edges()) {
    if (e.source.find_first_of(" \t\r\n") != std::string::npos ||
        e.target.find_first_of(" \t\r\n") != std::string::npos) {
      throw std::invalid_argument(
          "label with whitespace cannot be written to an edge list");
    }
    out << e.source << ' ' << e.target << '\n';
  }
  if (!out) throw IoError("edge list write failed");
}

inline void write_edge_list(const ExactGraph& g, const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + file.string());
  write_edge_list(g, out);
  out.flush();
  if (!out) throw IoError("edge list write failed: " + file.string());
}

// One label per line; blank lines and '#' comments are skipped, surrounding
// blanks are trimmed. Order is preserved and duplicates are kept (consumers
// that need uniqueness reject them with their own error).
inline std::vector<std::string> read_label_lines(std::istream& in) {
  std::vector<std::string> labels;
  std::string line;
  while (std::getline(in, line)) {
    detail::chomp(line);
    bool comment = false;
    if (detail::blank_or_comment(line, &comment)) continue;
    const std::size_t first = line.find_first_not_of(" \t");
    const std::size_t last = line.find_last_not_of(" \t");
    labels.push_back(line.substr(first, last - first + 1));
  }
  if (in.bad()) throw IoError("label list read failed");
  return labels;
}

inline std::vector<std::string> read_label_lines(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open for reading: " + file.string());
  return read_label_lines(in);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(TailRow, epsilon, true_tail, true_bound,
                                   false_tail, false_bound, pass)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(BenchRow, method, operation, size, median_us)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ExperimentConfig, experiment, seed, trials,
                                   dimension, k, n, degree_cap_l, order, epsilons,
                                   threshold, planted_m1, planted_m2, k2,
                                   shared_edges, band, graph_count, jl_epsilon,
                                   jl_failure, repetitions, min_full_pass, grid)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ExperimentReport, config, tails, true_mean,
                                   true_variance, false_mean, false_variance,
                                   predicted_true_variance, predicted_false_variance,
                                   misclassification, variance_ratio, mean_estimate,
                                   predicted_sigma, fraction_in_band, full_pass_count,
                                   pair_violations, slope, bench, true_scores,
                                   false_scores, warnings, verdict, wall_ms)

enum class ReportFormat { json, csv };

namespace detail {

inline void write_report_csv(const ExperimentReport& r, std::ostream& out) {
  out << std::setprecision(17);
  if (!r.tails.empty()) {
    out << "epsilon,true_tail,true_bound,false_tail,false_bound,pass\n";
    for (const TailRow& row : r.tails) {
      out << row.epsilon << ',' << row.true_tail << ',' << row.true_bound << ','
          << row.false_tail << ',' << row.false_bound << ','
          << (row.pass ? "true" : "false") << '\n';
    }
    return;
  }
  if (!r.bench.empty()) {
    out << "method,operation,size,median_us\n";
    for (const BenchRow& row : r.bench) {
      out << row.method << ',' << row.operation << ',' << row.size << ','
          << row.median_us << '\n';
    }
    return;
  }
  out << "metric,value\n";
  out << "full_pass_count," << r.full_pass_count << '\n';
  out << "pair_violations," << r.pair_violations << '\n';
  out << "verdict," << (r.verdict ? "true" : "false") << '\n';
}

}  // namespace detail

inline void write_report(const ExperimentReport& r, std::ostream& out,
                         ReportFormat format = ReportFormat::json) {
  if (format == ReportFormat::csv) {
    detail::write_report_csv(r, out);
  } else {
    const nlohmann::json j = r;
    out << j.dump(2) << '\n';
  }
  if (!out) throw IoError("report write failed");
}

inline void write_report(const ExperimentReport& r, const std::filesystem::path& file,
                         ReportFormat format = ReportFormat::json) {
  std::ofstream out(file, std::ios::trunc);
  if (!out) throw IoError("cannot open for writing: " + file.string());
  write_report(r, out, format);
  out.flush();
  if (!out) throw IoError("report write failed: " + file.string());
}

inline ExperimentReport read_report(std::istream& in) {
  try {
    const nlohmann::json j = nlohmann::json::parse(in);
    return j.get<ExperimentReport>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(FormatFault::malformed,
                      std::string("report does not parse: ") + e.what());
  }
}

inline ExperimentReport read_report(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open for reading: " + file.string());
  return read_report(in);
}

}  // namespace gsketch
