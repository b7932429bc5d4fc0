#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gsketch/io.hpp"

using namespace gsketch;

namespace {

struct TempDir {
  std::filesystem::path path;

  TempDir() {
    path = std::filesystem::temp_directory_path() / "gsketch_io_tests";
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

Sketch small_sketch(std::uint32_t d, std::uint64_t seed) {
  ExactGraph g;
  g.add_edge("a", "b");
  g.add_edge("b", "c");
  g.add_edge("c", "a");
  g.add_edge("a", "c");
  return build_sketch(g, CodebookSpec{seed, d});
}

std::vector<unsigned char> bytes_of(const Sketch& s) {
  std::ostringstream out(std::ios::binary);
  save_sketch(s, out);
  const std::string raw = out.str();
  return {raw.begin(), raw.end()};
}

Sketch sketch_of(const std::vector<unsigned char>& bytes) {
  std::istringstream in(std::string(bytes.begin(), bytes.end()), std::ios::binary);
  return load_sketch(in);
}

FormatFault fault_of(const std::function<void()>& action) {
  try {
    action();
  } catch (const FormatError& e) {
    return e.fault();
  }
  FAIL("expected a FormatError");
  return FormatFault::malformed;
}

}  // namespace

TEST_CASE("crc32 matches the reference check value") {
  const unsigned char msg[] = "123456789";
  CHECK(detail::crc32(msg, 9) == 0xCBF43926u);
  CHECK(detail::crc32(msg, 0) == 0u);
}

TEST_CASE("sketch round trip through a stream is bit-exact") {
  const Sketch empty = empty_sketch(CodebookSpec{99, 8});
  CHECK(sketch_of(bytes_of(empty)) == empty);

  ExactGraph g = erdos_renyi_graph(60, 100, 2024);
  REQUIRE(g.edge_count() == 100);
  const Sketch s = build_sketch(g, CodebookSpec{7, 32});
  const std::vector<unsigned char> bytes = bytes_of(s);
  const Sketch back = sketch_of(bytes);
  CHECK(back == s);
  CHECK(back.spec == s.spec);
  CHECK(back.edge_count == 100);
  CHECK(bytes_of(back) == bytes);  // byte-level identity, not just value equality

  const Sketch untracked = compose(s, s);
  REQUIRE(untracked.edge_count == kDerivedEdgeCount);
  CHECK(sketch_of(bytes_of(untracked)).edge_count == kDerivedEdgeCount);
}

TEST_CASE("sketch file on disk has the documented size") {
  TempDir tmp;
  const Sketch s = small_sketch(17, 5);
  const std::filesystem::path file = tmp.path / "s.gskt";
  save_sketch(s, file);
  CHECK(std::filesystem::file_size(file) == sketch_file_bytes(17));
  CHECK(sketch_file_bytes(17) == 46 + 8 * 17 * 17);
  CHECK(load_sketch(file) == s);
}

TEST_CASE("every single-byte corruption is rejected") {
  const std::vector<unsigned char> bytes = bytes_of(small_sketch(4, 11));
  REQUIRE(bytes.size() == 174);  // 46 + 8 * 16
  for (std::size_t i = 0; i < bytes.size(); ++i) {
    for (unsigned char flip : {static_cast<unsigned char>(0x01),
                               static_cast<unsigned char>(0xFF)}) {
      std::vector<unsigned char> bad = bytes;
      bad[i] ^= flip;
      CHECK_THROWS_AS(sketch_of(bad), FormatError);
    }
  }
}

TEST_CASE("loader distinguishes failure kinds") {
  const std::vector<unsigned char> bytes = bytes_of(small_sketch(4, 11));

  std::vector<unsigned char> bad = bytes;
  bad[0] = 'X';
  CHECK(fault_of([&] { sketch_of(bad); }) == FormatFault::bad_magic);

  bad = bytes;
  bad[7] = 'X';  // codebook record magic
  CHECK(fault_of([&] { sketch_of(bad); }) == FormatFault::bad_magic);

  bad = bytes;
  bad[4] = 2;  // format version
  CHECK(fault_of([&] { sketch_of(bad); }) == FormatFault::unsupported_version);

  bad = bytes;
  bad[10] = 9;  // codebook record version
  CHECK(fault_of([&] { sketch_of(bad); }) == FormatFault::unsupported_version);

  bad = bytes;
  bad[50] ^= 0x10;  // payload byte
  CHECK(fault_of([&] { sketch_of(bad); }) == FormatFault::checksum_mismatch);

  bad = bytes;
  bad.back() ^= 0x01;  // stored checksum itself
  CHECK(fault_of([&] { sketch_of(bad); }) == FormatFault::checksum_mismatch);

  bad = bytes;
  bad[38] = 5;  // payload dimension, file now too short for it
  CHECK(fault_of([&] { sketch_of(bad); }) == FormatFault::truncated);

  bad = bytes;
  bad.push_back(0);
  CHECK(fault_of([&] { sketch_of(bad); }) == FormatFault::malformed);

  for (std::size_t len : {std::size_t{0}, std::size_t{1}, std::size_t{45},
                          std::size_t{46}, std::size_t{100}, std::size_t{173}}) {
    std::vector<unsigned char> prefix(bytes.begin(), bytes.begin() + len);
    CHECK(fault_of([&] { sketch_of(prefix); }) == FormatFault::truncated);
  }
}

TEST_CASE("save_sketch rejects inconsistent sketches") {
  Sketch s = small_sketch(6, 3);
  s.matrix = Matrix(5, 6);
  std::ostringstream out(std::ios::binary);
  CHECK_THROWS_AS(save_sketch(s, out), DimensionMismatchError);

  Sketch bad_spec = small_sketch(6, 3);
  bad_spec.spec.scheme_id = 77;
  CHECK_THROWS_AS(save_sketch(bad_spec, out), InvalidSpecError);
}

TEST_CASE("file errors surface as IoError") {
  const std::filesystem::path nowhere = "/nonexistent-dir/x.gskt";
  CHECK_THROWS_AS(save_sketch(small_sketch(4, 1), nowhere), IoError);
  CHECK_THROWS_AS(load_sketch(nowhere), IoError);
  CHECK_THROWS_AS(read_edge_list(nowhere), IoError);
  CHECK_THROWS_AS(read_report(nowhere), IoError);
}

TEST_CASE("edge list parsing follows the two-token rule") {
  SECTION("comments and ordering") {
    std::istringstream in("# c\n1 2\n2 3\n");
    EdgeListStats stats;
    const ExactGraph g = read_edge_list(in, &stats);
    REQUIRE(g.edge_count() == 2);
    CHECK(g.edges()[0] == Edge("1", "2"));
    CHECK(g.edges()[1] == Edge("2", "3"));
    CHECK(g.vertex_labels() == std::vector<std::string>{"1", "2", "3"});
    CHECK(stats.line_count == 3);
    CHECK(stats.comment_count == 1);
    CHECK(stats.duplicate_count == 0);
  }

  SECTION("empty file") {
    std::istringstream in("");
    const ExactGraph g = read_edge_list(in);
    CHECK(g.edge_count() == 0);
    CHECK(g.vertex_count() == 0);
  }

  SECTION("duplicates collapse by default") {
    std::istringstream in("1 2\n1 2\n");
    EdgeListStats stats;
    const ExactGraph g = read_edge_list(in, &stats);
    CHECK(g.edge_count() == 1);
    CHECK(stats.duplicate_count == 1);
  }

  SECTION("duplicates survive in multiplicity mode") {
    std::istringstream in("1 2\n1 2\n3 4\n");
    EdgeListStats stats;
    const ExactGraph g = read_edge_list(in, &stats, true);
    CHECK(g.edge_count() == 3);
    CHECK(g.multigraph());
    CHECK(stats.duplicate_count == 1);
  }

  SECTION("crlf and blank lines are tolerated") {
    std::istringstream in("a b\r\n\r\n  \nc d\r\n");
    EdgeListStats stats;
    const ExactGraph g = read_edge_list(in, &stats);
    REQUIRE(g.edge_count() == 2);
    CHECK(g.edges()[1] == Edge("c", "d"));
    CHECK(stats.line_count == 4);
  }

  SECTION("malformed lines report their line number") {
    std::istringstream three("1 2\n1 2 3\n");
    try {
      read_edge_list(three);
      FAIL("expected a FormatError");
    } catch (const FormatError& e) {
      CHECK(e.fault() == FormatFault::malformed);
      CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
    std::istringstream one("solo\n");
    CHECK(fault_of([&] { read_edge_list(one); }) == FormatFault::malformed);
  }
}

TEST_CASE("edge list writing round-trips a graph") {
  ExactGraph g;
  g.add_edge("alpha", "beta");
  g.add_edge("beta", "gamma");
  g.add_edge("alpha", "gamma");
  std::ostringstream out;
  write_edge_list(g, out);

  std::istringstream in(out.str());
  const ExactGraph back = read_edge_list(in);
  CHECK(back.edges() == g.edges());
  CHECK(back.vertex_labels() == g.vertex_labels());

  ExactGraph bad;
  bad.add_edge("has space", "b");
  std::ostringstream sink;
  CHECK_THROWS_AS(write_edge_list(bad, sink), std::invalid_argument);
}

TEST_CASE("label lines reader trims and preserves order") {
  std::istringstream in("# universe\nalpha\n  beta  \r\n\ngamma\nalpha\n");
  const std::vector<std::string> labels = read_label_lines(in);
  CHECK(labels == std::vector<std::string>{"alpha", "beta", "gamma", "alpha"});
}

TEST_CASE("experiment reports round-trip through JSON") {
  ExperimentConfig cfg;
  cfg.experiment = "first_order";
  cfg.seed = 5;
  cfg.trials = 20;
  cfg.k = 5;
  cfg.dimension = 16;
  const ExperimentReport rep = run_experiment(cfg);

  std::ostringstream out;
  write_report(rep, out, ReportFormat::json);
  std::istringstream in(out.str());
  CHECK(read_report(in) == rep);

  ExperimentConfig bench_cfg;
  bench_cfg.experiment = "bench";
  bench_cfg.trials = 3;
  bench_cfg.grid = {32, 64};
  const ExperimentReport bench_rep = run_experiment(bench_cfg);
  std::ostringstream bench_out;
  write_report(bench_rep, bench_out);
  std::istringstream bench_in(bench_out.str());
  CHECK(read_report(bench_in) == bench_rep);
}

TEST_CASE("report files round-trip on disk") {
  TempDir tmp;
  ExperimentConfig cfg;
  cfg.experiment = "norm";
  cfg.seed = 9;
  cfg.trials = 10;
  cfg.k = 20;
  cfg.dimension = 64;
  const ExperimentReport rep = run_experiment(cfg);
  const std::filesystem::path file = tmp.path / "report.json";
  write_report(rep, file);
  CHECK(read_report(file) == rep);
}

TEST_CASE("csv output gives the tail table or the bench table") {
  ExperimentConfig cfg;
  cfg.experiment = "first_order";
  cfg.seed = 5;
  cfg.trials = 10;
  cfg.k = 5;
  cfg.dimension = 16;
  std::ostringstream tails;
  write_report(run_experiment(cfg), tails, ReportFormat::csv);
  const std::string csv = tails.str();
  CHECK(csv.rfind("epsilon,true_tail", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

  ExperimentConfig bench_cfg;
  bench_cfg.experiment = "bench";
  bench_cfg.trials = 3;
  bench_cfg.grid = {32};
  std::ostringstream bench;
  write_report(run_experiment(bench_cfg), bench, ReportFormat::csv);
  CHECK(bench.str().rfind("method,operation", 0) == 0);
}

TEST_CASE("unparseable reports are rejected as malformed") {
  std::istringstream junk("this is not json");
  CHECK(fault_of([&] { read_report(junk); }) == FormatFault::malformed);

  std::istringstream missing(R"({"verdict": true})");
  CHECK(fault_of([&] { read_report(missing); }) == FormatFault::malformed);
}
