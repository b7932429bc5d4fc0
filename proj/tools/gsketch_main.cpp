// Command-line front end for the sketch library. Every subcommand is a thin
// wrapper over the library so file pipelines reproduce library results
// bit for bit.
//
// Exit codes: 0 success (query hit, verdict pass), 1 query miss or verdict
// fail, 2 usage error, 3 incompatible sketches, 4 file I/O or format error.

#include <cstdint>
#include <functional>
#include <limits>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsketch/gsketch.hpp"

namespace {

using namespace gsketch;

constexpr int kExitHit = 0;
constexpr int kExitMiss = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIncompatible = 3;
constexpr int kExitIo = 4;

ReportFormat parse_format(const std::string& name) {
  if (name == "json") return ReportFormat::json;
  if (name == "csv") return ReportFormat::csv;
  throw std::invalid_argument("unknown report format: " + name);
}

void print_report_summary(const ExperimentReport& rep) {
  std::cout << "experiment " << rep.config.experiment << '\n';
  for (const TailRow& row : rep.tails) {
    std::cout << "epsilon " << row.epsilon << " true_tail " << row.true_tail
              << " true_bound " << row.true_bound << " false_tail " << row.false_tail
              << " false_bound " << row.false_bound << ' '
              << (row.pass ? "pass" : "fail") << '\n';
  }
  for (const std::string& w : rep.warnings) std::cout << "warning " << w << '\n';
  std::cout << "verdict " << (rep.verdict ? "pass" : "fail") << '\n';
}

struct ValidateFlags {
  ExperimentConfig cfg;
  std::string out;
  std::string format = "json";
};

// Registers the shared experiment knobs on a validate/bench subcommand.
void add_config_options(CLI::App* cmd, ExperimentConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "base seed for all trials");
  cmd->add_option("--trials", cfg.trials, "Monte Carlo trials");
  cmd->add_option("--d", cfg.dimension, "sketch dimension (0 derives a default)");
  cmd->add_option("--k", cfg.k, "edges in the generated graph");
  cmd->add_option("--n", cfg.n, "vertex universe size");
  cmd->add_option("--cap", cfg.degree_cap_l, "degree parameter l (generators cap at l/2)");
  cmd->add_option("--order", cfg.order, "matrix power for path experiments");
  cmd->add_option("--epsilon", cfg.epsilons, "tail deviations to check (repeatable)");
  cmd->add_option("--threshold", cfg.threshold, "edge decision threshold");
  cmd->add_option("--m1", cfg.planted_m1, "planted nuisance edges out of the middle vertex");
  cmd->add_option("--m2", cfg.planted_m2, "planted nuisance edges out of the source vertex");
  cmd->add_option("--k2", cfg.k2, "edges in the second graph");
  cmd->add_option("--shared", cfg.shared_edges, "planted shared edges");
  cmd->add_option("--band", cfg.band, "relative band for the norm experiment");
  cmd->add_option("--graphs", cfg.graph_count, "graph count for distance preservation");
  cmd->add_option("--jl-epsilon", cfg.jl_epsilon, "distance distortion bound");
  cmd->add_option("--jl-failure", cfg.jl_failure, "per-repetition failure budget");
  cmd->add_option("--reps", cfg.repetitions, "repetitions for distance preservation");
  cmd->add_option("--min-full-pass", cfg.min_full_pass, "repetitions that must fully pass");
  cmd->add_option("--grid", cfg.grid, "benchmark size grid (repeatable)");
}

int run_cli(int argc, char** argv) {
  CLI::App app{"random-projection sketches of directed graphs"};
  app.require_subcommand(1);
  std::cout << std::setprecision(17);

  int rc = 0;

  // build <edges> --d --seed --out
  auto* build = app.add_subcommand("build", "sketch an edge-list file");
  std::string build_edges, build_out;
  std::uint32_t build_d = 0;
  std::uint64_t build_seed = 0;
  bool keep_duplicates = false;
  build->add_option("edges", build_edges, "edge-list file")->required();
  build->add_option("--d", build_d, "sketch dimension")->required()
      ->check(CLI::Range(std::uint32_t(1), std::numeric_limits<std::uint32_t>::max()));
  build->add_option("--seed", build_seed, "codebook seed")->required();
  build->add_option("--out", build_out, "output sketch file")->required();
  build->add_flag("--keep-duplicates", keep_duplicates,
                  "superpose repeated edges instead of deduplicating");
  build->callback([&] {
    EdgeListStats stats;
    const ExactGraph g = read_edge_list(std::filesystem::path(build_edges), &stats,
                                        keep_duplicates);
    const Sketch s = build_sketch(g, CodebookSpec{build_seed, build_d});
    save_sketch(s, std::filesystem::path(build_out));
    std::cout << "edges " << g.edge_count() << '\n'
              << "duplicates " << stats.duplicate_count << '\n'
              << "dimension " << build_d << '\n'
              << "max_degree " << degree_stats(g).max_total << '\n'
              << "wrote " << build_out << '\n';
  });

  // query <sketch> <source> <target> [--threshold]
  auto* query = app.add_subcommand("query", "test one edge against a sketch");
  std::string query_sketch, query_source, query_target;
  double query_threshold = 0.5;
  query->add_option("sketch", query_sketch, "sketch file")->required();
  query->add_option("source", query_source, "source label")->required();
  query->add_option("target", query_target, "target label")->required();
  query->add_option("--threshold", query_threshold, "decision threshold in (0, 1)");
  query->callback([&] {
    const Sketch s = load_sketch(std::filesystem::path(query_sketch));
    const QueryResult r = query_edge(s, Edge(query_source, query_target), query_threshold);
    std::cout << "score " << r.score << '\n'
              << "decision " << (r.decision ? "present" : "absent") << '\n';
    rc = r.decision ? kExitHit : kExitMiss;
  });

  // merge <sketches...> --out
  auto* merge_cmd = app.add_subcommand("merge", "sum sketches sharing a codebook");
  std::vector<std::string> merge_inputs;
  std::string merge_out;
  merge_cmd->add_option("sketches", merge_inputs, "sketch files")
      ->required()->expected(2, -1);
  merge_cmd->add_option("--out", merge_out, "output sketch file")->required();
  merge_cmd->callback([&] {
    Sketch acc = load_sketch(std::filesystem::path(merge_inputs[0]));
    for (std::size_t i = 1; i < merge_inputs.size(); ++i) {
      const Sketch next = load_sketch(std::filesystem::path(merge_inputs[i]));
      if (next.spec != acc.spec) {
        throw IncompatibleCodebookError(
            merge_inputs[i] + " uses a different codebook than " + merge_inputs[0] +
            "; translate the sketches to one codebook before merging");
      }
      acc = merge(acc, next);
    }
    save_sketch(acc, std::filesystem::path(merge_out));
    std::cout << "wrote " << merge_out << '\n';
  });

  // translate <sketch> <labels> --seed [--d] --out
  auto* translate_cmd =
      app.add_subcommand("translate", "re-encode a sketch under a new codebook");
  std::string translate_sketch, translate_labels, translate_out;
  std::uint64_t translate_seed = 0;
  std::uint32_t translate_d = 0;
  translate_cmd->add_option("sketch", translate_sketch, "sketch file")->required();
  translate_cmd->add_option("labels", translate_labels,
                            "label universe, one label per line")->required();
  translate_cmd->add_option("--seed", translate_seed, "target codebook seed")->required();
  translate_cmd->add_option("--d", translate_d,
                            "target dimension (default: keep the source dimension)");
  translate_cmd->add_option("--out", translate_out, "output sketch file")->required();
  translate_cmd->callback([&] {
    const Sketch s = load_sketch(std::filesystem::path(translate_sketch));
    const std::vector<std::string> labels =
        read_label_lines(std::filesystem::path(translate_labels));
    CodebookSpec to{translate_seed, translate_d == 0 ? s.spec.dimension : translate_d};
    const Sketch out = translate(s, s.spec, to, labels);
    save_sketch(out, std::filesystem::path(translate_out));
    std::cout << "wrote " << translate_out << '\n';
  });

  // restrict <sketch> <labels> --out
  auto* restrict_cmd =
      app.add_subcommand("restrict", "zero all edges outside a vertex subset");
  std::string restrict_sketch, restrict_labels, restrict_out;
  restrict_cmd->add_option("sketch", restrict_sketch, "sketch file")->required();
  restrict_cmd->add_option("labels", restrict_labels,
                           "vertex subset, one label per line")->required();
  restrict_cmd->add_option("--out", restrict_out, "output sketch file")->required();
  restrict_cmd->callback([&] {
    const Sketch s = load_sketch(std::filesystem::path(restrict_sketch));
    const std::vector<std::string> labels =
        read_label_lines(std::filesystem::path(restrict_labels));
    save_sketch(restrict(s, labels), std::filesystem::path(restrict_out));
    std::cout << "wrote " << restrict_out << '\n';
  });

  // compose <sketch> [other] [--order m] --out
  auto* compose_cmd =
      app.add_subcommand("compose", "path-compose two sketches or raise one to a power");
  std::string compose_a, compose_b, compose_out;
  std::int64_t compose_order = 0;
  compose_cmd->add_option("sketch", compose_a, "first sketch file")->required();
  compose_cmd->add_option("other", compose_b, "second sketch file");
  compose_cmd->add_option("--order", compose_order, "matrix power of the first sketch");
  compose_cmd->add_option("--out", compose_out, "output sketch file")->required();
  compose_cmd->callback([&] {
    const bool have_b = !compose_b.empty();
    const bool have_order = compose_order != 0;
    if (have_b == have_order) {
      throw CLI::ValidationError(
          "compose", "give either a second sketch or --order, not both or neither");
    }
    const Sketch a = load_sketch(std::filesystem::path(compose_a));
    const Sketch result =
        have_b ? compose(a, load_sketch(std::filesystem::path(compose_b)))
               : power(a, compose_order);
    save_sketch(result, std::filesystem::path(compose_out));
    std::cout << "wrote " << compose_out << '\n';
  });

  // validate <experiment> [config flags] [--out report]
  auto* validate_cmd =
      app.add_subcommand("validate", "run a Monte Carlo validation experiment");
  ValidateFlags vf;
  validate_cmd->add_option("experiment", vf.cfg.experiment,
                           "first_order | second_order | m_order | inner_product | "
                           "norm | jl | bench")->required();
  add_config_options(validate_cmd, vf.cfg);
  validate_cmd->add_option("--out", vf.out, "report file");
  validate_cmd->add_option("--format", vf.format, "report format: json | csv");
  validate_cmd->callback([&] {
    const ReportFormat format = parse_format(vf.format);
    const ExperimentReport rep = run_experiment(vf.cfg);
    print_report_summary(rep);
    if (!vf.out.empty()) write_report(rep, std::filesystem::path(vf.out), format);
    rc = rep.verdict ? kExitHit : kExitMiss;
  });

  // bench [config flags] [--out report]
  auto* bench_cmd = app.add_subcommand("bench", "time sketch and exact operations");
  ValidateFlags bf;
  add_config_options(bench_cmd, bf.cfg);
  bench_cmd->add_option("--out", bf.out, "report file");
  bench_cmd->add_option("--format", bf.format, "report format: json | csv");
  bench_cmd->callback([&] {
    bf.cfg.experiment = "bench";
    const ExperimentReport rep = run_experiment(bf.cfg);
    for (const BenchRow& row : rep.bench) {
      std::cout << row.method << ' ' << row.operation << ' ' << row.size << ' '
                << row.median_us << "us\n";
    }
    std::cout << "query_slope " << rep.slope << '\n';
    for (const std::string& w : rep.warnings) std::cout << "warning " << w << '\n';
    if (!bf.out.empty()) write_report(rep, std::filesystem::path(bf.out), parse_format(bf.format));
  });

  // recommend <k> <order> [--safety]
  auto* recommend_cmd =
      app.add_subcommand("recommend", "dimension for an edge budget and path order");
  std::int64_t rec_k = 0, rec_order = 1;
  double rec_safety = 10.0;
  recommend_cmd->add_option("k", rec_k, "expected edge count")->required();
  recommend_cmd->add_option("order", rec_order, "longest path order queried")->required();
  recommend_cmd->add_option("--safety", rec_safety, "multiplier on the scaling law");
  recommend_cmd->callback([&] {
    std::cout << recommend_dimension(rec_k, rec_order, rec_safety) << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const IncompatibleCodebookError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIncompatible;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return rc;
}

}  // namespace

int main(int argc, char** argv) { return run_cli(argc, argv); }
