// Minimal tour: sketch a small graph, query it, compose paths, merge a
// second graph in, and round-trip the result through a file.

#include <filesystem>
#include <iostream>

#include "gsketch/gsketch.hpp"

int main() {
  using namespace gsketch;
  std::cout.precision(4);

  // One shared codebook: every party derives the same vertex codes from it.
  const CodebookSpec spec{/*seed=*/42, /*dimension=*/256};

  ExactGraph follows;
  follows.add_edge("ada", "grace");
  follows.add_edge("grace", "edsger");
  follows.add_edge("ada", "alan");
  const Sketch s = build_sketch(follows, spec);

  std::cout << "stored " << s.edge_count << " edges in a " << s.dimension()
            << "x" << s.dimension() << " sketch\n";
  for (const Edge& e : {Edge("ada", "grace"), Edge("grace", "ada")}) {
    const QueryResult r = query_edge(s, e);
    std::cout << e.source << " -> " << e.target << ": score " << r.score
              << ", " << (r.decision ? "present" : "absent") << '\n';
  }

  // Two-hop reachability through the matrix square.
  const Sketch hops = power(s, 2);
  std::cout << "ada -> edsger in two hops: score "
            << query_edge(hops, Edge("ada", "edsger")).score << '\n';

  // Merging works on sketches alone; nobody needs the other party's edges.
  ExactGraph more;
  more.add_edge("alan", "kurt");
  const Sketch combined = merge(s, build_sketch(more, spec));
  std::cout << "after merge, alan -> kurt: score "
            << query_edge(combined, Edge("alan", "kurt")).score << '\n';

  // Sketches persist with checksummed headers and load back bit-exactly.
  const std::filesystem::path file =
      std::filesystem::temp_directory_path() / "quickstart.gskt";
  save_sketch(combined, file);
  const Sketch loaded = load_sketch(file);
  std::cout << "file round trip " << (loaded == combined ? "bit-exact" : "BROKEN")
            << " (" << std::filesystem::file_size(file) << " bytes)\n";
  std::filesystem::remove(file);

  std::cout << "suggested dimension for 1000 edges, order-2 queries: "
            << recommend_dimension(1000, 2) << '\n';
  return 0;
}
