#pragma once
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "oslash/vertex_code.hpp"

namespace oslash {

// Finite connected graph with two distinguished terminals in which every
// simple bottom-top path has the same length (the height). Vertices are dense
// indices; `codes` is populated for graphs that carry diamond labels.
struct BundleGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // normalized i < j, sorted, unique
  int bottom = 0;
  int top = 0;
  long long height = 0;

  std::string family;  // diamond | laakso | parasol | custom-base
  int depth = 0;
  int branching = 0;
  std::vector<VertexCode> codes;  // size n when labelled, else empty

  std::vector<std::vector<int>> adj;  // built by finalize()

  bool has_codes() const { return !codes.empty(); }
  void add_edge(int a, int b);
  void finalize();  // sorts/dedups edges, rebuilds adjacency

  // BFS distance from `src` to every vertex; -1 for unreachable.
  std::vector<int> distances_from(int src) const;
  std::vector<int> levels() const { return distances_from(bottom); }
};

struct BundleSpec {
  std::string family = "diamond";
  int depth = 1;
  int branching = 2;
  std::optional<BundleGraph> base;  // custom-base only

  void validate() const;
};

struct BundleCheck {
  bool ok = true;
  bool exhaustive = true;  // false when the path census hit the cap
  std::string witness;     // two unequal path lengths when !ok
};

// Verifies the equal-length property by enumerating simple bottom-top paths
// (up to `path_cap`), plus the cheap necessary conditions: every vertex on a
// geodesic, every edge crossing exactly one level.
BundleCheck check_bundle(const BundleGraph& g, long long path_cap = 200000);

void require_bundle(const BundleGraph& g, const char* role);

// Base bundles of branching w: the complete bipartite diamond (height 2), the
// four-level graph with a fan between two necks (height 4), and the
// three-level fan graph whose fan sits two steps above the bottom (height 3).
BundleGraph make_diamond_base(int w);
BundleGraph make_laakso_base(int w);
BundleGraph make_parasol_base(int w);
BundleGraph make_base(const std::string& family, int w);

}  // namespace oslash
