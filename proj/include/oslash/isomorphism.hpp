#pragma once
#include <optional>
#include <string>
#include <vector>

#include "oslash/bundle_graph.hpp"

namespace oslash {

struct IsoResult {
  std::optional<std::vector<int>> mapping;  // a-index -> b-index when isomorphic
  std::string witness;                      // structural mismatch otherwise

  bool ok() const { return mapping.has_value(); }
};

// Terminal-respecting isomorphism test. When both graphs carry codes the map
// is code-to-code and only needs verification; otherwise a colour-refinement
// guided backtracking search runs (intended for small custom graphs).
IsoResult check_isomorphism(const BundleGraph& a, const BundleGraph& b);

}  // namespace oslash
