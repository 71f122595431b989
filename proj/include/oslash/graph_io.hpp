#pragma once
#include <string>

#include "json.hpp"
#include "oslash/bounds.hpp"

namespace oslash {

using json = nlohmann::json;

// {"num","exp"} for dyadic denominators (value num/2^exp), {"num","den"}
// otherwise; both forms read back losslessly.
json rational_json(const Rat& r);
Rat rational_from_json(const json& j);

// CSV spellings: bare integer, "num/2^exp", or "num/den"
std::string rational_csv(const Rat& r);
Rat rational_from_csv(const std::string& s);

std::string read_text(const std::string& path);
// temp file in the target directory, then rename; partial writes never land
void write_text_atomic(const std::string& path, const std::string& text);

json graph_json(const BundleGraph& g);
BundleGraph graph_from_json(const json& j);
void save_graph(const BundleGraph& g, const std::string& path);
BundleGraph load_graph(const std::string& path);

// first row and column carry vertex ids, entries are integer distances
std::string dist_csv(const DistanceMatrix& dm);

// same square layout with exact rational entries (embedded distance matrices)
std::string matrix_csv(const std::vector<std::vector<Rat>>& m);
std::vector<std::vector<Rat>> matrix_from_csv(const std::string& text);

// pair list "i,j,p,pow,dist": exact p-th powers plus float roots
std::string pairs_csv(const std::vector<std::vector<Rat>>& pow, int p);
struct LoadedPairs {
  int p = 1;
  std::vector<std::vector<Rat>> pow;
};
LoadedPairs pairs_from_csv(const std::string& text);

// embedding JSON: "_meta" object plus {"coord": rational, ...} per vertex id
json embedding_json(const std::vector<SparseVector>& images,
                    const std::vector<std::string>& coord_names, const json& meta);
struct LoadedEmbedding {
  std::vector<SparseVector> images;
  std::vector<std::string> coord_names;  // position = coordinate key
  json meta;
};
LoadedEmbedding embedding_from_json(const json& j, int n);

std::string curve_csv(const BoundCurve& c);
BoundCurve curve_from_csv(const std::string& text);

json report_json(const DistortionReport& r, const json& config, double upper_bound);

}  // namespace oslash
