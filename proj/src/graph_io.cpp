#include "oslash/graph_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace oslash {

namespace {

bool power_of_two(i64 v) { return v > 0 && (v & (v - 1)) == 0; }

int log2_exact(i64 v) {
  int e = 0;
  while (v > 1) {
    v >>= 1;
    ++e;
  }
  return e;
}

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s) {
  try {
    size_t used = 0;
    double v = std::stod(s, &used);
    if (used != s.size()) throw validation_error("trailing junk in number '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw validation_error("cannot parse number '" + s + "'");
  }
}

long long parse_int(const std::string& s) {
  try {
    size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw validation_error("trailing junk in integer '" + s + "'");
    return v;
  } catch (const std::logic_error&) {
    throw validation_error("cannot parse integer '" + s + "'");
  }
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == '\n') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

}  // namespace

json rational_json(const Rat& r) {
  if (power_of_two(r.den)) return json{{"num", r.num}, {"exp", log2_exact(r.den)}};
  return json{{"num", r.num}, {"den", r.den}};
}

Rat rational_from_json(const json& j) {
  if (!j.is_object() || !j.contains("num")) throw validation_error("malformed rational value");
  i64 num = j.at("num").get<i64>();
  if (j.contains("exp")) {
    int e = j.at("exp").get<int>();
    if (e < 0 || e > 62) throw validation_error("rational exponent out of range");
    return Rat(num, i64(1) << e);
  }
  if (j.contains("den")) return Rat(num, j.at("den").get<i64>());
  return Rat(num);
}

std::string rational_csv(const Rat& r) {
  if (r.den == 1) return std::to_string(r.num);
  if (power_of_two(r.den)) return std::to_string(r.num) + "/2^" + std::to_string(log2_exact(r.den));
  return r.str();
}

Rat rational_from_csv(const std::string& s) {
  if (s.find("/2^") != std::string::npos) return parse_dyadic(s).to_rat();
  return parse_rat(s);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw validation_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_atomic(const std::string& path, const std::string& text) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw validation_error("cannot write '" + tmp + "'");
    out << text;
    if (!out.good()) throw validation_error("short write to '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw validation_error("cannot move '" + tmp + "' into place");
}

json graph_json(const BundleGraph& g) {
  json verts = json::array();
  for (int v = 0; v < g.n; ++v) {
    json jv{{"id", v}};
    if (g.has_codes()) {
      jv["A"] = g.codes[v].elems;
      jv["r"] = json{{"num", g.codes[v].r.num}, {"exp", g.codes[v].r.exp}};
    }
    verts.push_back(jv);
  }
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back(json::array({a, b}));
  return json{{"family", g.family}, {"depth", g.depth},   {"branching", g.branching},
              {"height", g.height}, {"bottom", g.bottom}, {"top", g.top},
              {"vertices", verts},  {"edges", edges}};
}

BundleGraph graph_from_json(const json& j) {
  BundleGraph g;
  try {
    g.family = j.at("family").get<std::string>();
    g.depth = j.at("depth").get<int>();
    g.branching = j.at("branching").get<int>();
    g.height = j.at("height").get<long long>();
    g.bottom = j.at("bottom").get<int>();
    g.top = j.at("top").get<int>();
    const json& verts = j.at("vertices");
    g.n = int(verts.size());
    bool labelled = g.n > 0 && verts.at(0).contains("A");
    for (int v = 0; v < g.n; ++v) {
      const json& jv = verts.at(v);
      if (jv.at("id").get<int>() != v)
        throw validation_error("vertex ids must be 0..n-1 in order");
      if (jv.contains("A") != labelled)
        throw validation_error("either all vertices carry codes or none do");
      if (labelled) {
        VertexCode c(jv.at("A").get<std::vector<int>>(),
                     Dyadic(jv.at("r").at("num").get<i64>(), jv.at("r").at("exp").get<int>()));
        g.codes.push_back(c);
      }
    }
    for (const json& je : j.at("edges")) {
      if (!je.is_array() || je.size() != 2) throw validation_error("edges must be [i,j] pairs");
      int a = je.at(0).get<int>(), b = je.at(1).get<int>();
      if (a < 0 || b < 0 || a >= g.n || b >= g.n)
        throw validation_error("edge endpoint out of range");
      g.add_edge(a, b);
    }
  } catch (const json::exception& e) {
    throw validation_error(std::string("malformed graph JSON: ") + e.what());
  }
  if (g.n < 2) throw validation_error("graph needs at least the two terminals");
  if (g.bottom < 0 || g.bottom >= g.n || g.top < 0 || g.top >= g.n || g.bottom == g.top)
    throw validation_error("terminals out of range");
  g.finalize();
  if (g.has_codes())
    for (const VertexCode& c : g.codes) c.validate(std::max(g.depth, 1));

  // cheap bundle necessities: declared height realized, edges cross one level
  std::vector<int> lv = g.levels();
  for (int v = 0; v < g.n; ++v)
    if (lv[v] < 0) throw validation_error("graph is not connected");
  if (lv[g.top] != g.height) throw validation_error("declared height does not match the graph");
  for (const auto& [a, b] : g.edges)
    if (lv[a] == lv[b]) throw validation_error("edge inside one level; not a bundle");
  return g;
}

void save_graph(const BundleGraph& g, const std::string& path) {
  write_text_atomic(path, graph_json(g).dump(1) + "\n");
}

BundleGraph load_graph(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw validation_error("cannot parse '" + path + "': " + e.what());
  }
  return graph_from_json(j);
}

std::string dist_csv(const DistanceMatrix& dm) {
  std::string out = "id";
  for (int v = 0; v < dm.n; ++v) out += "," + std::to_string(v);
  out += "\n";
  for (int i = 0; i < dm.n; ++i) {
    out += std::to_string(i);
    for (int v = 0; v < dm.n; ++v) out += "," + std::to_string(dm.at(i, v));
    out += "\n";
  }
  return out;
}

std::string matrix_csv(const std::vector<std::vector<Rat>>& m) {
  int n = int(m.size());
  std::string out = "id";
  for (int v = 0; v < n; ++v) out += "," + std::to_string(v);
  out += "\n";
  for (int i = 0; i < n; ++i) {
    if (int(m[i].size()) != n) throw invariant_error("distance matrix is not square");
    out += std::to_string(i);
    for (int v = 0; v < n; ++v) out += "," + rational_csv(m[i][v]);
    out += "\n";
  }
  return out;
}

std::vector<std::vector<Rat>> matrix_from_csv(const std::string& text) {
  std::vector<std::string> rows = lines_of(text);
  if (rows.empty() || split(rows[0], ',').at(0) != "id")
    throw validation_error("distance matrix CSV must start with an 'id' header");
  int n = int(split(rows[0], ',').size()) - 1;
  if (int(rows.size()) != n + 1) throw validation_error("distance matrix CSV has wrong row count");
  std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
  for (int i = 0; i < n; ++i) {
    std::vector<std::string> cells = split(rows[i + 1], ',');
    if (int(cells.size()) != n + 1 || parse_int(cells[0]) != i)
      throw validation_error("distance matrix CSV row " + std::to_string(i) + " malformed");
    for (int v = 0; v < n; ++v) m[i][v] = rational_from_csv(cells[v + 1]);
  }
  return m;
}

std::string pairs_csv(const std::vector<std::vector<Rat>>& pow, int p) {
  int n = int(pow.size());
  std::string out = "i,j,p,pow,dist\n";
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double root = std::pow(pow[i][j].to_double(), 1.0 / p);
      out += std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(p) + "," +
             rational_csv(pow[i][j]) + "," + fmt_double(root) + "\n";
    }
  return out;
}

LoadedPairs pairs_from_csv(const std::string& text) {
  std::vector<std::string> rows = lines_of(text);
  if (rows.empty() || rows[0] != "i,j,p,pow,dist")
    throw validation_error("pair CSV must start with the 'i,j,p,pow,dist' header");
  LoadedPairs out;
  int n = 0;
  std::vector<std::tuple<int, int, Rat>> entries;
  for (size_t r = 1; r < rows.size(); ++r) {
    std::vector<std::string> cells = split(rows[r], ',');
    if (cells.size() != 5) throw validation_error("pair CSV row " + std::to_string(r) + " malformed");
    int i = int(parse_int(cells[0])), j = int(parse_int(cells[1]));
    int p = int(parse_int(cells[2]));
    if (r == 1)
      out.p = p;
    else if (p != out.p)
      throw validation_error("pair CSV mixes exponents");
    if (i < 0 || j <= i) throw validation_error("pair CSV needs i < j");
    entries.emplace_back(i, j, rational_from_csv(cells[3]));
    n = std::max(n, j + 1);
  }
  out.pow.assign(n, std::vector<Rat>(n, Rat(0)));
  std::vector<bool> seen(size_t(n) * n, false);
  for (const auto& [i, j, v] : entries) {
    if (seen[size_t(i) * n + j]) throw validation_error("pair CSV repeats a pair");
    seen[size_t(i) * n + j] = true;
    out.pow[i][j] = v;
    out.pow[j][i] = v;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!seen[size_t(i) * n + j]) throw validation_error("pair CSV misses a pair");
  return out;
}

json embedding_json(const std::vector<SparseVector>& images,
                    const std::vector<std::string>& coord_names, const json& meta) {
  json out;
  out["_meta"] = meta;
  for (size_t v = 0; v < images.size(); ++v) {
    json jv = json::object();
    for (const auto& [key, val] : images[v].entries) {
      if (key < 0 || key >= int(coord_names.size()))
        throw invariant_error("image coordinate without a name");
      jv[coord_names[key]] = rational_json(val);
    }
    out[std::to_string(v)] = jv;
  }
  return out;
}

LoadedEmbedding embedding_from_json(const json& j, int n) {
  if (!j.is_object()) throw validation_error("embedding JSON must be an object");
  LoadedEmbedding out;
  out.meta = j.contains("_meta") ? j.at("_meta") : json::object();
  out.images.resize(n);
  std::vector<bool> seen(n, false);
  try {
    for (const auto& [key, val] : j.items()) {
      if (key == "_meta") continue;
      if (!val.is_object()) throw validation_error("vertex entry for '" + key + "' is not an object");
      for (const auto& [name, cell] : val.items()) {
        (void)cell;
        out.coord_names.push_back(name);
      }
    }
    std::sort(out.coord_names.begin(), out.coord_names.end());
    out.coord_names.erase(std::unique(out.coord_names.begin(), out.coord_names.end()),
                          out.coord_names.end());
    std::map<std::string, int> key_of;
    for (size_t i = 0; i < out.coord_names.size(); ++i) key_of[out.coord_names[i]] = int(i);

    for (const auto& [key, val] : j.items()) {
      if (key == "_meta") continue;
      long long v = parse_int(key);
      if (v < 0 || v >= n) throw validation_error("embedding vertex id " + key + " out of range");
      if (seen[v]) throw validation_error("embedding repeats vertex " + key);
      seen[v] = true;
      for (const auto& [name, cell] : val.items())
        out.images[v].set(key_of.at(name), rational_from_json(cell));
      out.images[v].sort_keys();
    }
  } catch (const json::exception& e) {
    throw validation_error(std::string("malformed embedding JSON: ") + e.what());
  }
  for (int v = 0; v < n; ++v)
    if (!seen[v]) throw validation_error("embedding misses vertex " + std::to_string(v));
  return out;
}

std::string curve_csv(const BoundCurve& c) {
  std::string out = "k,c,floor\n";
  for (size_t i = 0; i < c.c.size(); ++i)
    out += std::to_string(i + 1) + "," + fmt_double(c.c[i]) + "," + fmt_double(c.floor_at[i]) + "\n";
  return out;
}

BoundCurve curve_from_csv(const std::string& text) {
  std::vector<std::string> rows = lines_of(text);
  if (rows.empty() || rows[0] != "k,c,floor")
    throw validation_error("curve CSV must start with the 'k,c,floor' header");
  BoundCurve out;
  for (size_t r = 1; r < rows.size(); ++r) {
    std::vector<std::string> cells = split(rows[r], ',');
    if (cells.size() != 3 || parse_int(cells[0]) != (long long)r)
      throw validation_error("curve CSV row " + std::to_string(r) + " malformed");
    out.c.push_back(parse_double(cells[1]));
    out.floor_at.push_back(parse_double(cells[2]));
  }
  if (!out.c.empty()) out.c1 = out.c.front();
  return out;
}

namespace {

json ratio_json(const RatioExtreme& e) {
  return json{{"pow", rational_json(e.pow)}, {"value", e.value}, {"pair", json::array({e.i, e.j})}};
}

}  // namespace

json report_json(const DistortionReport& r, const json& config, double upper_bound) {
  json out;
  out["config"] = config;
  out["norm"] = r.norm.str();
  out["lip"] = ratio_json(r.lip);
  out["colip"] = ratio_json(r.colip);
  out["finite"] = r.finite;
  out["distortion"] = r.distortion;
  if (r.finite) out["distortion_pow"] = rational_json(r.distortion_pow);
  out["max_support"] = r.max_support;
  if (r.has_classes) {
    out["vertical"] = json{{"lip", ratio_json(r.lip_vertical)}, {"colip", ratio_json(r.colip_vertical)}};
    out["other"] = json{{"lip", ratio_json(r.lip_other)}, {"colip", ratio_json(r.colip_other)}};
  }
  if (upper_bound > 0) out["upper_bound"] = upper_bound;
  return out;
}

}  // namespace oslash
