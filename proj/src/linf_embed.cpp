#include "oslash/linf_embed.hpp"

#include <algorithm>

namespace oslash {

std::string GoodTree::coord_name(int idx) const {
  const auto& a = nodes.at(idx);
  std::string s = "{";
  for (size_t i = 0; i < a.size(); ++i) s += (i ? "," : "") + std::to_string(a[i]);
  return s + "}";
}

GoodTree build_good_tree(int k, int w) {
  if (k < 0 || k > 30) throw validation_error("depth out of range");
  if (w < 1) throw validation_error("branching must be positive");
  GoodTree t;
  t.k = k;
  t.w = w;
  t.nodes.push_back({});
  for (size_t i = 0; i < t.nodes.size(); ++i) {
    std::vector<int> a = t.nodes[i];
    if (int(a.size()) == k) continue;
    int last = a.empty() ? 0 : a.back();
    for (int gap = 1; gap <= w; ++gap) {
      a.push_back(last + gap);
      t.nodes.push_back(a);
      a.pop_back();
    }
  }
  std::sort(t.nodes.begin(), t.nodes.end(), [](const std::vector<int>& a, const std::vector<int>& b) {
    int ma = a.empty() ? 0 : a.back(), mb = b.empty() ? 0 : b.back();
    return ma != mb ? ma < mb : a < b;
  });
  for (int i = 0; i < int(t.nodes.size()); ++i) t.index[t.nodes[i]] = i;
  return t;
}

namespace {

i64 coeff(int k, int i, const Dyadic& r) {
  if (i == 0) return r.scaled(k);
  if (k == 1) return 1;  // only (i, r) = (1, 1/2) reaches here
  Dyadic half(1, 1);
  Dyadic folded = r <= half ? r.twice() : (Dyadic(1) - r).twice();
  return coeff(k - 1, i - 1, folded);
}

void check_domain(int k, int i, const Dyadic& r) {
  bool ok = i >= 0 && i <= k && r >= Dyadic(0) && r <= Dyadic(1) && r.exp <= k &&
            (i == 0 || (r.exp >= i && r.exp >= 1));
  if (!ok)
    throw validation_error("coefficient undefined at depth " + std::to_string(k) + ", index " +
                           std::to_string(i) + ", height " + r.str());
}

}  // namespace

i64 CoefficientTable::at(int i, const Dyadic& r) const {
  check_domain(k, i, r);
  return values.at({i, {r.num, r.exp}});
}

CoefficientTable coefficients(int k) {
  if (k < 1 || k > 30) throw validation_error("depth out of range");
  CoefficientTable t;
  t.k = k;
  for (int i = 0; i <= k; ++i) {
    for (int m = std::max(i, 1); m <= k; ++m)
      for (i64 num = 1; num < (i64(1) << m); num += 2) {
        Dyadic r(num, m);
        t.values[{i, {r.num, r.exp}}] = coeff(k, i, r);
      }
    if (i == 0) {
      t.values[{0, {0, 0}}] = 0;
      t.values[{0, {1, 0}}] = i64(1) << k;
    }
  }
  return t;
}

SparseVector psi(int k, const VertexCode& v, const GoodTree& tree, const CoefficientTable& c) {
  if (tree.k != k || c.k != k) throw validation_error("tree or table depth mismatch");
  v.validate(k);
  SparseVector out;
  for (int len = 0; len <= int(v.elems.size()); ++len) {
    std::vector<int> prefix(v.elems.begin(), v.elems.begin() + len);
    auto it = tree.index.find(prefix);
    if (it == tree.index.end()) throw validation_error("code " + v.str() + " leaves the tree");
    out.set(it->second, Rat(c.at(len, v.r)));
  }
  out.sort_keys();
  return out;
}

Rat functional_coordinate(const SparseVector& image) {
  for (const auto& [key, val] : image.entries)
    if (key == 0) return val;
  return Rat(0);
}

int lp_parameter(int k, double eps) {
  if (k < 1) throw validation_error("depth out of range");
  if (eps <= 0) throw validation_error("eps must be positive");
  double target = 2.0 * k + 2.0;
  double base = 1.0 + eps / 3.0;
  double acc = base;
  int p = 1;
  while (acc < target * (1.0 - 1e-12) && p < 512) {
    acc *= base;
    ++p;
  }
  if (p >= 512) throw validation_error("eps too small: required p-norm exponent exceeds 512");
  return p;
}

std::vector<SparseVector> embed_tree(const BundleGraph& g, const GoodTree& tree,
                                     const CoefficientTable& c) {
  if (!g.has_codes()) throw validation_error("tree embedding needs a labelled graph");
  std::vector<SparseVector> images;
  images.reserve(g.n);
  for (int v = 0; v < g.n; ++v) images.push_back(psi(tree.k, g.codes[v], tree, c));
  return images;
}

}  // namespace oslash
