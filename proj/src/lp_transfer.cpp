#include "oslash/lp_transfer.hpp"

#include <algorithm>
#include <map>

#include "oslash/worker.hpp"

namespace oslash {

BaseEmbedding frechet_base(int k) {
  BaseEmbedding b;
  b.graph = build_coded(k, 2);
  DistanceMatrix dm = bfs_all_pairs(b.graph);
  b.images.resize(b.graph.n);
  for (int v = 0; v < b.graph.n; ++v) {
    for (int u = 0; u < b.graph.n; ++u)
      if (dm.at(v, u)) b.images[v].set(u, Rat(dm.at(v, u)));
    b.images[v].sort_keys();
  }
  b.ynorm = {NormSpec::Kind::sup, 1};
  certify_base(b);
  return b;
}

void certify_base(BaseEmbedding& b) {
  if (b.ynorm.kind == NormSpec::Kind::p)
    throw validation_error("transfer base norm must be sup or l1 so embedded distances stay exact");
  if (int(b.images.size()) != b.graph.n) throw validation_error("base embedding misses vertices");
  DistanceMatrix dm = bfs_all_pairs(b.graph);
  Rat c(0);
  for (int i = 0; i < b.graph.n; ++i)
    for (int j = i + 1; j < b.graph.n; ++j) {
      Rat nd = norm_pow(b.images[i] - b.images[j], b.ynorm);
      Rat d(dm.at(i, j));
      if (nd > d)
        throw validation_error("base embedding is not 1-Lipschitz at pair (" + std::to_string(i) +
                               "," + std::to_string(j) + "); scale it down first");
      if (nd.is_zero())
        throw validation_error("base embedding collapses pair (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
      if (d / nd > c) c = d / nd;
    }
  b.c = c;
  b.certified = true;
}

VertexCode corner_inject(Corner c, const VertexCode& v) {
  Dyadic half(1, 1);
  bool left = c == Corner::upper_left || c == Corner::lower_left;
  int j = left ? 1 : 2;
  if (c == Corner::upper_left || c == Corner::upper_right) {
    if (v.is_bottom()) return VertexCode({j}, half);
    if (v.is_top()) return v;
    return VertexCode(shift_in(j, v.elems), (v.r + Dyadic(1)).half());
  }
  if (v.is_bottom()) return v;
  if (v.is_top()) return VertexCode({j}, half);
  return VertexCode(shift_in(j, v.elems), v.r.half());
}

namespace {

StepFunction constant_fn(int pool_id) { return {{}, {pool_id}}; }

// Children were built after `bit` and after each other, so the three dep
// ranges are pairwise disjoint; a duplicate would corrupt the table index.
StepFunction combine(int bit, const StepFunction& f0, const StepFunction& f1) {
  StepFunction out;
  out.deps.push_back(bit);
  out.deps.insert(out.deps.end(), f0.deps.begin(), f0.deps.end());
  out.deps.insert(out.deps.end(), f1.deps.begin(), f1.deps.end());
  std::sort(out.deps.begin(), out.deps.end());
  for (size_t q = 1; q < out.deps.size(); ++q)
    if (out.deps[q] == out.deps[q - 1]) throw invariant_error("selector bit shared across branches");

  auto positions = [&](const StepFunction& f) {
    std::vector<int> pos(f.deps.size());
    for (size_t q = 0; q < f.deps.size(); ++q)
      pos[q] = int(std::lower_bound(out.deps.begin(), out.deps.end(), f.deps[q]) - out.deps.begin());
    return pos;
  };
  std::vector<int> p0 = positions(f0), p1 = positions(f1);
  int bitpos = int(std::lower_bound(out.deps.begin(), out.deps.end(), bit) - out.deps.begin());

  out.table.resize(size_t(1) << out.deps.size());
  for (size_t mask = 0; mask < out.table.size(); ++mask) {
    const StepFunction& f = (mask >> bitpos) & 1 ? f1 : f0;
    const std::vector<int>& pos = (mask >> bitpos) & 1 ? p1 : p0;
    size_t sub = 0;
    for (size_t q = 0; q < pos.size(); ++q) sub |= ((mask >> pos[q]) & 1) << q;
    out.table[mask] = f.table[sub];
  }
  return out;
}

struct Builder {
  int w;
  int next_bit = 0;
  std::vector<BundleGraph> wides, bins;  // index by depth, slot 0 unused
  std::vector<std::map<VertexCode, int>> widx, bidx;

  Builder(int depth, int branching) : w(branching) {
    wides.resize(depth + 1);
    bins.resize(depth + 1);
    widx.resize(depth + 1);
    bidx.resize(depth + 1);
    for (int k = 1; k <= depth; ++k) {
      wides[k] = build_coded(k, w);
      bins[k] = build_coded(k, 2);
      for (int v = 0; v < wides[k].n; ++v) widx[k][wides[k].codes[v]] = v;
      for (int v = 0; v < bins[k].n; ++v) bidx[k][bins[k].codes[v]] = v;
    }
  }

  std::vector<int> compose(Corner c, int k, const std::vector<int>& iota) {
    const BundleGraph& child = bins[k - 1];
    std::vector<int> out(child.n);
    for (int i = 0; i < child.n; ++i) out[i] = iota[bidx[k].at(corner_inject(c, child.codes[i]))];
    return out;
  }

  // iota maps depth-k binary vertex ids to pool ids. Selector bits for the w
  // fans of this subdiamond come first, then the four quarters in a fixed
  // order, so bit numbering is reproducible.
  std::vector<StepFunction> rec(int k, const std::vector<int>& iota) {
    const BundleGraph& wk = wides[k];
    std::vector<StepFunction> out(wk.n);
    int eps0 = next_bit;
    next_bit += w;
    Dyadic half(1, 1);

    if (k == 1) {
      int left = iota[bidx[1].at(VertexCode({1}, half))];
      int right = iota[bidx[1].at(VertexCode({2}, half))];
      for (int v = 0; v < wk.n; ++v) {
        const VertexCode& c = wk.codes[v];
        if (c.is_terminal())
          out[v] = constant_fn(iota[bidx[1].at(c)]);
        else
          out[v] = {{eps0 + c.min_elem() - 1}, {left, right}};
      }
      return out;
    }

    auto ul = rec(k - 1, compose(Corner::upper_left, k, iota));
    auto ur = rec(k - 1, compose(Corner::upper_right, k, iota));
    auto ll = rec(k - 1, compose(Corner::lower_left, k, iota));
    auto lr = rec(k - 1, compose(Corner::lower_right, k, iota));

    for (int v = 0; v < wk.n; ++v) {
      const VertexCode& c = wk.codes[v];
      if (c.is_terminal()) {
        out[v] = constant_fn(iota[bidx[k].at(c)]);
        continue;
      }
      int j = c.min_elem();
      if (c.r >= half) {
        int u = widx[k - 1].at(isometry_apply(Isometry::up, j, c));
        out[v] = combine(eps0 + j - 1, ul[u], ur[u]);
      } else {
        int u = widx[k - 1].at(isometry_apply(Isometry::down, j, c));
        out[v] = combine(eps0 + j - 1, ll[u], lr[u]);
      }
    }
    return out;
  }
};

}  // namespace

TransferredEmbedding transfer(const BaseEmbedding& base, int w) {
  if (!base.certified) throw invariant_error("transferring an uncertified base");
  if (w < 2 || w > 6) throw validation_error("transfer branching must be in 2..6");
  int depth = base.graph.depth;
  if (depth < 1 || depth > 6) throw validation_error("base depth must be in 1..6");

  Builder b(depth, w);
  if (base.graph.n != b.bins[depth].n || !base.graph.has_codes())
    throw validation_error("transfer base graph is not the canonical binary coded graph");
  for (int v = 0; v < base.graph.n; ++v)
    if (!(base.graph.codes[v] == b.bins[depth].codes[v]))
      throw validation_error("transfer base graph is not in canonical vertex order");

  std::vector<int> identity(base.graph.n);
  for (int v = 0; v < base.graph.n; ++v) identity[v] = v;

  TransferredEmbedding out;
  out.base = base;
  out.graph = b.wides[depth];
  out.fns = b.rec(depth, identity);
  out.bits = b.next_bit;
  return out;
}

TransferEvaluator::TransferEvaluator(const BaseEmbedding& base, int pp) : p(pp) {
  if (!base.certified) throw invariant_error("evaluating against an uncertified base");
  if (p < 1 || p > 16) throw validation_error("transfer exponent must be in 1..16");
  int n = base.graph.n;
  delta_pow.assign(n, std::vector<Rat>(n, Rat(0)));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Rat v = norm_pow(base.images[i] - base.images[j], base.ynorm).pow(p);
      delta_pow[i][j] = v;
      delta_pow[j][i] = v;
    }
}

Rat TransferEvaluator::pair_pow(const StepFunction& f, const StepFunction& g) const {
  std::vector<int> deps(f.deps.size() + g.deps.size());
  std::merge(f.deps.begin(), f.deps.end(), g.deps.begin(), g.deps.end(), deps.begin());
  deps.erase(std::unique(deps.begin(), deps.end()), deps.end());
  int n = int(deps.size());
  if (n > 24) throw validation_error("pair depends on more than 24 selector bits; reduce depth");

  auto positions = [&](const StepFunction& h) {
    std::vector<int> pos(h.deps.size());
    for (size_t q = 0; q < h.deps.size(); ++q)
      pos[q] = int(std::lower_bound(deps.begin(), deps.end(), h.deps[q]) - deps.begin());
    return pos;
  };
  std::vector<int> pf = positions(f), pg = positions(g);

  int pool = int(delta_pow.size());
  std::vector<i64> counts(size_t(pool) * pool, 0);
  std::vector<size_t> touched;
  for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
    size_t fi = 0, gi = 0;
    for (size_t q = 0; q < pf.size(); ++q) fi |= ((mask >> pf[q]) & 1) << q;
    for (size_t q = 0; q < pg.size(); ++q) gi |= ((mask >> pg[q]) & 1) << q;
    size_t cell = size_t(f.table[fi]) * pool + g.table[gi];
    if (counts[cell]++ == 0) touched.push_back(cell);
  }

  // group numerators by denominator so the accumulator stays in 128 bits
  std::map<i64, i128> by_den;
  for (size_t cell : touched) {
    const Rat& v = delta_pow[cell / pool][cell % pool];
    if (!v.is_zero()) by_den[v.den] += i128(counts[cell]) * v.num;
  }
  Rat out(0);
  for (const auto& [den, num] : by_den) {
    Rat term;
    term.assign(num, i128(den) << n);
    out = out + term;
  }
  return out;
}

std::vector<std::vector<Rat>> transfer_pair_powers(const TransferredEmbedding& emb, int p,
                                                   int threads) {
  TransferEvaluator ev(emb.base, p);
  int n = emb.graph.n;
  std::vector<std::vector<Rat>> out(n, std::vector<Rat>(n, Rat(0)));
  parallel_for(n, threads, [&](int i) {
    for (int j = i + 1; j < n; ++j) out[i][j] = ev.pair_pow(emb.fns[i], emb.fns[j]);
  });
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) out[i][j] = out[j][i];
  return out;
}

}  // namespace oslash
