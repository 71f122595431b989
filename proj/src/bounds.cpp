#include "oslash/bounds.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>

#include "oslash/metric.hpp"
#include "oslash/rng.hpp"
#include "oslash/worker.hpp"

namespace oslash {

void ModulusSpec::validate() const {
  if (p < 1.0) throw validation_error("modulus exponent must be at least 1");
  switch (kind) {
    case Kind::power:
      if (!(gamma > 0)) throw validation_error("power modulus needs gamma > 0");
      break;
    case Kind::lp_exact:
      break;
    case Kind::table: {
      if (grid.empty()) throw validation_error("table modulus needs at least one point");
      double pt = 0, pd = 0;
      for (const auto& [t, d] : grid) {
        if (t <= pt) throw validation_error("table modulus arguments must increase from above 0");
        if (d < pd) throw validation_error("table modulus values must be nondecreasing");
        if (d >= 5) throw validation_error("table modulus values must stay below 5");
        pt = t;
        pd = d;
      }
      break;
    }
  }
}

double ModulusSpec::value(double t) const {
  switch (kind) {
    case Kind::power:
      return gamma * std::pow(t, p);
    case Kind::lp_exact:
      return std::pow(1.0 + std::pow(t, p), 1.0 / p) - 1.0;
    case Kind::table: {
      double v = 0;
      for (const auto& [tt, d] : grid) {
        if (tt > t) break;
        v = d;
      }
      return v;
    }
  }
  throw invariant_error("unreachable modulus kind");
}

double ModulusSpec::effective_gamma() const {
  switch (kind) {
    case Kind::power:
      return gamma;
    case Kind::lp_exact:
      // (1+x)^(1/p) - 1 is concave in x, so it dominates its chord to x = 1
      return std::pow(2.0, 1.0 / p) - 1.0;
    case Kind::table:
      // the step reading vanishes below the grid, so no power law holds
      return 0.0;
  }
  throw invariant_error("unreachable modulus kind");
}

namespace {

double lp_dist_d(const std::vector<double>& a, const std::vector<double>& b, double p) {
  double s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += std::pow(std::fabs(a[i] - b[i]), p);
  return std::pow(s, 1.0 / p);
}

void check_bar_args(size_t na, size_t nb, size_t nz, double lambda, double delta, double p) {
  if (na != nb || na != nz) throw validation_error("barycenter points have mismatched dimensions");
  if (!(lambda > 0 && lambda < 1)) throw validation_error("lambda must lie strictly inside (0,1)");
  if (delta < 0) throw validation_error("delta must be nonnegative");
  if (p < 1) throw validation_error("p must be at least 1");
}

}  // namespace

double bar_ratio(const std::vector<double>& a, const std::vector<double>& b,
                 const std::vector<double>& z, double lambda, double delta, double p) {
  check_bar_args(a.size(), b.size(), z.size(), lambda, delta, p);
  double d = lp_dist_d(a, b, p);
  if (!(d > 0)) throw validation_error("barycenter endpoints coincide");
  double s = (1.0 + delta) * d;
  return std::max(lp_dist_d(a, z, p) / (lambda * s), lp_dist_d(z, b, p) / ((1.0 - lambda) * s));
}

bool in_bar(const std::vector<double>& a, const std::vector<double>& b,
            const std::vector<double>& z, double lambda, double delta, double p) {
  return bar_ratio(a, b, z, lambda, delta, p) <= 1.0;
}

bool bar_membership(const SparseVector& x, const SparseVector& y, const SparseVector& z,
                    const Rat& lambda, const Rat& delta, NormSpec norm) {
  Rat one(1);
  if (!(lambda > Rat(0) && lambda < one))
    throw validation_error("lambda must lie strictly inside (0,1)");
  if (delta < Rat(0)) throw validation_error("delta must be nonnegative");
  int p = norm.power();
  Rat dxy = norm_pow(x - y, norm);
  if (dxy.is_zero()) throw validation_error("barycenter endpoints coincide");
  Rat grow = (one + delta).pow(p);
  return norm_pow(x - z, norm) <= lambda.pow(p) * grow * dxy &&
         norm_pow(z - y, norm) <= (one - lambda).pow(p) * grow * dxy;
}

Lemma51Stats check_lemma51(int dim, double p, long long samples, uint64_t seed, int threads) {
  if (dim < 2 || dim > 1024) throw validation_error("dimension must be in 2..1024");
  if (p < 1) throw validation_error("p must be at least 1");
  if (samples < 1 || samples > 100000000) throw validation_error("samples must be in 1..1e8");

  std::atomic<long long> hits{0}, bad{0};
  std::atomic<double> worst{0};
  const double band = 1e-9;

  parallel_for(int(samples), threads, [&](int i) {
    SplitMix64 rng(substream_seed(seed, uint64_t(i)));
    std::vector<double> x(dim), zdir(dim), z(dim), a(dim), b(dim), am(dim), bm(dim);
    auto fill_unit = [&](std::vector<double>& v) {
      double n;
      do {
        for (int d = 0; d < dim; ++d) v[d] = rng.uniform(-1, 1);
        n = 0;
        for (int d = 0; d < dim; ++d) n += std::pow(std::fabs(v[d]), p);
        n = std::pow(n, 1.0 / p);
      } while (n < 1e-6);
      return n;
    };
    double nx = fill_unit(x);
    double lambda = rng.uniform(0.05, 0.95);
    double delta = 0.5 * std::max(rng.u01(), 1e-12);
    double nz = fill_unit(zdir);
    double scale = delta * std::min(lambda, 1.0 - lambda) * nx * rng.uniform(0, 2);
    for (int d = 0; d < dim; ++d) {
      z[d] = zdir[d] / nz * scale;
      a[d] = -lambda * x[d];
      b[d] = (1.0 - lambda) * x[d];
    }
    if (bar_ratio(a, b, z, lambda, delta, p) > 1.0 - band) return;
    hits.fetch_add(1, std::memory_order_relaxed);

    double mu = std::max(lambda, 1.0 - lambda);
    for (int d = 0; d < dim; ++d) {
      am[d] = -mu * x[d];
      bm[d] = mu * x[d];
    }
    double rm = bar_ratio(am, bm, z, 0.5, delta, p);
    if (rm > 1.0 + band) {
      bad.fetch_add(1, std::memory_order_relaxed);
      double cur = worst.load();
      while (rm - 1.0 > cur && !worst.compare_exchange_weak(cur, rm - 1.0)) {
      }
    }
  });

  Lemma51Stats out;
  out.samples = samples;
  out.in_bar = hits.load();
  out.violations = bad.load();
  out.worst_margin = worst.load();
  return out;
}

FanLevel compute_rho(const BundleGraph& g) {
  if (g.adj.empty()) throw invariant_error("graph not finalized");
  std::vector<int> lv = g.levels();
  for (int v = 0; v < g.n; ++v)
    if (lv[v] < 0 || lv[v] > g.height) throw validation_error("graph levels exceed its height");
  std::map<std::vector<int>, int> cls;  // adjacency -> class size; twins share levels
  for (int v = 0; v < g.n; ++v) {
    std::vector<int> key = g.adj[v];
    std::sort(key.begin(), key.end());
    ++cls[key];
  }
  int best = 0;
  for (const auto& [key, cnt] : cls) best = std::max(best, cnt);
  if (best < 3) throw validation_error("graph has no fan of three or more parallel vertices");

  std::vector<int> per_level(size_t(g.height) + 1, 0);
  for (int v = 0; v < g.n; ++v) ++per_level[lv[v]];
  int fan_level = -1;
  for (const auto& [key, cnt] : cls) {
    if (cnt != best) continue;
    std::vector<int> members;
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> k2 = g.adj[v];
      std::sort(k2.begin(), k2.end());
      if (k2 == key) members.push_back(v);
    }
    int l = lv[members.front()];
    if (fan_level < 0 || per_level[l] > per_level[fan_level] ||
        (per_level[l] == per_level[fan_level] && l < fan_level))
      fan_level = l;
  }
  return {fan_level, int(std::max<long long>(fan_level, g.height - fan_level))};
}

BoundCurve lower_bound_curve(const ModulusSpec& mod, double rho, int kmax, double c1) {
  mod.validate();
  if (!(mod.p > 1)) throw validation_error("curve exponent must exceed 1");
  if (rho < 1) throw validation_error("rho must be at least 1");
  if (kmax < 1 || kmax > 100000) throw validation_error("curve length must be in 1..100000");
  if (c1 < 1) throw validation_error("curve start must be at least 1");

  BoundCurve out;
  out.p = mod.p;
  out.gamma = mod.effective_gamma();
  out.rho = rho;
  out.c1 = c1;
  double bigk = out.gamma / (5.0 * std::pow(9.0 * rho, mod.p));
  out.bigk = bigk;
  auto g = [&](double c) { return c * (1.0 - mod.value(1.0 / (9.0 * rho * c)) / 5.0); };

  double c = c1;
  for (int k = 1; k <= kmax; ++k) {
    if (k > 1 && g(c) < c) {
      // g increases in c, so the smallest c with g(c) >= previous sits in
      // [prev, hi]; keep the certified upper end
      double prev = c, lo = c, hi = 2 * c;
      while (g(hi) < prev) hi *= 2;
      while (hi - lo > 1e-12 * hi) {
        double mid = 0.5 * (lo + hi);
        (g(mid) >= prev ? hi : lo) = mid;
      }
      c = hi;
    }
    out.c.push_back(c);
    out.floor_at.push_back(std::pow(bigk * (k - 1), 1.0 / mod.p));
  }
  return out;
}

namespace {

std::vector<int> subgraph_map(const BundleGraph& deep, const BundleGraph& shallow) {
  if (shallow.n < 2 || shallow.n > deep.n)
    throw validation_error("restriction target is not smaller than the source");
  std::vector<int> sub(shallow.n);
  if (deep.has_codes() && shallow.has_codes()) {
    std::map<VertexCode, int> idx;
    for (int v = 0; v < deep.n; ++v) idx[deep.codes[v]] = v;
    for (int i = 0; i < shallow.n; ++i) {
      auto it = idx.find(shallow.codes[i]);
      if (it == idx.end())
        throw validation_error("vertex " + shallow.codes[i].str() + " has no copy in the deep graph");
      sub[i] = it->second;
    }
  } else {
    // recursive constructions keep the previous depth as an index prefix
    for (int i = 0; i < shallow.n; ++i) sub[i] = i;
  }
  return sub;
}

struct SubCheck {
  std::vector<int> sub;
  i64 scale;
  DistanceMatrix deep_dm, scaled_dm;
};

SubCheck checked_restriction(const BundleGraph& deep, const BundleGraph& shallow, int threads) {
  SubCheck s;
  s.sub = subgraph_map(deep, shallow);
  if (shallow.height <= 0 || deep.height % shallow.height != 0)
    throw validation_error("heights are not in an integer ratio");
  s.scale = deep.height / shallow.height;
  s.deep_dm = bfs_all_pairs(deep, threads);
  DistanceMatrix dm = bfs_all_pairs(shallow, threads);
  s.scaled_dm = DistanceMatrix(shallow.n);
  for (int i = 0; i < shallow.n; ++i)
    for (int j = 0; j < shallow.n; ++j) {
      s.scaled_dm.at(i, j) = int32_t(s.scale * dm.at(i, j));
      if (s.deep_dm.at(s.sub[i], s.sub[j]) != s.scaled_dm.at(i, j))
        throw validation_error("copy is not a scaled isometric subgraph at pair (" +
                               std::to_string(i) + "," + std::to_string(j) + ")");
    }
  return s;
}

}  // namespace

Restriction self_improve_restrict(const BundleGraph& deep, const std::vector<SparseVector>& images,
                                  const BundleGraph& shallow, NormSpec norm, int threads) {
  if (int(images.size()) != deep.n) throw validation_error("image count does not match the graph");
  SubCheck s = checked_restriction(deep, shallow, threads);
  Restriction out;
  out.subset = s.sub;
  out.scale = s.scale;
  out.before = evaluate(images, s.deep_dm, norm, {}, threads);
  out.images.resize(shallow.n);
  for (int i = 0; i < shallow.n; ++i) out.images[i] = images[s.sub[i]];
  out.after = evaluate(out.images, s.scaled_dm, norm, {}, threads);
  return out;
}

Restriction self_improve_restrict_powers(const BundleGraph& deep,
                                         const std::vector<std::vector<Rat>>& dist_pow,
                                         const BundleGraph& shallow, NormSpec norm, int threads) {
  if (int(dist_pow.size()) != deep.n) throw validation_error("distance rows do not match the graph");
  SubCheck s = checked_restriction(deep, shallow, threads);
  Restriction out;
  out.subset = s.sub;
  out.scale = s.scale;
  out.before = evaluate_powers(dist_pow, s.deep_dm, norm, {}, threads);
  out.dist_pow.assign(shallow.n, std::vector<Rat>(shallow.n, Rat(0)));
  for (int i = 0; i < shallow.n; ++i)
    for (int j = 0; j < shallow.n; ++j) out.dist_pow[i][j] = dist_pow[s.sub[i]][s.sub[j]];
  out.after = evaluate_powers(out.dist_pow, s.scaled_dm, norm, {}, threads);
  return out;
}

}  // namespace oslash
