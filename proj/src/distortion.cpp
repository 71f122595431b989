#include "oslash/distortion.hpp"

#include <cmath>
#include <limits>

#include "oslash/worker.hpp"

namespace oslash {

namespace {

void take(RatioExtreme& e, const Rat& pow, int i, int j, int want_sign) {
  if (e.set()) {
    int c = cmp(pow, e.pow);
    if (c != want_sign && !(c == 0 && std::make_pair(i, j) < std::make_pair(e.i, e.j))) return;
  }
  e.pow = pow;
  e.i = i;
  e.j = j;
}

void take_max(RatioExtreme& e, const Rat& pow, int i, int j) { take(e, pow, i, j, 1); }
void take_min(RatioExtreme& e, const Rat& pow, int i, int j) { take(e, pow, i, j, -1); }

struct Extremes {
  RatioExtreme lip, colip, lip_v, colip_v, lip_o, colip_o;
};

void merge_max(RatioExtreme& into, const RatioExtreme& from) {
  if (from.set()) take_max(into, from.pow, from.i, from.j);
}
void merge_min(RatioExtreme& into, const RatioExtreme& from) {
  if (from.set()) take_min(into, from.pow, from.i, from.j);
}

DistortionReport finish(Extremes ex, NormSpec norm, bool classes, int max_support) {
  DistortionReport rep;
  rep.norm = norm;
  rep.lip = ex.lip;
  rep.colip = ex.colip;
  rep.has_classes = classes;
  rep.lip_vertical = ex.lip_v;
  rep.colip_vertical = ex.colip_v;
  rep.lip_other = ex.lip_o;
  rep.colip_other = ex.colip_o;
  rep.max_support = max_support;
  if (!rep.lip.set()) throw validation_error("no vertex pairs to measure");

  double inv_p = 1.0 / norm.power();
  auto reading = [&](RatioExtreme& e) {
    if (e.set()) e.value = std::pow(e.pow.to_double(), inv_p);
  };
  reading(rep.lip);
  reading(rep.colip);
  reading(rep.lip_vertical);
  reading(rep.colip_vertical);
  reading(rep.lip_other);
  reading(rep.colip_other);

  if (rep.colip.pow.is_zero()) {
    rep.finite = false;
    rep.distortion = std::numeric_limits<double>::infinity();
  } else {
    rep.distortion_pow = rep.lip.pow / rep.colip.pow;
    rep.distortion = std::pow(rep.distortion_pow.to_double(), inv_p);
  }
  return rep;
}

DistortionReport run(int n, const DistanceMatrix& dm, NormSpec norm,
                     const std::function<Rat(int, int)>& pair_pow, const PairClassifier& vertical,
                     int threads, int max_support) {
  if (n != dm.n) throw validation_error("image count does not match the distance matrix");
  if (n < 2) throw validation_error("no vertex pairs to measure");
  int pw = norm.power();

  std::vector<Extremes> by_row(n);
  parallel_for(n, threads, [&](int i) {
    Extremes& ex = by_row[i];
    for (int j = i + 1; j < n; ++j) {
      i64 d = dm.at(i, j);
      if (d <= 0) throw invariant_error("distance matrix has a non-positive off-diagonal entry");
      Rat ratio = pair_pow(i, j) / Rat(d).pow(pw);
      take_max(ex.lip, ratio, i, j);
      take_min(ex.colip, ratio, i, j);
      if (vertical) {
        bool v = vertical(i, j);
        take_max(v ? ex.lip_v : ex.lip_o, ratio, i, j);
        take_min(v ? ex.colip_v : ex.colip_o, ratio, i, j);
      }
    }
  });

  Extremes total;
  for (const Extremes& ex : by_row) {
    merge_max(total.lip, ex.lip);
    merge_min(total.colip, ex.colip);
    merge_max(total.lip_v, ex.lip_v);
    merge_min(total.colip_v, ex.colip_v);
    merge_max(total.lip_o, ex.lip_o);
    merge_min(total.colip_o, ex.colip_o);
  }
  return finish(total, norm, bool(vertical), max_support);
}

}  // namespace

DistortionReport evaluate(const std::vector<SparseVector>& images, const DistanceMatrix& dm,
                          NormSpec norm, const PairClassifier& vertical, int threads) {
  int max_support = 0;
  for (const auto& v : images) max_support = std::max(max_support, v.support());
  return run(int(images.size()), dm, norm,
             [&](int i, int j) { return norm_pow(images[i] - images[j], norm); }, vertical, threads,
             max_support);
}

DistortionReport evaluate_powers(const std::vector<std::vector<Rat>>& dist_pow,
                                 const DistanceMatrix& dm, NormSpec norm,
                                 const PairClassifier& vertical, int threads) {
  return run(int(dist_pow.size()), dm, norm, [&](int i, int j) { return dist_pow[i][j]; }, vertical,
             threads, 0);
}

}  // namespace oslash
