// Independent brute-force verifiers: Monte-Carlo hull volume, convex
// combinations of graph points, and the McCormick baseline for bilinear
// instances. Sampling is embarrassingly parallel over sample indices and
// bitwise deterministic for a fixed seed at any thread count.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "monenv/core.hpp"
#include "monenv/envelopes.hpp"
#include "monenv/geometry2d.hpp"
#include "monenv/rng.hpp"

namespace monenv {

struct McEstimate {
  double value = 0.0;
  double stderr_ = 0.0;
  long long samples = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline int resolve_threads(int requested) {
  int t = requested;
  if (t <= 0) {
    if (const char* env = std::getenv("MONENV_THREADS")) t = std::atoi(env);
    if (t <= 0) t = static_cast<int>(std::thread::hardware_concurrency());
  }
  return std::clamp(t, 1, 64);
}

// Counts indices in [0, n) accepted by pred. The count is an integer sum of
// per-index results, so it does not depend on how work is partitioned.
template <class Pred>
long long parallel_count(long long n, int threads, Pred&& pred) {
  threads = resolve_threads(threads);
  if (threads == 1) {
    long long hits = 0;
    for (long long k = 0; k < n; ++k) hits += pred(k) ? 1 : 0;
    return hits;
  }
  std::vector<long long> part(static_cast<std::size_t>(threads), 0);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&, t]() {
      long long hits = 0;
      for (long long k = t; k < n; k += threads) hits += pred(k) ? 1 : 0;
      part[static_cast<std::size_t>(t)] = hits;
    });
  }
  for (auto& th : pool) th.join();
  long long hits = 0;
  for (long long h : part) hits += h;
  return hits;
}

struct Box3 {
  double x1_hi, x2_hi, z_lo, z_hi;  // x ranges start at 0
};

template <class Pred>
McEstimate mc_region(const Box3& box, std::uint64_t seed, long long samples,
                     int threads, Pred&& pred) {
  const long long hits = parallel_count(samples, threads, [&](long long k) {
    const double x1 = box.x1_hi * u01(seed, static_cast<std::uint64_t>(k), 0);
    const double x2 = box.x2_hi * u01(seed, static_cast<std::uint64_t>(k), 1);
    const double z =
        box.z_lo +
        (box.z_hi - box.z_lo) * u01(seed, static_cast<std::uint64_t>(k), 2);
    return pred(x1, x2, z);
  });
  const double frac = static_cast<double>(hits) / static_cast<double>(samples);
  const double boxvol = box.x1_hi * box.x2_hi * (box.z_hi - box.z_lo);
  McEstimate e;
  e.value = boxvol * frac;
  e.stderr_ = boxvol * std::sqrt(frac * (1.0 - frac) /
                                 static_cast<double>(samples - 1));
  e.samples = samples;
  e.seed = seed;
  return e;
}

// A point of X `intersect` W drawn by the ratio parameterization: a ratio
// r in [p, q], a value xi in [l, u], free coordinates near 1, and the (i, j)
// pair solved so that f(x) = xi exactly.
inline std::vector<double> sample_wedge_point(const Model& m,
                                              std::uint64_t seed,
                                              std::uint64_t index,
                                              std::uint64_t slot0) {
  const MonomialInstance& inst = m.inst;
  const double r = inst.p + (inst.q - inst.p) * u01(seed, index, slot0);
  const double xi = inst.l + (inst.u - inst.l) * u01(seed, index, slot0 + 1);
  std::vector<double> x(static_cast<std::size_t>(inst.n()), 1.0);
  double rest_log = 0.0;
  for (int k = 0; k < inst.n(); ++k) {
    if (k == inst.i || k == inst.j) continue;
    // log-uniform in [1/2, 2]
    const double c = std::exp((2.0 * u01(seed, index, slot0 + 2 + k) - 1.0) *
                              std::log(2.0));
    x[static_cast<std::size_t>(k)] = c;
    rest_log += inst.a[k] * std::log(c);
  }
  const double s = inst.a[inst.i] + inst.a[inst.j];
  const double xi_log =
      (std::log(xi) - rest_log - inst.a[inst.j] * std::log(r)) / s;
  x[static_cast<std::size_t>(inst.i)] = std::exp(xi_log);
  x[static_cast<std::size_t>(inst.j)] = r * x[static_cast<std::size_t>(inst.i)];
  return x;
}

}  // namespace detail

/// Monte-Carlo estimate of the n=2 hull volume: uniform sampling over
/// [0,w1] x [0,w2] x [l,u], counting points accepted by in_hull_2d.
inline McEstimate mc_volume(const Model& m, std::uint64_t seed,
                            long long samples, int threads = 0) {
  if (samples < 1000) throw std::domain_error("need at least 1e3 samples");
  const BoundingBox bb = bounding_box(m);
  const detail::Box3 box{bb.w1, bb.w2, m.inst.l, m.inst.u};
  return detail::mc_region(box, seed, samples, threads,
                           [&](double x1, double x2, double z) {
                             const double pt[2] = {x1, x2};
                             return in_hull_2d(m, pt, z).margin >= 0.0;
                           });
}

/// Attaches a Monte-Carlo estimate to a volume report and scores the
/// |closed_form - mc| <= sigmas * stderr agreement flag.
inline void attach_mc(VolumeReport& report, const McEstimate& mc,
                      double sigmas = 3.0) {
  report.has_mc = true;
  report.mc_value = mc.value;
  report.mc_stderr = mc.stderr_;
  report.mc_samples = mc.samples;
  report.mc_seed = mc.seed;
  report.mc_agrees =
      std::abs(report.closed_form - mc.value) <= sigmas * mc.stderr_;
}

/// Samples random convex combinations of up to four graph points
/// {(x, f(x)) : x in X `intersect` W} and counts how many land outside the
/// hull at the given slack. Soundness demands zero violations.
inline long long graph_combination_violations(const Model& m,
                                              std::uint64_t seed,
                                              long long trials,
                                              double slack = 1e-9,
                                              int threads = 0) {
  if (trials < 1) throw std::domain_error("need at least one trial");
  if (m.inst.n() != 2) throw std::domain_error("sampler requires n = 2");
  const long long bad = detail::parallel_count(trials, threads, [&](long long t) {
    const auto k = static_cast<std::uint64_t>(t);
    const int npts = 1 + static_cast<int>(u01(seed, k, 0) * 4.0);
    double w[4], x1c = 0.0, x2c = 0.0, zc = 0.0, wsum = 0.0;
    for (int s = 0; s < npts; ++s) {
      w[s] = -std::log1p(-u01(seed, k, 1 + 4 * s)) + 1e-300;
      wsum += w[s];
    }
    for (int s = 0; s < npts; ++s) {
      const auto x = detail::sample_wedge_point(m, seed, k, 2 + 4 * s);
      const double f = eval_f(m.inst, x);
      const double wt = w[s] / wsum;
      x1c += wt * x[0];
      x2c += wt * x[1];
      zc += wt * f;
    }
    const double pt[2] = {x1c, x2c};
    return in_hull_2d(m, pt, zc).margin < -slack;
  });
  return bad;
}

/// Variable box for the McCormick baseline.
struct McCormickBox {
  double x1_lo = 0.0, x1_hi = 0.0;
  double x2_lo = 0.0, x2_hi = 0.0;
};

struct McCormickBounds {
  double lower = 0.0;
  double upper = 0.0;
};

/// The four McCormick inequalities for z = x1*x2 over the box:
/// lower = max of the two underestimators, upper = min of the two
/// overestimators. Exact at box corners.
inline McCormickBounds mccormick_bounds(const McCormickBox& box, double x1,
                                        double x2) {
  if (!(box.x1_lo <= box.x1_hi && box.x2_lo <= box.x2_hi) ||
      box.x1_lo < 0.0 || box.x2_lo < 0.0)
    throw std::domain_error("box must be nonempty and non-negative");
  if (x1 < box.x1_lo || x1 > box.x1_hi || x2 < box.x2_lo || x2 > box.x2_hi)
    throw std::domain_error("point outside the box");
  McCormickBounds b;
  b.lower = std::max(box.x2_lo * x1 + box.x1_lo * x2 - box.x2_lo * box.x1_lo,
                     box.x2_hi * x1 + box.x1_hi * x2 - box.x2_hi * box.x1_hi);
  b.upper = std::min(box.x2_lo * x1 + box.x1_hi * x2 - box.x2_lo * box.x1_hi,
                     box.x2_hi * x1 + box.x1_lo * x2 - box.x2_hi * box.x1_lo);
  return b;
}

/// Mean width of the wedge-hull z-interval versus the z-clipped McCormick
/// interval on a grid over the box. Both relaxations are clipped to [l, u]
/// so the comparison isolates the envelope shapes.
struct TightnessReport {
  long long grid_points_used = 0;
  double mean_width_wedge = 0.0;
  double mean_width_mccormick = 0.0;
  double max_pointwise_excess = 0.0;  ///< max(wedge - mccormick) over the grid
  bool wedge_dominates = false;       ///< wedge <= mccormick at every point
};

inline TightnessReport tightness_comparison(const Model& m,
                                            const McCormickBox& box,
                                            int grid = 100) {
  if (m.inst.n() != 2 || std::abs(m.inst.a[0] - 1.0) > 1e-12 ||
      std::abs(m.inst.a[1] - 1.0) > 1e-12)
    throw std::domain_error("comparison requires a bilinear instance");
  if (grid < 2) throw std::domain_error("grid must have at least two points");
  TightnessReport rep;
  double sum_w = 0.0, sum_mc = 0.0;
  rep.max_pointwise_excess = -std::numeric_limits<double>::infinity();
  for (int iy = 0; iy < grid; ++iy) {
    for (int ix = 0; ix < grid; ++ix) {
      const double x1 =
          box.x1_lo + (box.x1_hi - box.x1_lo) * (ix + 0.5) / grid;
      const double x2 =
          box.x2_lo + (box.x2_hi - box.x2_lo) * (iy + 0.5) / grid;
      const double pt[2] = {x1, x2};
      if (!in_Y(m, pt).inside) continue;
      const double wlo = std::max(m.inst.l, lower_env_value(m, pt));
      const double whi = std::min(m.inst.u, upper_env_value(m, pt));
      if (whi < wlo) continue;
      const auto mc = mccormick_bounds(box, x1, x2);
      const double mlo = std::max(m.inst.l, mc.lower);
      const double mhi = std::min(m.inst.u, mc.upper);
      if (mhi < mlo) continue;
      sum_w += whi - wlo;
      sum_mc += mhi - mlo;
      rep.max_pointwise_excess =
          std::max(rep.max_pointwise_excess, (whi - wlo) - (mhi - mlo));
      ++rep.grid_points_used;
    }
  }
  if (rep.grid_points_used > 0) {
    sum_w /= static_cast<double>(rep.grid_points_used);
    sum_mc /= static_cast<double>(rep.grid_points_used);
  }
  rep.mean_width_wedge = sum_w;
  rep.mean_width_mccormick = sum_mc;
  rep.wedge_dominates =
      rep.max_pointwise_excess <= 1e-9 * std::max(1.0, m.inst.u);
  return rep;
}

/// Overload with the box derived from the hull's own bounding box.
inline TightnessReport tightness_comparison(const Model& m, int grid = 100) {
  const BoundingBox bb = bounding_box(m);
  return tightness_comparison(m, McCormickBox{0.0, bb.w1, 0.0, bb.w2}, grid);
}

}  // namespace monenv
