// Branching-point selection on the monomial value z or on the ratio x2/x1,
// by balanced-volume or minimum-total-volume criteria.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

#include "monenv/core.hpp"
#include "monenv/geometry2d.hpp"

namespace monenv {

enum class BranchKind { Ratio, Value };

struct BranchResult {
  BranchKind kind = BranchKind::Ratio;
  double point = 0.0;         ///< r in (p, q) or nu in (l, u)
  double left_volume = 0.0;   ///< hull volume of the (p, r) / (l, nu) child
  double right_volume = 0.0;  ///< hull volume of the (r, q) / (nu, u) child
  double total = 0.0;         ///< left_volume + right_volume
};

namespace detail {

inline Model ratio_child(const Model& m, double lo, double hi) {
  MonomialInstance c = m.inst;
  c.p = lo;
  c.q = hi;
  return make_model(std::move(c), m.tol);
}

inline Model value_child(const Model& m, double lo, double hi) {
  MonomialInstance c = m.inst;
  c.l = lo;
  c.u = hi;
  return make_model(std::move(c), m.tol);
}

}  // namespace detail

/// Hull volumes of the two children obtained by splitting the ratio range
/// at r: wedges (p, r) and (r, q).
inline std::pair<double, double> children_volumes_ratio(const Model& m,
                                                        double r) {
  if (!(r > m.inst.p && r < m.inst.q))
    throw std::domain_error("branch ratio must lie strictly inside (p, q)");
  return {hull_volume(detail::ratio_child(m, m.inst.p, r)),
          hull_volume(detail::ratio_child(m, r, m.inst.q))};
}

/// Hull volumes of the two children obtained by splitting the value range
/// at nu: bounds (l, nu) and (nu, u).
inline std::pair<double, double> children_volumes_value(const Model& m,
                                                        double nu) {
  if (!(nu > m.inst.l && nu < m.inst.u))
    throw std::domain_error("branch value must lie strictly inside (l, u)");
  return {hull_volume(detail::value_child(m, m.inst.l, nu)),
          hull_volume(detail::value_child(m, nu, m.inst.u))};
}

namespace detail {

inline std::pair<double, double> family_interval(const Model& m,
                                                 BranchKind kind) {
  return kind == BranchKind::Ratio
             ? std::pair<double, double>{m.inst.p, m.inst.q}
             : std::pair<double, double>{m.inst.l, m.inst.u};
}

inline std::pair<double, double> family_children(const Model& m,
                                                 BranchKind kind, double t) {
  return kind == BranchKind::Ratio ? children_volumes_ratio(m, t)
                                   : children_volumes_value(m, t);
}

// Bisection on g(t) = V_left(t) - V_right(t); V_left is strictly increasing
// in t and V_right strictly decreasing, so g crosses zero exactly once.
inline BranchResult bisect_balanced(const Model& m, BranchKind kind,
                                    double lo, double hi, double tol) {
  BranchResult best;
  best.kind = kind;
  for (int it = 0; it < 200; ++it) {
    const double t = 0.5 * (lo + hi);
    const auto [vl, vr] = family_children(m, kind, t);
    best.point = t;
    best.left_volume = vl;
    best.right_volume = vr;
    best.total = vl + vr;
    if (std::abs(vl - vr) <= tol * (vl + vr)) return best;
    if (vl < vr)
      lo = t;
    else
      hi = t;
  }
  throw numerical_error("balanced-point bisection did not converge");
}

}  // namespace detail

/// Branch point with equal child volumes, found by bisection.
/// |left - right| <= tol * (left + right) on return.
inline BranchResult balanced_point(const Model& m, BranchKind kind,
                                   double tol = 1e-8) {
  if (!(tol > 0.0)) throw std::domain_error("tol must be positive");
  const auto [lo0, hi0] = detail::family_interval(m, kind);
  const double inset = 1e-9 * (hi0 - lo0);
  return detail::bisect_balanced(m, kind, lo0 + inset, hi0 - inset, tol);
}

/// Minimum-total-volume branch point within one family: a 64-point uniform
/// grid seed followed by golden-section refinement of the best grid cell.
/// The search runs over [lo + eps, hi - eps] with eps = eps_frac * width;
/// unimodality is not guaranteed, so the result is the refined best cell,
/// never worse than the best grid evaluation.
inline BranchResult min_volume_branch_family(const Model& m, BranchKind kind,
                                             double eps_frac = 1e-3,
                                             double tol = 1e-8) {
  const auto [lo0, hi0] = detail::family_interval(m, kind);
  if (!(eps_frac > 0.0 && eps_frac < 0.5))
    throw std::domain_error("search interval is empty");
  const double width0 = hi0 - lo0;
  const double lo = lo0 + eps_frac * width0;
  const double hi = hi0 - eps_frac * width0;

  BranchResult best;
  best.kind = kind;
  best.total = std::numeric_limits<double>::infinity();
  auto consider = [&](double t) {
    const auto [vl, vr] = detail::family_children(m, kind, t);
    if (vl + vr < best.total) {
      best.point = t;
      best.left_volume = vl;
      best.right_volume = vr;
      best.total = vl + vr;
    }
    return vl + vr;
  };

  constexpr int kGrid = 64;
  int best_k = 0;
  double best_v = std::numeric_limits<double>::infinity();
  for (int k = 0; k < kGrid; ++k) {
    const double t = lo + (hi - lo) * k / (kGrid - 1);
    const double v = consider(t);
    if (v < best_v) {  // strict: ties keep the smaller branch point
      best_v = v;
      best_k = k;
    }
  }

  double a = lo + (hi - lo) * std::max(best_k - 1, 0) / (kGrid - 1);
  double b = lo + (hi - lo) * std::min(best_k + 1, kGrid - 1) / (kGrid - 1);
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  const double stop = tol * width0;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = consider(x1);
  double f2 = consider(x2);
  while (b - a > stop) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = consider(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = consider(x2);
    }
  }
  return best;
}

/// Best branch over both families (ratio and value). Ties go to the ratio
/// family so the result is deterministic.
inline BranchResult min_volume_branch(const Model& m, double eps_frac = 1e-3,
                                      double tol = 1e-8) {
  const BranchResult r =
      min_volume_branch_family(m, BranchKind::Ratio, eps_frac, tol);
  const BranchResult v =
      min_volume_branch_family(m, BranchKind::Value, eps_frac, tol);
  return v.total < r.total ? v : r;
}

}  // namespace monenv
