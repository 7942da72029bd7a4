// Upper/lower envelope values and membership tests for every convex set the
// library characterizes: the orthant hull, the wedge upper-envelope set, the
// n=2 projection Y, and the full n=2 hull.
#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string>

#include "monenv/core.hpp"

namespace monenv {

/// Tags for the convex sets handled by check_membership.
enum class SetKind {
  UpperOrthant,   ///< hull of the graph over the whole orthant
  UpperWedge,     ///< upper envelope set over the wedge, any n
  LowerWedge2D,   ///< lower envelope set over the wedge, n = 2
  Hull2D,         ///< full convex hull, n = 2
  YProjection,    ///< projection of the n = 2 hull onto x-space
};

/// Verdict of a membership test. `margin` is the signed slack of the most
/// violated constraint (>= 0 iff the point is inside, up to the membership
/// tolerance) and `binding` names that constraint.
struct MembershipVerdict {
  bool inside = false;
  double margin = 0.0;
  std::string binding;
};

/// Value of the upper envelope cap at x. For beta >= 1 this is the conic
/// function z0 + (gamma * f(x))^{1/beta}; for beta <= 1 the function itself
/// is concave and caps its own hypograph.
inline double upper_env_value(const Model& m, std::span<const double> x) {
  const double f = eval_f(m.inst, x);
  if (!m.high_regime) return f;
  if (f == 0.0) return m.cone.z0;
  return m.cone.z0 +
         std::exp((std::log(m.cone.gamma) + std::log(f)) / m.inst.beta());
}

/// Value of the lower-envelope minorant at x. For n = 2 this is the lower
/// envelope over the wedge; for n > 2 it is a valid minorant only.
inline double lower_env_value(const Model& m, std::span<const double> x) {
  const MonomialInstance& inst = m.inst;
  if (static_cast<int>(x.size()) != inst.n())
    throw std::domain_error("point dimension does not match instance");
  if (x[inst.i] < 0.0 || x[inst.j] < 0.0)
    throw std::domain_error("point has a negative component");
  const double w = m.wedge.d_j * x[inst.i] - m.wedge.d_i * x[inst.j];
  if (w < 0.0)
    throw std::domain_error("d_j*x_i - d_i*x_j < 0: point outside the orthant");
  const double s = inst.a[inst.i] + inst.a[inst.j];
  double rest_log = 0.0;
  bool rest_zero = false;
  for (int k = 0; k < inst.n(); ++k) {
    if (k == inst.i || k == inst.j) continue;
    if (x[k] < 0.0) throw std::domain_error("point has a negative component");
    if (x[k] == 0.0)
      rest_zero = true;
    else
      rest_log += inst.a[k] * std::log(x[k]);
  }
  if (m.high_regime) {
    if (w == 0.0 || rest_zero) return 0.0;
    return std::exp(std::log(m.wedge.lambda) + s * std::log(w) + rest_log);
  }
  if (w == 0.0 || rest_zero) return m.cone.z0;
  const double b = inst.beta();
  return m.cone.z0 + std::exp(std::log(m.wedge.zeta) + (s / b) * std::log(w) +
                              rest_log / b);
}

namespace detail {

struct ConstraintSlack {
  double slack;
  const char* name;
};

inline MembershipVerdict worst_of(std::span<const ConstraintSlack> cs,
                                  double tol) {
  MembershipVerdict v;
  v.margin = cs[0].slack;
  v.binding = cs[0].name;
  for (const auto& c : cs.subspan(1)) {
    if (c.slack < v.margin) {
      v.margin = c.slack;
      v.binding = c.name;
    }
  }
  v.inside = v.margin >= -tol;
  return v;
}

inline void require_nonneg(std::span<const double> x) {
  for (double c : x)
    if (c < 0.0) throw std::domain_error("point has a negative component");
}

// Right-hand side of the n=2 ratio cut d_j*x_i - d_i*x_j <= (u/lambda)^{1/beta}.
inline double ratio_cut_rhs(const Model& m) {
  return std::exp((std::log(m.inst.u) - std::log(m.wedge.lambda)) /
                  m.inst.beta());
}

}  // namespace detail

/// Membership in the hull of the graph over the whole orthant:
/// cap constraint plus l <= z <= u.
inline MembershipVerdict in_conv_orthant(const Model& m,
                                         std::span<const double> x, double z) {
  detail::require_nonneg(x);
  const detail::ConstraintSlack cs[] = {
      {upper_env_value(m, x) - z, "upper_env"},
      {z - m.inst.l, "z_lb"},
      {m.inst.u - z, "z_ub"},
  };
  return detail::worst_of(cs, m.tol.membership);
}

/// Membership in the upper-envelope set over the wedge (any n): cap, z <= u,
/// the two wedge faces, f >= l, and for n = 2 the ratio cut.
inline MembershipVerdict in_upper_env_wedge(const Model& m,
                                            std::span<const double> x,
                                            double z) {
  detail::require_nonneg(x);
  const MonomialInstance& inst = m.inst;
  const double xi = x[inst.i];
  const double xj = x[inst.j];
  std::vector<detail::ConstraintSlack> cs = {
      {upper_env_value(m, x) - z, "upper_env"},
      {inst.u - z, "z_ub"},
      {xj - inst.p * xi, "wedge_p"},
      {inst.q * xi - xj, "wedge_q"},
      {eval_f(inst, x) - inst.l, "value_lb"},
  };
  if (inst.n() == 2)
    cs.push_back({detail::ratio_cut_rhs(m) -
                      (m.wedge.d_j * xi - m.wedge.d_i * xj),
                  "ratio_cut"});
  return detail::worst_of(cs, m.tol.membership);
}

/// Membership in Y, the projection of the n = 2 hull onto x-space.
inline MembershipVerdict in_Y(const Model& m, std::span<const double> x) {
  if (m.inst.n() != 2) throw std::domain_error("in_Y requires n = 2");
  detail::require_nonneg(x);
  const MonomialInstance& inst = m.inst;
  const double xi = x[inst.i];
  const double xj = x[inst.j];
  const detail::ConstraintSlack cs[] = {
      {xj - inst.p * xi, "wedge_p"},
      {inst.q * xi - xj, "wedge_q"},
      {eval_f(inst, x) - inst.l, "value_lb"},
      {detail::ratio_cut_rhs(m) - (m.wedge.d_j * xi - m.wedge.d_i * xj),
       "ratio_cut"},
  };
  return detail::worst_of(cs, m.tol.membership);
}

/// Membership in the lower-envelope set over the wedge, n = 2.
inline MembershipVerdict in_lower_env_wedge(const Model& m,
                                            std::span<const double> x,
                                            double z) {
  if (m.inst.n() != 2)
    throw std::domain_error("lower-envelope membership requires n = 2");
  detail::require_nonneg(x);
  const MonomialInstance& inst = m.inst;
  const double xi = x[inst.i];
  const double xj = x[inst.j];
  const detail::ConstraintSlack cs[] = {
      {xj - inst.p * xi, "wedge_p"},
      {inst.q * xi - xj, "wedge_q"},
      {eval_f(inst, x) - inst.l, "value_lb"},
      {detail::ratio_cut_rhs(m) - (m.wedge.d_j * xi - m.wedge.d_i * xj),
       "ratio_cut"},
      {z - lower_env_value(m, x), "lower_env"},
      {z - inst.l, "z_lb"},
  };
  return detail::worst_of(cs, m.tol.membership);
}

/// Membership in the full n = 2 hull: x in Y and
/// max{l, f_l(x)} <= z <= min{u, f_u(x)}.
inline MembershipVerdict in_hull_2d(const Model& m, std::span<const double> x,
                                    double z) {
  if (m.inst.n() != 2) throw std::domain_error("in_hull_2d requires n = 2");
  detail::require_nonneg(x);
  const MonomialInstance& inst = m.inst;
  const double xi = x[inst.i];
  const double xj = x[inst.j];
  const detail::ConstraintSlack cs[] = {
      {z - lower_env_value(m, x), "lower_env"},
      {upper_env_value(m, x) - z, "upper_env"},
      {z - inst.l, "z_lb"},
      {inst.u - z, "z_ub"},
      {xj - inst.p * xi, "wedge_p"},
      {inst.q * xi - xj, "wedge_q"},
      {eval_f(inst, x) - inst.l, "value_lb"},
      {detail::ratio_cut_rhs(m) - (m.wedge.d_j * xi - m.wedge.d_i * xj),
       "ratio_cut"},
  };
  return detail::worst_of(cs, m.tol.membership);
}

/// Dispatch on SetKind. Sets that constrain z require point.z.
inline MembershipVerdict check_membership(const Model& m, SetKind kind,
                                          const Point& pt) {
  auto need_z = [&]() -> double {
    if (!pt.z) throw std::domain_error("this set requires a z coordinate");
    return *pt.z;
  };
  switch (kind) {
    case SetKind::UpperOrthant:
      return in_conv_orthant(m, pt.x, need_z());
    case SetKind::UpperWedge:
      return in_upper_env_wedge(m, pt.x, need_z());
    case SetKind::LowerWedge2D:
      return in_lower_env_wedge(m, pt.x, need_z());
    case SetKind::Hull2D:
      return in_hull_2d(m, pt.x, need_z());
    case SetKind::YProjection:
      return in_Y(m, pt.x);
  }
  throw std::domain_error("unknown set kind");
}

}  // namespace monenv
