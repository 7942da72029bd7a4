// Cross-section geometry of the n=2 hull at a height z, the area function
// A(z), and the closed-form hull volume obtained by integrating A.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "monenv/core.hpp"
#include "monenv/envelopes.hpp"
#include "monenv/quadrature.hpp"

namespace monenv {

namespace detail {

// Canonical n=2 view: wedge indices (0,1). An instance given with indices
// (1,0) is relabeled by swapping coordinates; `swapped` records that the
// user frame is the mirror of the canonical one.
struct Geo2 {
  Model m;
  bool swapped = false;
  double a1, a2, b, p, q, l, u;
  double z0, gamma, lgamma;
  double d1, d2, eta1, eta2, lambda, zeta, sigma, tau;
  bool high;

  bool log_branch() const { return std::abs(a1 - a2) < 1e-9 * (a1 + a2); }
};

inline Geo2 geo2(const Model& src) {
  if (src.inst.n() != 2) throw std::domain_error("operation requires n = 2");
  Geo2 g;
  if (src.inst.i == 0 && src.inst.j == 1) {
    g.m = src;
  } else {
    MonomialInstance t = src.inst;
    std::swap(t.a[0], t.a[1]);
    t.i = 0;
    t.j = 1;
    g.m = make_model(std::move(t), src.tol);
    g.swapped = true;
  }
  const auto& inst = g.m.inst;
  g.a1 = inst.a[0];
  g.a2 = inst.a[1];
  g.b = inst.beta();
  g.p = inst.p;
  g.q = inst.q;
  g.l = inst.l;
  g.u = inst.u;
  g.z0 = g.m.cone.z0;
  g.gamma = g.m.cone.gamma;
  g.lgamma = std::log(g.gamma);
  g.d1 = g.m.wedge.d_i;
  g.d2 = g.m.wedge.d_j;
  g.eta1 = g.m.wedge.eta_i;
  g.eta2 = g.m.wedge.eta_j;
  g.lambda = g.m.wedge.lambda;
  g.zeta = g.m.wedge.zeta;
  g.sigma = g.m.wedge.sigma;
  g.tau = g.m.wedge.tau;
  g.high = g.m.high_regime;
  return g;
}

// Abscissa of the lower-envelope corner on the face x2 = p*x1 at height z.
inline double x1_lower_p(const Geo2& g, double z) {
  if (g.high) return std::exp((std::log(z) - g.a2 * std::log(g.p)) / g.b);
  return (z - g.z0) / ((g.d2 - g.d1 * g.p) * g.zeta);
}

// Abscissa of the upper-envelope corner on the face x2 = p*x1 at height z.
inline double x1_upper_p(const Geo2& g, double z) {
  if (g.high)
    return (z - g.z0) * std::exp(-(g.lgamma + g.a2 * std::log(g.p)) / g.b);
  return std::exp((std::log(z) - g.a2 * std::log(g.p)) / g.b);
}

// Coefficient of x1^{-a1/a2} in the upper boundary curve x2(x1) at height z.
inline double curve_coef(const Geo2& g, double z) {
  if (g.high)
    return std::exp((g.b * std::log(z - g.z0) - g.lgamma) / g.a2);
  return std::exp(std::log(z) / g.a2);
}

// Area between the chord through the two upper corners and the level curve,
// from the evaluated primitive of (chord - curve).
inline double arc_area(const Geo2& g, double z, double x1up) {
  const double x1uq = g.eta1 * x1up;
  const double chord =
      0.5 * g.sigma * (x1up * x1up - x1uq * x1uq) +
      (g.p - g.sigma) * x1up * (x1up - x1uq);
  const double cz = curve_coef(g, z);
  double dphi;
  if (g.log_branch()) {
    dphi = -std::log(g.eta1);
  } else {
    const double eps = (g.a2 - g.a1) / g.a2;
    dphi = -pow_pos(x1up, eps) * std::expm1(eps * std::log(g.eta1)) / eps;
  }
  return chord - cz * dphi;
}

// A(z) collapses to c_zpow * z^{2/beta} + c_shift * (z - z0)^2; which shape
// carries the trapezoid and which the arc depends on the regime.
struct AreaCoeffs {
  double c_zpow = 0.0;
  double c_shift = 0.0;
};

inline AreaCoeffs area_coeffs(const Geo2& g) {
  const double c1 = 0.5 * g.p * (g.eta2 - g.eta1);
  const double sch = 0.5 * g.sigma * (1.0 - g.eta1 * g.eta1) +
                     (g.p - g.sigma) * (1.0 - g.eta1);
  const bool logb = g.log_branch();
  const double eps = (g.a2 - g.a1) / g.a2;
  const double k =
      logb ? -std::log(g.eta1) : -std::expm1(eps * std::log(g.eta1)) / eps;
  const double ln_ku = g.high ? -(g.lgamma + g.a2 * std::log(g.p)) / g.b
                              : -g.a2 * std::log(g.p) / g.b;
  // Assemble the curve-term coefficient in the log domain; its factors can
  // overflow individually while the product stays moderate.
  const double lc3 =
      (g.high ? -g.lgamma / g.a2 : 0.0) + (logb ? 0.0 : eps * ln_ku);
  const double curve = std::exp(lc3) * k;
  const double ku2 = std::exp(2.0 * ln_ku);
  const double arc = ku2 * (sch - c1) - curve;
  if (g.high) return {c1 * std::exp(-2.0 * g.a2 * std::log(g.p) / g.b), arc};
  const double kl = 1.0 / ((g.d2 - g.d1 * g.p) * g.zeta);
  return {arc, c1 * kl * kl};
}

inline void require_height(const Geo2& g, double z) {
  const double slack = 1e-12 * (g.u - g.l);
  if (!(z >= g.l - slack && z <= g.u + slack))
    throw std::domain_error("z outside [l, u]");
}

}  // namespace detail

/// X `intersect` W is contained in [0, w1] x [0, w2] (user frame).
struct BoundingBox {
  double w1 = 0.0;
  double w2 = 0.0;
};

inline BoundingBox bounding_box(const Model& src) {
  const auto g = detail::geo2(src);
  const double w1 =
      std::exp((std::log(g.u) - g.a2 * std::log(g.p)) / g.b);
  const double w2 =
      std::exp((std::log(g.u) + g.a1 * std::log(g.q)) / g.b);
  return g.swapped ? BoundingBox{w2, w1} : BoundingBox{w1, w2};
}

/// The slice of the n=2 hull at height z: corner points (user frame), chord
/// lengths, inter-chord distance, and the two area pieces.
struct CrossSection {
  double z = 0.0;
  std::array<double, 2> Lp{}, Lq{}, Up{}, Uq{};
  double delta_L = 0.0;  ///< length of the lower chord Lp-Lq
  double delta_U = 0.0;  ///< length of the upper chord Up-Uq
  double delta = 0.0;    ///< distance between the two parallel chords
  double A1 = 0.0;       ///< trapezoid area
  double A2 = 0.0;       ///< area between upper chord and level curve
  double A = 0.0;        ///< total slice area
};

inline CrossSection cross_section(const Model& src, double z) {
  const auto g = detail::geo2(src);
  detail::require_height(g, z);
  const double x1lp = detail::x1_lower_p(g, z);
  const double x1up = detail::x1_upper_p(g, z);
  const double x1lq = g.eta1 * x1lp;
  const double x1uq = g.eta1 * x1up;

  CrossSection cs;
  cs.z = z;
  cs.Lp = {x1lp, g.p * x1lp};
  cs.Lq = {x1lq, g.q * x1lq};
  cs.Up = {x1up, g.p * x1up};
  cs.Uq = {x1uq, g.q * x1uq};
  if (g.swapped) {
    std::swap(cs.Lp[0], cs.Lp[1]);
    std::swap(cs.Lq[0], cs.Lq[1]);
    std::swap(cs.Up[0], cs.Up[1]);
    std::swap(cs.Uq[0], cs.Uq[1]);
  }
  cs.delta_L = g.tau * x1lp;
  cs.delta_U = g.tau * x1up;
  cs.delta = (g.p - g.sigma) / std::sqrt(1.0 + g.sigma * g.sigma) *
             (x1lp - x1up);
  cs.A1 = 0.5 * g.p * (g.eta2 - g.eta1) * (x1lp * x1lp - x1up * x1up);
  cs.A2 = detail::arc_area(g, z, x1up);
  cs.A = cs.A1 + cs.A2;
  return cs;
}

/// Cross-section area A(z) = A1(z) + A2(z); continuous on [l, u].
inline double area(const Model& src, double z) {
  return cross_section(src, z).A;
}

/// Closed-form hull volume: A1 and A2 are integrated term by term over
/// [l, u] after collapsing them onto the two power shapes z^{2/beta} and
/// (z - z0)^2.
inline double hull_volume(const Model& src) {
  const auto g = detail::geo2(src);
  const auto c = detail::area_coeffs(g);
  const double e = 1.0 + 2.0 / g.b;
  const double int_zpow = (g.b / (g.b + 2.0)) *
                          (detail::pow_pos(g.u, e) - detail::pow_pos(g.l, e));
  const double ul = g.u - g.z0;
  const double ll = g.l - g.z0;
  const double int_shift = (ul * ul * ul - ll * ll * ll) / 3.0;
  return c.c_zpow * int_zpow + c.c_shift * int_shift;
}

/// Volume of the part of the hull with ratio x2/x1 in [r1, r2], computed by
/// sweeping rays from the origin (Green's theorem) instead of chords; an
/// algebraically independent route to the same quantity. slice(p, q)
/// recovers the full hull volume.
inline double slice_volume(const Model& src, double r1, double r2) {
  const auto g = detail::geo2(src);
  if (g.swapped) {
    // user ratio x2/x1 = 1/(canonical ratio); map and reorient
    const double s1 = 1.0 / r2;
    const double s2 = 1.0 / r1;
    r1 = s1;
    r2 = s2;
  }
  if (!(r1 >= g.p * (1.0 - 1e-12) && r2 <= g.q * (1.0 + 1e-12) && r1 < r2))
    throw std::domain_error("ratio slice must satisfy p <= r1 < r2 <= q");

  // chord sector: x1(t) = C(z)/(d2 - d1 t)
  const double jc = (1.0 / g.d1) *
                    (1.0 / (g.d2 - g.d1 * r2) - 1.0 / (g.d2 - g.d1 * r1));
  // arc sector: x1(t) = D(z) * t^{-a2/b}
  const double me = (g.a1 - g.a2) / g.b;
  const double ja =
      g.log_branch()
          ? std::log(r2 / r1)
          : detail::pow_pos(r1, me) * std::expm1(me * std::log(r2 / r1)) / me;

  const double e = 1.0 + 2.0 / g.b;
  const double int_zpow = (g.b / (g.b + 2.0)) *
                          (detail::pow_pos(g.u, e) - detail::pow_pos(g.l, e));
  const double ul = g.u - g.z0;
  const double ll = g.l - g.z0;
  const double int_shift = (ul * ul * ul - ll * ll * ll) / 3.0;

  double chord_part, arc_part;
  if (g.high) {
    const double cc = std::exp(-2.0 * std::log(g.lambda) / g.b);
    const double da = std::exp(-2.0 * g.lgamma / g.b);
    chord_part = 0.5 * jc * cc * int_zpow;
    arc_part = 0.5 * ja * da * int_shift;
  } else {
    const double cc = 1.0 / (g.zeta * g.zeta);
    chord_part = 0.5 * jc * cc * int_shift;
    arc_part = 0.5 * ja * int_zpow;
  }
  return chord_part - arc_part;
}

struct VolumeOptions {
  double quad_rel_tol = 1e-10;
  int quad_max_depth = 13;     ///< ~1e4 panel subdivisions
  double quad_agree_rel = 1e-8;
};

/// Closed form next to an adaptive-quadrature recomputation of the same
/// integral. A Monte-Carlo estimate can be attached by the oracle layer.
struct VolumeReport {
  double closed_form = 0.0;
  double quadrature = 0.0;
  double quad_abs_error = 0.0;
  bool quadrature_converged = false;
  bool quad_agrees = false;
  bool has_mc = false;
  double mc_value = 0.0;
  double mc_stderr = 0.0;
  long long mc_samples = 0;
  std::uint64_t mc_seed = 0;
  bool mc_agrees = false;
};

inline VolumeReport volume(const Model& src, VolumeOptions opt = {}) {
  VolumeReport r;
  r.closed_form = hull_volume(src);
  const auto q = integrate([&](double z) { return area(src, z); }, src.inst.l,
                           src.inst.u, opt.quad_rel_tol, opt.quad_max_depth);
  r.quadrature = q.value;
  r.quad_abs_error = q.abs_error;
  r.quadrature_converged = q.converged;
  r.quad_agrees = std::abs(r.closed_form - r.quadrature) <=
                  opt.quad_agree_rel * std::max(std::abs(r.closed_form), 1e-300);
  return r;
}

/// One sampled point of a level curve f(x) = xi between the two wedge faces.
struct LevelSetRow {
  double xi = 0.0;
  double x1 = 0.0;
  double x2 = 0.0;
  bool on_P = false;
  bool on_Q = false;
};

/// Samples each level curve from its intersection with x2 = p*x1 to its
/// intersection with x2 = q*x1 (user frame). The chords joining the marked
/// endpoints are parallel across xi values.
inline std::vector<LevelSetRow> levelset_table(const Model& src,
                                               std::span<const double> xis,
                                               int points_per_curve) {
  const auto g = detail::geo2(src);
  if (points_per_curve < 2)
    throw std::domain_error("need at least two points per curve");
  std::vector<LevelSetRow> rows;
  rows.reserve(xis.size() * static_cast<std::size_t>(points_per_curve));
  for (double xi : xis) {
    if (!(xi > 0.0)) throw std::domain_error("level values must be positive");
    const double x1p =
        std::exp((std::log(xi) - g.a2 * std::log(g.p)) / g.b);
    const double x1q = g.eta1 * x1p;
    for (int k = 0; k < points_per_curve; ++k) {
      const double t = static_cast<double>(k) / (points_per_curve - 1);
      const double x1 = x1p + t * (x1q - x1p);
      const double x2 =
          std::exp((std::log(xi) - g.a1 * std::log(x1)) / g.a2);
      LevelSetRow row;
      row.xi = xi;
      row.x1 = g.swapped ? x2 : x1;
      row.x2 = g.swapped ? x1 : x2;
      row.on_P = (k == 0);
      row.on_Q = (k == points_per_curve - 1);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace monenv
