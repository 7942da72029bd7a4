// Domain types, validation, and closed-form derived constants for bounded
// monomial functions f(x) = prod_k x_k^{a_k} restricted to the wedge
// p*x_i <= x_j <= q*x_i with l <= f(x) <= u.
#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace monenv {

/// Thrown when an instance violates one of its defining invariants.
class validation_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when an iterative routine fails to converge.
class numerical_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numerical tolerances used throughout the library. All checks are relative
/// unless noted otherwise.
struct Tolerances {
  double identity = 1e-12;    ///< derived-parameter identity checks
  double on_ray = 1e-10;      ///< "point lies on a wedge face" preconditions
  double boundary = 1e-10;    ///< envelope boundary matching
  double membership = 1e-9;   ///< slack granted by membership verdicts
  double beta_one = 1e-12;    ///< |beta - 1| below this is treated as beta = 1
};

/// A point in variable space, optionally paired with a value coordinate z.
struct Point {
  std::vector<double> x;
  std::optional<double> z;
};

/// Bounded monomial on a wedge. Indices are zero-based in code and in the
/// JSON schema; documentation prose is one-based.
struct MonomialInstance {
  std::vector<double> a;  ///< exponents, all positive
  int i = 0;              ///< wedge index i
  int j = 1;              ///< wedge index j, distinct from i
  double p = 0.0;         ///< lower ratio bound, 0 < p < q
  double q = 0.0;         ///< upper ratio bound
  double l = 0.0;         ///< lower bound on the monomial value, 0 < l < u
  double u = 0.0;         ///< upper bound on the monomial value

  int n() const { return static_cast<int>(a.size()); }

  /// Sum of all exponents; the regime switch of every envelope below.
  double beta() const {
    double s = 0.0;
    for (double e : a) s += e;
    return s;
  }
};

/// Checks every instance invariant and reports the first violation.
/// Returns the instance unchanged so call sites can chain on it.
inline const MonomialInstance& validate(const MonomialInstance& inst) {
  if (inst.n() < 2) throw validation_error("need at least two variables");
  for (double e : inst.a)
    if (!(e > 0.0) || !std::isfinite(e))
      throw validation_error("exponents must be positive");
  if (inst.i < 0 || inst.j < 0 || inst.i >= inst.n() || inst.j >= inst.n())
    throw validation_error("wedge indices out of range");
  if (inst.i == inst.j) throw validation_error("wedge indices must be distinct");
  if (!(inst.p > 0.0) || !std::isfinite(inst.p))
    throw validation_error("p must be positive");
  if (!std::isfinite(inst.q) || !(inst.p < inst.q))
    throw validation_error("p must be < q");
  if (!(inst.l > 0.0)) throw validation_error("l must be positive");
  if (!std::isfinite(inst.u) || !(inst.l < inst.u))
    throw validation_error("l must be < u");
  return inst;
}

namespace detail {

// Powers of strictly positive bases go through the log domain; chained
// fractional powers then keep relative error near machine level.
inline double pow_pos(double base, double e) {
  return std::exp(e * std::log(base));
}

inline bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace detail

/// Evaluates f(x) = prod_k x_k^{a_k}. Zero components force f = 0; negative
/// components are rejected.
inline double eval_f(const MonomialInstance& inst, std::span<const double> x) {
  if (static_cast<int>(x.size()) != inst.n())
    throw std::domain_error("point dimension does not match instance");
  double s = 0.0;
  bool zero = false;
  for (int k = 0; k < inst.n(); ++k) {
    if (x[k] < 0.0) throw std::domain_error("point has a negative component");
    if (x[k] == 0.0)
      zero = true;
    else
      s += inst.a[k] * std::log(x[k]);
  }
  return zero ? 0.0 : std::exp(s);
}

/// Parameters of the value-space cone (z - z0)^beta <= gamma * f(x): the
/// smallest cone whose slices at z = l and z = u coincide with the level
/// sets of f.
struct ConeParams {
  double z0 = 0.0;     ///< vertical offset, same units as z
  double gamma = 1.0;  ///< cone scaling, positive
};

/// Derives z0 and gamma from the defining system l = (l-z0)^beta / gamma,
/// u = (u-z0)^beta / gamma. Uses expm1 so the formulas stay well conditioned
/// near beta = 1; |beta - 1| <= tol.beta_one collapses to (0, 1) exactly.
inline ConeParams cone_params(const MonomialInstance& inst,
                              const Tolerances& tol = {}) {
  const double b = inst.beta();
  if (std::abs(b - 1.0) <= tol.beta_one) return {0.0, 1.0};
  // u^{1/b} - l^{1/b} = l^{1/b} * expm1(log(u/l)/b)
  const double em = std::expm1(std::log(inst.u / inst.l) / b);
  ConeParams cp;
  cp.z0 = inst.l - (inst.u - inst.l) / em;
  cp.gamma = detail::pow_pos((inst.u - inst.l) / em, b) / inst.l;
  return cp;
}

/// True iff both defining identities of the cone hold to `tol` relative and
/// the offset sign tracks the regime (beta >= 1 iff z0 <= 0). gamma is only
/// required to be positive: its magnitude is not scale invariant, so no sign
/// pattern relative to 1 holds for arbitrary (l, u).
inline bool cone_identities_ok(const MonomialInstance& inst,
                               const ConeParams& cp, double tol = 1e-12) {
  const double b = inst.beta();
  auto lhs = [&](double v) {
    return detail::pow_pos(v - cp.z0, b) / cp.gamma;
  };
  if (!detail::rel_close(lhs(inst.l), inst.l, tol)) return false;
  if (!detail::rel_close(lhs(inst.u), inst.u, tol)) return false;
  if (!(cp.gamma > 0.0) || !std::isfinite(cp.gamma)) return false;
  const double slack = tol * std::max(1.0, inst.u);
  return (b >= 1.0) ? cp.z0 <= slack : cp.z0 >= -slack;
}

/// Constants of the wedge geometry: the transport direction (d_i, d_j)
/// mapping the face x_j = p*x_i onto x_j = q*x_i along level sets of f, the
/// associated scalings (eta_i, eta_j), and the lower-envelope coefficients.
/// sigma and tau describe level-set chords in the (x_i, x_j) plane and are
/// populated for n = 2 only.
struct WedgeParams {
  double phi_i = 0.0;   ///< a_i / (a_i + a_j)
  double phi_j = 0.0;   ///< a_j / (a_i + a_j)
  double d_i = 0.0;     ///< q^{-phi_j} - p^{-phi_j} < 0
  double d_j = 0.0;     ///< q^{phi_i} - p^{phi_i} > 0
  double eta_i = 0.0;   ///< (q/p)^{-phi_j} in (0, 1)
  double eta_j = 0.0;   ///< (q/p)^{phi_i} > 1
  double lambda = 0.0;  ///< p^{a_j} / (d_j - d_i p)^{a_i + a_j}
  double zeta = 0.0;    ///< (gamma * lambda)^{1/beta}
  double sigma = std::numeric_limits<double>::quiet_NaN();  ///< d_j/d_i, n=2
  double tau = std::numeric_limits<double>::quiet_NaN();    ///< chord-length coefficient, n=2
};

inline WedgeParams wedge_params(const MonomialInstance& inst,
                                const Tolerances& tol = {}) {
  const double ai = inst.a[inst.i];
  const double aj = inst.a[inst.j];
  const double s = ai + aj;
  const double lr = std::log(inst.q / inst.p);  // > 0

  WedgeParams wp;
  wp.phi_i = ai / s;
  wp.phi_j = aj / s;
  wp.eta_i = std::exp(-wp.phi_j * lr);
  wp.eta_j = std::exp(wp.phi_i * lr);
  // q^e - p^e = p^e * expm1(e * log(q/p)) avoids cancellation for q near p.
  wp.d_i = detail::pow_pos(inst.p, -wp.phi_j) * std::expm1(-wp.phi_j * lr);
  wp.d_j = detail::pow_pos(inst.p, wp.phi_i) * std::expm1(wp.phi_i * lr);
  wp.lambda =
      std::exp(aj * std::log(inst.p) - s * std::log(wp.d_j - wp.d_i * inst.p));
  const ConeParams cp = cone_params(inst, tol);
  wp.zeta = std::exp((std::log(cp.gamma) + std::log(wp.lambda)) / inst.beta());
  if (inst.n() == 2) {
    wp.sigma = wp.d_j / wp.d_i;
    wp.tau = std::hypot(1.0 - wp.eta_i, inst.p * (1.0 - wp.eta_j));
  }
  return wp;
}

/// Checks the four wedge identities: sign pattern of d, the eta product and
/// ratio identities, the two-sided lambda equality, and the face-transport
/// identity d_j - p d_i = (d_j - q d_i) eta_i.
inline bool wedge_identities_ok(const MonomialInstance& inst,
                                const WedgeParams& wp, double tol = 1e-12) {
  if (!(wp.d_i < 0.0 && wp.d_j > 0.0)) return false;
  const double ai = inst.a[inst.i];
  const double aj = inst.a[inst.j];
  // eta_i^{a_i} * eta_j^{a_j} = 1, checked in the log domain.
  if (std::abs(ai * std::log(wp.eta_i) + aj * std::log(wp.eta_j)) > tol)
    return false;
  if (!detail::rel_close(wp.eta_j / wp.eta_i, inst.q / inst.p, tol))
    return false;
  const double lambda_q = std::exp(aj * std::log(inst.q) -
                                   (ai + aj) * std::log(wp.d_j - wp.d_i * inst.q));
  if (!detail::rel_close(wp.lambda, lambda_q, tol)) return false;
  if (!detail::rel_close(wp.d_j - inst.p * wp.d_i,
                         (wp.d_j - inst.q * wp.d_i) * wp.eta_i, tol))
    return false;
  if (inst.n() == 2 && !(wp.sigma < 0.0)) return false;
  return true;
}

/// A validated instance bundled with its derived constants. Immutable after
/// construction; every operation below is a pure function of a Model, so
/// concurrent use needs no synchronization.
struct Model {
  MonomialInstance inst;
  ConeParams cone;
  WedgeParams wedge;
  Tolerances tol;
  bool high_regime = true;  ///< beta >= 1: conic upper envelope
};

inline Model make_model(MonomialInstance inst, Tolerances tol = {}) {
  validate(inst);
  Model m;
  m.inst = std::move(inst);
  m.tol = tol;
  m.cone = cone_params(m.inst, tol);
  m.wedge = wedge_params(m.inst, tol);
  m.high_regime = m.inst.beta() >= 1.0 - tol.beta_one;
  return m;
}

/// Result of transporting a point of the face P (x_j = p*x_i) onto the face
/// Q (x_j = q*x_i) along the direction (d_i, d_j): the unique move that
/// preserves the monomial value.
struct WedgeTransport {
  double sbar = 0.0;            ///< step length along (d_i, d_j), >= 0
  std::vector<double> xbar;     ///< transported point, on Q
};

inline WedgeTransport wedge_transport(const Model& m,
                                      std::span<const double> x) {
  const MonomialInstance& inst = m.inst;
  if (static_cast<int>(x.size()) != inst.n())
    throw std::domain_error("point dimension does not match instance");
  const double xi = x[inst.i];
  const double xj = x[inst.j];
  const double scale = std::max(std::abs(xj), inst.p * std::abs(xi));
  if (std::abs(xj - inst.p * xi) > m.tol.on_ray * std::max(scale, 1e-300))
    throw std::domain_error("point is not on the face x_j = p*x_i");
  WedgeTransport t;
  t.xbar.assign(x.begin(), x.end());
  t.xbar[inst.i] = m.wedge.eta_i * xi;
  t.xbar[inst.j] = m.wedge.eta_j * xj;
  t.sbar = xi * (m.wedge.eta_i - 1.0) / m.wedge.d_i;
  return t;
}

}  // namespace monenv
