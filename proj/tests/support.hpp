// Shared fixtures and independent oracles for the test suites. Oracles here
// deliberately avoid the library's closed-form paths: the cone solver uses
// bisection on the defining system, planar areas use Simpson panels, and
// random instances come from a counter-based stream.
#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "monenv/monenv.hpp"

namespace support {

using monenv::MonomialInstance;

// Figure-calibrated fixtures used across the suites.
inline MonomialInstance fig2_instance() {  // beta = 3.2
  return {{1.7, 1.5}, 0, 1, 0.35, 3.0, 0.4, 10.0};
}

inline MonomialInstance fig3_instance() {  // beta = 0.3
  return {{0.1, 0.2}, 0, 1, 0.4, 3.3, 0.65, 1.21};
}

inline MonomialInstance hand_instance() {  // bilinear, hand-checkable
  return {{1.0, 1.0}, 0, 1, 1.0, 4.0, 1.0, 4.0};
}

inline MonomialInstance symmetric_instance() {  // x1 <-> x2 symmetric
  return {{1.0, 1.0}, 0, 1, 0.25, 4.0, 1.0, 4.0};
}

// The four level-curve parameter sets (exponents, p, q, xi values).
struct LevelSetCase {
  MonomialInstance inst;
  std::vector<double> xis;
};

inline std::vector<LevelSetCase> levelset_cases() {
  auto mk = [](double a1, double a2, double p, double q,
               std::vector<double> xis) {
    double lo = xis.front(), hi = xis.front();
    for (double v : xis) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return LevelSetCase{{{a1, a2}, 0, 1, p, q, 0.5 * lo, 2.0 * hi},
                        std::move(xis)};
  };
  return {
      mk(1.0, 1.0, 0.55, 2.4, {2, 4, 8, 16, 32}),
      mk(0.3, 0.6, 0.19, 3.6, {1, 2, 3}),
      mk(3.9, 7.6, 1.5, 4.9, {8.0, 512.0, 32768.0, 2097152.0}),
      mk(0.6, 0.4, 0.2, 9.0, {0.5, 1, 2}),
  };
}

// Random valid instances. Ranges keep the identity checks meaningfully hard
// (wide exponents) while avoiding overflow of chained powers.
struct InstanceGen {
  std::uint64_t seed = 20240915;

  double uni(std::uint64_t idx, std::uint64_t slot, double lo, double hi) {
    return lo + (hi - lo) * monenv::u01(seed, idx, slot);
  }

  // force_beta <= 0 leaves beta free; otherwise exponents are rescaled.
  MonomialInstance make(std::uint64_t idx, int n, double force_beta = 0.0) {
    MonomialInstance inst;
    inst.a.resize(static_cast<std::size_t>(n));
    double s = 0.0;
    for (int k = 0; k < n; ++k) {
      inst.a[static_cast<std::size_t>(k)] = uni(idx, 10 + k, 0.05, 8.0);
      s += inst.a[static_cast<std::size_t>(k)];
    }
    if (force_beta > 0.0)
      for (auto& e : inst.a) e *= force_beta / s;
    inst.i = 0;
    inst.j = 1;
    if (n > 2 && monenv::u01(seed, idx, 3) > 0.5) inst.j = n - 1;
    inst.p = std::exp(uni(idx, 4, std::log(0.05), std::log(2.0)));
    inst.q = inst.p * std::exp(uni(idx, 5, std::log(1.1), std::log(20.0)));
    inst.l = std::exp(uni(idx, 6, std::log(0.1), std::log(5.0)));
    inst.u = inst.l * std::exp(uni(idx, 7, std::log(1.5), std::log(30.0)));
    return inst;
  }

  MonomialInstance make2(std::uint64_t idx, double force_beta = 0.0) {
    return make(idx, 2, force_beta);
  }
};

// Independent cone-parameter oracle: bisects the defining system
// (l - z0)^beta / (u - z0)^beta = l / u for z0, then reads gamma off one
// equation. No use of the closed form.
inline monenv::ConeParams cone_params_bisection(const MonomialInstance& inst) {
  const double b = inst.beta();
  auto g = [&](double z0) {
    return b * (std::log(inst.l - z0) - std::log(inst.u - z0)) -
           (std::log(inst.l) - std::log(inst.u));
  };
  double hi = inst.l * (1.0 - 1e-15);
  double lo = -std::max(1e4, 1e3 * b * inst.u);
  for (int it = 0; it < 500; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double z0 = 0.5 * (lo + hi);
  const double gamma = std::exp(b * std::log(inst.l - z0) - std::log(inst.l));
  return {z0, gamma};
}

// Composite-Simpson integral for planar test oracles.
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int panels = 4000) {
  const double h = (b - a) / (2 * panels);
  double s = f(a) + f(b);
  for (int k = 1; k < 2 * panels; ++k)
    s += f(a + k * h) * ((k % 2) ? 4.0 : 2.0);
  return s * h / 3.0;
}

// A point of X `intersect` W from the ratio parameterization (n = 2,
// canonical indices), independent of the library sampler.
inline std::vector<double> wedge_point(const MonomialInstance& inst, double r,
                                       double xi) {
  const double b = inst.a[0] + inst.a[1];
  const double x1 = std::exp((std::log(xi) - inst.a[1] * std::log(r)) / b);
  return {x1, r * x1};
}

}  // namespace support
