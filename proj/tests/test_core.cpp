#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "monenv/monenv.hpp"
#include "support.hpp"

using namespace monenv;
using support::InstanceGen;

TEST_CASE("validate accepts the figure-calibrated instances") {
  CHECK_NOTHROW(validate(support::fig2_instance()));
  CHECK_NOTHROW(validate(support::fig3_instance()));
}

TEST_CASE("validate reports the first violated invariant") {
  MonomialInstance inst{{1.0, 1.0}, 0, 1, 2.0, 2.0, 1.0, 4.0};
  CHECK_THROWS_MATCHES(validate(inst), validation_error,
                       Catch::Matchers::Message("p must be < q"));

  inst = {{1.0, -0.5}, 0, 1, 1.0, 2.0, 1.0, 4.0};
  CHECK_THROWS_MATCHES(validate(inst), validation_error,
                       Catch::Matchers::Message("exponents must be positive"));

  inst = {{1.0, 1.0}, 1, 1, 1.0, 2.0, 1.0, 4.0};
  CHECK_THROWS_MATCHES(validate(inst), validation_error,
                       Catch::Matchers::Message("wedge indices must be distinct"));

  inst = {{1.0, 1.0}, 0, 1, 1.0, 2.0, 4.0, 4.0};
  CHECK_THROWS_MATCHES(validate(inst), validation_error,
                       Catch::Matchers::Message("l must be < u"));

  inst = {{1.0, 1.0}, 0, 1, 1.0, 2.0, 0.0, 4.0};
  CHECK_THROWS_MATCHES(validate(inst), validation_error,
                       Catch::Matchers::Message("l must be positive"));

  inst = {{1.0}, 0, 0, 1.0, 2.0, 1.0, 4.0};
  CHECK_THROWS_AS(validate(inst), validation_error);
}

TEST_CASE("eval_f") {
  MonomialInstance bil{{1.0, 1.0}, 0, 1, 1.0, 2.0, 1.0, 4.0};
  const double x0[] = {2.0, 3.0};
  CHECK(eval_f(bil, x0) == Catch::Approx(6.0).epsilon(1e-14));

  const auto fig2 = support::fig2_instance();
  const double ones[] = {1.0, 1.0};
  CHECK(eval_f(fig2, ones) == Catch::Approx(1.0).margin(1e-14));

  // direct-power recomputation oracle
  const double x1[] = {2.0, 0.5};
  const double direct = std::pow(2.0, 1.7) * std::pow(0.5, 1.5);
  CHECK(eval_f(fig2, x1) == Catch::Approx(direct).epsilon(1e-13));

  const double xz[] = {0.0, 3.0};
  CHECK(eval_f(bil, xz) == 0.0);

  const double xneg[] = {-1.0, 3.0};
  CHECK_THROWS_AS(eval_f(bil, xneg), std::domain_error);
}

TEST_CASE("cone parameters: beta = 1 collapses exactly") {
  MonomialInstance inst{{0.4, 0.6}, 0, 1, 0.5, 2.0, 0.3, 7.0};
  const auto cp = cone_params(inst);
  CHECK(cp.z0 == 0.0);
  CHECK(cp.gamma == 1.0);

  // values within the snap tolerance collapse too
  inst.a = {0.4, 0.6 + 1e-13};
  const auto cp2 = cone_params(inst);
  CHECK(cp2.z0 == 0.0);
  CHECK(cp2.gamma == 1.0);
}

TEST_CASE("cone parameters: hand case beta=2, l=1, u=4") {
  MonomialInstance inst{{1.0, 1.0}, 0, 1, 1.0, 2.0, 1.0, 4.0};
  const auto cp = cone_params(inst);
  CHECK(cp.z0 == Catch::Approx(-2.0).epsilon(1e-13));
  CHECK(cp.gamma == Catch::Approx(9.0).epsilon(1e-13));
  CHECK(cone_identities_ok(inst, cp, 1e-12));
}

TEST_CASE("cone parameters agree with the bisection oracle") {
  const auto check = [](const MonomialInstance& inst) {
    const auto cp = cone_params(inst);
    const auto ref = support::cone_params_bisection(inst);
    CHECK(cp.z0 == Catch::Approx(ref.z0).margin(1e-9 * std::abs(ref.z0) + 1e-9));
    CHECK(cp.gamma == Catch::Approx(ref.gamma).epsilon(1e-9));
    CHECK(cone_identities_ok(inst, cp, 1e-12));
  };
  check(support::fig2_instance());
  check(support::fig3_instance());
  MonomialInstance b32{{1.7, 1.5}, 0, 1, 0.35, 3.0, 0.4, 10.0};
  b32.a = {1.6, 1.6};
  check(b32);
}

TEST_CASE("gamma >= 1 is a scale-dependent property, not a regime invariant") {
  // gamma(kappa*l, kappa*u) = kappa^(beta-1) * gamma(l, u): with beta > 1 and
  // small bounds gamma drops below 1 while the defining identities still hold.
  MonomialInstance tiny{{1.0, 1.0}, 0, 1, 1.0, 2.0, 0.01, 0.04};
  const auto cp = cone_params(tiny);
  CHECK(cp.gamma == Catch::Approx(0.09).epsilon(1e-12));
  CHECK(cp.z0 == Catch::Approx(-0.02).epsilon(1e-12));
  CHECK(cone_identities_ok(tiny, cp, 1e-12));

  // with l >= 1 the slope of v^(1/beta) stays below 1 on [l, u], so gamma >= 1
  InstanceGen gen{60601};
  for (std::uint64_t k = 0; k < 200; ++k) {
    auto inst = gen.make2(k);
    inst.l = 1.0 + 4.0 * u01(9, k, 0);
    inst.u = inst.l * (1.5 + 5.0 * u01(9, k, 1));
    if (inst.beta() < 1.0) continue;
    CHECK(cone_params(inst).gamma >= 1.0 - 1e-12);
  }
}

TEST_CASE("cone identities hold on 1000 random instances") {
  InstanceGen gen;
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const int n = 2 + static_cast<int>(u01(7, k, 0) * 4.0);
    const auto inst = gen.make(k, n);
    const auto cp = cone_params(inst);
    INFO("instance " << k << " beta=" << inst.beta());
    REQUIRE(cone_identities_ok(inst, cp, 1e-12));
  }
}

TEST_CASE("wedge parameters: hand case a=(1,1), (p,q)=(1,4)") {
  MonomialInstance inst{{1.0, 1.0}, 0, 1, 1.0, 4.0, 1.0, 4.0};
  const auto wp = wedge_params(inst);
  CHECK(wp.d_i == Catch::Approx(-0.5).epsilon(1e-14));
  CHECK(wp.d_j == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(wp.eta_i == Catch::Approx(0.5).epsilon(1e-14));
  CHECK(wp.eta_j == Catch::Approx(2.0).epsilon(1e-14));
  CHECK(wp.lambda == Catch::Approx(4.0 / 9.0).epsilon(1e-14));
  CHECK(wp.phi_i + wp.phi_j == Catch::Approx(1.0).epsilon(1e-15));
  CHECK(wp.sigma == Catch::Approx(-2.0).epsilon(1e-14));
  CHECK(wedge_identities_ok(inst, wp, 1e-12));
}

TEST_CASE("wedge parameters satisfy all identities on the figure instances") {
  for (const auto& inst : {support::fig2_instance(), support::fig3_instance()}) {
    const auto wp = wedge_params(inst);
    CHECK(wedge_identities_ok(inst, wp, 1e-12));
    // eta_i * (q/p) = eta_j, algebraic identity
    CHECK(wp.eta_i * (inst.q / inst.p) ==
          Catch::Approx(wp.eta_j).epsilon(1e-13));
  }
}

TEST_CASE("wedge identities hold on 1000 random instances") {
  InstanceGen gen{917};
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const int n = 2 + static_cast<int>(u01(8, k, 0) * 4.0);
    const auto inst = gen.make(k, n);
    const auto wp = wedge_params(inst);
    INFO("instance " << k);
    REQUIRE(wedge_identities_ok(inst, wp, 1e-12));
  }
}

TEST_CASE("wedge transport: hand case (2,2) -> (1,4)") {
  auto m = make_model({{1.0, 1.0}, 0, 1, 1.0, 4.0, 1.0, 4.0});
  const double x[] = {2.0, 2.0};
  const auto t = wedge_transport(m, x);
  CHECK(t.xbar[0] == Catch::Approx(1.0).epsilon(1e-14));
  CHECK(t.xbar[1] == Catch::Approx(4.0).epsilon(1e-14));
  CHECK(t.sbar == Catch::Approx(2.0).epsilon(1e-14));
  CHECK(eval_f(m.inst, t.xbar) == Catch::Approx(4.0).epsilon(1e-13));
}

TEST_CASE("wedge transport fixes the origin") {
  auto m = make_model(support::fig2_instance());
  const double x[] = {0.0, 0.0};
  const auto t = wedge_transport(m, x);
  CHECK(t.sbar == 0.0);
  CHECK(t.xbar[0] == 0.0);
  CHECK(t.xbar[1] == 0.0);
}

TEST_CASE("wedge transport rejects points off the face") {
  auto m = make_model(support::fig2_instance());
  const double x[] = {1.0, 1.0};  // x2 != p*x1
  CHECK_THROWS_AS(wedge_transport(m, x), std::domain_error);
}

TEST_CASE("wedge transport preserves f and lands on Q, n in {2,3,4,5}") {
  InstanceGen gen{4242};
  for (std::uint64_t k = 0; k < 200; ++k) {
    const int n = 2 + static_cast<int>(k % 4);
    const auto inst = gen.make(k, n);
    auto m = make_model(inst);
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int c = 0; c < n; ++c)
      x[static_cast<std::size_t>(c)] = 0.2 + 3.0 * u01(11, k, 20 + c);
    x[static_cast<std::size_t>(inst.j)] = inst.p * x[static_cast<std::size_t>(inst.i)];
    const double f0 = eval_f(inst, x);
    const auto t = wedge_transport(m, x);
    CHECK(t.sbar >= 0.0);
    CHECK(eval_f(inst, t.xbar) == Catch::Approx(f0).epsilon(1e-10));
    CHECK(t.xbar[static_cast<std::size_t>(inst.j)] ==
          Catch::Approx(inst.q * t.xbar[static_cast<std::size_t>(inst.i)])
              .epsilon(1e-12));
  }
}

TEST_CASE("level-set chords are parallel: transport slope independent of xi") {
  for (const auto& inst : {support::fig2_instance(), support::fig3_instance()}) {
    auto m = make_model(inst);
    const double xis[] = {inst.l, std::sqrt(inst.l * inst.u), inst.u};
    double slope0 = 0.0;
    bool first = true;
    for (double xi : xis) {
      const auto x = support::wedge_point(inst, inst.p, xi);
      const auto t = wedge_transport(m, x);
      const double slope = (t.xbar[1] - x[1]) / (t.xbar[0] - x[0]);
      CHECK(slope == Catch::Approx(m.wedge.sigma).epsilon(1e-12));
      if (first) {
        slope0 = slope;
        first = false;
      } else {
        CHECK(slope == Catch::Approx(slope0).epsilon(1e-10));
      }
    }
  }
}
