#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>

#include "monenv/monenv.hpp"
#include "support.hpp"

using namespace monenv;

TEST_CASE("mc_region recovers the volume of an embedded box") {
  // estimator sanity on a region whose volume is known exactly
  const detail::Box3 box{2.0, 3.0, 0.0, 1.0};
  const auto est = detail::mc_region(
      box, 2024, 400000, 1, [](double x1, double x2, double z) {
        return x1 <= 1.0 && x2 <= 1.5 && z <= 0.5;
      });
  CHECK(std::abs(est.value - 0.75) <= 3.0 * est.stderr_);
}

TEST_CASE("mc_volume: degenerate bounds give a near-zero estimate") {
  MonomialInstance inst = support::fig2_instance();
  inst.u = inst.l * (1.0 + 1e-12);
  const auto est = mc_volume(make_model(inst), 7, 10000);
  CHECK(est.value <= 1e-10);
}

TEST_CASE("mc_volume agrees with the closed form on the figure instances") {
  for (const auto& inst : {support::fig2_instance(), support::fig3_instance()}) {
    auto m = make_model(inst);
    const auto est = mc_volume(m, 42, 400000);
    CHECK(std::abs(est.value - hull_volume(m)) <= 3.5 * est.stderr_);
  }
}

TEST_CASE("mc_volume is deterministic for a fixed seed at any thread count") {
  auto m = make_model(support::fig2_instance());
  const auto one = mc_volume(m, 1234, 50000, 1);
  const auto four = mc_volume(m, 1234, 50000, 4);
  CHECK(one.value == four.value);
  CHECK(one.stderr_ == four.stderr_);

  // MONENV_THREADS only caps parallelism, never changes the estimate
  setenv("MONENV_THREADS", "3", 1);
  const auto capped = mc_volume(m, 1234, 50000, 0);
  unsetenv("MONENV_THREADS");
  CHECK(capped.value == one.value);
}

TEST_CASE("mc_volume: two seeds land within 6 stderr of each other") {
  auto m = make_model(support::fig3_instance());
  const auto a = mc_volume(m, 11, 200000);
  const auto b = mc_volume(m, 22, 200000);
  CHECK(std::abs(a.value - b.value) <= 6.0 * std::max(a.stderr_, b.stderr_));
}

TEST_CASE("mc_volume rejects tiny sample counts") {
  auto m = make_model(support::fig2_instance());
  CHECK_THROWS_AS(mc_volume(m, 1, 10), std::domain_error);
}

TEST_CASE("graph combination sampler: zero violations, single point inside") {
  for (const auto& inst : {support::fig2_instance(), support::fig3_instance()}) {
    auto m = make_model(inst);
    CHECK(graph_combination_violations(m, 2501, 20000) == 0);
    // weight-1 "combination" is a graph point; must sit inside with margin >= 0
    const auto x = support::wedge_point(inst, std::sqrt(inst.p * inst.q),
                                        std::sqrt(inst.l * inst.u));
    CHECK(in_hull_2d(m, x, eval_f(inst, x)).margin >= -1e-12 * inst.u);
  }
}

TEST_CASE("mccormick bounds: corners exact, (1/2,1/2) on the unit box") {
  const McCormickBox unit{0.0, 1.0, 0.0, 1.0};
  const auto mid = mccormick_bounds(unit, 0.5, 0.5);
  CHECK(mid.lower == Catch::Approx(0.0).margin(1e-15));
  CHECK(mid.upper == Catch::Approx(0.5).epsilon(1e-15));

  const McCormickBox box{0.3, 1.7, 0.8, 2.9};
  for (double x1 : {box.x1_lo, box.x1_hi})
    for (double x2 : {box.x2_lo, box.x2_hi}) {
      const auto b = mccormick_bounds(box, x1, x2);
      CHECK(b.lower == Catch::Approx(x1 * x2).epsilon(1e-14));
      CHECK(b.upper == Catch::Approx(x1 * x2).epsilon(1e-14));
    }

  CHECK_THROWS_AS(mccormick_bounds(box, 2.0, 1.0), std::domain_error);
}

TEST_CASE("mccormick bounds are a valid relaxation of x1*x2") {
  const McCormickBox box{0.1, 2.3, 0.4, 5.0};
  for (std::uint64_t k = 0; k < 1000; ++k) {
    const double x1 = box.x1_lo + (box.x1_hi - box.x1_lo) * u01(31, k, 0);
    const double x2 = box.x2_lo + (box.x2_hi - box.x2_lo) * u01(31, k, 1);
    const auto b = mccormick_bounds(box, x1, x2);
    REQUIRE(b.lower <= x1 * x2 + 1e-12);
    REQUIRE(b.upper >= x1 * x2 - 1e-12);
  }
}

TEST_CASE("tightness: wedge hull dominates z-clipped McCormick for tight bounds") {
  MonomialInstance inst{{1.0, 1.0}, 0, 1, 0.35, 3.0, 0.4, 10.0};
  auto m = make_model(inst);
  const auto rep = tightness_comparison(m, 100);
  REQUIRE(rep.grid_points_used > 100);
  CHECK(rep.wedge_dominates);
  CHECK(rep.mean_width_wedge < rep.mean_width_mccormick);
  // on a face the wedge lower envelope matches f; McCormick generally not
  const auto xp = support::wedge_point(inst, inst.p,
                                       std::sqrt(inst.l * inst.u));
  const double f = eval_f(inst, xp);
  CHECK(lower_env_value(m, xp) == Catch::Approx(f).epsilon(1e-12));
  const auto bb = bounding_box(m);
  const auto mc =
      mccormick_bounds({0.0, bb.w1, 0.0, bb.w2}, xp[0], xp[1]);
  CHECK(mc.lower < f - 1e-6);
}

TEST_CASE("tightness: no dominance claim when the value bounds are loose") {
  // a small user box around an interior point makes McCormick locally exact
  // while the wedge envelopes keep their global shape
  MonomialInstance inst{{1.0, 1.0}, 0, 1, 0.35, 3.0, 0.4, 10.0};
  auto m = make_model(inst);
  const auto x0 = support::wedge_point(inst, 1.0, 3.0);
  const McCormickBox small{x0[0] * 0.95, x0[0] * 1.05, x0[1] * 0.95,
                           x0[1] * 1.05};
  const auto rep = tightness_comparison(m, small, 40);
  REQUIRE(rep.grid_points_used > 0);
  CHECK_FALSE(rep.wedge_dominates);
}

TEST_CASE("tightness comparison rejects non-bilinear instances") {
  auto m = make_model(support::fig2_instance());
  CHECK_THROWS_AS(tightness_comparison(m, 10), std::domain_error);
}
