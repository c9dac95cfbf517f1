#include <cmath>

#include "doctest.h"
#include "oppenheim/experiments.hpp"
#include "oppenheim/oracles.hpp"
#include "oppenheim/targets.hpp"
#include "test_helpers.hpp"

using namespace oppenheim;

TEST_CASE("cusp family membership") {
  const TargetFamily f = TargetFamily::cusp();
  CHECK(f.kind == TargetKind::cusp);
  CHECK(f.contains(Mat3::identity(), 1.0));
  CHECK_FALSE(f.contains(Mat3::identity(), 1.01));
  const Mat3 deep = Mat3::diag(0.5, 1, 2);
  CHECK(f.score(deep) == 2.0);
  CHECK(f.contains(deep, 8.0));
  CHECK_FALSE(f.contains(deep, 8.01));
  CHECK(f.larger_is_deeper());
  CHECK(f.decay_exponent() == 1.0);
}

TEST_CASE("membership is monotone in t") {
  RandomStream rng(51);
  const TargetFamily families[] = {
      TargetFamily::cusp(), TargetFamily::point(LatticePoint::standard(), 0.05),
      TargetFamily::cusp_constant(1.1), TargetFamily::frozen(TargetFamily::cusp(), 4.0)};
  for (const auto& f : families) {
    for (int i = 0; i < 200; ++i) {
      const double s = f.score(sample_x3_haar(rng).reduced_basis());
      bool prev = true;
      for (double t = 1.0; t < 1e4; t *= 1.5) {
        const bool in = f.score_in_target(s, t);
        CHECK(!(in && !prev));
        prev = in;
      }
    }
  }
}

TEST_CASE("constant and frozen families") {
  const TargetFamily c = TargetFamily::cusp_constant(0.5);
  CHECK(c.contains(Mat3::identity(), 1e6));
  const TargetFamily fr = TargetFamily::frozen(TargetFamily::cusp(), 8.0);
  CHECK(fr.contains(Mat3::diag(0.5, 1, 2), 1e9));
  CHECK(fr.decay_exponent() == 0.0);
  CHECK_THROWS_AS(TargetFamily::frozen(TargetFamily::cusp(), 0.5), DomainError);
  CHECK_THROWS_AS(TargetFamily::point(LatticePoint::standard(), -1.0), DomainError);
}

TEST_CASE("point family: thickened distance ignores small motion along H") {
  const LatticePoint y = LatticePoint::standard();
  const TargetFamily f = TargetFamily::point(y, 0.0);
  CHECK(f.score(y.reduced_basis()) <= 1e-12);
  // Motion along H by s leaves only a second-order residual (k_s rotates by 2s).
  for (double s : {0.2, 0.02, 0.002}) {
    const double d = thickened_point_distance(spin_cover(boost(s)), y.reduced_basis());
    CHECK(d <= 4 * s * s);
    CHECK(thickened_point_distance(spin_cover(rotation(s)), y.reduced_basis()) <= 4 * s * s);
  }
  // A transverse move of size 1e-3 is measured to first order.
  const Mat3 transverse = Mat3::diag(1.0 + 1e-3, 1.0, 1.0 / (1.0 + 1e-3));
  const double d = thickened_point_distance(transverse, y.reduced_basis());
  CHECK(d > 0.5e-3);
  CHECK(d < 2e-3);
  CHECK(f.contains(Mat3::identity(), 1e6));
  CHECK(f.kind == TargetKind::point);
  CHECK_FALSE(f.larger_is_deeper());
}

TEST_CASE("target_measure_estimate: cusp family slope") {
  RandomStream rng(52);
  const auto ladder = geometric_ladder(2.0, std::pow(25.0, 1.0 / 8.0), 9);
  const MeasureFit m = target_measure_estimate(TargetFamily::cusp(), ladder, 100000, rng);
  MESSAGE("cusp slope " << m.fit.slope);
  CHECK(std::fabs(m.fit.slope + 1.0) <= 0.1);
  for (std::size_t i = 1; i < m.rows.size(); ++i)
    CHECK(m.rows[i].fraction <= m.rows[i - 1].fraction);
}

TEST_CASE("target_measure_estimate: point family slope") {
  RandomStream rng(53);
  const auto ladder = geometric_ladder(1e2, std::pow(10.0, 0.25), 9);
  const MeasureFit m = target_measure_estimate(
      TargetFamily::point(LatticePoint::standard(), 0.05), ladder, 200000, rng);
  MESSAGE("point slope " << m.fit.slope);
  CHECK(std::fabs(m.fit.slope + 1.0) <= 0.2);
}

TEST_CASE("target_measure_estimate: frozen control and preconditions") {
  RandomStream rng(54);
  const auto ladder = geometric_ladder(2.0, 2.0, 6);
  const MeasureFit m =
      target_measure_estimate(TargetFamily::frozen(TargetFamily::cusp(), 2.0), ladder, 20000, rng);
  CHECK(std::fabs(m.fit.slope) <= 0.05);
  CHECK_THROWS_AS(target_measure_estimate(TargetFamily::cusp(), ladder, 100, rng), DomainError);
}

TEST_CASE("target_measure_estimate does not depend on the worker count") {
  const auto ladder = geometric_ladder(2.0, 2.0, 5);
  RandomStream r1(55), r2(55);
  const MeasureFit a = target_measure_estimate(TargetFamily::cusp(), ladder, 20000, r1, 1);
  const MeasureFit b = target_measure_estimate(TargetFamily::cusp(), ladder, 20000, r2, 4);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].fraction == b.rows[i].fraction);
}
