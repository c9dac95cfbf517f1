#include <cmath>

#include "doctest.h"
#include "oppenheim/experiments.hpp"
#include "oppenheim/search.hpp"

using namespace oppenheim;

TEST_CASE("grid_shape and search_candidates") {
  CHECK(grid_shape(10).size() == 10);
  const GridShape g = grid_shape(1000);
  CHECK(g.theta >= 8);
  CHECK(g.theta_prime >= 8);
  CHECK(g.size() <= 1000);
  CHECK(g.size() >= 500);
  RandomStream rng(61);
  const auto c = search_candidates(100.0, 1000, rng);
  CHECK(c.size() == g.size() + 1000);
  for (std::size_t i = 1; i < g.size(); ++i) CHECK(c[i].t >= c[i - 1].t);
  for (const auto& k : c) CHECK(h_norm(kak_compose(k)) <= 100.0 * (1 + 1e-8));
  CHECK_THROWS_AS(search_candidates(1.5, 10, rng), DomainError);
  CHECK_THROWS_AS(search_candidates(10.0, 0, rng), DomainError);
}

TEST_CASE("hit_test at eta = 0 on Z^3") {
  RandomStream rng(62);
  const HitResult r = hit_test(LatticePoint::standard(), 10.0, 0.0, TargetFamily::cusp(), 100, rng);
  CHECK(r.hit);
  REQUIRE(r.witness.has_value());
  CHECK(r.evaluated >= 1);
}

TEST_CASE("hit witnesses are genuine and persist in larger balls") {
  RandomStream xr(63);
  const TargetFamily f = TargetFamily::cusp();
  for (int i = 0; i < 20; ++i) {
    const LatticePoint x = sample_x3_haar(xr);
    RandomStream rng(100 + i);
    const double T = 300.0, eta = 0.8, level = std::pow(T, eta);
    const HitResult r = hit_test(x, T, eta, f, 2000, rng);
    if (!r.hit) continue;
    const HElement& h = *r.witness;
    CHECK(h.norm <= T * (1 + 1e-8));
    const Mat3 basis = x.basis() * spin_cover(h.matrix);
    CHECK(f.contains(basis, level));
    // h also lies in every larger ball, at the same level.
    for (double T2 : {T, 2 * T, 10 * T}) CHECK(h.norm <= T2);
  }
}

TEST_CASE("hit_test is deterministic for a fixed seed") {
  RandomStream xr(64);
  const LatticePoint x = sample_x3_haar(xr);
  RandomStream a(7), b(7);
  const HitResult r1 = hit_test(x, 500.0, 1.0, TargetFamily::cusp(), 3000, a);
  const HitResult r2 = hit_test(x, 500.0, 1.0, TargetFamily::cusp(), 3000, b);
  CHECK(r1.hit == r2.hit);
  CHECK(r1.evaluated == r2.evaluated);
  if (r1.hit) CHECK(max_abs_diff(r1.witness->matrix, r2.witness->matrix) == 0.0);
}

TEST_CASE("budget exhaustion returns not-found") {
  RandomStream xr(65);
  const LatticePoint x = sample_x3_haar(xr);
  RandomStream rng(1);
  const HitResult r = hit_test(x, 10.0, 2.9, TargetFamily::cusp(), 1, rng);
  CHECK_FALSE(r.hit);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.evaluated == 2);
}

TEST_CASE("critical_exponent_estimate: saturated always-hit family") {
  RandomStream rng(66);
  const auto ladder = geometric_ladder(1e2, std::sqrt(10.0), 4);
  const TargetFamily f = TargetFamily::cusp_constant(std::pow(2.0, -1.0 / 6.0) / 2.0);
  const ExponentEstimate e = critical_exponent_estimate(sample_x3_haar(rng), f, ladder, 50, rng);
  CHECK(e.saturated);
  CHECK(e.eta_upper == 3.0);
  CHECK_THROWS_AS(critical_exponent_estimate(LatticePoint::standard(), f,
                                             std::span<const double>(ladder).first(3), 50, rng),
                  DomainError);
}

TEST_CASE("critical_exponent_estimate: bracket and consistency with hit_test") {
  RandomStream xr(67);
  const LatticePoint x = sample_x3_haar(xr);
  const auto ladder = geometric_ladder(1e2, std::sqrt(10.0), 5);
  RandomStream rng(68);
  const ExponentEstimate e = critical_exponent_estimate(x, TargetFamily::cusp(), ladder, 1000, rng);
  CHECK(e.eta_lower <= e.eta_upper);
  CHECK(e.eta_upper - e.eta_lower <= kEtaBracketWidth);
  CHECK(e.eta_lower > 0.3);
  CHECK(e.eta_upper < 2.0);
  REQUIRE(e.ladder.size() == ladder.size());
  // Replaying the same streams through hit_test reproduces feasibility.
  RandomStream replay(68);
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    RandomStream sub = replay.split(i);
    const HitResult lo = hit_test(x, ladder[i], e.eta_lower, TargetFamily::cusp(), 1000, sub);
    CHECK(lo.hit);
    CHECK(e.ladder[i].hit);
  }
  bool any_miss = false;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    RandomStream sub = replay.split(i);
    any_miss |= !hit_test(x, ladder[i], e.eta_upper, TargetFamily::cusp(), 1000, sub).hit;
  }
  CHECK(any_miss);
}

TEST_CASE("beta_series: cusp series is nonnegative and nondecreasing") {
  const auto ladder = geometric_ladder(1e2, std::sqrt(10.0), 5);
  RandomStream rng(69);
  const ExcursionSeries s = beta_series(LatticePoint::standard(), std::nullopt, ladder, 200, rng);
  REQUIRE(s.rows.size() == ladder.size());
  for (std::size_t i = 0; i < s.rows.size(); ++i) {
    CHECK(s.rows[i].beta >= 0.0);
    CHECK(s.rows[i].beta >= s.rows[i].beta_raw - 1e-15);
    CHECK(s.rows[i].ratio == doctest::Approx(s.rows[i].beta / std::log(ladder[i])));
    if (i > 0) CHECK(s.rows[i].beta >= s.rows[i - 1].beta);
  }
  // Single-entry ladder.
  RandomStream r2(70);
  const double one[] = {50.0};
  const ExcursionSeries s1 = beta_series(LatticePoint::standard(), std::nullopt, one, 100, r2);
  REQUIRE(s1.rows.size() == 1);
  CHECK(s1.rows[0].ratio == doctest::Approx(s1.rows[0].beta / std::log(50.0)));
}

TEST_CASE("beta_series: point target on the same orbit is reached") {
  RandomStream xr(71);
  const LatticePoint x = sample_x3_haar(xr);
  const HElement h1 = HElement::from_kak({0.7, 1.5, 2.1});
  const LatticePoint y = x.translate(spin_cover(h1.matrix));
  const auto ladder = geometric_ladder(2 * h1.norm, 2.0, 3);
  RandomStream rng(72);
  const ExcursionSeries s = beta_series(x, y, ladder, 500, rng);
  CHECK(s.kind == TargetKind::point);
  CHECK(s.rows.back().beta <= 1e-6);
  for (std::size_t i = 1; i < s.rows.size(); ++i) CHECK(s.rows[i].beta <= s.rows[i - 1].beta);
}

TEST_CASE("observables") {
  CHECK(Observable::parse("alpha1-below", 1.2)(1.1) == 1.0);
  CHECK(Observable::parse("alpha1-below", 1.2)(1.3) == 0.0);
  CHECK(Observable::parse("cusp-complement", 1.0)(1.0) == 1.0);
  CHECK(Observable::parse("cusp-bump", 1.0)(1.0) == 1.0);
  CHECK(Observable::parse("cusp-bump", 1.0)(std::exp(1.0 / 3.0)) == doctest::Approx(std::exp(-1.0)));
  CHECK(Observable::parse("constant", 0.0)(7.0) == 1.0);
  CHECK_THROWS_AS(Observable::parse("nope", 1.0), DomainError);
}

TEST_CASE("met_decay: constant observable has zero error") {
  RandomStream rng(73);
  MetOptions o;
  o.ball_samples = 50;
  o.mean_samples = 2000;
  o.floor_check_points = 10;
  const auto ladder = geometric_ladder(10.0, 10.0, 3);
  const MetDecayReport r = met_decay(Observable::parse("constant", 0), ladder, 20, o, rng);
  CHECK(r.mean == 1.0);
  for (const auto& row : r.rows) {
    CHECK(row.l2_error == 0.0);
    CHECK(row.corrected == 0.0);
  }
}

TEST_CASE("met_decay: indicator observable decays, floors scale like 1/sqrt(N)") {
  RandomStream rng(74);
  MetOptions o;
  o.ball_samples = 400;
  o.mean_samples = 40000;
  o.floor_check_points = 200;
  const auto ladder = geometric_ladder(std::pow(10.0, 1.5), std::sqrt(10.0), 4);
  const MetDecayReport r = met_decay(Observable::parse("alpha1-below", 1.2), ladder, 200, o, rng);
  MESSAGE("kappa_hat " << r.kappa_hat << " floors " << r.floor_n << " " << r.floor_2n);
  CHECK(r.mean > 0.1);
  CHECK(r.mean < 0.5);
  for (const auto& row : r.rows) CHECK(row.l2_error >= 0.0);
  CHECK(r.kappa_hat > 0.0);
  const double ratio = (r.floor_2n * r.floor_2n) / (r.floor_n * r.floor_n);
  CHECK(ratio > 0.3);
  CHECK(ratio < 0.7);
}

TEST_CASE("met_decay is independent of the worker count") {
  MetOptions o;
  o.ball_samples = 50;
  o.mean_samples = 3000;
  o.floor_check_points = 10;
  const auto ladder = geometric_ladder(10.0, 10.0, 2);
  RandomStream r1(75), r2(75);
  o.workers = 1;
  const MetDecayReport a = met_decay(Observable::parse("alpha1-below", 1.2), ladder, 20, o, r1);
  o.workers = 3;
  const MetDecayReport b = met_decay(Observable::parse("alpha1-below", 1.2), ladder, 20, o, r2);
  CHECK(a.mean == b.mean);
  for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i].l2_error == b.rows[i].l2_error);
  CHECK(a.floor_n == b.floor_n);
}
