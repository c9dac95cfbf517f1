#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "oppenheim/oracles.hpp"
#include "oppenheim/spin.hpp"
#include "oppenheim/stats.hpp"

using namespace oppenheim;

namespace {
Mat3 boost_image(double t) {
  Mat3 m = Mat3::diag(std::cosh(t), 1.0, std::cosh(t));
  m(0, 2) = m(2, 0) = std::sinh(t);
  return m;
}
}  // namespace

TEST_CASE("spin_cover examples") {
  CHECK(spin_cover(SL2Element::identity()) == Mat3::identity());
  CHECK(max_abs_diff(spin_cover(rotation(kPi / 2)), Mat3::diag(-1, -1, 1)) <= 1e-15);
  CHECK(max_abs_diff(spin_cover(boost(1.0)), boost_image(1.0)) <= 1e-15);
}

TEST_CASE("spin_cover: homomorphism, determinant, Q0 and kernel on 1e4 samples") {
  RandomStream rng(21);
  const auto b = oracle::spin_battery(10000, rng);
  CHECK(b.homomorphism <= 1e-8);
  CHECK(b.determinant <= 1e-8);
  CHECK(b.form_preservation <= 1e-8);
  CHECK(b.kernel == 0.0);
  CHECK(spin_cover(-SL2Element::identity()) == Mat3::identity());
}

TEST_CASE("the ab + cd reading of entry (2,1) is not a homomorphism into SO(Q0)") {
  RandomStream rng(22);
  const auto b = oracle::spin_battery(100, rng, true);
  CHECK(b.homomorphism > 1e-3);
  CHECK(b.form_preservation > 1e-3);
}

TEST_CASE("spin_preimage inverts spin_cover up to sign") {
  RandomStream rng(23);
  for (int i = 0; i < 1000; ++i) {
    const SL2Element h = oracle::random_sl2(rng);
    const SL2Element back = spin_preimage(spin_cover(h));
    const double err = std::min(max_abs_diff(back, h), max_abs_diff(back, -h));
    CHECK(err <= 1e-8 * std::max(1.0, h_norm(h)));
  }
}

TEST_CASE("spin_algebra_basis is orthonormal and tangent to the image") {
  const auto& basis = spin_algebra_basis();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double ip = 0.0;
      for (int k = 0; k < 9; ++k) ip += basis[i].a[k] * basis[j].a[k];
      CHECK(ip == doctest::Approx(i == j ? 1.0 : 0.0));
    }
  // Finite-difference derivative of iota along the three generators of sl2.
  const double eps = 1e-6;
  const SL2Element gens[] = {{1 + eps, 0, 0, 1 / (1 + eps)}, {1, eps, 0, 1}, {1, 0, eps, 1}};
  for (const auto& g : gens) {
    const Mat3 d = (1.0 / eps) * (spin_cover(g) - Mat3::identity());
    Mat3 proj = Mat3::zero();
    for (const auto& e : basis) {
      double c = 0.0;
      for (int k = 0; k < 9; ++k) c += d.a[k] * e.a[k];
      proj = proj + c * e;
    }
    CHECK(hs_norm(d - proj) <= 1e-5);
  }
}

TEST_CASE("h_norm examples") {
  CHECK(h_norm(SL2Element::identity()) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-15));
  for (double th : {0.1, 0.7, kPi / 4, 2.0, 5.5})
    CHECK(h_norm(rotation(th)) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  CHECK(h_norm(boost(1.0)) == doctest::Approx(2.9196560383317864).epsilon(1e-12));
  for (double t : {0.3, 2.0, 7.0})
    CHECK(h_norm(boost(t)) == doctest::Approx(norm_at_boost(t)).epsilon(1e-12));
}

TEST_CASE("h_norm is K-bi-invariant, inversion-invariant and >= sqrt(3)") {
  RandomStream rng(24);
  for (int i = 0; i < 2000; ++i) {
    const SL2Element h = oracle::random_sl2(rng, 1e3);
    const double n = h_norm(h);
    CHECK(n >= std::sqrt(3.0) - 1e-12);
    const SL2Element k1 = rotation(rng.uniform(0, kTwoPi)), k2 = rotation(rng.uniform(0, kTwoPi));
    CHECK(std::fabs(h_norm(k1 * h * k2) - n) <= 1e-8 * n);
    CHECK(std::fabs(h_norm(h.inverse()) - n) <= 1e-8 * n);
    const HElement e = HElement::from_matrix(h);
    CHECK(std::fabs(e.norm - hs_norm(mat3_inv(spin_cover(h)))) <= 1e-8 * n);
    CHECK(std::fabs(e.norm - norm_at_boost(e.kak.t)) <= 1e-8 * n);
  }
}

TEST_CASE("haar_density") {
  CHECK(haar_density({0, 0, 0}) == 0.0);
  CHECK(haar_density({0, 1, 0}) == doctest::Approx(1.17520).epsilon(1e-5));
  CHECK(haar_density({1, 2, 3}) == doctest::Approx(3.62686).epsilon(1e-5));
}

TEST_CASE("ball_measure closed form") {
  CHECK(ball_measure(std::sqrt(3.0)) == 0.0);
  CHECK(ball_measure(10.0) ==
        doctest::Approx(4 * kPi * kPi * (std::sqrt(101.0) / 2 - 1)).epsilon(1e-12));
  CHECK(ball_measure(10.0) == doctest::Approx(158.898).epsilon(1e-5));
  CHECK_THROWS_AS(ball_measure(1.7), DomainError);
}

TEST_CASE("ball_measure matches Monte Carlo integration of the Haar density") {
  // Integrate sinh(t) over a box in KAK coordinates, keeping points whose
  // definitional norm is <= T. Independent of the closed form.
  RandomStream rng(25);
  const double T = 10.0, t_box = 4.0;
  const int n = 400000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const KAKCoords c{rng.uniform(0, kTwoPi), rng.uniform(0, t_box), rng.uniform(0, kTwoPi)};
    if (h_norm(kak_compose(c)) <= T) acc += haar_density(c);
  }
  const double mc = acc / n * (kTwoPi * kTwoPi * t_box);
  CHECK(std::fabs(mc / ball_measure(T) - 1.0) < 0.01);
}

TEST_CASE("ball growth exponent is 1") {
  const auto ladder = geometric_ladder(1e2, std::pow(10.0, 0.25), 9);
  std::vector<double> lx, ly;
  for (double T : ladder) {
    lx.push_back(std::log(T));
    ly.push_back(std::log(ball_measure(T)));
  }
  CHECK(std::fabs(fit_line(lx, ly).slope - 1.0) <= 0.01);
  const HBall ball = HBall::make(100.0);
  CHECK(ball.d_minus == 1.0);
  CHECK(ball.d_plus == 1.0);
  CHECK(std::fabs(ball.measure - ball_measure(100.0)) <= 1e-6 * ball.measure);
}

TEST_CASE("sample_h_ball: support, t distribution") {
  RandomStream rng(26);
  const double T = 1e3;
  const double t_max = t_max_for_radius(T);
  std::vector<double> ts;
  int below_half = 0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    const HElement h = sample_h_ball(T, rng);
    CHECK(h.norm <= T * (1 + 1e-8));
    ts.push_back(h.kak.t);
    if (h.kak.t <= t_max / 2) ++below_half;
  }
  const double denom = std::cosh(t_max) - 1.0;
  const double ks = ks_distance(ts, [&](double t) { return (std::cosh(t) - 1.0) / denom; });
  CHECK(ks < 0.01);
  const double expected = (std::cosh(t_max / 2) - 1.0) / denom;
  CHECK(std::fabs(static_cast<double>(below_half) / n - expected) <= 0.01);
  CHECK_THROWS_AS(sample_h_ball(std::sqrt(3.0), rng), DomainError);
}

TEST_CASE("norm_regularity_check") {
  RandomStream rng(27);
  std::vector<SL2Element> sample;
  for (int i = 0; i < 10000; ++i) sample.push_back(sample_h_ball(1e3, rng).matrix);

  const auto id = norm_regularity_check(SL2Element::identity(), sample);
  CHECK(id.min == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(id.max == doctest::Approx(1.0).epsilon(1e-14));

  const auto rot = norm_regularity_check(rotation(0.9), sample);
  CHECK(std::fabs(rot.min - 1.0) <= 1e-8);
  CHECK(std::fabs(rot.max - 1.0) <= 1e-8);

  const SL2Element a1 = boost(1.0);
  const auto r = norm_regularity_check(a1, sample);
  CHECK(r.min > 0.0);
  const double bound = op_norm(spin_cover(a1)) * op_norm(mat3_inv(spin_cover(a1)));
  CHECK(r.max / r.min <= bound + 1e-6);

  CHECK_THROWS_AS(norm_regularity_check(a1, std::span<const SL2Element>{}), DomainError);
}
