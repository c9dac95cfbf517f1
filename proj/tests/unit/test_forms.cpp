#include <cmath>

#include "doctest.h"
#include "oppenheim/forms.hpp"
#include "oppenheim/lattice.hpp"
#include "oppenheim/oracles.hpp"
#include "oppenheim/spin.hpp"
#include "test_helpers.hpp"

using namespace oppenheim;

namespace {
IntVec3 random_int_vec(RandomStream& rng, int r) {
  IntVec3 n{};
  do {
    for (auto& x : n) x = static_cast<std::int64_t>(rng.below(2 * r + 1)) - r;
  } while (n == IntVec3{0, 0, 0});
  return n;
}
}  // namespace

TEST_CASE("q0 examples") {
  const QuadForm q = q0();
  CHECK(eval_form(q, IntVec3{1, 0, 1}) == 0.0);
  CHECK(eval_form(q, IntVec3{3, 4, 5}) == 0.0);
  CHECK(det(q.sym) == -1.0);
  CHECK(eval_form(q, IntVec3{1, 1, 1}) == 1.0);
  CHECK(eval_form(q, IntVec3{0, 0, 1}) == -1.0);
}

TEST_CASE("from_symmetric validation") {
  CHECK_NOTHROW(QuadForm::from_symmetric(Mat3::diag(1, 1, -1)));
  Mat3 s = Mat3::diag(1, 1, -1);
  s(0, 1) = 1e-6;
  CHECK_THROWS_AS(QuadForm::from_symmetric(s), DomainError);
  CHECK_THROWS_AS(QuadForm::from_symmetric(Mat3::diag(1, 1, -2)), DomainError);
}

TEST_CASE("form_from_g examples") {
  CHECK(max_abs_diff(form_from_g(Mat3::identity()).sym, q0().sym) == 0.0);
  const double lambda = 1.7;
  const QuadForm q = form_from_g(Mat3::diag(lambda, 1, 1 / lambda));
  CHECK(max_abs_diff(q.sym, Mat3::diag(lambda * lambda, 1, -1 / (lambda * lambda))) <= 1e-15);
  REQUIRE(q.source_g.has_value());
  RandomStream rng(41);
  for (int i = 0; i < 100; ++i) {
    const Mat3 m = spin_cover(oracle::random_sl2(rng, 20.0));
    CHECK(max_abs_diff(form_from_g(m).sym, q0().sym) <= 1e-8 * hs_norm(m) * hs_norm(m));
  }
  CHECK_THROWS_AS(form_from_g(Mat3::diag(2, 1, 1)), NotUnimodular);
}

TEST_CASE("eval_form equivariance") {
  RandomStream rng(42);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 g = testing::random_sl3(rng);
    const Vec3 n = to_real(random_int_vec(rng, 20));
    const double lhs = eval_form(form_from_g(g), n), rhs = eval_form(q0(), n * g);
    CHECK(std::fabs(lhs - rhs) <= 1e-8 * std::max(1.0, dot(n, n) * hs_norm(g) * hs_norm(g)));
  }
}

TEST_CASE("SL3(Z) equivariance on 1e3 random (Q, gamma, n)") {
  RandomStream rng(43);
  for (int i = 0; i < 1000; ++i) {
    const Mat3 g = testing::random_sl3(rng);
    const QuadForm q = form_from_g(g);
    IntMat3 gamma = int_identity();
    for (int s = 0; s < 4; ++s) {
      const int a = static_cast<int>(rng.below(3));
      int b = static_cast<int>(rng.below(2));
      if (b >= a) ++b;
      const std::int64_t k = static_cast<std::int64_t>(rng.below(5)) - 2;
      for (int c = 0; c < 3; ++c) gamma[a][c] += k * gamma[b][c];
    }
    REQUIRE(int_det(gamma) == 1);
    const Mat3 gr = to_real(gamma);
    const QuadForm qg = QuadForm{gr * q.sym * transpose(gr), std::nullopt};
    const IntVec3 n = random_int_vec(rng, 10);
    const double lhs = eval_form(qg, n), rhs = eval_form(q, int_row_times(n, gamma));
    double scale = 0.0;
    const Vec3 m = to_real(int_row_times(n, gamma));
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) scale += std::fabs(m[r] * q.sym(r, c) * m[c]);
    CHECK(std::fabs(lhs - rhs) <= 1e-10 * std::max(1.0, scale));
  }
}

TEST_CASE("min_form_value_direct examples") {
  const FormValueResult r = min_form_value_direct(q0(), 5.0);
  CHECK(r.value == 0.0);
  CHECK(eval_form(q0(), r.n) == 0.0);
  CHECK(r.n == oracle::min_form_value_full(q0(), 5.0).n);
  CHECK_THROWS_AS(min_form_value_direct(q0(), 0.5), DomainError);

  const double lambda = std::pow(2.0, 0.25);
  const QuadForm q = form_from_g(Mat3::diag(lambda, 1, 1 / lambda));
  const FormValueResult d = min_form_value_direct(q, 10.0);
  const FormValueResult o = oracle::min_form_value_full(q, 10.0);
  CHECK(d.value == o.value);
  CHECK(d.n == o.n);
}

TEST_CASE("min_form_value_direct matches the O(T^3) oracle on 100 random forms at T = 25") {
  RandomStream rng(44);
  for (int i = 0; i < 100; ++i) {
    const QuadForm q = form_from_g(testing::random_sl3(rng));
    const NormChoice norm = i % 4 == 3 ? NormChoice::sup : NormChoice::euclidean;
    const FormValueResult d = min_form_value_direct(q, 25.0, norm);
    const FormValueResult o = oracle::min_form_value_full(q, 25.0, norm);
    CHECK(d.value == o.value);
    CHECK(d.n == o.n);
    CHECK(vector_norm(to_real(d.n), norm) <= 25.0);
    CHECK(d.value == eval_form(q, d.n));
  }
}

TEST_CASE("min_form_value_direct re-slices when S33 vanishes") {
  // S33 = 0: g maps e3 onto a light-cone vector.
  const Mat3 g = Mat3::from_rows({1, 0, 0}, {0, 1, 0}, {1, 0, 1});
  const QuadForm q = form_from_g(g);
  CHECK(std::fabs(q.sym(2, 2)) < 1e-12);
  for (double T : {3.0, 7.5, 12.0}) {
    const FormValueResult d = min_form_value_direct(q, T);
    const FormValueResult o = oracle::min_form_value_full(q, T);
    CHECK(d.value == o.value);
    CHECK(d.n == o.n);
  }
}

TEST_CASE("min_form_value_direct is monotone in T and independent of workers") {
  RandomStream rng(45);
  const QuadForm q = form_from_g(testing::random_sl3(rng));
  double prev = INFINITY;
  for (double T : {2.0, 4.0, 8.0, 16.0, 32.0, 64.0}) {
    const FormValueResult r1 = min_form_value_direct(q, T, NormChoice::euclidean, 1);
    const FormValueResult r3 = min_form_value_direct(q, T, NormChoice::euclidean, 3);
    CHECK(r1.value == r3.value);
    CHECK(r1.n == r3.n);
    CHECK(std::fabs(r1.value) <= prev);
    prev = std::fabs(r1.value);
  }
}

TEST_CASE("norm choice helpers") {
  CHECK(parse_norm_choice("euclidean") == NormChoice::euclidean);
  CHECK(parse_norm_choice("sup") == NormChoice::sup);
  CHECK_THROWS(parse_norm_choice("l1"));
  CHECK(to_string(NormChoice::sup) == "sup");
  CHECK(vector_norm({3, -4, 0}, NormChoice::euclidean) == 5.0);
  CHECK(vector_norm({3, -4, 0}, NormChoice::sup) == 4.0);
}

TEST_CASE("the ball of radius ||n|| contains n") {
  // sqrt(3)^2 and sqrt(6)^2 round below 3 and 6 in double precision.
  RandomStream rng(67);
  for (int f = 0; f < 300; ++f) {
    const QuadForm q = form_from_g(sample_x3_haar(rng).basis());
    for (std::int64_t a = 0; a <= 2; ++a)
      for (std::int64_t b = -2; b <= 2; ++b)
        for (std::int64_t c = -2; c <= 2; ++c) {
          const IntVec3 n{a, b, c};
          if (canonical_sign(n) != n || (a == 0 && b == 0 && c == 0)) continue;
          const double T = std::max(1.0, norm2(to_real(n)));
          const double v = std::fabs(eval_form(q, n));
          REQUIRE(std::fabs(min_form_value_direct(q, T).value) <= v);
          REQUIRE(std::fabs(oracle::min_form_value_full(q, T).value) <= v);
        }
  }
}
