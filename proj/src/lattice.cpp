#include "oppenheim/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oppenheim {

IntMat3 int_identity() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

IntMat3 int_mul(const IntMat3& x, const IntMat3& y) {
  IntMat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j] + x[i][2] * y[2][j];
  return r;
}

std::int64_t int_det(const IntMat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 to_real(const IntMat3& m) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = static_cast<double>(m[i][j]);
  return r;
}

IntVec3 int_row_times(const IntVec3& c, const IntMat3& m) {
  IntVec3 r{};
  for (int j = 0; j < 3; ++j) r[j] = c[0] * m[0][j] + c[1] * m[1][j] + c[2] * m[2][j];
  return r;
}

IntVec3 canonical_sign(IntVec3 n) {
  for (auto x : n) {
    if (x > 0) return n;
    if (x < 0) return {-n[0], -n[1], -n[2]};
  }
  return n;
}

bool tie_prefers(const IntVec3& a, const IntVec3& b) { return a > b; }

namespace {

struct GramSchmidt {
  double mu[3][3]{};
  double sq[3]{};  // squared lengths of the orthogonalized rows
};

GramSchmidt gram_schmidt(const Mat3& b) {
  GramSchmidt gs;
  Vec3 star[3];
  for (int i = 0; i < 3; ++i) {
    star[i] = b.row(i);
    for (int j = 0; j < i; ++j) {
      gs.mu[i][j] = dot(b.row(i), star[j]) / gs.sq[j];
      for (int k = 0; k < 3; ++k) star[i][k] -= gs.mu[i][j] * star[j][k];
    }
    gs.sq[i] = dot(star[i], star[i]);
  }
  return gs;
}

void sub_row(Mat3& b, int k, int j, double q) {
  for (int c = 0; c < 3; ++c) b(k, c) -= q * b(j, c);
}

void swap_rows(Mat3& b, int i, int j) {
  for (int c = 0; c < 3; ++c) std::swap(b(i, c), b(j, c));
}

// In-place LLL. `u`, when non-null, receives the same row operations.
void lll_in_place(Mat3& b, IntMat3* u) {
  GramSchmidt gs = gram_schmidt(b);
  int k = 1;
  for (int guard = 0; k < 3 && guard < 100000; ++guard) {
    bool changed = false;
    for (int j = k - 1; j >= 0; --j) {
      const double q = std::nearbyint(gs.mu[k][j]);
      if (q == 0.0) continue;
      sub_row(b, k, j, q);
      if (u) {
        const auto qi = static_cast<std::int64_t>(q);
        for (int c = 0; c < 3; ++c) (*u)[k][c] -= qi * (*u)[j][c];
      }
      changed = true;
      for (int i = 0; i < j; ++i) gs.mu[k][i] -= q * gs.mu[j][i];
      gs.mu[k][j] -= q;
    }
    if (changed) gs = gram_schmidt(b);
    if (gs.sq[k] >= (kLllDelta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.sq[k - 1]) {
      ++k;
    } else {
      swap_rows(b, k, k - 1);
      if (u) std::swap((*u)[k], (*u)[k - 1]);
      gs = gram_schmidt(b);
      k = std::max(k - 1, 1);
    }
  }
  // Keep the orientation of the input basis.
  if (det(b) < 0.0) {
    b.set_row(2, {-b(2, 0), -b(2, 1), -b(2, 2)});
    if (u)
      for (auto& x : (*u)[2]) x = -x;
  }
}

constexpr double kTieTol = 1e-12;

// Fincke-Pohst enumeration below the length of the first reduced row.
// With `u` set, ties are resolved on the coefficients c * u.
struct Enumerated {
  IntVec3 c{};
  double sq = 0.0;
};

Enumerated enumerate_shortest(const Mat3& r, const IntMat3* u) {
  const GramSchmidt gs = gram_schmidt(r);
  Enumerated best{{1, 0, 0}, dot(r.row(0), r.row(0))};
  IntVec3 best_key = u ? canonical_sign(int_row_times(best.c, *u)) : best.c;
  double radius_sq = best.sq * (1.0 + 1e-9);

  auto consider = [&](const IntVec3& c) {
    Vec3 v{};
    for (int k = 0; k < 3; ++k)
      v[k] = static_cast<double>(c[0]) * r(0, k) + static_cast<double>(c[1]) * r(1, k) +
             static_cast<double>(c[2]) * r(2, k);
    const double sq = dot(v, v);
    if (sq < best.sq * (1.0 - kTieTol)) {
      best = {c, sq};
      if (u) best_key = canonical_sign(int_row_times(c, *u));
      radius_sq = sq * (1.0 + 1e-9);
    } else if (sq <= best.sq * (1.0 + kTieTol)) {
      const IntVec3 key = u ? canonical_sign(int_row_times(c, *u)) : canonical_sign(c);
      if (tie_prefers(key, best_key)) {
        best = {c, std::min(sq, best.sq)};
        best_key = key;
      }
    }
  };

  // Half-space c2 > 0, or c2 = 0 and c1 > 0, or c2 = c1 = 0 and c0 > 0.
  const auto b2 = static_cast<std::int64_t>(std::floor(std::sqrt(radius_sq / gs.sq[2])));
  for (std::int64_t c2 = 0; c2 <= b2; ++c2) {
    const double part2 = gs.sq[2] * static_cast<double>(c2 * c2);
    if (part2 > radius_sq) break;
    const double center1 = -static_cast<double>(c2) * gs.mu[2][1];
    const double w1 = std::sqrt((radius_sq - part2) / gs.sq[1]);
    auto lo1 = static_cast<std::int64_t>(std::ceil(center1 - w1));
    const auto hi1 = static_cast<std::int64_t>(std::floor(center1 + w1));
    if (c2 == 0) lo1 = std::max<std::int64_t>(lo1, 0);
    for (std::int64_t c1 = lo1; c1 <= hi1; ++c1) {
      const double y1 = static_cast<double>(c1) - center1;
      const double part1 = part2 + gs.sq[1] * y1 * y1;
      if (part1 > radius_sq) continue;
      const double center0 =
          -(static_cast<double>(c1) * gs.mu[1][0] + static_cast<double>(c2) * gs.mu[2][0]);
      const double w0 = std::sqrt((radius_sq - part1) / gs.sq[0]);
      auto lo0 = static_cast<std::int64_t>(std::ceil(center0 - w0));
      const auto hi0 = static_cast<std::int64_t>(std::floor(center0 + w0));
      if (c2 == 0 && c1 == 0) lo0 = std::max<std::int64_t>(lo0, 1);
      for (std::int64_t c0 = lo0; c0 <= hi0; ++c0) consider({c0, c1, c2});
    }
  }
  return best;
}

}  // namespace

Reduction reduce_with_transition(const Mat3& basis) {
  if (!(std::fabs(det(basis)) >= 1e-8)) throw SingularMatrix("reduce_basis: |det| < 1e-8");
  Reduction r{basis, int_identity()};
  lll_in_place(r.reduced, &r.transition);
  return r;
}

Mat3 reduce_basis(const Mat3& basis) { return reduce_with_transition(basis).reduced; }

ShortVectorResult shortest_in_reduced(const Mat3& reduced) {
  const Enumerated e = enumerate_shortest(reduced, nullptr);
  ShortVectorResult r;
  r.coeffs = canonical_sign(e.c);
  r.vector = to_real(r.coeffs) * reduced;
  r.length = norm2(r.vector);
  return r;
}

double alpha1_of_basis(const Mat3& basis) {
  Mat3 b = basis;
  lll_in_place(b, nullptr);
  return 1.0 / std::sqrt(enumerate_shortest(b, nullptr).sq);
}

LatticePoint LatticePoint::from_basis(const Mat3& basis) {
  if (!is_finite(basis)) throw NotUnimodular("lattice basis has non-finite entries");
  // Long orbit bases lose the determinant to cancellation; the reduced basis
  // of the same lattice does not.
  if (!(std::fabs(det(basis)) >= 1e-8)) throw NotUnimodular("lattice basis is singular");
  const Reduction red = reduce_with_transition(basis);
  if (!(std::fabs(det(red.reduced) * static_cast<double>(int_det(red.transition)) - 1.0) <= 1e-8))
    throw NotUnimodular("lattice basis must have determinant 1 (to 1e-8)");
  LatticePoint p;
  p.basis_ = basis;
  p.reduced_ = red.reduced;
  p.transition_ = red.transition;
  p.gram_ = red.reduced * transpose(red.reduced);

  const Enumerated e = enumerate_shortest(p.reduced_, &p.transition_);
  const IntVec3 n = int_row_times(e.c, p.transition_);
  const IntVec3 canon = canonical_sign(n);
  const bool flipped = canon != n;
  Vec3 v = to_real(e.c) * p.reduced_;
  if (flipped) v = {-v[0], -v[1], -v[2]};
  p.shortest_ = {canon, v, norm2(v)};
  p.alpha1_ = 1.0 / p.shortest_.length;
  return p;
}

LatticePoint LatticePoint::translate(const Mat3& g) const { return from_basis(reduced_ * g); }

ShortVectorResult shortest_vector(const LatticePoint& p) { return p.shortest(); }

double alpha1(const LatticePoint& p) { return p.alpha1(); }

double cusp_distance_from_alpha1(double a) { return std::max(0.0, 3.0 * std::log(a)); }

double cusp_distance(const LatticePoint& p) { return cusp_distance_from_alpha1(p.alpha1()); }

PointDisplacement displacement(const Mat3& basis_p, const Mat3& basis_q) {
  PointDisplacement best;
  best.distance = std::numeric_limits<double>::infinity();
  const Mat3 p_inv = mat3_inv(basis_p);
  const Mat3 approx = basis_p * mat3_inv(basis_q);
  IntMat3 g0{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double x = std::nearbyint(approx(i, j));
      if (!(std::fabs(x) < 1e12)) return best;
      g0[i][j] = static_cast<std::int64_t>(x);
    }

  auto consider = [&](const IntMat3& gamma) {
    if (int_det(gamma) != 1) return;
    const Mat3 m = p_inv * to_real(gamma) * basis_q - Mat3::identity();
    const double d = hs_norm(m);
    if (d < best.distance) best = {d, m, gamma, true};
  };

  consider(g0);
  for (int row = 0; row < 3; ++row)
    for (int o0 = -1; o0 <= 1; ++o0)
      for (int o1 = -1; o1 <= 1; ++o1)
        for (int o2 = -1; o2 <= 1; ++o2) {
          if (o0 == 0 && o1 == 0 && o2 == 0) continue;
          IntMat3 g = g0;
          g[row][0] += o0;
          g[row][1] += o1;
          g[row][2] += o2;
          consider(g);
        }
  return best;
}

double point_distance(const LatticePoint& p, const LatticePoint& q) {
  return displacement(p.reduced_basis(), q.reduced_basis()).distance;
}

Mat3 random_rotation(RandomStream& rng) {
  // Uniform unit quaternion (Shoemake).
  const double u1 = rng.uniform(), u2 = rng.uniform(), u3 = rng.uniform();
  const double s1 = std::sqrt(1.0 - u1), s2 = std::sqrt(u1);
  const double x = s1 * std::sin(kTwoPi * u2), y = s1 * std::cos(kTwoPi * u2);
  const double z = s2 * std::sin(kTwoPi * u3), w = s2 * std::cos(kTwoPi * u3);
  Mat3 r;
  r(0, 0) = 1 - 2 * (y * y + z * z);
  r(0, 1) = 2 * (x * y - z * w);
  r(0, 2) = 2 * (x * z + y * w);
  r(1, 0) = 2 * (x * y + z * w);
  r(1, 1) = 1 - 2 * (x * x + z * z);
  r(1, 2) = 2 * (y * z - x * w);
  r(2, 0) = 2 * (x * z - y * w);
  r(2, 1) = 2 * (y * z + x * w);
  r(2, 2) = 1 - 2 * (x * x + y * y);
  return r;
}

LatticePoint sample_x3_haar(RandomStream& rng) {
  // Hermite normal forms of the p^2 + p + 1 sublattices of index p.
  const auto p = static_cast<std::uint64_t>(kHeckePrime);
  const double pd = static_cast<double>(kHeckePrime);
  const std::uint64_t w = rng.below(p * p + p + 1);
  Mat3 hnf;
  if (w < p * p) {
    hnf = Mat3::from_rows({pd, 0, 0}, {static_cast<double>(w % p), 1, 0},
                          {static_cast<double>(w / p), 0, 1});
  } else if (w < p * p + p) {
    hnf = Mat3::from_rows({1, 0, 0}, {0, pd, 0}, {0, static_cast<double>(w - p * p), 1});
  } else {
    hnf = Mat3::diag(1, 1, pd);
  }
  // Integer-valued rows keep the reduction exact.
  lll_in_place(hnf, nullptr);
  const Mat3 basis = (1.0 / std::cbrt(pd)) * hnf * random_rotation(rng);
  return LatticePoint::from_basis(basis);
}

}  // namespace oppenheim
