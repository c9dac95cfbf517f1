#include "oppenheim/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace oppenheim {

double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

double norm2(const Vec3& a) { return std::sqrt(dot(a, a)); }

double sup_norm(const Vec3& a) {
  return std::max({std::fabs(a[0]), std::fabs(a[1]), std::fabs(a[2])});
}

Vec3 to_real(const IntVec3& n) {
  return {static_cast<double>(n[0]), static_cast<double>(n[1]), static_cast<double>(n[2])};
}

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double d0, double d1, double d2) {
  Mat3 m;
  m(0, 0) = d0;
  m(1, 1) = d1;
  m(2, 2) = d2;
  return m;
}

Mat3 Mat3::from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2) {
  Mat3 m;
  m.set_row(0, r0);
  m.set_row(1, r1);
  m.set_row(2, r2);
  return m;
}

void Mat3::set_row(int i, const Vec3& r) {
  a[3 * i] = r[0];
  a[3 * i + 1] = r[1];
  a[3 * i + 2] = r[2];
}

Mat3 operator*(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j) + x(i, 2) * y(2, j);
  return r;
}

Mat3 operator+(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int k = 0; k < 9; ++k) r.a[k] = x.a[k] + y.a[k];
  return r;
}

Mat3 operator-(const Mat3& x, const Mat3& y) {
  Mat3 r;
  for (int k = 0; k < 9; ++k) r.a[k] = x.a[k] - y.a[k];
  return r;
}

Mat3 operator*(double s, const Mat3& x) {
  Mat3 r;
  for (int k = 0; k < 9; ++k) r.a[k] = s * x.a[k];
  return r;
}

Vec3 operator*(const Vec3& v, const Mat3& m) {
  return {v[0] * m(0, 0) + v[1] * m(1, 0) + v[2] * m(2, 0),
          v[0] * m(0, 1) + v[1] * m(1, 1) + v[2] * m(2, 1),
          v[0] * m(0, 2) + v[1] * m(1, 2) + v[2] * m(2, 2)};
}

Mat3 mat3_mul(const Mat3& x, const Mat3& y) { return x * y; }

Mat3 transpose(const Mat3& m) {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r(i, j) = m(j, i);
  return r;
}

double det(const Mat3& m) {
  return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
         m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
         m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
}

double trace(const Mat3& m) { return m(0, 0) + m(1, 1) + m(2, 2); }

Mat3 mat3_inv(const Mat3& m) {
  const double d = det(m);
  if (!(std::fabs(d) > 1e-12)) throw SingularMatrix("mat3_inv: |det| <= 1e-12");
  Mat3 r;
  r(0, 0) = m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1);
  r(0, 1) = m(0, 2) * m(2, 1) - m(0, 1) * m(2, 2);
  r(0, 2) = m(0, 1) * m(1, 2) - m(0, 2) * m(1, 1);
  r(1, 0) = m(1, 2) * m(2, 0) - m(1, 0) * m(2, 2);
  r(1, 1) = m(0, 0) * m(2, 2) - m(0, 2) * m(2, 0);
  r(1, 2) = m(0, 2) * m(1, 0) - m(0, 0) * m(1, 2);
  r(2, 0) = m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0);
  r(2, 1) = m(0, 1) * m(2, 0) - m(0, 0) * m(2, 1);
  r(2, 2) = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  return (1.0 / d) * r;
}

double hs_norm(const Mat3& m) {
  double s = 0.0;
  for (double x : m.a) s += x * x;
  return std::sqrt(s);
}

std::array<double, 3> sym_eigenvalues(const Mat3& s) {
  const double p1 = s(0, 1) * s(0, 1) + s(0, 2) * s(0, 2) + s(1, 2) * s(1, 2);
  std::array<double, 3> ev{};
  if (p1 == 0.0) {
    ev = {s(0, 0), s(1, 1), s(2, 2)};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  const double q = trace(s) / 3.0;
  const double p2 = (s(0, 0) - q) * (s(0, 0) - q) + (s(1, 1) - q) * (s(1, 1) - q) +
                    (s(2, 2) - q) * (s(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Mat3 b = (1.0 / p) * (s - q * Mat3::identity());
  const double r = std::clamp(det(b) / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e0 = q + 2.0 * p * std::cos(phi);
  const double e2 = q + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  ev = {e2, 3.0 * q - e0 - e2, e0};
  std::sort(ev.begin(), ev.end());
  return ev;
}

double op_norm(const Mat3& m) {
  const auto ev = sym_eigenvalues(transpose(m) * m);
  return std::sqrt(std::max(0.0, ev[2]));
}

double max_abs_diff(const Mat3& x, const Mat3& y) {
  double r = 0.0;
  for (int k = 0; k < 9; ++k) r = std::max(r, std::fabs(x.a[k] - y.a[k]));
  return r;
}

bool is_finite(const Mat3& m) {
  return std::all_of(m.a.begin(), m.a.end(), [](double x) { return std::isfinite(x); });
}

SL2Element operator*(const SL2Element& x, const SL2Element& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
          x.c * y.b + x.d * y.d};
}

double max_abs_diff(const SL2Element& x, const SL2Element& y) {
  return std::max({std::fabs(x.a - y.a), std::fabs(x.b - y.b), std::fabs(x.c - y.c),
                   std::fabs(x.d - y.d)});
}

SL2Element make_sl2(double a, double b, double c, double d) {
  SL2Element h{a, b, c, d};
  if (!(std::fabs(h.det() - 1.0) <= kDetTol))
    throw DomainError("make_sl2: determinant differs from 1 by more than 1e-9");
  return h;
}

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

SL2Element rotation(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return {c, s, -s, c};
}

SL2Element boost(double t) { return {std::exp(t / 2.0), 0.0, 0.0, std::exp(-t / 2.0)}; }

KAKCoords kak_decompose(const SL2Element& h) {
  // h h^t = k_theta a_{2t} k_theta^{-1}; its eigenvalues are e^{+-t}.
  const double p = h.a * h.a + h.b * h.b;
  const double r = h.c * h.c + h.d * h.d;
  const double q = h.a * h.c + h.b * h.d;
  const double two_sinh_t = std::hypot(p - r, 2.0 * q);
  const double t = std::asinh(two_sinh_t / 2.0);
  if (t < 1e-14) {
    // h is a rotation; fold everything into theta.
    return {wrap_angle(std::atan2(h.b, h.a)), 0.0, 0.0};
  }
  // First column of k_theta, (cos theta, -sin theta), spans the e^t eigenline.
  const double phi = 0.5 * std::atan2(2.0 * q, p - r);
  double theta = std::fmod(-phi, kPi);
  if (theta < 0.0) theta += kPi;
  if (theta >= kPi) theta = 0.0;
  const SL2Element m = boost(-t) * rotation(-theta) * h;
  return {theta, t, wrap_angle(std::atan2(m.b, m.a))};
}

SL2Element kak_compose(const KAKCoords& c) {
  return rotation(c.theta) * boost(c.t) * rotation(c.theta_prime);
}

}  // namespace oppenheim
