#include "oppenheim/spin.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace oppenheim {

namespace detail {

Mat3 spin_cover_variant(const SL2Element& h, bool corrupt_entry21) {
  const double a = h.a, b = h.b, c = h.c, d = h.d;
  const double aa = a * a, bb = b * b, cc = c * c, dd = d * d;
  Mat3 m;
  m(0, 0) = (aa - bb - cc + dd) / 2.0;
  m(0, 1) = a * c - b * d;
  m(0, 2) = (aa - bb + cc - dd) / 2.0;
  m(1, 0) = corrupt_entry21 ? a * b + c * d : a * b - c * d;
  m(1, 1) = b * c + a * d;
  m(1, 2) = a * b + c * d;
  m(2, 0) = (aa + bb - cc - dd) / 2.0;
  m(2, 1) = a * c + b * d;
  m(2, 2) = (aa + bb + cc + dd) / 2.0;
  // The displayed matrix satisfies P(xy) = P(y)P(x); its transpose is the homomorphism.
  return transpose(m);
}

}  // namespace detail

Mat3 spin_cover(const SL2Element& h) { return detail::spin_cover_variant(h, false); }

SL2Element spin_preimage(const Mat3& iota_h) {
  const Mat3 m = transpose(iota_h);
  const double aa = (m(0, 0) + m(0, 2) + m(2, 0) + m(2, 2)) / 2.0;
  const double bb = (m(2, 0) + m(2, 2) - m(0, 0) - m(0, 2)) / 2.0;
  const double cc = (m(2, 2) - m(2, 0) + m(0, 2) - m(0, 0)) / 2.0;
  const double dd = (m(2, 2) - m(2, 0) - m(0, 2) + m(0, 0)) / 2.0;
  const double ab = (m(1, 0) + m(1, 2)) / 2.0;
  const double cd = (m(1, 2) - m(1, 0)) / 2.0;
  const double ac = (m(0, 1) + m(2, 1)) / 2.0;
  const double bd = (m(2, 1) - m(0, 1)) / 2.0;
  const double ad = (m(1, 1) + 1.0) / 2.0;
  const double bc = (m(1, 1) - 1.0) / 2.0;

  SL2Element h;
  const double largest = std::max({aa, bb, cc, dd});
  if (largest == aa) {
    h.a = std::sqrt(std::max(aa, 0.0));
    h.b = ab / h.a;
    h.c = ac / h.a;
    h.d = ad / h.a;
  } else if (largest == bb) {
    h.b = std::sqrt(std::max(bb, 0.0));
    h.a = ab / h.b;
    h.d = bd / h.b;
    h.c = bc / h.b;
  } else if (largest == cc) {
    h.c = std::sqrt(std::max(cc, 0.0));
    h.a = ac / h.c;
    h.d = cd / h.c;
    h.b = bc / h.c;
  } else {
    h.d = std::sqrt(std::max(dd, 0.0));
    h.b = bd / h.d;
    h.c = cd / h.d;
    h.a = ad / h.d;
  }
  const double det = h.det();
  if (det > 0.0) {
    const double s = 1.0 / std::sqrt(det);
    h = {s * h.a, s * h.b, s * h.c, s * h.d};
  }
  return h;
}

const std::array<Mat3, 3>& spin_algebra_basis() {
  static const std::array<Mat3, 3> basis = [] {
    const double s = 1.0 / std::sqrt(2.0);
    Mat3 x, y, z;
    x(0, 2) = x(2, 0) = s;
    y(1, 2) = y(2, 1) = s;
    z(1, 0) = s;
    z(0, 1) = -s;
    return std::array<Mat3, 3>{x, y, z};
  }();
  return basis;
}

double h_norm(const SL2Element& h) { return hs_norm(spin_cover(h.inverse())); }

double t_max_for_radius(double T) {
  if (!(T >= std::sqrt(3.0))) throw DomainError("radius below sqrt(3)");
  return std::asinh(std::sqrt(std::max(0.0, (T * T - 3.0) / 4.0)));
}

double norm_at_boost(double t) {
  const double s = std::sinh(t);
  return std::sqrt(3.0 + 4.0 * s * s);
}

HElement HElement::from_matrix(const SL2Element& h) {
  return HElement{h, kak_decompose(h), h_norm(h)};
}

HElement HElement::from_kak(const KAKCoords& c) {
  const SL2Element h = kak_compose(c);
  return HElement{h, c, h_norm(h)};
}

double haar_density(const KAKCoords& c) { return std::sinh(c.t); }

namespace {
// cosh t_max - 1 for the ball of radius T, without cancellation.
double cosh_tmax_minus_one(double T) {
  const double x = std::max(0.0, (T * T - 3.0) / 4.0);  // sinh^2 t_max
  return x / (std::sqrt(1.0 + x) + 1.0);
}
}  // namespace

double ball_measure(double T) {
  if (!(T >= std::sqrt(3.0))) throw DomainError("ball_measure: T < sqrt(3)");
  return kTwoPi * kTwoPi * cosh_tmax_minus_one(T);
}

HBall HBall::make(double T) {
  if (!(T > std::sqrt(3.0))) throw DomainError("HBall: radius must exceed sqrt(3)");
  return HBall{T, ball_measure(T), t_max_for_radius(T)};
}

double ball_t_quantile(double t_max, double u) {
  // 1 + u (cosh t_max - 1), evaluated through cosh t - 1 = 2 sinh^2(t/2).
  const double s = std::sinh(t_max / 2.0);
  const double half = std::sqrt(u) * s;  // sinh(t/2)
  return 2.0 * std::asinh(half);
}

HElement sample_h_ball(double T, RandomStream& rng) {
  if (!(T > std::sqrt(3.0))) throw DomainError("sample_h_ball: T <= sqrt(3)");
  const double t_max = t_max_for_radius(T);
  KAKCoords c;
  c.theta = rng.uniform(0.0, kTwoPi);
  c.t = ball_t_quantile(t_max, rng.uniform());
  c.theta_prime = rng.uniform(0.0, kTwoPi);
  return HElement::from_kak(c);
}

NormRatioBounds norm_regularity_check(const SL2Element& h0, std::span<const SL2Element> sample) {
  if (sample.empty()) throw DomainError("norm_regularity_check: empty sample");
  NormRatioBounds r{std::numeric_limits<double>::infinity(), 0.0};
  for (const auto& h : sample) {
    const double ratio = h_norm(h0 * h) / h_norm(h);
    r.min = std::min(r.min, ratio);
    r.max = std::max(r.max, ratio);
  }
  return r;
}

}  // namespace oppenheim
