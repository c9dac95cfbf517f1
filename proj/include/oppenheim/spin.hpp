#ifndef OPPENHEIM_SPIN_HPP
#define OPPENHEIM_SPIN_HPP

// The spin cover SL2(R) -> SO(Q0) for Q0 = x^2 + y^2 - z^2, the norm it
// induces on H = SL2(R), Haar measure in KAK coordinates and norm balls.

#include <array>
#include <span>

#include "oppenheim/linalg.hpp"
#include "oppenheim/random.hpp"

namespace oppenheim {

/// Image of h in SO(Q0): the transpose of the displayed 3x3 spin matrix, so
/// that iota(h1 h2) = iota(h1) iota(h2) and v -> v * iota(h) is a right action.
Mat3 spin_cover(const SL2Element& h);

namespace detail {
/// Same as spin_cover, but with displayed entry (2,1) optionally ab + cd.
/// Only the self-test negative control uses the corrupted variant.
Mat3 spin_cover_variant(const SL2Element& h, bool corrupt_entry21);
}  // namespace detail

/// Nearest preimage (up to sign) of an approximate SO(Q0) element.
SL2Element spin_preimage(const Mat3& m);

/// Orthonormal (Hilbert-Schmidt) basis of the image of sl2 in sl3.
const std::array<Mat3, 3>& spin_algebra_basis();

/// ||h|| := ||iota(h)^{-1}||_2. Always >= sqrt(3).
double h_norm(const SL2Element& h);

/// KAK boost parameter t for which ||a_t|| = T.
double t_max_for_radius(double T);
double norm_at_boost(double t);

struct HElement {
  SL2Element matrix;
  KAKCoords kak;
  double norm = 0.0;

  static HElement from_matrix(const SL2Element& h);
  static HElement from_kak(const KAKCoords& c);
};

/// Haar density sinh(t) in coordinates dtheta dtheta' dt.
double haar_density(const KAKCoords& c);

/// m{h : ||h|| <= T} = (2 pi)^2 (cosh t_max - 1). Throws DomainError for T < sqrt(3).
double ball_measure(double T);

struct HBall {
  double radius = 0.0;
  double measure = 0.0;
  double t_max = 0.0;
  /// Growth exponents of m(H_T).
  double d_minus = 1.0;
  double d_plus = 1.0;

  static HBall make(double T);
};

/// t with density sinh(t) / (cosh t_max - 1) on [0, t_max], via inverse CDF of u in [0, 1).
double ball_t_quantile(double t_max, double u);

/// Haar-uniform element of H_T. Throws DomainError for T <= sqrt(3).
HElement sample_h_ball(double T, RandomStream& rng);

struct NormRatioBounds {
  double min = 0.0;
  double max = 0.0;
};

/// min and max of ||h0 h|| / ||h|| over the sample.
NormRatioBounds norm_regularity_check(const SL2Element& h0, std::span<const SL2Element> sample);

}  // namespace oppenheim

#endif  // OPPENHEIM_SPIN_HPP
