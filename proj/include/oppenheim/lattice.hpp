#ifndef OPPENHEIM_LATTICE_HPP
#define OPPENHEIM_LATTICE_HPP

// Unimodular lattices in R^3 (points of SL3(Z)\SL3(R)): basis reduction,
// exact shortest vectors, alpha_1, distances to the cusp and between points,
// and random lattices.

#include <array>
#include <cstdint>

#include "oppenheim/linalg.hpp"
#include "oppenheim/random.hpp"

namespace oppenheim {

using IntMat3 = std::array<std::array<std::int64_t, 3>, 3>;

IntMat3 int_identity();
IntMat3 int_mul(const IntMat3& x, const IntMat3& y);
std::int64_t int_det(const IntMat3& m);
Mat3 to_real(const IntMat3& m);
IntVec3 int_row_times(const IntVec3& c, const IntMat3& m);

/// Flips the sign so the first nonzero coordinate is positive.
IntVec3 canonical_sign(IntVec3 n);
/// Strict order on canonical coefficient vectors used for length ties:
/// the lexicographically larger vector wins.
bool tie_prefers(const IntVec3& a, const IntVec3& b);

inline constexpr double kLllDelta = 0.99;

struct Reduction {
  Mat3 reduced;
  /// reduced = transition * basis (rows), integer with determinant +-1.
  IntMat3 transition;
};

/// LLL reduction (delta = 0.99) of the row basis. Throws SingularMatrix when |det| < 1e-8.
Reduction reduce_with_transition(const Mat3& basis);
Mat3 reduce_basis(const Mat3& basis);

struct ShortVectorResult {
  IntVec3 coeffs{};
  Vec3 vector{};
  double length = 0.0;
};

/// Shortest nonzero vector of the lattice spanned by the rows of an
/// LLL-reduced basis, with coefficients relative to that basis.
ShortVectorResult shortest_in_reduced(const Mat3& reduced);

/// 1 / (length of the shortest vector) for any basis; reduces internally.
double alpha1_of_basis(const Mat3& basis);

class LatticePoint {
 public:
  /// Throws NotUnimodular when |det basis - 1| > 1e-8.
  static LatticePoint from_basis(const Mat3& basis);

  /// The standard lattice Z^3.
  static LatticePoint standard() { return from_basis(Mat3::identity()); }

  const Mat3& basis() const { return basis_; }
  const Mat3& reduced_basis() const { return reduced_; }
  const IntMat3& transition() const { return transition_; }
  const Mat3& gram() const { return gram_; }
  double alpha1() const { return alpha1_; }
  /// Shortest vector with coefficients relative to basis().
  const ShortVectorResult& shortest() const { return shortest_; }

  /// The lattice Z^3 * basis * g.
  LatticePoint translate(const Mat3& g) const;

 private:
  Mat3 basis_;
  Mat3 reduced_;
  IntMat3 transition_{};
  Mat3 gram_;
  double alpha1_ = 0.0;
  ShortVectorResult shortest_;
};

/// Exact minimizer over Z^3 \ {0}; ties broken by length, then the
/// lexicographically largest coefficient vector whose first nonzero entry
/// is positive.
ShortVectorResult shortest_vector(const LatticePoint& p);
double alpha1(const LatticePoint& p);

/// max(0, 3 log alpha_1), so that mu{dist > s} decays like e^{-s}.
double cusp_distance_from_alpha1(double alpha1);
double cusp_distance(const LatticePoint& p);

struct PointDisplacement {
  double distance = 0.0;
  /// basis_p^{-1} gamma basis_q - I for the best gamma, so that the point
  /// q equals p * (I + delta).
  Mat3 delta;
  IntMat3 gamma{};
  bool found = false;
};

/// Surrogate distance between lattice points: min over candidate integer
/// gamma with det 1 of ||basis_p^{-1} gamma basis_q - I||_2. Accurate below
/// about 0.5; +infinity when no candidate is unimodular.
double point_distance(const LatticePoint& p, const LatticePoint& q);

/// Displacement of q relative to p (see PointDisplacement::delta).
PointDisplacement displacement(const Mat3& basis_p, const Mat3& basis_q);

/// Index of the Hecke correspondence used by sample_x3_haar.
inline constexpr std::int64_t kHeckePrime = 1000003;

/// Uniformly random sublattice of Z^3 of index kHeckePrime, rescaled to
/// covolume one and rotated by a uniform element of SO(3). Hecke points
/// equidistribute, so this is Haar up to an error invisible at the sample
/// sizes used here.
LatticePoint sample_x3_haar(RandomStream& rng);

/// Uniform element of SO(3).
Mat3 random_rotation(RandomStream& rng);

}  // namespace oppenheim

#endif  // OPPENHEIM_LATTICE_HPP
