#ifndef OPPENHEIM_TARGETS_HPP
#define OPPENHEIM_TARGETS_HPP

// Shrinking-target families A_t on the space of lattices. Membership is
// expressed through a scalar depth score so that searches can compute the
// score once and test it against many levels t.

#include <optional>
#include <string>

#include "oppenheim/lattice.hpp"

namespace oppenheim {

enum class TargetKind { cusp, point };

std::string to_string(TargetKind k);

/// dim SL3(R) - dim SL2(R).
inline constexpr int kPointTargetDim = 5;

/// Radius, in the Lie algebra of H, of the H-thickening used by point targets.
inline constexpr double kThickeningRadius = 0.5;

struct TargetFamily {
  TargetKind kind = TargetKind::cusp;

  // Cusp family: alpha_1 >= cusp_scale * t^cusp_exponent.
  double cusp_scale = 1.0;
  double cusp_exponent = 1.0 / 3.0;

  // Point family: thickened distance to the center < t^{-1/d0} + delta.
  std::optional<LatticePoint> center;
  int d0 = kPointTargetDim;
  double delta = 0.0;

  /// When positive, the level is frozen at this t (a non-shrinking control).
  double frozen_t = 0.0;

  /// A_t = {alpha_1 >= t^{1/3}}.
  static TargetFamily cusp();
  /// Constant threshold alpha_1 >= a for every t.
  static TargetFamily cusp_constant(double alpha_threshold);
  static TargetFamily point(const LatticePoint& y, double delta);
  /// Copy of `base` whose level never moves past t0.
  static TargetFamily frozen(TargetFamily base, double t0);

  /// Depth of the lattice with the given basis: alpha_1 (cusp, larger is
  /// deeper) or the thickened distance to the center (point, smaller is deeper).
  double score(const Mat3& basis) const;
  bool score_in_target(double score, double t) const;
  bool contains(const Mat3& basis, double t) const { return score_in_target(score(basis), t); }
  /// True when a larger score is deeper in the target.
  bool larger_is_deeper() const { return kind == TargetKind::cusp; }
  /// Nominal decay exponent of mu(A_t).
  double decay_exponent() const { return frozen_t > 0.0 ? 0.0 : 1.0; }

  std::string describe() const;

 private:
  double effective_t(double t) const { return frozen_t > 0.0 ? frozen_t : t; }
};

/// First-order distance from x to the H-thickened neighbourhood of y:
/// the displacement x = y (I + D) is split into its component along the Lie
/// algebra of H and the orthogonal rest; the H component counts only beyond
/// kThickeningRadius. Returns +infinity when no unimodular gamma is found.
double thickened_point_distance(const Mat3& x_basis, const Mat3& y_basis);

}  // namespace oppenheim

#endif  // OPPENHEIM_TARGETS_HPP
