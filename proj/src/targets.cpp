#include "oppenheim/targets.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "oppenheim/spin.hpp"

namespace oppenheim {

std::string to_string(TargetKind k) { return k == TargetKind::point ? "point" : "cusp"; }

TargetFamily TargetFamily::cusp() { return TargetFamily{}; }

TargetFamily TargetFamily::cusp_constant(double alpha_threshold) {
  TargetFamily f;
  f.cusp_scale = alpha_threshold;
  f.cusp_exponent = 0.0;
  return f;
}

TargetFamily TargetFamily::point(const LatticePoint& y, double delta) {
  if (!(delta >= 0.0)) throw DomainError("point target thickening must be >= 0");
  TargetFamily f;
  f.kind = TargetKind::point;
  f.center = y;
  f.delta = delta;
  return f;
}

TargetFamily TargetFamily::frozen(TargetFamily base, double t0) {
  if (!(t0 >= 1.0)) throw DomainError("frozen level must be >= 1");
  base.frozen_t = t0;
  return base;
}

double TargetFamily::score(const Mat3& basis) const {
  if (kind == TargetKind::cusp) return alpha1_of_basis(basis);
  return thickened_point_distance(basis, center->reduced_basis());
}

bool TargetFamily::score_in_target(double s, double t) const {
  const double te = effective_t(t);
  if (kind == TargetKind::cusp) return s >= cusp_scale * std::pow(te, cusp_exponent);
  return s < std::pow(te, -1.0 / d0) + delta;
}

std::string TargetFamily::describe() const {
  std::ostringstream os;
  if (kind == TargetKind::cusp) {
    os << "cusp: alpha1 >= " << cusp_scale << " * t^" << cusp_exponent;
  } else {
    os << "point: thickened_dist < t^(-1/" << d0 << ") + " << delta;
  }
  if (frozen_t > 0.0) os << " (frozen at t=" << frozen_t << ")";
  return os.str();
}

double thickened_point_distance(const Mat3& x_basis, const Mat3& y_basis) {
  const PointDisplacement d = displacement(y_basis, x_basis);
  if (!d.found) return std::numeric_limits<double>::infinity();
  Mat3 along = Mat3::zero();
  for (const Mat3& e : spin_algebra_basis()) {
    double c = 0.0;
    for (int k = 0; k < 9; ++k) c += d.delta.a[k] * e.a[k];
    along = along + c * e;
  }
  const double transverse = hs_norm(d.delta - along);
  const double excess = std::max(0.0, hs_norm(along) - kThickeningRadius);
  return std::sqrt(transverse * transverse + excess * excess);
}

}  // namespace oppenheim
