#ifndef OPPENHEIM_FORMS_HPP
#define OPPENHEIM_FORMS_HPP

// Indefinite ternary quadratic forms Q(v) = v S v^t with det S = -1, the
// action Q^g(v) = Q(v g) on forms, and the direct search for small |Q(n)|.

#include <optional>
#include <string>

#include "oppenheim/linalg.hpp"

namespace oppenheim {

enum class NormChoice { euclidean, sup };

std::string to_string(NormChoice n);
NormChoice parse_norm_choice(const std::string& s);

double vector_norm(const Vec3& v, NormChoice choice);

/// Integer points with ||n|| <= T (1 + kBallRelTol) count as inside the ball
/// of radius T, so a radius computed as the norm of n contains n.
inline constexpr double kBallRelTol = 1e-12;

struct QuadForm {
  Mat3 sym;
  /// Present when the form was built as Q0^g.
  std::optional<Mat3> source_g;

  /// Validates symmetry (1e-12) and det = -1 (1e-8); throws DomainError otherwise.
  static QuadForm from_symmetric(const Mat3& s);
};

/// x^2 + y^2 - z^2.
QuadForm q0();

/// Q0^g, i.e. S = g diag(1, 1, -1) g^t. Throws NotUnimodular unless |det g - 1| <= 1e-8.
QuadForm form_from_g(const Mat3& g);

/// v S v^t, always evaluated in the same order so equal inputs give
/// bit-identical values.
double eval_form(const QuadForm& q, const Vec3& v);
double eval_form(const QuadForm& q, const IntVec3& n);

struct FormValueResult {
  IntVec3 n{};
  double value = 0.0;
  double T = 0.0;
  double elapsed = 0.0;
};

/// True when (|a.value|, a.n) precedes (|b.value|, b.n); n are sign-canonical.
bool better_form_value(const FormValueResult& a, const FormValueResult& b);

/// Exact minimizer of |Q(n)| over nonzero integer n with ||n|| <= T.
/// Slices along the coordinate with the largest diagonal coefficient when
/// |S_33| < 1e-6 and evaluates, per plane point, the integers around the real
/// roots (or the vertex) of the restricted quadratic and the range ends.
/// Throws DomainError for T < 1.
FormValueResult min_form_value_direct(const QuadForm& q, double T,
                                      NormChoice norm = NormChoice::euclidean,
                                      unsigned workers = 1);

}  // namespace oppenheim

#endif  // OPPENHEIM_FORMS_HPP
