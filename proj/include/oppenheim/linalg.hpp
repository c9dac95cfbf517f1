#ifndef OPPENHEIM_LINALG_HPP
#define OPPENHEIM_LINALG_HPP

// Small dense linear algebra for SL3(R) and SL2(R): fixed-size matrices,
// Hilbert-Schmidt and operator norms, inverses, and the Cartan (KAK)
// decomposition of SL2(R).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace oppenheim {

class SingularMatrix : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NotUnimodular : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Tolerance for membership of a constructed matrix in SL_n.
inline constexpr double kDetTol = 1e-9;
/// Tolerance for compose/decompose round trips.
inline constexpr double kRoundTripTol = 1e-8;

using Vec3 = std::array<double, 3>;
using IntVec3 = std::array<std::int64_t, 3>;

double dot(const Vec3& a, const Vec3& b);
double norm2(const Vec3& a);
double sup_norm(const Vec3& a);
Vec3 to_real(const IntVec3& n);

/// Row-major 3x3 matrix. Vectors are rows and act on the left: v * A.
struct Mat3 {
  std::array<double, 9> a{};

  static Mat3 zero() { return Mat3{}; }
  static Mat3 identity();
  static Mat3 diag(double d0, double d1, double d2);
  static Mat3 from_rows(const Vec3& r0, const Vec3& r1, const Vec3& r2);

  double& operator()(int i, int j) { return a[3 * i + j]; }
  double operator()(int i, int j) const { return a[3 * i + j]; }

  Vec3 row(int i) const { return {a[3 * i], a[3 * i + 1], a[3 * i + 2]}; }
  void set_row(int i, const Vec3& r);

  bool operator==(const Mat3&) const = default;
};

Mat3 operator*(const Mat3& x, const Mat3& y);
Mat3 operator+(const Mat3& x, const Mat3& y);
Mat3 operator-(const Mat3& x, const Mat3& y);
Mat3 operator*(double s, const Mat3& x);
/// Row vector times matrix.
Vec3 operator*(const Vec3& v, const Mat3& m);

Mat3 mat3_mul(const Mat3& x, const Mat3& y);
Mat3 transpose(const Mat3& m);
double det(const Mat3& m);
double trace(const Mat3& m);

/// Throws SingularMatrix when |det| <= 1e-12.
Mat3 mat3_inv(const Mat3& m);

/// sqrt(sum of squared entries) = sqrt(tr(m^t m)).
double hs_norm(const Mat3& m);
/// Largest singular value.
double op_norm(const Mat3& m);
/// Max entrywise absolute difference.
double max_abs_diff(const Mat3& x, const Mat3& y);
bool is_finite(const Mat3& m);

/// Symmetric eigenvalues in ascending order (closed-form trigonometric solve).
std::array<double, 3> sym_eigenvalues(const Mat3& s);

struct SL2Element {
  double a = 1.0, b = 0.0, c = 0.0, d = 1.0;

  static SL2Element identity() { return {}; }
  double det() const { return a * d - b * c; }
  SL2Element inverse() const { return {d, -b, -c, a}; }
  SL2Element operator-() const { return {-a, -b, -c, -d}; }
  bool operator==(const SL2Element&) const = default;
};

SL2Element operator*(const SL2Element& x, const SL2Element& y);
double max_abs_diff(const SL2Element& x, const SL2Element& y);

/// Throws DomainError unless |ad - bc - 1| <= 1e-9.
SL2Element make_sl2(double a, double b, double c, double d);

/// h = k_theta * a_t * k_theta_prime with
/// k_theta = [[cos, sin], [-sin, cos]] and a_t = diag(e^{t/2}, e^{-t/2}).
struct KAKCoords {
  double theta = 0.0;
  double t = 0.0;
  double theta_prime = 0.0;
};

double wrap_angle(double x);

SL2Element rotation(double theta);
SL2Element boost(double t);

/// Canonical form: theta' = 0 when t = 0, otherwise theta in [0, pi).
KAKCoords kak_decompose(const SL2Element& h);
SL2Element kak_compose(const KAKCoords& c);

}  // namespace oppenheim

#endif  // OPPENHEIM_LINALG_HPP
