#include "oppenheim/cli/selftest.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "oppenheim/forms.hpp"
#include "oppenheim/lattice.hpp"
#include "oppenheim/oracles.hpp"

namespace oppenheim::cli {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_vec(const IntVec3& n) {
  std::ostringstream os;
  os << "(" << n[0] << "," << n[1] << "," << n[2] << ")";
  return os.str();
}

}  // namespace

SuiteResult selftest_shortest_vector(RandomStream rng, std::size_t cases) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "shortest-vector box oracle";
  for (std::size_t i = 0; i < cases && r.passed; ++i) {
    const Mat3 reduced = reduce_basis(sample_x3_haar(rng).basis());
    const auto lib = shortest_vector(LatticePoint::from_basis(reduced));
    const auto ref = oracle::shortest_in_box(reduced);
    ++r.cases;
    if (lib.coeffs != ref.coeffs || std::fabs(lib.length - ref.length) > 1e-12 * ref.length) {
      std::ostringstream os;
      os << "case " << i << ": library " << fmt_vec(lib.coeffs) << " length " << lib.length
         << ", oracle " << fmt_vec(ref.coeffs) << " length " << ref.length;
      r.passed = false;
      r.first_failure = os.str();
    }
  }
  r.elapsed_s = seconds_since(t0);
  return r;
}

SuiteResult selftest_form_minimum(RandomStream rng, std::size_t cases, double T) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "form minimum O(T^3) oracle";
  for (std::size_t i = 0; i < cases && r.passed; ++i) {
    const QuadForm q = form_from_g(sample_x3_haar(rng).basis());
    const FormValueResult d = min_form_value_direct(q, T);
    const FormValueResult o = oracle::min_form_value_full(q, T);
    ++r.cases;
    if (d.n != o.n || d.value != o.value) {
      std::ostringstream os;
      os.precision(17);
      os << "case " << i << " (T = " << T << "): direct " << fmt_vec(d.n) << " value " << d.value
         << ", oracle " << fmt_vec(o.n) << " value " << o.value;
      r.passed = false;
      r.first_failure = os.str();
    }
  }
  r.elapsed_s = seconds_since(t0);
  return r;
}

SuiteResult selftest_spin(RandomStream rng, std::size_t cases, bool corrupt) {
  const auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  r.name = "spin cover battery";
  const auto b = oracle::spin_battery(cases, rng, corrupt);
  r.cases = b.trials;
  constexpr double tol = 1e-8;
  auto check = [&](const char* what, double err) {
    if (r.passed && !(err <= tol)) {
      std::ostringstream os;
      os << what << " failure: max error " << err << " > " << tol;
      r.passed = false;
      r.first_failure = os.str();
    }
  };
  // Q0-preservation is the defining property of the image, so it is reported first.
  check("Q0-preservation", b.form_preservation);
  check("homomorphism", b.homomorphism);
  check("determinant", b.determinant);
  check("kernel iota(-I) = I", b.kernel);
  r.elapsed_s = seconds_since(t0);
  return r;
}

std::vector<SuiteResult> run_selftest(std::uint64_t seed, bool corrupt_spin) {
  const RandomStream root(seed);
  return {selftest_shortest_vector(root.split(0)), selftest_form_minimum(root.split(1)),
          selftest_spin(root.split(2), 10000, corrupt_spin)};
}

}  // namespace oppenheim::cli
