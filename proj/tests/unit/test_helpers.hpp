#ifndef OPPENHEIM_TEST_HELPERS_HPP
#define OPPENHEIM_TEST_HELPERS_HPP

#include <cmath>
#include <random>

#include "oppenheim/linalg.hpp"
#include "oppenheim/random.hpp"

namespace oppenheim::testing {

// Gaussian matrix rescaled to determinant one.
inline Mat3 random_sl3(RandomStream& rng) {
  std::normal_distribution<double> normal;
  std::mt19937_64 eng(rng.next_u64());
  for (;;) {
    Mat3 m;
    for (double& x : m.a) x = normal(eng);
    double d = det(m);
    if (std::fabs(d) < 1e-3) continue;
    if (d < 0) {
      m.set_row(0, {-m(0, 0), -m(0, 1), -m(0, 2)});
      d = -d;
    }
    return (1.0 / std::cbrt(d)) * m;
  }
}

}  // namespace oppenheim::testing

#endif
