#ifndef OPPENHEIM_ORACLES_HPP
#define OPPENHEIM_ORACLES_HPP

// Brute-force reference computations. They share no search logic with the
// library routines they check and are used by the tests and `selftest`.

#include "oppenheim/forms.hpp"
#include "oppenheim/lattice.hpp"
#include "oppenheim/random.hpp"

namespace oppenheim::oracle {

/// Shortest vector over the coefficient box |c_i| <= box, same tie rule as
/// shortest_vector.
ShortVectorResult shortest_in_box(const Mat3& basis, int box = 10);

/// Minimum of |Q(n)| over every nonzero n in the ball, visited one by one.
FormValueResult min_form_value_full(const QuadForm& q, double T,
                                    NormChoice norm = NormChoice::euclidean);

struct SpinBattery {
  double homomorphism = 0.0;
  double determinant = 0.0;
  double form_preservation = 0.0;
  double kernel = 0.0;
  std::size_t trials = 0;
};

/// Worst-case errors of the spin cover over random SL2 elements and pairs.
/// `corrupt_entry21` swaps in the ab + cd misreading.
SpinBattery spin_battery(std::size_t trials, RandomStream& rng, bool corrupt_entry21 = false);

/// Haar-random element of the norm ball of the given radius.
SL2Element random_sl2(RandomStream& rng, double radius = 50.0);

}  // namespace oppenheim::oracle

#endif  // OPPENHEIM_ORACLES_HPP
