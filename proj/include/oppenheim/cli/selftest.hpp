#ifndef OPPENHEIM_CLI_SELFTEST_HPP
#define OPPENHEIM_CLI_SELFTEST_HPP

#include <optional>
#include <string>
#include <vector>

#include "oppenheim/random.hpp"

namespace oppenheim::cli {

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  /// Description of the first failing case.
  std::optional<std::string> first_failure;
  double elapsed_s = 0.0;
};

SuiteResult selftest_shortest_vector(RandomStream rng, std::size_t cases = 1000);
SuiteResult selftest_form_minimum(RandomStream rng, std::size_t cases = 100, double T = 25.0);
SuiteResult selftest_spin(RandomStream rng, std::size_t cases = 10000, bool corrupt = false);

/// All three suites in order.
std::vector<SuiteResult> run_selftest(std::uint64_t seed, bool corrupt_spin);

}  // namespace oppenheim::cli

#endif  // OPPENHEIM_CLI_SELFTEST_HPP
