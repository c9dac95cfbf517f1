#ifndef OPPENHEIM_RANDOM_HPP
#define OPPENHEIM_RANDOM_HPP

#include <cstdint>
#include <random>

namespace oppenheim {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed0f0ddba11ULL;

/// Seeded, splittable pseudorandom source. A stream is owned by one task;
/// parallel work receives children via split(key), never a shared stream.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed = kDefaultSeed);

  /// Child stream keyed by `key`; independent of how many draws the parent
  /// has made.
  RandomStream split(std::uint64_t key) const;

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Uniform on {0, ..., n - 1}.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace oppenheim

#endif  // OPPENHEIM_RANDOM_HPP
