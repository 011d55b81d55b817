#ifndef ROCOVER_RNG_H_
#define ROCOVER_RNG_H_

#include <cstdint>
#include <limits>
#include <utility>
#include <vector>

namespace rocover {

// SplitMix64 (Steele, Lea, Flood 2014). The output sequence depends only on
// the 64-bit seed, so sampling is bit-stable across platforms and compilers.
//
// Streams are split by hashing: DeriveSeed(master, tag, a, b) folds each
// label into the state with the SplitMix64 finalizer,
//
//   h = Mix64(master ^ Mix64(tag));  h = Mix64(h ^ Mix64(a + 1));
//   h = Mix64(h ^ Mix64(b + 1));
//
// and the result seeds an independent SplitMix64. The framework uses
// (kSampling, phase, t) for the per-step sampling stream, so a step's draws
// do not depend on how many draws earlier steps consumed.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double Uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  // Uniform double in [lo, hi).
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n). Rejection sampling, so exactly unbiased.
  std::uint64_t Below(std::uint64_t n);

  // Uniform integer in [lo, hi] (inclusive).
  std::int64_t UniformInt(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    Below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  // True with probability p; p >= 1 is always true and p <= 0 never.
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  std::uint64_t state_;
};

// Purpose labels for stream splitting.
enum class StreamTag : std::uint64_t {
  kSampling = 1,
  kArrivals = 2,
  kGenerator = 3,
  kFuzz = 4,
  kTrial = 5,
  kValidator = 6,
};

// The SplitMix64 output finalizer.
std::uint64_t Mix64(std::uint64_t x);

std::uint64_t DeriveSeed(std::uint64_t master, StreamTag tag,
                         std::uint64_t a = 0, std::uint64_t b = 0);

inline SplitMix64 MakeStream(std::uint64_t master, StreamTag tag,
                             std::uint64_t a = 0, std::uint64_t b = 0) {
  return SplitMix64(DeriveSeed(master, tag, a, b));
}

// Fisher-Yates shuffle driven by SplitMix64::Below.
template <typename T>
void Shuffle(std::vector<T>& values, SplitMix64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.Below(i));
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace rocover

#endif  // ROCOVER_RNG_H_
