#include "rocover/rng.h"

namespace rocover {

std::uint64_t SplitMix64::Below(std::uint64_t n) {
  if (n <= 1) return 0;
  // Reject the low (2^64 mod n) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t r = (*this)();
    if (r >= threshold) return r % n;
  }
}

std::uint64_t Mix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master, StreamTag tag, std::uint64_t a,
                         std::uint64_t b) {
  std::uint64_t h = Mix64(master ^ Mix64(static_cast<std::uint64_t>(tag)));
  h = Mix64(h ^ Mix64(a + 1));
  h = Mix64(h ^ Mix64(b + 1));
  return h;
}

}  // namespace rocover
