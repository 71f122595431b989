#pragma once
#include <cstdint>

namespace oslash {

// splitmix64; used instead of <random> distributions so streams are identical
// across platforms and thread counts.
struct SplitMix64 {
  uint64_t state;

  explicit SplitMix64(uint64_t seed) : state(seed) {}

  uint64_t next() {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  double u01() { return double(next() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * u01(); }
};

// independent stream per index, so samples do not depend on scheduling
inline uint64_t substream_seed(uint64_t seed, uint64_t index) {
  SplitMix64 s(seed ^ (0xd1b54a32d192ed03ULL * (index + 1)));
  return s.next();
}

}  // namespace oslash
