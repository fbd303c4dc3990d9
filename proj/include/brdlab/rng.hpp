#pragma once

#include <cstdint>

namespace brdlab {

// 64-bit finalizer from splitmix64 (Steele, Lea, Flood; same mixer as in
// java.util.SplittableRandom). Bijective on uint64.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derive a child stream seed from a parent seed and a label. Used to give
// every (cell, trial, purpose) its own independent stream so that results do
// not depend on evaluation order or thread scheduling.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label) {
  return mix64(seed ^ mix64(label + 0x632be59bd9b4e019ULL));
}

template <typename... Labels>
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t label,
                                    std::uint64_t next, Labels... rest) {
  return derive_seed(derive_seed(seed, label), next, rest...);
}

// Counter-based generator: output i of a stream is mix64 applied to
// seed + i*gamma, i.e. the splitmix64 sequence with random access. Draws are
// a pure function of (seed, counter), so any parameter indexed by its counter
// is reproducible no matter in which order the parameters are generated.
class CounterRng {
 public:
  CounterRng() : CounterRng(0) {}
  explicit CounterRng(std::uint64_t seed) : seed_(seed), counter_(0) {}

  std::uint64_t next_u64() { return at(counter_++); }

  // Draw `index` of this stream, independent of the cursor.
  std::uint64_t at(std::uint64_t index) const { return mix64(seed_ + index * kGamma); }

  // Uniform on [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}, unbiased via rejection.
  std::uint64_t next_below(std::uint64_t n) {
    const std::uint64_t limit = n * (UINT64_MAX / n);
    std::uint64_t x;
    do {
      x = next_u64();
    } while (x >= limit);
    return x % n;
  }

  CounterRng split(std::uint64_t label) const { return CounterRng(derive_seed(seed_, label)); }

  std::uint64_t seed() const { return seed_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace brdlab
