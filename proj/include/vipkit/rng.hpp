#pragma once

#include <cstdint>
#include <initializer_list>

namespace vipkit {

// splitmix64 finalizer; full-avalanche 64-bit mix.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Counter-based random stream. A stream is a pure function of its key, so
// any number of streams can be drawn from concurrently and results never
// depend on execution order.
class RngStream {
 public:
  explicit RngStream(std::uint64_t key) : counter_(mix64(key)) {}

  std::uint64_t next_u64() {
    counter_ += 0x9e3779b97f4a7c15ull;
    std::uint64_t x = counter_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  // Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform in [0, bound); rejection keeps it exactly uniform.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = ~0ull - ~0ull % bound;
    std::uint64_t x = next_u64();
    while (x >= limit) x = next_u64();
    return x % bound;
  }

 private:
  std::uint64_t counter_;
};

// Stream-id namespaces; the first hash component disambiguates purposes so
// streams for different uses never collide on equal integer tuples.
namespace stream_tag {
constexpr std::uint64_t synthesis = 0xA1;
constexpr std::uint64_t roles = 0xA2;
constexpr std::uint64_t partitioning = 0xA3;
constexpr std::uint64_t minibatch_perm = 0xB1;
constexpr std::uint64_t neighbor_sample = 0xB2;
constexpr std::uint64_t empirical_vip = 0xC1;
}  // namespace stream_tag

// Root seed plus the derivation rule for per-(epoch, partition, batch, hop,
// vertex) stream keys.
struct SeedSpec {
  std::uint64_t global_seed = 0;

  // Namespaced copy; derived seeds produce streams disjoint from the base.
  SeedSpec derived(std::uint64_t tag) const { return SeedSpec{mix64(global_seed ^ mix64(tag))}; }

  std::uint64_t key(std::initializer_list<std::uint64_t> parts) const {
    std::uint64_t h = global_seed;
    for (std::uint64_t p : parts) h = mix64(h ^ mix64(p));
    return h;
  }

  RngStream stream(std::initializer_list<std::uint64_t> parts) const {
    return RngStream(key(parts));
  }
};

}  // namespace vipkit
