#pragma once

#include <cmath>
#include <cstdint>

// Counter-based deterministic randomness. Every variate is a pure function of
// (master seed, domain tag, identifying integers), so point sets, edge marks and
// replica streams can be generated in any order and still agree bit for bit.

namespace wrcm {

// splitmix64 finalizer; full-avalanche 64-bit mixer.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Fold one more value into a running hash key.
inline std::uint64_t chain(std::uint64_t h, std::uint64_t v) {
    return mix64(h ^ mix64(v));
}

// Map 64 random bits to the open interval (0,1); smallest value 2^-53, largest
// 1 - 2^-53. Uses 52 bits so every (k + 0.5) * 2^-52 is exactly representable;
// with a 53-bit grid the top value would round up to 1.0.
inline double u01(std::uint64_t bits) {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

// Domain tags keeping unrelated streams independent under one master seed.
namespace tag {
constexpr std::uint64_t count = 0x706f697373ull;   // vertex count draw
constexpr std::uint64_t position = 0x706f73ull;    // vertex positions
constexpr std::uint64_t mark = 0x6d61726bull;      // vertex marks
constexpr std::uint64_t palm = 0x70616c6dull;      // palm mark
constexpr std::uint64_t edge = 0x65646765ull;      // pair variates U_{i,j}
constexpr std::uint64_t thin = 0x7468696eull;      // edge thinning
constexpr std::uint64_t walk = 0x77616c6bull;      // random walk steps
constexpr std::uint64_t replica = 0x7265706cull;   // per-replica subseeds
constexpr std::uint64_t bootstrap = 0x626f6f74ull; // bootstrap resampling
}  // namespace tag

// Keyed counter stream: key fixed at construction, each draw advances a counter.
class Stream {
  public:
    explicit Stream(std::uint64_t key) : key_(key) {}
    Stream(std::uint64_t seed, std::uint64_t domain_tag)
        : key_(chain(mix64(seed), domain_tag)) {}

    std::uint64_t next_u64() { return mix64(key_ ^ mix64(ctr_++)); }
    double next_u01() { return u01(next_u64()); }

    // Uniform index in [0, n); rejection keeps it exactly uniform.
    std::uint64_t next_index(std::uint64_t n) {
        const std::uint64_t limit = ~0ull - ~0ull % n;
        std::uint64_t x;
        do {
            x = next_u64();
        } while (x >= limit);
        return x % n;
    }

  private:
    std::uint64_t key_;
    std::uint64_t ctr_ = 0;
};

// The pair variate U_{i,j}: keyed on the sorted pair, independent of insertion order.
inline double pair_u01(std::uint64_t seed, std::uint64_t domain_tag, std::uint64_t i,
                       std::uint64_t j) {
    const std::uint64_t lo = i < j ? i : j;
    const std::uint64_t hi = i < j ? j : i;
    return u01(chain(chain(chain(mix64(seed), domain_tag), lo), hi));
}

// Poisson count by accumulating exponential interarrival times; O(mean) draws,
// stable for the large means a sampling window needs.
inline std::uint64_t poisson(Stream& stream, double mean) {
    std::uint64_t n = 0;
    double total = 0.0;
    while (true) {
        total += -std::log(stream.next_u01());
        if (total > mean) return n;
        ++n;
    }
}

}  // namespace wrcm
