#ifndef IQ_RNG_HPP
#define IQ_RNG_HPP

#include <cstdint>

namespace iq {

// Counter-based 64-bit generator: the SplitMix64 scheme of Steele, Lea &
// Flood (2014).  The i-th output is mix13(key + i*gamma), where mix13 is
// Stafford's variant-13 finalizer and gamma is the 64-bit golden ratio.
// Outputs are a pure function of (key, counter), so any stream position can
// be reproduced without generating its predecessors.
//
// Streams are derived from a (master seed, experiment id, replicate id)
// triple; replicates of an experiment therefore own disjoint, independently
// seeded streams and may run concurrently.
class CounterRng {
 public:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t key) : key_(key) {}

  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
  }

  // One avalanche step per component keeps adjacent ids decorrelated.
  static std::uint64_t derive(std::uint64_t key, std::uint64_t id) {
    return mix(key + kGamma * (id + 1));
  }

  static CounterRng stream(std::uint64_t master_seed, std::uint64_t experiment,
                           std::uint64_t replicate) {
    return CounterRng(derive(derive(master_seed, experiment), replicate));
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGamma); }

  // Uniform on [0,1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform on the open interval (0,1); safe to feed to quantile functions
  // of distributions with unbounded support.
  double next_open() {
    return (static_cast<double>(next_u64() >> 12) + 0.5) * 0x1.0p-52;
  }

  // Index uniform on {0,...,n-1} via the multiply-shift reduction.
  std::uint64_t next_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

// Experiment ids used for stream derivation (kept stable across releases:
// changing them changes every seeded result).
namespace stream_id {
inline constexpr std::uint64_t kBias = 1;
inline constexpr std::uint64_t kNormality = 2;
inline constexpr std::uint64_t kVervaat = 3;
inline constexpr std::uint64_t kMedianGap = 4;
inline constexpr std::uint64_t kBootstrap = 5;
inline constexpr std::uint64_t kAr1 = 6;
inline constexpr std::uint64_t kTsClt = 7;
inline constexpr std::uint64_t kFuzz = 8;
inline constexpr std::uint64_t kPilot = 9;
}  // namespace stream_id

}  // namespace iq

#endif  // IQ_RNG_HPP
