#pragma once

#include <array>
#include <concepts>
#include <cstdint>

namespace disint {

// Identifies one reproducible random stream. The generator state is a pure
// function of (base_seed, stream_index).
struct SeedSpec {
  std::uint64_t base_seed = 0;
  std::uint64_t stream_index = 0;

  // Same stream index, base seed remixed with `purpose`. Used to give the two
  // stages of one trial (parameters, conditional draws) unrelated streams.
  [[nodiscard]] SeedSpec derive(std::uint64_t purpose) const;

  friend bool operator==(const SeedSpec&, const SeedSpec&) = default;
};

// Purpose tags for SeedSpec::derive.
inline constexpr std::uint64_t kSamplingPurpose = 1;

// Oracle computations for trial i use stream index kOracleStreamOffset + i so
// they never share a stream with the estimator of any trial.
inline constexpr std::uint64_t kOracleStreamOffset = std::uint64_t{1} << 32;

// Streams used by trial `trial` of an experiment seeded with `seed`: the
// parameter stage reads stream seed.stream_index + trial, the conditional
// draws read the same index under a derived base seed.
struct TrialSeeds {
  SeedSpec params;
  SeedSpec sampling;
};
[[nodiscard]] TrialSeeds trial_seeds(SeedSpec seed, std::uint64_t trial);
[[nodiscard]] SeedSpec oracle_seed(SeedSpec seed, std::uint64_t trial);

// splitmix64 finalizer (Steele, Lea, Flood 2014); constants are the published
// ones.
[[nodiscard]] constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Philox4x32-10 block function (Salmon et al., SC'11). Counter-based: the
// output for a given (counter, key) never depends on call history.
using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

[[nodiscard]] PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

// Sequential view over the Philox blocks of one SeedSpec.
//
// Layout: key = (low, high) 32-bit halves of base_seed; counter words 0-1 hold
// the 64-bit block index, words 2-3 hold the 64-bit stream index. Each block
// yields two 64-bit outputs.
class Stream {
 public:
  explicit Stream(SeedSpec seed);

  std::uint64_t next_u64();

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  [[nodiscard]] SeedSpec seed() const { return seed_; }

 private:
  void refill();

  SeedSpec seed_;
  PhiloxKey key_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int cursor_ = 2;
};

template <class G>
concept UniformSource = requires(G& g) {
  { g.uniform() } -> std::convertible_to<double>;
};

// Reflects every draw: u -> 1 - u. Pairs of antithetic runs see mirrored
// parameters and mirrored conditional draws.
template <UniformSource G>
class Antithetic {
 public:
  explicit Antithetic(G& inner) : inner_(&inner) {}
  double uniform() { return 1.0 - inner_->uniform(); }

 private:
  G* inner_;
};

}  // namespace disint
