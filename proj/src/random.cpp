#include "disint/random.hpp"

namespace disint {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& lo, std::uint32_t& hi) {
  const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
  lo = static_cast<std::uint32_t>(product);
  hi = static_cast<std::uint32_t>(product >> 32);
}

inline PhiloxCounter round(const PhiloxCounter& c, const PhiloxKey& k) {
  std::uint32_t lo0, hi0, lo1, hi1;
  mulhilo(kMul0, c[0], lo0, hi0);
  mulhilo(kMul1, c[2], lo1, hi1);
  return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

SeedSpec SeedSpec::derive(std::uint64_t purpose) const {
  return {splitmix64(base_seed ^ splitmix64(purpose)), stream_index};
}

TrialSeeds trial_seeds(SeedSpec seed, std::uint64_t trial) {
  const SeedSpec params{seed.base_seed, seed.stream_index + trial};
  return {params, params.derive(kSamplingPurpose)};
}

SeedSpec oracle_seed(SeedSpec seed, std::uint64_t trial) {
  return {seed.base_seed, kOracleStreamOffset + seed.stream_index + trial};
}

PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) {
  for (int r = 0; r < 10; ++r) {
    if (r > 0) {
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    counter = round(counter, key);
  }
  return counter;
}

Stream::Stream(SeedSpec seed)
    : seed_(seed),
      key_{static_cast<std::uint32_t>(seed.base_seed),
           static_cast<std::uint32_t>(seed.base_seed >> 32)} {}

void Stream::refill() {
  const PhiloxCounter ctr{static_cast<std::uint32_t>(block_),
                          static_cast<std::uint32_t>(block_ >> 32),
                          static_cast<std::uint32_t>(seed_.stream_index),
                          static_cast<std::uint32_t>(seed_.stream_index >> 32)};
  const PhiloxCounter out = philox4x32_10(ctr, key_);
  buffer_[0] = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
  buffer_[1] = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
  ++block_;
  cursor_ = 0;
}

std::uint64_t Stream::next_u64() {
  if (cursor_ == 2) refill();
  return buffer_[cursor_++];
}

}  // namespace disint
