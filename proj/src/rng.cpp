#include "urnlift/rng.hpp"

#include <array>
#include <cstring>

namespace urnlift {

namespace {

// Philox4x32-10 (Salmon et al. round constants).
constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) {
  std::uint64_t p = static_cast<std::uint64_t>(a) * b;
  hi = static_cast<std::uint32_t>(p >> 32);
  lo = static_cast<std::uint32_t>(p);
}

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                        std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    std::uint32_t hi0, lo0, hi1, lo1;
    mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
    mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return ctr;
}

}  // namespace

void RandomnessStream::seek(std::uint64_t step, std::uint32_t channel) {
  if (channel >= kMaxChannels) throw UrnError("randomness channel out of range");
  if (step > 0xFFFFFFFFull) throw UrnError("step index exceeds the stream's counter range");
  step_ = step;
  channel_ = channel;
  slot_ = 0;
}

double RandomnessStream::next() {
  if (slot_ >= kMaxSlots) throw UrnError("randomness slot exhausted for this step/channel");
  std::array<std::uint32_t, 4> ctr = {
      (channel_ << 24) | slot_,
      static_cast<std::uint32_t>(step_),
      static_cast<std::uint32_t>(replicate_),
      static_cast<std::uint32_t>(replicate_ >> 32),
  };
  std::array<std::uint32_t, 2> key = {
      static_cast<std::uint32_t>(seed_),
      static_cast<std::uint32_t>(seed_ >> 32),
  };
  auto out = philox4x32(ctr, key);
  ++slot_;
  std::uint64_t bits = (static_cast<std::uint64_t>(out[0]) << 32) | out[1];
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

std::vector<double> split_uniform(double u, int k) {
  if (!(u >= 0.0 && u < 1.0)) throw UrnError("split_uniform needs u in [0,1)");
  if (k < 1 || k > 8) throw UrnError("split_uniform supports 1 <= k <= 8");
  // 53-bit expansion of u; digit i goes to stream i % k. Each stream gets at
  // least floor(53/8) = 6 fresh leading bits, plenty for branch decisions.
  std::uint64_t bits = static_cast<std::uint64_t>(u * 0x1.0p53);
  std::vector<std::uint64_t> parts(static_cast<std::size_t>(k), 0);
  std::vector<int> counts(static_cast<std::size_t>(k), 0);
  for (int i = 0; i < 53; ++i) {
    std::uint64_t digit = (bits >> (52 - i)) & 1u;
    std::size_t s = static_cast<std::size_t>(i % k);
    parts[s] = (parts[s] << 1) | digit;
    ++counts[s];
  }
  std::vector<double> out(static_cast<std::size_t>(k));
  for (std::size_t s = 0; s < out.size(); ++s) {
    out[s] = static_cast<double>(parts[s]) / static_cast<double>(std::uint64_t{1} << counts[s]);
  }
  return out;
}

}  // namespace urnlift
