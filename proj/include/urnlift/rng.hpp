#pragma once

#include <cstdint>
#include <vector>

#include "urnlift/errors.hpp"

namespace urnlift {

/// Anything that hands out uniforms in [0,1). Sampling routines take this
/// interface so drawing can be recorded and replayed (the coupling machinery
/// depends on that).
class UniformSource {
 public:
  virtual ~UniformSource() = default;
  virtual double next() = 0;
};

/// Counter-based uniform stream (Philox4x32-10). The value at a given
/// (seed, replicate, step, channel, slot) address never depends on what was
/// drawn before, so parallel replicates and re-runs are reproducible by
/// construction.
///
/// Address layout: key = seed, counter = (replicate, step, channel<<24 | slot).
/// Channel 0 carries the draw uniforms of a step, channel 1 the kernel
/// uniform. Up to 2^24 uniforms per (step, channel).
class RandomnessStream final : public UniformSource {
 public:
  static constexpr std::uint32_t kMaxChannels = 256;
  static constexpr std::uint32_t kMaxSlots = std::uint32_t{1} << 24;

  explicit RandomnessStream(std::uint64_t seed, std::uint64_t replicate = 0) noexcept
      : seed_(seed), replicate_(replicate) {}

  /// Position at the first slot of (step, channel).
  void seek(std::uint64_t step, std::uint32_t channel);

  double next() override;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t replicate() const noexcept { return replicate_; }
  std::uint64_t step() const noexcept { return step_; }
  std::uint32_t channel() const noexcept { return channel_; }
  std::uint32_t slot() const noexcept { return slot_; }

 private:
  std::uint64_t seed_;
  std::uint64_t replicate_;
  std::uint64_t step_ = 0;
  std::uint32_t channel_ = 0;
  std::uint32_t slot_ = 0;
};

/// Records every uniform handed out by an underlying source.
class RecordingSource final : public UniformSource {
 public:
  explicit RecordingSource(UniformSource& inner) : inner_(&inner) {}
  double next() override {
    double u = inner_->next();
    values_.push_back(u);
    return u;
  }
  const std::vector<double>& values() const noexcept { return values_; }

 private:
  UniformSource* inner_;
  std::vector<double> values_;
};

/// Replays a fixed list of uniforms; throws if asked for more than it holds.
class ReplaySource final : public UniformSource {
 public:
  explicit ReplaySource(std::vector<double> values) : values_(std::move(values)) {}
  double next() override {
    if (pos_ >= values_.size()) throw UrnError("replayed randomness exhausted");
    return values_[pos_++];
  }
  std::size_t consumed() const noexcept { return pos_; }
  std::size_t size() const noexcept { return values_.size(); }

 private:
  std::vector<double> values_;
  std::size_t pos_ = 0;
};

/// Splits one uniform into k independent uniforms (k <= 8) by de-interleaving
/// the binary digits of its 53-bit expansion. Lets a random kernel that needs
/// several draws stay a function of a single u.
std::vector<double> split_uniform(double u, int k);

}  // namespace urnlift
