#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace pushpull {

/// Stream tags used when deriving substream seeds. Values are part of the
/// reproducibility contract: changing one changes every generated instance.
enum class StreamTag : std::uint64_t {
  kCapacityRow = 0x11,
  kBipartiteRow = 0x12,
  kRelaySource = 0x13,
  kRelaySink = 0x14,
  kRelayCore = 0x15,
  kOrientationRow = 0x21,
  kLayer = 0x31,
  kVanishingGraph = 0x41,
  kVanishingRun = 0x42,
  kMulticastGraph = 0x43,
  kMulticastRun = 0x44,
  kMatchingTrial = 0x51,
  kExperimentTrial = 0x61,
  kTrialGraph = 0x62,
  kTrialRun = 0x63,
};

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of the substream identified by (root, tag, indices...).
std::uint64_t derive_seed(std::uint64_t root, StreamTag tag,
                          std::initializer_list<std::uint64_t> indices = {}) noexcept;

/// Thin wrapper over std::mt19937_64 with a portable [0,1) conversion
/// (std::uniform_real_distribution is implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) noexcept { return uniform() < p; }
  std::uint64_t next() noexcept { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace pushpull
