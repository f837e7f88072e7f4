#pragma once

// Seeded random elements for property checks. Same seed, same stream.

#include <selfsim/similarity.hpp>

#include <cstdint>
#include <random>

namespace selfsim {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  Int pick(long lo, long hi);  // uniform on [lo, hi]

  // Small-coordinate element; omega elements touch copies 0..3.
  AbelianElement base_value(const AbelianDescriptor& b);
  XElement position(const AbelianDescriptor& top);
  // Element with a few base entries and an arbitrary top.
  WreathElement group_element(const GroupDescriptor& g);
  // Member of H: top drawn from Y, base sums corrected per coset.
  WreathElement subgroup_element(const WreathSubgroupSpec& spec);

  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace selfsim
