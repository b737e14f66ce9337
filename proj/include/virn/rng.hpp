#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace virn {

// xoshiro256** with splitmix64 seeding. All randomness in the library flows
// through this generator so that runs are reproducible independent of the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  // uniform in [0, 1)
  double uniform01();

  // standard normal via Box-Muller; keeps the spare draw
  double normal();

  // uniform integer in [0, bound) via 128-bit multiply-shift
  std::uint64_t below(std::uint64_t bound);

  // Fisher-Yates; only the first `take` positions are needed by callers that
  // subsample, but the full pass keeps the draw count independent of `take`.
  template <typename T>
  void shuffle(std::vector<T>& v) {
    if (v.size() < 2) return;
    for (std::size_t i = v.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(below(i + 1));
      std::swap(v[i], v[j]);
    }
  }

 private:
  std::array<std::uint64_t, 4> state_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// Derives an independent stream seed from a base seed and a stream id.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t stream);

// Fills `out` with standard normal draws.
void fill_normal(Rng& rng, std::vector<double>& out);

}  // namespace virn
