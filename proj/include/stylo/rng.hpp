#pragma once

#include <cstdint>
#include <vector>

namespace stylo {

// splitmix64-seeded xoshiro256**. Self-contained so that shuffles and
// bounded draws are identical across standard library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();
  // Uniform in [0, n). n must be > 0.
  std::uint64_t uniform_index(std::uint64_t n);
  // Uniform in [0, 1).
  double uniform_double();
  // Standard normal via Box-Muller.
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(uniform_index(i));
      std::swap(v[i - 1], v[j]);
    }
  }

  // Sample k distinct indices from [0, n) without replacement, in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t k);

  // Derive an independent stream, e.g. one per tree or per worker.
  Rng fork(std::uint64_t stream) const;

 private:
  std::uint64_t state_[4];
  std::uint64_t seed_;
  bool have_cached_normal_ = false;
  double cached_normal_ = 0.0;
};

}  // namespace stylo
