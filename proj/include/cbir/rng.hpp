#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace cbir {

// Deterministic random source. All sampling goes through this wrapper:
// std::uniform_int_distribution and std::shuffle are allowed to differ
// between standard libraries, and rebuild determinism is a contract here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased draw from [0, n). Rejection sampling on the top of the range.
  std::uint64_t below(std::uint64_t n) {
    if (n == 0) return 0;
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t v = engine_();
    while (v >= limit) v = engine_();
    return v % n;
  }

  // Fisher-Yates; moves a uniform random k-subset to the front of idx.
  void partial_shuffle(std::vector<std::size_t>& idx, std::size_t k) {
    if (k > idx.size()) k = idx.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(below(idx.size() - i));
      std::swap(idx[i], idx[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cbir
