#pragma once

#include <cstdint>
#include <random>
#include <unordered_map>
#include <vector>

namespace assocmine {

// Derives an independent substream seed (per row block, per louvain call, ...)
// from a base seed. SplitMix64 finalizer.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// mt19937_64 core (its output sequence is fixed by the standard) with
// hand-rolled draws, so identical seeds give identical streams on every
// platform. The standard <random> distributions are not portable.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next_u64() { return eng_(); }

  // Uniform in [0, 1) with 53-bit resolution.
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound); rejection keeps it unbiased.
  std::uint64_t next_below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % bound;
  }

  bool bernoulli(double p) { return next_double() < p; }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[next_below(i)]);
    }
  }

  // k distinct indices drawn uniformly from [0, n) without replacement.
  // Lazy Fisher-Yates: memory is O(k) even for huge n.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k) {
    std::vector<std::size_t> picked;
    picked.reserve(k);
    std::unordered_map<std::size_t, std::size_t> moved;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(next_below(n - i));
      const auto at = [&](std::size_t idx) {
        auto it = moved.find(idx);
        return it == moved.end() ? idx : it->second;
      };
      const std::size_t value = at(j);
      moved[j] = at(i);
      picked.push_back(value);
    }
    return picked;
  }

 private:
  std::mt19937_64 eng_;
};

}  // namespace assocmine
