#include "radiosync/selective.hpp"

#include <cmath>
#include <stdexcept>

#include "radiosync/rng.hpp"

namespace radiosync {

std::uint64_t selective_family_length(int n, int k, double c) {
  if (k < 1 || k > n) throw std::domain_error("selective_family_length: need 1 <= k <= n");
  if (c <= 0.0) throw std::domain_error("selective_family_length: c must be positive");
  const double m = c * static_cast<double>(k) *
                   safe_log2(static_cast<double>(n) / static_cast<double>(k));
  return static_cast<std::uint64_t>(std::ceil(m));
}

SelectiveFamily gen_selective_family(int n, int k, double c, std::uint64_t seed) {
  const std::uint64_t m = selective_family_length(n, k, c);
  const double p = 1.0 / static_cast<double>(k);
  SeededRng rng(seed);
  SelectiveFamily family;
  family.params = SyncParams{.n = n, .k = k, .c = c, .seed = seed};
  family.schedules.reserve(static_cast<std::size_t>(n));
  for (NodeId v = 1; v <= n; ++v) {
    std::vector<std::uint8_t> bits(m);
    for (std::uint64_t j = 0; j < m; ++j) bits[j] = rng.bernoulli(p) ? 1 : 0;
    family.schedules.emplace_back(v, std::move(bits));
  }
  return family;
}

std::optional<std::uint64_t> hits_set(const SelectiveFamily& family,
                                      std::span<const NodeId> xs) {
  if (xs.empty()) throw std::invalid_argument("hits_set: empty set");
  const std::uint64_t m = family.length();
  for (std::uint64_t j = 0; j < m; ++j) {
    int ones = 0;
    for (NodeId v : xs) {
      if (v < 1 || v > family.params.n) throw std::domain_error("hits_set: node outside family");
      if (family.schedules[static_cast<std::size_t>(v - 1)].bit(static_cast<std::int64_t>(j)))
        if (++ones > 1) break;
    }
    if (ones == 1) return j;
  }
  return std::nullopt;
}

}  // namespace radiosync
