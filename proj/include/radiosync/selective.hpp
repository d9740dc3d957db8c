#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "radiosync/model.hpp"

namespace radiosync {

// n rows of random bits, each 1 with probability 1/k.  The defining property
// (checked by the oracle, not assumed here): every X with 1 <= |X| <= k has a
// column where exactly one member transmits.
struct SelectiveFamily {
  SyncParams params;                // n, k, c, seed
  std::vector<Schedule> schedules;  // n rows, common length
  VerifyState verified;
  std::uint32_t attempts = 0;

  std::size_t length() const { return schedules.empty() ? 0 : schedules[0].length(); }
  bool operator==(const SelectiveFamily&) const = default;
};

// ceil(c * k * safe_log2(n / k)); requires 1 <= k <= n.
std::uint64_t selective_family_length(int n, int k, double c);

SelectiveFamily gen_selective_family(int n, int k, double c, std::uint64_t seed);

// Smallest column where exactly one member of xs has a 1, or nullopt.
std::optional<std::uint64_t> hits_set(const SelectiveFamily& family,
                                      std::span<const NodeId> xs);

}  // namespace radiosync
