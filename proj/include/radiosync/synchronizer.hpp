#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "radiosync/model.hpp"
#include "radiosync/selective.hpp"

namespace radiosync {

enum class SyncKind { urs, upper_block, block };

// Universal radio synchronizer (urs), upper block synchronizer (upper_block),
// or the composition of an upper block synchronizer with a selective-family
// prefix (block).  For block kind, composite_block = prefix length + B and the
// embedded prefix family is retained so files round-trip.
struct SynchronizerFamily {
  SyncKind kind = SyncKind::urs;
  SyncParams params;
  std::vector<Schedule> schedules;
  std::uint64_t composite_block = 0;            // columns per block in composed schedules
  std::optional<SelectiveFamily> prefix_family; // R, block kind only
  VerifyState verified;
  std::uint32_t attempts = 0;

  std::size_t length() const { return schedules.empty() ? 0 : schedules[0].length(); }
  bool operator==(const SynchronizerFamily&) const = default;
};

// Bit probability for urs column j: c*safe_log2(n) / (6*(j + c*safe_log2(n))).
// Starts at 1/6 and decays harmonically.
double urs_bit_probability(int n, double c, std::uint64_t column);

// Phase length L = ceil(2 * safe_log2(safe_log2(ecc*delta/n))).
std::uint64_t phase_length(int n, int ecc, int delta);

// Upper block length B: ceil(c*(n/ecc)*safe_log2(ecc)*safe_log2(safe_log2(
// ecc*delta/n))), then rounded up to a multiple of the phase length so that
// block-aligned member offsets preserve each column's phase.  Requires
// delta <= n < ecc*delta.
std::uint64_t upper_block_length(int n, int ecc, int delta, double c);

// Bit probability for upper block column j (phases reset every L columns):
// min(1, c*safe_log2(ecc)*safe_log2(safe_log2(ecc*delta/n)) /
//        ((B + j) * 2^(phase(j)+1))).
double upper_block_bit_probability(const SyncParams& params, std::uint64_t column);

std::uint64_t block_increment(int n, int ecc);  // r = max(1, floor(n/ecc))

SynchronizerFamily gen_urs_candidate(int n, double c, std::uint64_t seed);
SynchronizerFamily gen_upper_block_candidate(int n, int ecc, int delta, double c,
                                             std::uint64_t seed);

// Interleave a selective-family prefix R into every block of an upper block
// synchronizer.  Composite blocks have |R| + B columns: the first |R| replay
// R cyclically, the rest carry the upper schedule:
//   S^v[j] = R^v[j mod BB]                        if j mod BB < |R|
//          = upper^v[j - ceil(j/BB)*|R|]          otherwise,   BB = |R| + B.
// Total length ecc * BB.
SynchronizerFamily compose_block_synchronizer(const SynchronizerFamily& upper,
                                              SelectiveFamily prefix);

// Exact sum of generation probabilities over members active by `column`
// (wakeup: offset <= column; block: block_len*offset <= column), each member
// contributing the probability its own generator used at the shifted index.
double column_load(const Core& core, const SyncParams& params, std::uint64_t column);

struct LoadViolation {
  std::uint64_t column = 0;
  double load = 0.0;
  double bound = 0.0;
};

struct LoadReport {
  std::vector<LoadViolation> violations;
  std::uint64_t columns_checked = 0;
  bool ok() const { return violations.empty(); }
};

// Deterministic lower-bound checks on the load:
//  - wakeup cores: load(j) > safe_log2(safe_log2 q) / (12 * safe_log2 q) for
//    every j < urs_delay(q, n, c), q = |core|;
//  - block cores: load(j) > 1/6 for every phase-0 column with
//    B/2 <= j < B*q/r.
// Strict comparisons, no tolerance.
LoadReport check_load_bounds(const Core& core, const SyncParams& params);

struct LoadProfile {
  Core core;
  std::vector<double> loads;  // index = column
};

LoadProfile load_profile(const Core& core, const SyncParams& params,
                         std::uint64_t columns);

}  // namespace radiosync
