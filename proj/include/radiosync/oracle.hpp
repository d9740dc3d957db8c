#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "radiosync/model.hpp"
#include "radiosync/selective.hpp"
#include "radiosync/synchronizer.hpp"

namespace radiosync {

enum class VerdictStatus { verified_exhaustive, verified_sampled, falsified };

// A falsifying instance in replayable normal form: offsets are column shifts
// with minimum 0, and no column j in [0, window) makes column_hit true.
// Selective-family counterexamples carry all-zero offsets and window = m.
struct Counterexample {
  std::vector<NodeId> nodes;
  std::vector<std::uint64_t> offsets;
  std::uint64_t window = 0;
  bool operator==(const Counterexample&) const = default;
};

struct Verdict {
  VerdictStatus status = VerdictStatus::falsified;
  std::optional<Counterexample> counterexample;
  std::uint64_t trials = 0;         // sampled mode only
  std::uint64_t cases_checked = 0;  // exhaustive mode, meaningful when verified
};

struct VerifyMode {
  enum class Kind { exhaustive, sampled } kind = Kind::exhaustive;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;

  static VerifyMode exhaustive() { return {}; }
  static VerifyMode sampled(std::uint64_t trials, std::uint64_t seed) {
    return {Kind::sampled, trials, seed};
  }
};

// Exhaustive verification refuses instances beyond these caps rather than
// silently degrading; callers must switch to sampled mode.
struct OracleBudget {
  std::uint64_t selective_subsets = std::uint64_t{1} << 24;
  int selective_max_n = 20;
  int urs_max_n = 8;
  int block_max_n = 12;
  int naive_max_n = 5;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GenerationFailed : public std::runtime_error {
 public:
  GenerationFailed(const std::string& msg, Verdict last, int attempts_made)
      : std::runtime_error(msg), last_verdict(std::move(last)), attempts(attempts_made) {}
  Verdict last_verdict;
  int attempts;
};

// True iff the counterexample genuinely violates: no column in [0, window)
// has exactly one transmitter.  Every verifier replays its counterexample
// through this before returning it.
bool counterexample_violates(const std::vector<Schedule>& schedules,
                             const Counterexample& ce);

// ---- selective families ----------------------------------------------------
// Exhaustive mode walks every X with 1 <= |X| <= k in canonical order
// (size ascending, then lexicographic); parallel chunking still reports the
// canonically first counterexample.
Verdict verify_selective_family(const SelectiveFamily& family,
                                const VerifyMode& mode = VerifyMode::exhaustive(),
                                const OracleBudget& budget = {});
// Single-threaded reference that goes through hits_set; verdicts and first
// counterexamples match the parallel kernel exactly.
Verdict verify_selective_family_serial(const SelectiveFamily& family,
                                       const OracleBudget& budget = {});

// ---- universal radio synchronizers -----------------------------------------
// Exhaustive mode covers the offset space through its cores: min-0 offset
// assignments whose sorted offsets satisfy off[i+1] <= g(i).  Every such core
// must be hit within g(size) columns; a missed core is itself a violating
// (X, omega) instance.  Subtrees whose partial assignment has an isolated
// column below every future member's reach are pruned as hit.
Verdict verify_urs(const SynchronizerFamily& family,
                   const VerifyMode& mode = VerifyMode::exhaustive(),
                   const OracleBudget& budget = {});
// Independent reference: enumerates raw (X, omega) pairs with omega values in
// [0, g(n)] per member and scans the window [omega(X), omega(X) + g(|X|)).
// Much smaller budget; verdicts must agree with verify_urs.
Verdict verify_urs_naive(const SynchronizerFamily& family,
                         const OracleBudget& budget = {});

// ---- block synchronizers ----------------------------------------------------
// Checks every X with |X| <= delta and every min-0 block-offset assignment
// phi : X -> {0..ceil(|X|/r)-1} for a hit within BB*ceil(|X|/r) columns.
// Only composed (kind == block) families have this contract.
Verdict verify_block_synchronizer(const SynchronizerFamily& family, int delta,
                                  const VerifyMode& mode = VerifyMode::exhaustive(),
                                  const OracleBudget& budget = {});
// Plain nested-loop reference without pruning or bit packing.
Verdict verify_block_synchronizer_serial(const SynchronizerFamily& family, int delta,
                                         const OracleBudget& budget = {});

// ---- Monte-Carlo falsification ----------------------------------------------
// Samples uniform random instances from the same spaces the exhaustive modes
// cover (size first, then members, then offsets).  trials must be positive.
Verdict mc_falsify(const SelectiveFamily& family, std::uint64_t trials,
                   std::uint64_t seed);
Verdict mc_falsify(const SynchronizerFamily& family, std::uint64_t trials,
                   std::uint64_t seed);

// ---- Las Vegas generation -----------------------------------------------------
// Draws candidates with seeds seed, seed+1, ... and returns the first one the
// requested verification mode accepts; throws GenerationFailed (carrying the
// last verdict) after max_attempts rejections.
SelectiveFamily generate_verified_selective(int n, int k, double c, int max_attempts,
                                            std::uint64_t seed,
                                            const VerifyMode& mode = VerifyMode::exhaustive(),
                                            const OracleBudget& budget = {});
SynchronizerFamily generate_verified_urs(int n, double c, int max_attempts,
                                         std::uint64_t seed,
                                         const VerifyMode& mode = VerifyMode::exhaustive(),
                                         const OracleBudget& budget = {});
// The embedded selective prefix (k = r) is verified exhaustively when the
// budget allows, falling back to the caller's mode otherwise; upper candidates
// use seeds seed+1000000, seed+1000001, ...
SynchronizerFamily generate_verified_block(int n, int ecc, int delta, double c,
                                           int max_attempts, std::uint64_t seed,
                                           const VerifyMode& mode = VerifyMode::exhaustive(),
                                           const OracleBudget& budget = {});

}  // namespace radiosync
