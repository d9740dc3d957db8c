#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "radiosync/model.hpp"
#include "radiosync/radionet.hpp"
#include "radiosync/selective.hpp"
#include "radiosync/synchronizer.hpp"

namespace radiosync {

inline constexpr std::uint64_t kNeverActive = UINT64_MAX;

enum class SimMode { broadcast, wakeup, baseline };

struct StepRecord {
  std::uint64_t step = 0;
  std::vector<NodeId> transmitters;                    // sorted
  std::vector<std::pair<NodeId, NodeId>> receptions;   // (receiver, sender), by receiver
  std::vector<NodeId> newly_active;                    // sorted
  bool operator==(const StepRecord&) const = default;
};

// steps is sparse: only steps where something happened (a transmission, a
// reception, or a reception-caused activation) get a record; the step index
// disambiguates.  Initial spontaneous activations are state, not events, so
// an n=1 broadcast or an everyone-wakes-at-0 run has an empty body.
struct SimulationTrace {
  SimMode mode = SimMode::broadcast;
  int n = 0;
  std::vector<StepRecord> steps;
  std::vector<std::uint64_t> activation;  // index v-1; kNeverActive if never
  std::optional<std::uint64_t> completion;
  std::uint64_t steps_run = 0;
  bool operator==(const SimulationTrace&) const = default;

  bool active_at(NodeId v, std::uint64_t step) const {
    return activation[static_cast<std::size_t>(v - 1)] <= step;
  }
};

// Adversarial spontaneous wake-up times; nodes without one only wake through
// receptions.
struct WakeSchedule {
  std::vector<std::optional<std::uint64_t>> spontaneous;  // index v-1

  static WakeSchedule none(int n) { return {std::vector<std::optional<std::uint64_t>>(
      static_cast<std::size_t>(n))}; }
  static WakeSchedule all_at(int n, std::uint64_t t);
  WakeSchedule shifted(std::uint64_t t) const;
  bool operator==(const WakeSchedule&) const = default;
};

// Algorithm: the source holds the message at step 0; an active node with
// activation step i transmits at steps mu_BB(i)+j for every j < D*BB with
// composite bit j set.  Completion is the first step at which every node is
// active; nodes run their schedule exactly once.
SimulationTrace run_broadcast(const RadioNetwork& net, const SynchronizerFamily& family,
                              std::uint64_t max_steps);

// Wake-up: node v activates at min(spontaneous(v), first reception + 1) and
// transmits at steps i+j per its bits, anchored to its own activation i (no
// global clock).  Requires at least one spontaneous node and reachability of
// the whole network from the spontaneous set.
SimulationTrace run_wakeup(const RadioNetwork& net, const SynchronizerFamily& family,
                           const WakeSchedule& wake, std::uint64_t max_steps);

struct BaselineOptions {
  bool k_doubling = true;  // cycle k = 2^1..2^ceil(log2 delta); else fixed k = delta
  double c = 3.0;
  std::uint64_t seed = 0;
  int max_attempts = 200;
  std::uint64_t sampled_trials = 20000;  // fallback when exhaustive is over budget
};

// Repeated-selective-family broadcast for the n >= D*delta regime: each
// application replays a verified (n,k)-selective family against the snapshot
// of nodes informed at its first column; receivers hold the message until the
// next application starts.
SimulationTrace run_baseline_selective(const RadioNetwork& net, const BaselineOptions& options,
                                       std::uint64_t max_steps);

// 10x the mode's theoretical bound; the generous default halt guarantee.
std::uint64_t default_max_steps(std::uint64_t time_bound);

}  // namespace radiosync
