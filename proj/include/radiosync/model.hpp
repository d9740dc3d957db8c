#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace radiosync {

using NodeId = int;  // 1-based node ids throughout

// log2 clamped below at 1.  Every delay/length formula in this library goes
// through this clamp so that small arguments never collapse a bound to zero.
// Throws std::domain_error for x <= 0.
double safe_log2(double x);

// Smallest multiple of b that is >= x.  Throws std::domain_error if b == 0.
std::uint64_t round_up_to_multiple(std::uint64_t x, std::uint64_t b);

// Delay budget g(q) granted to a set of q awake nodes out of n:
// ceil(c * q * safe_log2(q) * safe_log2(n) / safe_log2(safe_log2(q))).
// Nondecreasing in q.  Requires 1 <= q <= n.
std::uint64_t urs_delay(std::uint64_t q, std::uint64_t n, double c);

// One node's transmission pattern.  Column queries outside [0, length) read
// as 0, which lets offset arithmetic stay unguarded at call sites.
class Schedule {
 public:
  Schedule() = default;
  Schedule(NodeId node, std::vector<std::uint8_t> bits)
      : node_(node), bits_(std::move(bits)) {}

  NodeId node() const { return node_; }
  std::size_t length() const { return bits_.size(); }

  bool bit(std::int64_t column) const {
    return column >= 0 && column < static_cast<std::int64_t>(bits_.size()) &&
           bits_[static_cast<std::size_t>(column)] != 0;
  }

  void set(std::size_t column, bool value) { bits_.at(column) = value ? 1 : 0; }

  const std::vector<std::uint8_t>& raw() const { return bits_; }

  bool operator==(const Schedule&) const = default;

 private:
  NodeId node_ = 0;
  std::vector<std::uint8_t> bits_;
};

// Activation (wake-up) times, one per node, indexed by node id.
class ActivationSchedule {
 public:
  explicit ActivationSchedule(std::vector<std::uint64_t> times)
      : times_(std::move(times)) {}

  static ActivationSchedule uniform(int n, std::uint64_t t) {
    return ActivationSchedule(std::vector<std::uint64_t>(static_cast<std::size_t>(n), t));
  }

  int size() const { return static_cast<int>(times_.size()); }
  std::uint64_t at(NodeId v) const;

  // min over the given nodes; throws std::domain_error on an empty set.
  std::uint64_t min_over(std::span<const NodeId> xs) const;

  ActivationSchedule shifted(std::uint64_t t) const;

  bool operator==(const ActivationSchedule&) const = default;

 private:
  std::vector<std::uint64_t> times_;
};

enum class CoreKind { wakeup, block };

struct CoreMember {
  NodeId node = 0;
  std::uint64_t offset = 0;  // wakeup: column shift; block: whole blocks
  bool operator==(const CoreMember&) const = default;
};

// The residue of (X, omega) that a synchronizer actually has to hit: members
// that arrived before the extraction cutoff, with offsets normalised so the
// earliest is 0.  Members are kept sorted by (offset, node).
struct Core {
  CoreKind kind = CoreKind::wakeup;
  std::vector<CoreMember> members;
  std::size_t size() const { return members.size(); }
  bool operator==(const Core&) const = default;
};

// True iff exactly one member of X has a 1 at the queried column after each
// member's row is shifted right by its offset:  sum_v S^v[column - off(v)] == 1.
// This is the single primitive every verifier verdict replays through.
bool column_hit(const std::vector<Schedule>& schedules, std::span<const NodeId> xs,
                std::span<const std::uint64_t> offsets, std::int64_t column);
bool column_hit(const std::vector<Schedule>& schedules,
                std::span<const CoreMember> members, std::int64_t column);

// Wake-up core of (X, omega) under delay budget `delay` (usually urs_delay
// with fixed n, c; tests may pass toy budgets).  Scans j upward from
// omega(X) and cuts at the first j with j - omega(X) >= delay(|X_j|) where
// X_j = {v : omega(v) <= j}; keeps members with omega(v) < j'.
Core extract_wakeup_core(std::span<const NodeId> xs, const ActivationSchedule& omega,
                         const std::function<std::uint64_t(std::size_t)>& delay);

// Block-aligned analogue: arrivals snap to s(v) = round_up_to_multiple(omega(v),
// block_len), the cutoff is the first j with r*(j - s(X)) >= block_len * |X_j|,
// and offsets are whole blocks (s(v) - s(X)) / block_len.
Core extract_block_core(std::span<const NodeId> xs, const ActivationSchedule& omega,
                        std::uint64_t block_len, std::uint64_t r);

// Scale a block core's offsets from blocks to columns (for column_hit replay).
std::vector<CoreMember> core_column_members(const Core& core, std::uint64_t block_len);

enum class VerifyStatus { unverified, verified_exhaustive, verified_sampled };

struct VerifyState {
  VerifyStatus status = VerifyStatus::unverified;
  std::uint64_t trials = 0;  // only meaningful for verified_sampled
  bool operator==(const VerifyState&) const = default;
};

// Shared parameter block for families and synchronizers.  Fields not used by
// a given kind stay at their defaults.
struct SyncParams {
  int n = 0;                    // universe size
  int k = 0;                    // selective family threshold
  int ecc = 0;                  // source eccentricity D
  int delta = 0;                // max in-degree bound
  std::uint64_t r = 0;          // block increment, max(1, floor(n / ecc))
  std::uint64_t block_len = 0;  // upper block length B (phase aligned)
  double c = 1.0;               // generator constant
  std::uint64_t seed = 0;
  bool operator==(const SyncParams&) const = default;
};

}  // namespace radiosync
