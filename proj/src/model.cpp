#include "radiosync/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace radiosync {

double safe_log2(double x) {
  if (!(x > 0.0)) throw std::domain_error("safe_log2: argument must be positive");
  return std::max(1.0, std::log2(x));
}

std::uint64_t round_up_to_multiple(std::uint64_t x, std::uint64_t b) {
  if (b == 0) throw std::domain_error("round_up_to_multiple: zero block length");
  return ((x + b - 1) / b) * b;
}

std::uint64_t urs_delay(std::uint64_t q, std::uint64_t n, double c) {
  if (q == 0 || q > n) throw std::domain_error("urs_delay: need 1 <= q <= n");
  const double lq = safe_log2(static_cast<double>(q));
  const double ln = safe_log2(static_cast<double>(n));
  const double llq = safe_log2(lq);
  return static_cast<std::uint64_t>(std::ceil(c * static_cast<double>(q) * lq * ln / llq));
}

std::uint64_t ActivationSchedule::at(NodeId v) const {
  if (v < 1 || v > static_cast<NodeId>(times_.size()))
    throw std::domain_error("ActivationSchedule: node out of range");
  return times_[static_cast<std::size_t>(v - 1)];
}

std::uint64_t ActivationSchedule::min_over(std::span<const NodeId> xs) const {
  if (xs.empty()) throw std::domain_error("ActivationSchedule: empty set has no minimum");
  std::uint64_t m = at(xs[0]);
  for (NodeId v : xs.subspan(1)) m = std::min(m, at(v));
  return m;
}

ActivationSchedule ActivationSchedule::shifted(std::uint64_t t) const {
  std::vector<std::uint64_t> shifted(times_);
  for (auto& x : shifted) x += t;
  return ActivationSchedule(std::move(shifted));
}

namespace {

const Schedule& schedule_of(const std::vector<Schedule>& schedules, NodeId v) {
  if (v < 1 || v > static_cast<NodeId>(schedules.size()))
    throw std::domain_error("column_hit: node id outside family");
  return schedules[static_cast<std::size_t>(v - 1)];
}

}  // namespace

bool column_hit(const std::vector<Schedule>& schedules, std::span<const NodeId> xs,
                std::span<const std::uint64_t> offsets, std::int64_t column) {
  if (xs.empty() || xs.size() != offsets.size())
    throw std::invalid_argument("column_hit: set and offsets must align and be nonempty");
  int ones = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (schedule_of(schedules, xs[i]).bit(column - static_cast<std::int64_t>(offsets[i]))) {
      if (++ones > 1) return false;
    }
  }
  return ones == 1;
}

bool column_hit(const std::vector<Schedule>& schedules,
                std::span<const CoreMember> members, std::int64_t column) {
  if (members.empty()) throw std::invalid_argument("column_hit: empty member list");
  int ones = 0;
  for (const CoreMember& m : members) {
    if (schedule_of(schedules, m.node).bit(column - static_cast<std::int64_t>(m.offset))) {
      if (++ones > 1) return false;
    }
  }
  return ones == 1;
}

Core extract_wakeup_core(std::span<const NodeId> xs, const ActivationSchedule& omega,
                         const std::function<std::uint64_t(std::size_t)>& delay) {
  if (xs.empty()) throw std::domain_error("extract_wakeup_core: empty set");
  const std::uint64_t base = omega.min_over(xs);
  // Linear scan for the cutoff; j = base + delay(|X|) always satisfies the
  // stop condition, so this terminates within delay(|X|) + 1 probes.
  std::uint64_t cut = base;
  for (std::uint64_t j = base;; ++j) {
    std::size_t arrived = 0;
    for (NodeId v : xs)
      if (omega.at(v) <= j) ++arrived;
    if (arrived > 0 && j - base >= delay(arrived)) {
      cut = j;
      break;
    }
  }
  Core core{CoreKind::wakeup, {}};
  for (NodeId v : xs)
    if (omega.at(v) < cut) core.members.push_back({v, omega.at(v) - base});
  std::sort(core.members.begin(), core.members.end(),
            [](const CoreMember& a, const CoreMember& b) {
              return a.offset != b.offset ? a.offset < b.offset : a.node < b.node;
            });
  return core;
}

Core extract_block_core(std::span<const NodeId> xs, const ActivationSchedule& omega,
                        std::uint64_t block_len, std::uint64_t r) {
  if (xs.empty()) throw std::domain_error("extract_block_core: empty set");
  if (block_len == 0 || r == 0)
    throw std::domain_error("extract_block_core: block_len and r must be positive");
  std::uint64_t base = round_up_to_multiple(omega.min_over(xs), block_len);
  std::uint64_t cut = base;
  for (std::uint64_t j = base;; ++j) {
    std::uint64_t arrived = 0;
    for (NodeId v : xs)
      if (round_up_to_multiple(omega.at(v), block_len) <= j) ++arrived;
    // cutoff condition j - base >= block_len * arrived / r, kept in integers
    if (arrived > 0 && r * (j - base) >= block_len * arrived) {
      cut = j;
      break;
    }
  }
  Core core{CoreKind::block, {}};
  for (NodeId v : xs) {
    const std::uint64_t sv = round_up_to_multiple(omega.at(v), block_len);
    if (sv < cut) core.members.push_back({v, (sv - base) / block_len});
  }
  std::sort(core.members.begin(), core.members.end(),
            [](const CoreMember& a, const CoreMember& b) {
              return a.offset != b.offset ? a.offset < b.offset : a.node < b.node;
            });
  return core;
}

std::vector<CoreMember> core_column_members(const Core& core, std::uint64_t block_len) {
  std::vector<CoreMember> out;
  out.reserve(core.members.size());
  for (const CoreMember& m : core.members) out.push_back({m.node, m.offset * block_len});
  return out;
}

}  // namespace radiosync
