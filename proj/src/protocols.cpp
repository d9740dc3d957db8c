#include "radiosync/protocols.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>

#include "radiosync/oracle.hpp"

namespace radiosync {

WakeSchedule WakeSchedule::all_at(int n, std::uint64_t t) {
  WakeSchedule w = none(n);
  for (auto& s : w.spontaneous) s = t;
  return w;
}

WakeSchedule WakeSchedule::shifted(std::uint64_t t) const {
  WakeSchedule w = *this;
  for (auto& s : w.spontaneous)
    if (s) *s += t;
  return w;
}

std::uint64_t default_max_steps(std::uint64_t time_bound) { return 10 * time_bound; }

namespace {

// One synchronous step: deliver the mode's transmitter set, fold receptions
// into activation times (first reception wins), and append a sparse record.
// A record is an event; initial spontaneous activations are state, so a
// newly-active list only forces a record when it was caused by a reception.
template <typename Pred>
void step_once(const RadioNetwork& net, std::uint64_t t, Pred&& transmits,
               std::vector<std::uint64_t>& act, std::vector<std::uint64_t>& first_rec,
               std::vector<NodeId>&& newly, bool newly_is_event, SimulationTrace& trace) {
  std::vector<NodeId> tx;
  for (NodeId v = 1; v <= net.size(); ++v)
    if (transmits(v)) tx.push_back(v);
  StepOutcome out = net.deliver(tx);
  for (const auto& [receiver, sender] : out.receptions) {
    (void)sender;
    auto& a = act[static_cast<std::size_t>(receiver - 1)];
    a = std::min(a, t + 1);
    auto& r = first_rec[static_cast<std::size_t>(receiver - 1)];
    r = std::min(r, t);
  }
  if (!tx.empty() || !out.receptions.empty() || newly_is_event) {
    StepRecord rec;
    rec.step = t;
    rec.transmitters = std::move(tx);
    rec.receptions = std::move(out.receptions);
    rec.newly_active = std::move(newly);
    trace.steps.push_back(std::move(rec));
  }
}

std::vector<NodeId> collect_newly(const std::vector<std::uint64_t>& act, std::uint64_t t) {
  std::vector<NodeId> newly;
  for (std::size_t i = 0; i < act.size(); ++i)
    if (act[i] == t) newly.push_back(static_cast<NodeId>(i + 1));
  return newly;
}

bool reception_caused(const std::vector<std::uint64_t>& first_rec,
                      const std::vector<NodeId>& newly, std::uint64_t t) {
  if (t == 0) return false;
  for (NodeId v : newly)
    if (first_rec[static_cast<std::size_t>(v - 1)] == t - 1) return true;
  return false;
}

bool all_active(const std::vector<std::uint64_t>& act, std::uint64_t t) {
  for (std::uint64_t a : act)
    if (a > t) return false;
  return true;
}

void finish_at(SimulationTrace& trace, std::uint64_t t, std::vector<NodeId>&& newly,
               bool newly_is_event) {
  trace.completion = t;
  trace.steps_run = t;
  if (newly_is_event) {
    StepRecord rec;
    rec.step = t;
    rec.newly_active = std::move(newly);
    trace.steps.push_back(std::move(rec));
  }
}

}  // namespace

SimulationTrace run_broadcast(const RadioNetwork& net, const SynchronizerFamily& family,
                              std::uint64_t max_steps) {
  if (!net.source()) throw std::domain_error("run_broadcast: network has no source");
  if (family.kind != SyncKind::block)
    throw std::domain_error("run_broadcast: family kind must be block");
  if (family.params.n != net.size())
    throw std::domain_error("run_broadcast: family n does not match the network");
  if (family.params.ecc < net.eccentricity() || family.params.delta < net.max_indegree())
    throw std::domain_error(
        "run_broadcast: family built for smaller (D, delta) than the network's");
  const std::uint64_t bb = family.composite_block;

  SimulationTrace trace;
  trace.mode = SimMode::broadcast;
  trace.n = net.size();
  trace.activation.assign(static_cast<std::size_t>(net.size()), kNeverActive);
  trace.activation[static_cast<std::size_t>(*net.source() - 1)] = 0;
  auto& act = trace.activation;
  std::vector<std::uint64_t> first_rec(act.size(), kNeverActive);

  for (std::uint64_t t = 0;; ++t) {
    std::vector<NodeId> newly = collect_newly(act, t);
    const bool event = reception_caused(first_rec, newly, t);
    if (all_active(act, t)) {
      finish_at(trace, t, std::move(newly), event);
      break;
    }
    if (t >= max_steps) {
      trace.steps_run = t;
      break;
    }
    step_once(
        net, t,
        [&](NodeId v) {
          const std::uint64_t a = act[static_cast<std::size_t>(v - 1)];
          if (a > t) return false;
          const std::uint64_t anchor = round_up_to_multiple(a, bb);
          return family.schedules[static_cast<std::size_t>(v - 1)].bit(
              static_cast<std::int64_t>(t) - static_cast<std::int64_t>(anchor));
        },
        act, first_rec, std::move(newly), event, trace);
  }
  return trace;
}

SimulationTrace run_wakeup(const RadioNetwork& net, const SynchronizerFamily& family,
                           const WakeSchedule& wake, std::uint64_t max_steps) {
  if (family.kind != SyncKind::urs)
    throw std::domain_error("run_wakeup: family kind must be urs");
  if (family.params.n != net.size())
    throw std::domain_error("run_wakeup: family n does not match the network");
  if (static_cast<int>(wake.spontaneous.size()) != net.size())
    throw std::domain_error("run_wakeup: wake schedule size does not match the network");

  // Reachability from the spontaneous set; otherwise some node can never wake.
  std::vector<std::uint8_t> reach(static_cast<std::size_t>(net.size()) + 1, 0);
  std::queue<NodeId> frontier;
  for (NodeId v = 1; v <= net.size(); ++v) {
    if (wake.spontaneous[static_cast<std::size_t>(v - 1)]) {
      reach[static_cast<std::size_t>(v)] = 1;
      frontier.push(v);
    }
  }
  if (frontier.empty())
    throw std::domain_error("run_wakeup: wake schedule has no spontaneous node");
  while (!frontier.empty()) {
    const NodeId u = frontier.front();
    frontier.pop();
    for (NodeId w : net.out_neighbors(u)) {
      if (!reach[static_cast<std::size_t>(w)]) {
        reach[static_cast<std::size_t>(w)] = 1;
        frontier.push(w);
      }
    }
  }
  for (NodeId v = 1; v <= net.size(); ++v)
    if (!reach[static_cast<std::size_t>(v)])
      throw std::domain_error("run_wakeup: node " + std::to_string(v) +
                              " unreachable from the spontaneous set");

  SimulationTrace trace;
  trace.mode = SimMode::wakeup;
  trace.n = net.size();
  trace.activation.assign(static_cast<std::size_t>(net.size()), kNeverActive);
  auto& act = trace.activation;
  for (std::size_t i = 0; i < act.size(); ++i)
    if (wake.spontaneous[i]) act[i] = *wake.spontaneous[i];
  std::vector<std::uint64_t> first_rec(act.size(), kNeverActive);

  for (std::uint64_t t = 0;; ++t) {
    std::vector<NodeId> newly = collect_newly(act, t);
    const bool event = reception_caused(first_rec, newly, t);
    if (all_active(act, t)) {
      finish_at(trace, t, std::move(newly), event);
      break;
    }
    if (t >= max_steps) {
      trace.steps_run = t;
      break;
    }
    step_once(
        net, t,
        [&](NodeId v) {
          const std::uint64_t a = act[static_cast<std::size_t>(v - 1)];
          if (a > t) return false;
          return family.schedules[static_cast<std::size_t>(v - 1)].bit(
              static_cast<std::int64_t>(t) - static_cast<std::int64_t>(a));
        },
        act, first_rec, std::move(newly), event, trace);
  }
  return trace;
}

SimulationTrace run_baseline_selective(const RadioNetwork& net, const BaselineOptions& options,
                                       std::uint64_t max_steps) {
  if (!net.source()) throw std::domain_error("run_baseline_selective: network has no source");
  if (options.c <= 0.0) throw std::domain_error("run_baseline_selective: need c > 0");
  const int n = net.size();
  const int delta = net.max_indegree();

  std::vector<int> ks;
  if (options.k_doubling) {
    for (int k = 2; k / 2 < delta; k *= 2) ks.push_back(std::min(k, n));
    if (ks.empty()) ks.push_back(1);
  } else {
    ks.push_back(std::max(1, std::min(delta, n)));
  }

  std::map<int, SelectiveFamily> cache;
  const auto family_for = [&](int k) -> const SelectiveFamily& {
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    SelectiveFamily fam = [&] {
      try {
        return generate_verified_selective(n, k, options.c, options.max_attempts,
                                           options.seed + static_cast<std::uint64_t>(k));
      } catch (const BudgetExceeded&) {
        return generate_verified_selective(
            n, k, options.c, options.max_attempts, options.seed + static_cast<std::uint64_t>(k),
            VerifyMode::sampled(options.sampled_trials,
                                options.seed + static_cast<std::uint64_t>(k)));
      }
    }();
    return cache.emplace(k, std::move(fam)).first->second;
  };

  SimulationTrace trace;
  trace.mode = SimMode::baseline;
  trace.n = n;
  trace.activation.assign(static_cast<std::size_t>(n), kNeverActive);
  trace.activation[static_cast<std::size_t>(*net.source() - 1)] = 0;
  auto& act = trace.activation;
  std::vector<std::uint64_t> first_rec(act.size(), kNeverActive);

  std::size_t cycle = 0;
  std::uint64_t app_start = 0;
  std::uint64_t app_len = 0;
  std::vector<std::uint8_t> snapshot(static_cast<std::size_t>(n), 0);
  const SelectiveFamily* current = nullptr;

  for (std::uint64_t t = 0;; ++t) {
    std::vector<NodeId> newly = collect_newly(act, t);
    const bool event = reception_caused(first_rec, newly, t);
    if (all_active(act, t)) {
      finish_at(trace, t, std::move(newly), event);
      break;
    }
    if (t >= max_steps) {
      trace.steps_run = t;
      break;
    }
    if (current == nullptr || t == app_start + app_len) {
      // Next application: freeze the informed set; receivers during the
      // application hold the message until the following one.
      app_start = t;
      current = &family_for(ks[cycle % ks.size()]);
      ++cycle;
      app_len = current->length();
      for (NodeId v = 1; v <= n; ++v)
        snapshot[static_cast<std::size_t>(v - 1)] =
            act[static_cast<std::size_t>(v - 1)] <= t ? 1 : 0;
    }
    step_once(
        net, t,
        [&](NodeId v) {
          if (!snapshot[static_cast<std::size_t>(v - 1)]) return false;
          return current->schedules[static_cast<std::size_t>(v - 1)].bit(
              static_cast<std::int64_t>(t) - static_cast<std::int64_t>(app_start));
        },
        act, first_rec, std::move(newly), event, trace);
  }
  return trace;
}

}  // namespace radiosync
