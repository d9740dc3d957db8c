#include "radiosync/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <climits>
#include <cmath>
#include <cstring>
#include <functional>
#include <string>

#include "radiosync/rng.hpp"

namespace radiosync {

namespace {

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) { return (a + b - 1) / b; }

// Rows packed into 64-bit words for the hot enumeration loops.
struct PackedRows {
  std::size_t n = 0;
  std::size_t words = 0;
  std::vector<std::uint64_t> data;

  explicit PackedRows(const std::vector<Schedule>& schedules) {
    n = schedules.size();
    std::size_t mbits = 0;
    for (const Schedule& s : schedules) mbits = std::max(mbits, s.length());
    words = (mbits + 63) / 64;
    data.assign(n * std::max<std::size_t>(words, 1), 0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& bits = schedules[i].raw();
      for (std::size_t j = 0; j < bits.size(); ++j)
        if (bits[j]) data[i * words + j / 64] |= std::uint64_t{1} << (j % 64);
    }
  }

  const std::uint64_t* row(std::size_t i) const { return data.data() + i * words; }
};

// 64 bits of a row starting at a signed column; out-of-range bits read as 0.
std::uint64_t extract64(const std::uint64_t* row, std::size_t words, std::int64_t start) {
  if (start >= 0) {
    const std::size_t w = static_cast<std::size_t>(start) / 64;
    const unsigned off = static_cast<unsigned>(start) % 64;
    if (w >= words) return 0;
    std::uint64_t lo = row[w] >> off;
    std::uint64_t hi = (off != 0 && w + 1 < words) ? row[w + 1] << (64 - off) : 0;
    return lo | hi;
  }
  if (start <= -64) return 0;
  return extract64(row, words, 0) << static_cast<unsigned>(-start);
}

bool violates(const std::vector<Schedule>& schedules, std::span<const NodeId> nodes,
              std::span<const std::uint64_t> offsets, std::uint64_t window) {
  for (std::uint64_t j = 0; j < window; ++j)
    if (column_hit(schedules, nodes, offsets, static_cast<std::int64_t>(j))) return false;
  return true;
}

using WindowFn = std::function<std::uint64_t(std::size_t)>;

// Greedy member removal; every surviving candidate is re-normalised to a
// min-0 offset vector and rechecked over the smaller size's window.
Counterexample minimize_counterexample(const std::vector<Schedule>& schedules,
                                       Counterexample ce, const WindowFn& window_for) {
  bool changed = true;
  while (changed && ce.nodes.size() > 1) {
    changed = false;
    for (std::size_t drop = 0; drop < ce.nodes.size(); ++drop) {
      std::vector<NodeId> nodes;
      std::vector<std::uint64_t> offs;
      for (std::size_t i = 0; i < ce.nodes.size(); ++i) {
        if (i == drop) continue;
        nodes.push_back(ce.nodes[i]);
        offs.push_back(ce.offsets[i]);
      }
      const std::uint64_t base = *std::min_element(offs.begin(), offs.end());
      for (auto& o : offs) o -= base;
      const std::uint64_t window = window_for(nodes.size());
      if (violates(schedules, nodes, offs, window)) {
        ce.nodes = std::move(nodes);
        ce.offsets = std::move(offs);
        ce.window = window;
        changed = true;
        break;
      }
    }
  }
  return ce;
}

// Counterexamples are replayed through column_hit before being emitted; a
// failure here is a verifier bug, not an input problem.
Counterexample finish_counterexample(const std::vector<Schedule>& schedules,
                                     Counterexample ce, const WindowFn& window_for) {
  ce = minimize_counterexample(schedules, std::move(ce), window_for);
  if (!counterexample_violates(schedules, ce))
    throw std::logic_error("oracle: emitted counterexample does not replay as a violation");
  return ce;
}

long double subset_count(int n, int k) {
  long double total = 0.0L, binom = 1.0L;
  for (int i = 1; i <= k; ++i) {
    binom = binom * static_cast<long double>(n - i + 1) / static_cast<long double>(i);
    total += binom;
    if (total > 1e30L) return total;
  }
  return total;
}

void require_rows_match(int n, const std::vector<Schedule>& schedules) {
  if (static_cast<int>(schedules.size()) != n)
    throw std::domain_error("oracle: family row count does not match n");
}

// Enumerate size-s subsets whose smallest element is `first`, tail drawn from
// (first, n], in lexicographic order.  fn returns false to stop.
template <typename F>
void for_each_combo(int n, int s, NodeId first, F&& fn) {
  std::vector<NodeId> xs(static_cast<std::size_t>(s));
  xs[0] = first;
  for (int i = 1; i < s; ++i) xs[static_cast<std::size_t>(i)] = first + i;
  if (xs.back() > n) return;
  while (true) {
    if (!fn(xs)) return;
    int i = s - 1;
    while (i >= 1 && xs[static_cast<std::size_t>(i)] == n - (s - 1 - i)) --i;
    if (i == 0) return;
    ++xs[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < s; ++j)
      xs[static_cast<std::size_t>(j)] = xs[static_cast<std::size_t>(j - 1)] + 1;
  }
}

void atomic_min(std::atomic<long long>& target, long long value) {
  long long cur = target.load(std::memory_order_relaxed);
  while (value < cur && !target.compare_exchange_weak(cur, value)) {
  }
}

}  // namespace

bool counterexample_violates(const std::vector<Schedule>& schedules,
                             const Counterexample& ce) {
  return violates(schedules, ce.nodes, ce.offsets, ce.window);
}

// ---------------------------------------------------------------------------
// selective families
// ---------------------------------------------------------------------------

namespace {

bool subset_has_isolated_column(const PackedRows& rows, std::span<const NodeId> xs) {
  for (std::size_t w = 0; w < rows.words; ++w) {
    std::uint64_t once = 0, twice = 0;
    for (NodeId v : xs) {
      const std::uint64_t x = rows.row(static_cast<std::size_t>(v - 1))[w];
      twice |= once & x;
      once |= x;
    }
    if (once & ~twice) return true;
  }
  return false;
}

void check_selective_budget(int n, int k, const OracleBudget& budget) {
  if (n > budget.selective_max_n)
    throw BudgetExceeded("selective exhaustive verification refused: n exceeds budget");
  if (subset_count(n, k) > static_cast<long double>(budget.selective_subsets))
    throw BudgetExceeded("selective exhaustive verification refused: subset count exceeds budget");
}

}  // namespace

Verdict verify_selective_family(const SelectiveFamily& family, const VerifyMode& mode,
                                const OracleBudget& budget) {
  const int n = family.params.n;
  const int k = family.params.k;
  require_rows_match(n, family.schedules);
  if (k < 1 || k > n) throw std::domain_error("verify_selective_family: need 1 <= k <= n");
  if (mode.kind == VerifyMode::Kind::sampled)
    return mc_falsify(family, mode.trials, mode.seed);
  check_selective_budget(n, k, budget);

  const PackedRows rows(family.schedules);
  const std::uint64_t m = family.length();
  const WindowFn window_for = [m](std::size_t) { return m; };

  // Tasks are (size, first element) groups in canonical order; the winning
  // counterexample is the one from the lowest task index, which is exactly
  // the canonically first one overall.
  struct Task {
    int size;
    NodeId first;
  };
  std::vector<Task> tasks;
  for (int s = 1; s <= k; ++s)
    for (NodeId f = 1; f + s - 1 <= n; ++f) tasks.push_back({s, f});

  std::atomic<long long> best{LLONG_MAX};
  std::vector<std::optional<Counterexample>> found(tasks.size());
  std::vector<std::uint64_t> counted(tasks.size(), 0);

#pragma omp parallel for schedule(dynamic)
  for (long long ti = 0; ti < static_cast<long long>(tasks.size()); ++ti) {
    if (ti > best.load(std::memory_order_relaxed)) continue;
    const Task task = tasks[static_cast<std::size_t>(ti)];
    std::uint64_t local = 0;
    for_each_combo(n, task.size, task.first, [&](const std::vector<NodeId>& xs) {
      ++local;
      if (!subset_has_isolated_column(rows, xs)) {
        Counterexample ce;
        ce.nodes = xs;
        ce.offsets.assign(xs.size(), 0);
        ce.window = m;
        found[static_cast<std::size_t>(ti)] = std::move(ce);
        atomic_min(best, ti);
        return false;
      }
      return true;
    });
    counted[static_cast<std::size_t>(ti)] = local;
  }

  const long long winner = best.load();
  if (winner != LLONG_MAX) {
    Verdict verdict;
    verdict.status = VerdictStatus::falsified;
    verdict.counterexample = finish_counterexample(
        family.schedules, *found[static_cast<std::size_t>(winner)], window_for);
    return verdict;
  }
  Verdict verdict;
  verdict.status = VerdictStatus::verified_exhaustive;
  for (std::uint64_t c : counted) verdict.cases_checked += c;
  return verdict;
}

Verdict verify_selective_family_serial(const SelectiveFamily& family,
                                       const OracleBudget& budget) {
  const int n = family.params.n;
  const int k = family.params.k;
  require_rows_match(n, family.schedules);
  if (k < 1 || k > n) throw std::domain_error("verify_selective_family_serial: need 1 <= k <= n");
  check_selective_budget(n, k, budget);
  const std::uint64_t m = family.length();

  Verdict verdict;
  for (int s = 1; s <= k; ++s) {
    for (NodeId f = 1; f + s - 1 <= n; ++f) {
      bool stop = false;
      for_each_combo(n, s, f, [&](const std::vector<NodeId>& xs) {
        ++verdict.cases_checked;
        if (!hits_set(family, xs)) {
          Counterexample ce;
          ce.nodes = xs;
          ce.offsets.assign(xs.size(), 0);
          ce.window = m;
          verdict.status = VerdictStatus::falsified;
          verdict.counterexample = finish_counterexample(
              family.schedules, std::move(ce), [m](std::size_t) { return m; });
          verdict.cases_checked = 0;
          stop = true;
          return false;
        }
        return true;
      });
      if (stop) return verdict;
    }
  }
  verdict.status = VerdictStatus::verified_exhaustive;
  return verdict;
}

// ---------------------------------------------------------------------------
// synchronizer core-space search
// ---------------------------------------------------------------------------

namespace {

struct DfsParams {
  const std::vector<Schedule>* schedules = nullptr;
  int n = 0;
  int max_size = 0;               // urs: n, block: delta
  std::uint64_t scale = 1;        // columns per offset unit (block: BB)
  std::uint64_t r = 1;            // block increment; checked iff offmax*r < size
  bool block_rule = false;
  std::vector<std::uint64_t> window;   // [1..max_size] hit window in columns
  std::vector<std::uint64_t> ext_cap;  // [1..max_size-1] offset-unit cap for next member
};

// Depth-first walk over min-0 offset assignments in lexicographic order of
// their sorted (offset, node) sequences.  Column sums are maintained
// incrementally; a subtree is pruned once some column below every future
// member's reach holds exactly one 1, since no extension can disturb it and
// every later window contains it.
class DfsSearch {
 public:
  explicit DfsSearch(const DfsParams& p)
      : p_(p),
        cnt_(*std::max_element(p.window.begin() + 1, p.window.end()), 0) {}

  bool run_root(NodeId v) {
    add(v, 0);
    const bool stop = visit();
    pop();
    return stop;
  }

  std::optional<Counterexample> found;
  std::uint64_t checked = 0;

 private:
  void add(NodeId v, std::uint64_t off_units) {
    nodes_.push_back(v);
    offs_.push_back(off_units);
    used_ |= std::uint64_t{1} << v;
    const auto& bits = (*p_.schedules)[static_cast<std::size_t>(v - 1)].raw();
    const std::uint64_t start = off_units * p_.scale;
    const std::uint64_t stop = std::min<std::uint64_t>(cnt_.size(), start + bits.size());
    for (std::uint64_t j = start; j < stop; ++j) cnt_[j] += bits[j - start];
  }

  void pop() {
    const NodeId v = nodes_.back();
    const std::uint64_t off_units = offs_.back();
    const auto& bits = (*p_.schedules)[static_cast<std::size_t>(v - 1)].raw();
    const std::uint64_t start = off_units * p_.scale;
    const std::uint64_t stop = std::min<std::uint64_t>(cnt_.size(), start + bits.size());
    for (std::uint64_t j = start; j < stop; ++j) cnt_[j] -= bits[j - start];
    used_ &= ~(std::uint64_t{1} << v);
    nodes_.pop_back();
    offs_.pop_back();
  }

  Counterexample make_ce(std::uint64_t window) const {
    Counterexample ce;
    ce.nodes = nodes_;
    ce.offsets.reserve(offs_.size());
    for (std::uint64_t o : offs_) ce.offsets.push_back(o * p_.scale);
    ce.window = window;
    return ce;
  }

  bool visit() {
    const std::size_t size = nodes_.size();
    const std::uint64_t offmax = offs_.back();
    // Block assignments whose largest offset is only legal for a bigger set
    // are transit states: not themselves test cases, but extendable.
    const bool is_case = !p_.block_rule || offmax * p_.r < size;
    const std::uint64_t limit =
        is_case ? p_.window[size] : p_.scale * (offmax + 1);

    std::uint64_t jiso = UINT64_MAX;
    for (std::uint64_t j = 0; j < limit; ++j) {
      if (cnt_[j] == 1) {
        jiso = j;
        break;
      }
    }

    if (is_case) {
      ++checked;
      if (jiso == UINT64_MAX) {
        found = make_ce(limit);
        return true;
      }
    }
    // Future members start at column scale*offmax or later, so an isolated
    // column below that is permanent: the whole subtree is hit.
    if (jiso != UINT64_MAX && jiso < p_.scale * offmax) return false;
    if (static_cast<int>(size) >= p_.max_size) return false;

    std::uint64_t cap = p_.ext_cap[size];
    // Children starting past the first isolated column can never disturb it;
    // they and their subtrees are hit, so enumeration skips them.
    if (jiso != UINT64_MAX) cap = std::min(cap, jiso / p_.scale);

    const NodeId last = nodes_.back();
    for (std::uint64_t off = offmax; off <= cap; ++off) {
      for (NodeId u = (off == offmax ? last + 1 : 1); u <= p_.n; ++u) {
        if (used_ & (std::uint64_t{1} << u)) continue;
        add(u, off);
        const bool stop = visit();
        pop();
        if (stop) return true;
      }
    }
    return false;
  }

  const DfsParams& p_;
  std::vector<std::uint8_t> cnt_;
  std::vector<NodeId> nodes_;
  std::vector<std::uint64_t> offs_;
  std::uint64_t used_ = 0;
};

Verdict run_core_space_search(const DfsParams& params, const WindowFn& window_for,
                              const std::vector<Schedule>& schedules) {
  const int n = params.n;
  std::atomic<long long> best{LLONG_MAX};
  std::vector<std::optional<Counterexample>> found(static_cast<std::size_t>(n) + 1);
  std::vector<std::uint64_t> counted(static_cast<std::size_t>(n) + 1, 0);

#pragma omp parallel for schedule(dynamic)
  for (int v = 1; v <= n; ++v) {
    if (static_cast<long long>(v) > best.load(std::memory_order_relaxed)) continue;
    DfsSearch search(params);
    if (search.run_root(v)) {
      found[static_cast<std::size_t>(v)] = std::move(search.found);
      atomic_min(best, v);
    }
    counted[static_cast<std::size_t>(v)] = search.checked;
  }

  const long long winner = best.load();
  Verdict verdict;
  if (winner != LLONG_MAX) {
    verdict.status = VerdictStatus::falsified;
    verdict.counterexample = finish_counterexample(
        schedules, *found[static_cast<std::size_t>(winner)], window_for);
    return verdict;
  }
  verdict.status = VerdictStatus::verified_exhaustive;
  for (std::uint64_t c : counted) verdict.cases_checked += c;
  return verdict;
}

std::vector<std::uint64_t> urs_delay_table(int n, double c) {
  std::vector<std::uint64_t> g(static_cast<std::size_t>(n) + 1, 0);
  for (int q = 1; q <= n; ++q)
    g[static_cast<std::size_t>(q)] =
        urs_delay(static_cast<std::uint64_t>(q), static_cast<std::uint64_t>(n), c);
  return g;
}

}  // namespace

Verdict verify_urs(const SynchronizerFamily& family, const VerifyMode& mode,
                   const OracleBudget& budget) {
  if (family.kind != SyncKind::urs)
    throw std::domain_error("verify_urs: family kind must be urs");
  const int n = family.params.n;
  require_rows_match(n, family.schedules);
  if (mode.kind == VerifyMode::Kind::sampled)
    return mc_falsify(family, mode.trials, mode.seed);
  if (n > budget.urs_max_n)
    throw BudgetExceeded("urs exhaustive verification refused: n exceeds budget");

  const std::vector<std::uint64_t> g = urs_delay_table(n, family.params.c);
  DfsParams params;
  params.schedules = &family.schedules;
  params.n = n;
  params.max_size = n;
  params.scale = 1;
  params.window = g;
  params.ext_cap = g;  // next member's offset cap is g(current size)
  const WindowFn window_for = [&g](std::size_t q) { return g[q]; };
  return run_core_space_search(params, window_for, family.schedules);
}

Verdict verify_urs_naive(const SynchronizerFamily& family, const OracleBudget& budget) {
  if (family.kind != SyncKind::urs)
    throw std::domain_error("verify_urs_naive: family kind must be urs");
  const int n = family.params.n;
  require_rows_match(n, family.schedules);
  if (n > budget.naive_max_n)
    throw BudgetExceeded("naive urs verification refused: n exceeds budget");

  const std::vector<std::uint64_t> g = urs_delay_table(n, family.params.c);
  const std::uint64_t gmax = g[static_cast<std::size_t>(n)];
  const PackedRows rows(family.schedules);
  const WindowFn window_for = [&g](std::size_t q) { return g[q]; };

  Verdict verdict;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    std::vector<NodeId> xs;
    for (int v = 1; v <= n; ++v)
      if (mask & (std::uint32_t{1} << (v - 1))) xs.push_back(v);
    const std::size_t q = xs.size();
    const std::uint64_t win = g[q];
    const bool fast = win <= 64;
    const std::uint64_t win_mask =
        win >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << win) - 1;

    std::vector<std::uint64_t> omega(q, 0);
    while (true) {
      ++verdict.cases_checked;
      const std::uint64_t base = *std::min_element(omega.begin(), omega.end());
      bool hit;
      if (fast) {
        std::uint64_t once = 0, twice = 0;
        for (std::size_t i = 0; i < q; ++i) {
          const std::uint64_t w =
              extract64(rows.row(static_cast<std::size_t>(xs[i] - 1)), rows.words,
                        static_cast<std::int64_t>(base) - static_cast<std::int64_t>(omega[i]));
          twice |= once & w;
          once |= w;
        }
        hit = (once & ~twice & win_mask) != 0;
      } else {
        hit = false;
        for (std::uint64_t j = base; j < base + win && !hit; ++j) {
          int ones = 0;
          for (std::size_t i = 0; i < q; ++i)
            if (family.schedules[static_cast<std::size_t>(xs[i] - 1)].bit(
                    static_cast<std::int64_t>(j) - static_cast<std::int64_t>(omega[i])))
              if (++ones > 1) break;
          hit = ones == 1;
        }
      }
      if (!hit) {
        Counterexample ce;
        ce.nodes = xs;
        ce.offsets = omega;
        for (auto& o : ce.offsets) o -= base;
        ce.window = win;
        verdict.status = VerdictStatus::falsified;
        verdict.counterexample =
            finish_counterexample(family.schedules, std::move(ce), window_for);
        verdict.cases_checked = 0;
        return verdict;
      }
      // odometer over [0, gmax]^q
      std::size_t i = q;
      while (i > 0 && omega[i - 1] == gmax) omega[--i] = 0;
      if (i == 0) break;
      ++omega[i - 1];
    }
  }
  verdict.status = VerdictStatus::verified_exhaustive;
  return verdict;
}

// ---------------------------------------------------------------------------
// block synchronizers
// ---------------------------------------------------------------------------

namespace {

void require_block_family(const SynchronizerFamily& family, int delta) {
  if (family.kind != SyncKind::block)
    throw std::domain_error("block verification: family kind must be block (compose first)");
  if (delta < 1 || delta > family.params.n)
    throw std::domain_error("block verification: need 1 <= delta <= n");
  if (family.composite_block == 0 || family.params.r == 0)
    throw std::domain_error("block verification: family missing block geometry");
}

}  // namespace

Verdict verify_block_synchronizer(const SynchronizerFamily& family, int delta,
                                  const VerifyMode& mode, const OracleBudget& budget) {
  require_block_family(family, delta);
  const int n = family.params.n;
  require_rows_match(n, family.schedules);
  if (mode.kind == VerifyMode::Kind::sampled) {
    SynchronizerFamily probe = family;
    probe.params.delta = delta;
    return mc_falsify(probe, mode.trials, mode.seed);
  }
  if (n > budget.block_max_n)
    throw BudgetExceeded("block exhaustive verification refused: n exceeds budget");

  const std::uint64_t bb = family.composite_block;
  const std::uint64_t r = family.params.r;
  DfsParams params;
  params.schedules = &family.schedules;
  params.n = n;
  params.max_size = delta;
  params.scale = bb;
  params.r = r;
  params.block_rule = true;
  params.window.assign(static_cast<std::size_t>(delta) + 1, 0);
  for (int q = 1; q <= delta; ++q)
    params.window[static_cast<std::size_t>(q)] = bb * ceil_div(static_cast<std::uint64_t>(q), r);
  params.ext_cap.assign(static_cast<std::size_t>(delta) + 1,
                        ceil_div(static_cast<std::uint64_t>(delta), r) - 1);
  const WindowFn window_for = [bb, r](std::size_t q) {
    return bb * ceil_div(static_cast<std::uint64_t>(q), r);
  };
  return run_core_space_search(params, window_for, family.schedules);
}

Verdict verify_block_synchronizer_serial(const SynchronizerFamily& family, int delta,
                                         const OracleBudget& budget) {
  require_block_family(family, delta);
  const int n = family.params.n;
  require_rows_match(n, family.schedules);
  if (n > budget.block_max_n)
    throw BudgetExceeded("block exhaustive verification refused: n exceeds budget");

  const std::uint64_t bb = family.composite_block;
  const std::uint64_t r = family.params.r;
  const WindowFn window_for = [bb, r](std::size_t q) {
    return bb * ceil_div(static_cast<std::uint64_t>(q), r);
  };

  Verdict verdict;
  for (int s = 1; s <= delta; ++s) {
    for (NodeId f = 1; f + s - 1 <= n; ++f) {
      std::optional<Counterexample> hit_ce;
      for_each_combo(n, s, f, [&](const std::vector<NodeId>& xs) {
        const std::size_t q = xs.size();
        const std::uint64_t cap = ceil_div(static_cast<std::uint64_t>(q), r);  // phi < cap
        const std::uint64_t window = bb * cap;
        std::vector<std::uint64_t> phi(q, 0);
        while (true) {
          const bool min_zero =
              *std::min_element(phi.begin(), phi.end()) == 0;
          if (min_zero) {
            ++verdict.cases_checked;
            std::vector<std::uint64_t> offs(q);
            for (std::size_t i = 0; i < q; ++i) offs[i] = phi[i] * bb;
            if (violates(family.schedules, xs, offs, window)) {
              Counterexample ce;
              ce.nodes = xs;
              ce.offsets = std::move(offs);
              ce.window = window;
              hit_ce = std::move(ce);
              return false;
            }
          }
          std::size_t i = q;
          while (i > 0 && phi[i - 1] == cap - 1) phi[--i] = 0;
          if (i == 0) break;
          ++phi[i - 1];
        }
        return true;
      });
      if (hit_ce) {
        verdict.status = VerdictStatus::falsified;
        verdict.counterexample =
            finish_counterexample(family.schedules, std::move(*hit_ce), window_for);
        verdict.cases_checked = 0;
        return verdict;
      }
    }
  }
  verdict.status = VerdictStatus::verified_exhaustive;
  return verdict;
}

// ---------------------------------------------------------------------------
// Monte-Carlo falsification
// ---------------------------------------------------------------------------

namespace {

std::vector<NodeId> sample_subset(SeededRng& rng, int n, std::size_t size) {
  std::vector<NodeId> ids(static_cast<std::size_t>(n));
  for (int v = 1; v <= n; ++v) ids[static_cast<std::size_t>(v - 1)] = v;
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(
                                  static_cast<std::uint64_t>(n) - i));
    std::swap(ids[i], ids[j]);
  }
  std::vector<NodeId> xs(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(size));
  std::sort(xs.begin(), xs.end());
  return xs;
}

}  // namespace

Verdict mc_falsify(const SelectiveFamily& family, std::uint64_t trials,
                   std::uint64_t seed) {
  if (trials == 0) throw std::domain_error("mc_falsify: trials must be positive");
  const int n = family.params.n;
  const int k = family.params.k;
  require_rows_match(n, family.schedules);
  const std::uint64_t m = family.length();
  SeededRng rng(seed);
  Verdict verdict;
  for (std::uint64_t t = 0; t < trials; ++t) {
    const std::size_t size =
        1 + static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(k)));
    const std::vector<NodeId> xs = sample_subset(rng, n, size);
    if (!hits_set(family, xs)) {
      Counterexample ce;
      ce.nodes = xs;
      ce.offsets.assign(xs.size(), 0);
      ce.window = m;
      verdict.status = VerdictStatus::falsified;
      verdict.counterexample = finish_counterexample(
          family.schedules, std::move(ce), [m](std::size_t) { return m; });
      verdict.trials = t + 1;
      return verdict;
    }
  }
  verdict.status = VerdictStatus::verified_sampled;
  verdict.trials = trials;
  return verdict;
}

Verdict mc_falsify(const SynchronizerFamily& family, std::uint64_t trials,
                   std::uint64_t seed) {
  if (trials == 0) throw std::domain_error("mc_falsify: trials must be positive");
  const int n = family.params.n;
  require_rows_match(n, family.schedules);
  SeededRng rng(seed);
  Verdict verdict;

  if (family.kind == SyncKind::urs) {
    const std::vector<std::uint64_t> g = urs_delay_table(n, family.params.c);
    const WindowFn window_for = [&g](std::size_t q) { return g[q]; };
    for (std::uint64_t t = 0; t < trials; ++t) {
      const std::size_t size =
          1 + static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(n)));
      const std::vector<NodeId> xs = sample_subset(rng, n, size);
      std::vector<std::uint64_t> offs(size);
      for (auto& o : offs) o = rng.next_below(g[size] + 1);
      const std::uint64_t base = *std::min_element(offs.begin(), offs.end());
      for (auto& o : offs) o -= base;
      if (violates(family.schedules, xs, offs, g[size])) {
        Counterexample ce{xs, offs, g[size]};
        verdict.status = VerdictStatus::falsified;
        verdict.counterexample =
            finish_counterexample(family.schedules, std::move(ce), window_for);
        verdict.trials = t + 1;
        return verdict;
      }
    }
  } else if (family.kind == SyncKind::block) {
    const int delta = family.params.delta;
    if (delta < 1) throw std::domain_error("mc_falsify: block family missing delta");
    const std::uint64_t bb = family.composite_block;
    const std::uint64_t r = family.params.r;
    const WindowFn window_for = [bb, r](std::size_t q) {
      return bb * ceil_div(static_cast<std::uint64_t>(q), r);
    };
    for (std::uint64_t t = 0; t < trials; ++t) {
      const std::size_t size =
          1 + static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(delta)));
      const std::vector<NodeId> xs = sample_subset(rng, n, size);
      const std::uint64_t cap = ceil_div(size, r);
      std::vector<std::uint64_t> offs(size);
      for (auto& o : offs) o = rng.next_below(cap) * bb;
      const std::uint64_t base = *std::min_element(offs.begin(), offs.end());
      for (auto& o : offs) o -= base;
      if (violates(family.schedules, xs, offs, bb * cap)) {
        Counterexample ce{xs, offs, bb * cap};
        verdict.status = VerdictStatus::falsified;
        verdict.counterexample =
            finish_counterexample(family.schedules, std::move(ce), window_for);
        verdict.trials = t + 1;
        return verdict;
      }
    }
  } else {
    throw std::domain_error("mc_falsify: upper_block has no standalone contract; compose first");
  }

  verdict.status = VerdictStatus::verified_sampled;
  verdict.trials = trials;
  return verdict;
}

// ---------------------------------------------------------------------------
// Las Vegas generation
// ---------------------------------------------------------------------------

namespace {

bool verified_status(const Verdict& v) {
  return v.status == VerdictStatus::verified_exhaustive ||
         v.status == VerdictStatus::verified_sampled;
}

VerifyState state_from(const Verdict& v) {
  VerifyState st;
  st.status = v.status == VerdictStatus::verified_exhaustive
                  ? VerifyStatus::verified_exhaustive
                  : VerifyStatus::verified_sampled;
  st.trials = v.trials;
  return st;
}

}  // namespace

SelectiveFamily generate_verified_selective(int n, int k, double c, int max_attempts,
                                            std::uint64_t seed, const VerifyMode& mode,
                                            const OracleBudget& budget) {
  if (max_attempts < 1) throw std::domain_error("generate_verified_selective: max_attempts < 1");
  Verdict last;
  for (int t = 0; t < max_attempts; ++t) {
    SelectiveFamily family = gen_selective_family(n, k, c, seed + static_cast<std::uint64_t>(t));
    const Verdict v = verify_selective_family(family, mode, budget);
    if (verified_status(v)) {
      family.verified = state_from(v);
      family.attempts = static_cast<std::uint32_t>(t + 1);
      return family;
    }
    last = v;
  }
  throw GenerationFailed("selective family generation exhausted attempts (c too small for this n?)",
                         last, max_attempts);
}

SynchronizerFamily generate_verified_urs(int n, double c, int max_attempts,
                                         std::uint64_t seed, const VerifyMode& mode,
                                         const OracleBudget& budget) {
  if (max_attempts < 1) throw std::domain_error("generate_verified_urs: max_attempts < 1");
  Verdict last;
  for (int t = 0; t < max_attempts; ++t) {
    SynchronizerFamily family = gen_urs_candidate(n, c, seed + static_cast<std::uint64_t>(t));
    const Verdict v = verify_urs(family, mode, budget);
    if (verified_status(v)) {
      family.verified = state_from(v);
      family.attempts = static_cast<std::uint32_t>(t + 1);
      return family;
    }
    last = v;
  }
  throw GenerationFailed("urs generation exhausted attempts (c too small for this n?)", last,
                         max_attempts);
}

SynchronizerFamily generate_verified_block(int n, int ecc, int delta, double c,
                                           int max_attempts, std::uint64_t seed,
                                           const VerifyMode& mode,
                                           const OracleBudget& budget) {
  if (max_attempts < 1) throw std::domain_error("generate_verified_block: max_attempts < 1");
  const int k = static_cast<int>(block_increment(n, ecc));
  VerifyMode prefix_mode = mode;
  if (n <= budget.selective_max_n &&
      subset_count(n, k) <= static_cast<long double>(budget.selective_subsets))
    prefix_mode = VerifyMode::exhaustive();
  SelectiveFamily prefix =
      generate_verified_selective(n, k, c, max_attempts, seed, prefix_mode, budget);

  Verdict last;
  for (int t = 0; t < max_attempts; ++t) {
    const std::uint64_t upper_seed = seed + 1000000 + static_cast<std::uint64_t>(t);
    SynchronizerFamily upper = gen_upper_block_candidate(n, ecc, delta, c, upper_seed);
    SynchronizerFamily family = compose_block_synchronizer(upper, prefix);
    const Verdict v = verify_block_synchronizer(family, delta, mode, budget);
    if (verified_status(v)) {
      family.verified = state_from(v);
      family.attempts = static_cast<std::uint32_t>(t + 1);
      return family;
    }
    last = v;
  }
  throw GenerationFailed("block synchronizer generation exhausted attempts (c too small?)", last,
                         max_attempts);
}

}  // namespace radiosync
