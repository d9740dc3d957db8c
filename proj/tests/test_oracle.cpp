#include <doctest.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "radiosync/oracle.hpp"
#include "radiosync/rng.hpp"

using namespace radiosync;

namespace {

void zero_row(std::vector<Schedule>& schedules, NodeId v) {
  Schedule& row = schedules[static_cast<std::size_t>(v - 1)];
  for (std::size_t j = 0; j < row.length(); ++j) row.set(j, false);
}

}  // namespace

TEST_CASE("selective verification: known-good family, parallel == serial") {
  const SelectiveFamily family = gen_selective_family(8, 2, 3.0, 42);
  const Verdict par = verify_selective_family(family);
  const Verdict ser = verify_selective_family_serial(family);
  CHECK(par.status == VerdictStatus::verified_exhaustive);
  CHECK(par.cases_checked == 36);  // C(8,1) + C(8,2)
  CHECK_FALSE(par.counterexample.has_value());
  CHECK(ser.status == par.status);
  CHECK(ser.cases_checked == par.cases_checked);
}

TEST_CASE("selective falsification: zeroed row yields the canonical singleton") {
  SelectiveFamily family = gen_selective_family(8, 2, 3.0, 42);
  zero_row(family.schedules, 1);
  const Verdict par = verify_selective_family(family);
  const Verdict ser = verify_selective_family_serial(family);
  REQUIRE(par.status == VerdictStatus::falsified);
  REQUIRE(par.counterexample.has_value());
  CHECK(par.counterexample->nodes == std::vector<NodeId>{1});
  CHECK(par.counterexample->offsets == std::vector<std::uint64_t>{0});
  CHECK(par.counterexample->window == 12);
  CHECK(par.cases_checked == 0);
  CHECK(counterexample_violates(family.schedules, *par.counterexample));
  REQUIRE(ser.counterexample.has_value());
  CHECK(*ser.counterexample == *par.counterexample);
}

TEST_CASE("selective falsification: duplicated rows fail at the first pair") {
  SelectiveFamily family = gen_selective_family(8, 2, 3.0, 42);
  family.schedules[1] = Schedule(2, family.schedules[0].raw());
  const Verdict par = verify_selective_family(family);
  REQUIRE(par.status == VerdictStatus::falsified);
  REQUIRE(par.counterexample.has_value());
  CHECK(par.counterexample->nodes == std::vector<NodeId>{1, 2});
  CHECK(counterexample_violates(family.schedules, *par.counterexample));
  const Verdict ser = verify_selective_family_serial(family);
  REQUIRE(ser.counterexample.has_value());
  CHECK(*ser.counterexample == *par.counterexample);
}

TEST_CASE("verification budgets refuse oversized exhaustive runs") {
  CHECK_THROWS_AS(verify_selective_family(gen_selective_family(21, 2, 3.0, 0)),
                  BudgetExceeded);
  CHECK_THROWS_AS(verify_urs(gen_urs_candidate(9, 2.0, 0)), BudgetExceeded);
  CHECK_THROWS_AS(verify_urs_naive(gen_urs_candidate(6, 2.0, 0)), BudgetExceeded);

  const SynchronizerFamily big = compose_block_synchronizer(
      gen_upper_block_candidate(13, 4, 4, 2.0, 0), gen_selective_family(13, 3, 2.0, 0));
  CHECK_THROWS_AS(verify_block_synchronizer(big, 4), BudgetExceeded);
}

TEST_CASE("urs generation succeeds at generous c and the result re-verifies") {
  const SynchronizerFamily family = generate_verified_urs(4, 8.0, 50, 7);
  CHECK(family.verified.status == VerifyStatus::verified_exhaustive);
  CHECK(family.params.seed >= 7);
  const Verdict v = verify_urs(family);
  CHECK(v.status == VerdictStatus::verified_exhaustive);
  CHECK(v.cases_checked == 693);
}

TEST_CASE("urs generation failure carries the last counterexample") {
  try {
    generate_verified_urs(4, 2.0, 3, 7);
    FAIL("expected GenerationFailed");
  } catch (const GenerationFailed& fail) {
    CHECK(fail.attempts == 3);
    CHECK(fail.last_verdict.status == VerdictStatus::falsified);
    REQUIRE(fail.last_verdict.counterexample.has_value());
  }
}

TEST_CASE("urs core-space verdicts agree with the naive (X, omega) oracle") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const SynchronizerFamily cand = gen_urs_candidate(4, 2.0, seed);
    const Verdict fast = verify_urs(cand);
    const Verdict naive = verify_urs_naive(cand);
    const bool fast_ok = fast.status == VerdictStatus::verified_exhaustive;
    const bool naive_ok = naive.status == VerdictStatus::verified_exhaustive;
    CHECK(fast_ok == naive_ok);
    if (fast.counterexample)
      CHECK(counterexample_violates(cand.schedules, *fast.counterexample));
    if (naive.counterexample)
      CHECK(counterexample_violates(cand.schedules, *naive.counterexample));
  }
}

TEST_CASE("block synchronizer: generated family verifies, serial agrees") {
  const SynchronizerFamily family = generate_verified_block(8, 4, 4, 2.0, 100, 3);
  CHECK(family.kind == SyncKind::block);
  CHECK(family.composite_block == 16);  // prefix m = 8, B = 8
  CHECK(family.params.r == 2);
  REQUIRE(family.prefix_family.has_value());
  CHECK(family.prefix_family->verified.status == VerifyStatus::verified_exhaustive);

  const Verdict par = verify_block_synchronizer(family, 4);
  const Verdict ser = verify_block_synchronizer_serial(family, 4);
  CHECK(par.status == VerdictStatus::verified_exhaustive);
  CHECK(par.cases_checked == 162);
  CHECK(ser.status == par.status);
  // The serial scan covers the whole offset space; the search prunes subtrees
  // once a hit column is permanent, so it examines fewer cases.
  // Space: sum over q of C(8,q) * (min-0 assignments into ceil(q/2) blocks)
  //      = 8 + 28 + 7*56 + 15*70.
  CHECK(ser.cases_checked == 1478);
  CHECK(par.cases_checked <= ser.cases_checked);
}

TEST_CASE("block falsification replays and minimizes") {
  SynchronizerFamily family = generate_verified_block(8, 4, 4, 2.0, 100, 3);
  for (NodeId v = 1; v <= 8; ++v) zero_row(family.schedules, v);
  const Verdict par = verify_block_synchronizer(family, 4);
  const Verdict ser = verify_block_synchronizer_serial(family, 4);
  REQUIRE(par.status == VerdictStatus::falsified);
  REQUIRE(par.counterexample.has_value());
  CHECK(par.counterexample->nodes == std::vector<NodeId>{1});
  CHECK(par.counterexample->offsets == std::vector<std::uint64_t>{0});
  CHECK(par.counterexample->window == 16);  // BB * ceil(1/r)
  CHECK(counterexample_violates(family.schedules, *par.counterexample));
  REQUIRE(ser.counterexample.has_value());
  CHECK(*ser.counterexample == *par.counterexample);
}

TEST_CASE("standalone upper-block families have no verification contract") {
  const SynchronizerFamily upper = gen_upper_block_candidate(8, 4, 4, 2.0, 1);
  CHECK_THROWS_AS(verify_block_synchronizer(upper, 4), std::domain_error);
  CHECK_THROWS_AS(mc_falsify(upper, 10, 0), std::domain_error);
}

TEST_CASE("mc_falsify: sampled consistency and corruption detection") {
  const SelectiveFamily good = gen_selective_family(8, 2, 3.0, 42);
  const Verdict ok = mc_falsify(good, 2000, 5);
  CHECK(ok.status == VerdictStatus::verified_sampled);
  CHECK(ok.trials == 2000);

  SelectiveFamily bad = good;
  zero_row(bad.schedules, 3);
  const Verdict caught = mc_falsify(bad, 2000, 5);
  REQUIRE(caught.status == VerdictStatus::falsified);
  REQUIRE(caught.counterexample.has_value());
  CHECK(counterexample_violates(bad.schedules, *caught.counterexample));
  CHECK(caught.trials >= 1);

  CHECK_THROWS_AS(mc_falsify(good, 0, 0), std::domain_error);

  SynchronizerFamily urs = generate_verified_urs(4, 8.0, 50, 7);
  const Verdict uok = mc_falsify(urs, 2000, 9);
  CHECK(uok.status == VerdictStatus::verified_sampled);
  zero_row(urs.schedules, 2);
  const Verdict ubad = mc_falsify(urs, 2000, 9);
  REQUIRE(ubad.status == VerdictStatus::falsified);
  CHECK(counterexample_violates(urs.schedules, *ubad.counterexample));
}

TEST_CASE("sampled verify mode routes through mc_falsify deterministically") {
  const SelectiveFamily family = gen_selective_family(16, 4, 3.0, 1);
  const Verdict a = verify_selective_family(family, VerifyMode::sampled(500, 11));
  const Verdict b = verify_selective_family(family, VerifyMode::sampled(500, 11));
  CHECK(a.status == b.status);
  CHECK(a.trials == b.trials);
  CHECK(a.counterexample == b.counterexample);
}

// Mini version of the core-reduction property: a hit on the extracted core at
// column t forces a hit of the original (X, omega) at omega(X) + t (wakeup)
// or s(X) + t (block).  The full 10^4-triple sweep lives in the acceptance
// suite; this keeps a fast regression tripwire in the unit run.
TEST_CASE("core reduction transfers hits to the original instance") {
  SeededRng rng(1234);

  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng.next_below(7));  // 2..8
    const double c = 1.0 + static_cast<double>(rng.next_below(3));
    const SynchronizerFamily fam = gen_urs_candidate(n, c, rng.next_u64());
    const std::uint64_t gn = urs_delay(static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(n), c);
    std::vector<NodeId> xs;
    for (NodeId v = 1; v <= n; ++v)
      if (rng.bernoulli(0.5)) xs.push_back(v);
    if (xs.empty()) xs.push_back(1 + static_cast<NodeId>(rng.next_below(
                        static_cast<std::uint64_t>(n))));
    std::vector<std::uint64_t> times;
    for (int v = 0; v < n; ++v) times.push_back(rng.next_below(2 * gn + 1));
    const ActivationSchedule omega(std::move(times));

    const Core core = extract_wakeup_core(xs, omega, [&](std::size_t q) {
      return urs_delay(q, static_cast<std::uint64_t>(n), c);
    });
    REQUIRE(core.size() >= 1);
    const std::uint64_t base = omega.min_over(xs);
    std::vector<std::uint64_t> raw;
    for (NodeId v : xs) raw.push_back(omega.at(v));
    const std::uint64_t window =
        urs_delay(core.size(), static_cast<std::uint64_t>(n), c);
    for (std::uint64_t t = 0; t < window; ++t) {
      if (!column_hit(fam.schedules, core.members, static_cast<std::int64_t>(t))) continue;
      CHECK(column_hit(fam.schedules, xs, raw, static_cast<std::int64_t>(base + t)));
    }
  }

  for (int trial = 0; trial < 200; ++trial) {
    const int n = 4 + static_cast<int>(rng.next_below(5));  // 4..8
    const int ecc = 2 + static_cast<int>(rng.next_below(3));
    const int delta_min = n / ecc + 1;
    if (delta_min > n) continue;
    const int delta =
        delta_min + static_cast<int>(rng.next_below(
                        static_cast<std::uint64_t>(n - delta_min) + 1));
    const std::uint64_t r = block_increment(n, ecc);
    SynchronizerFamily fam = compose_block_synchronizer(
        gen_upper_block_candidate(n, ecc, delta, 2.0, rng.next_u64()),
        gen_selective_family(n, static_cast<int>(r), 2.0, rng.next_u64()));
    const std::uint64_t bb = fam.composite_block;

    std::vector<NodeId> xs;
    for (NodeId v = 1; v <= n; ++v)
      if (rng.bernoulli(0.5)) xs.push_back(v);
    if (xs.empty()) xs.push_back(1);
    std::vector<std::uint64_t> times;
    for (int v = 0; v < n; ++v) times.push_back(rng.next_below(3 * bb + 1));
    const ActivationSchedule omega(std::move(times));

    const Core core = extract_block_core(xs, omega, bb, r);
    REQUIRE(core.size() >= 1);
    const std::uint64_t base = round_up_to_multiple(omega.min_over(xs), bb);
    std::vector<std::uint64_t> snapped;
    for (NodeId v : xs) snapped.push_back(round_up_to_multiple(omega.at(v), bb));
    const std::vector<CoreMember> cols = core_column_members(core, bb);
    const std::uint64_t window =
        bb * ((core.size() + static_cast<std::size_t>(r) - 1) / r);
    for (std::uint64_t t = 0; t < window; ++t) {
      if (!column_hit(fam.schedules, cols, static_cast<std::int64_t>(t))) continue;
      CHECK(column_hit(fam.schedules, xs, snapped, static_cast<std::int64_t>(base + t)));
    }
  }
}
