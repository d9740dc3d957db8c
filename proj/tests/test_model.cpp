#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "radiosync/model.hpp"

using namespace radiosync;

TEST_CASE("safe_log2 clamps below at 1") {
  CHECK(safe_log2(1.5) == 1.0);
  CHECK(safe_log2(2.0) == 1.0);
  CHECK(safe_log2(8.0) == 3.0);
  CHECK(safe_log2(0.5) == 1.0);
  CHECK(safe_log2(1.0) == 1.0);
  CHECK_THROWS_AS(safe_log2(0.0), std::domain_error);
  CHECK_THROWS_AS(safe_log2(-2.0), std::domain_error);
}

TEST_CASE("round_up_to_multiple is the block-arrival map") {
  CHECK(round_up_to_multiple(5, 4) == 8);
  CHECK(round_up_to_multiple(8, 4) == 8);
  CHECK(round_up_to_multiple(0, 7) == 0);
  CHECK(round_up_to_multiple(1, 1) == 1);
  CHECK(round_up_to_multiple(9, 4) == 12);
  CHECK_THROWS_AS(round_up_to_multiple(3, 0), std::domain_error);
}

TEST_CASE("urs_delay matches hand-computed values and is monotone") {
  CHECK(urs_delay(1, 16, 2.0) == 8);
  CHECK(urs_delay(4, 16, 1.0) == 32);
  std::uint64_t prev = 0;
  for (std::uint64_t q = 1; q <= 16; ++q) {
    const std::uint64_t g = urs_delay(q, 16, 2.0);
    CHECK(g >= prev);
    prev = g;
  }
  CHECK_THROWS_AS(urs_delay(0, 4, 1.0), std::domain_error);
  CHECK_THROWS_AS(urs_delay(5, 4, 1.0), std::domain_error);
}

TEST_CASE("Schedule reads as zero outside its bits") {
  Schedule s(3, {1, 0, 1});
  CHECK(s.node() == 3);
  CHECK(s.length() == 3);
  CHECK(s.bit(0));
  CHECK_FALSE(s.bit(1));
  CHECK(s.bit(2));
  CHECK_FALSE(s.bit(-1));
  CHECK_FALSE(s.bit(3));
  CHECK_FALSE(s.bit(1'000'000));
  s.set(1, true);
  CHECK(s.bit(1));
}

TEST_CASE("ActivationSchedule accessors and shifting") {
  ActivationSchedule omega({5, 2, 9});
  CHECK(omega.size() == 3);
  CHECK(omega.at(1) == 5);
  CHECK(omega.at(2) == 2);
  CHECK_THROWS_AS(omega.at(0), std::domain_error);
  CHECK_THROWS_AS(omega.at(4), std::domain_error);

  const std::vector<NodeId> xs{1, 3};
  CHECK(omega.min_over(xs) == 5);
  CHECK_THROWS_AS(omega.min_over(std::vector<NodeId>{}), std::domain_error);

  const ActivationSchedule moved = omega.shifted(10);
  CHECK(moved.at(1) == 15);
  CHECK(moved.at(2) == 12);
  CHECK(ActivationSchedule::uniform(3, 7).at(2) == 7);
}

TEST_CASE("column_hit counts exactly-one transmitter after offset shifts") {
  // rows: 1 -> 101, 2 -> 011, 3 -> 000
  const std::vector<Schedule> rows{
      Schedule(1, {1, 0, 1}), Schedule(2, {0, 1, 1}), Schedule(3, {0, 0, 0})};
  const std::vector<NodeId> xs{1, 2};
  const std::vector<std::uint64_t> zero{0, 0};
  CHECK(column_hit(rows, xs, zero, 0));        // only node 1
  CHECK(column_hit(rows, xs, zero, 1));        // only node 2
  CHECK_FALSE(column_hit(rows, xs, zero, 2));  // both -> collision
  CHECK_FALSE(column_hit(rows, xs, zero, 5));  // silence

  // shifting node 2 by one turns column 2 into a lone hit from its bit(1)
  const std::vector<std::uint64_t> shift{0, 1};
  CHECK_FALSE(column_hit(rows, xs, shift, 2));  // 1 has bit(2), 2 has bit(1): collision
  CHECK(column_hit(rows, xs, shift, 3));        // only node 2's bit(2)

  const std::vector<CoreMember> members{{1, 0}, {2, 1}};
  CHECK(column_hit(rows, members, 3));
  CHECK_FALSE(column_hit(rows, members, 2));

  CHECK_THROWS_AS(column_hit(rows, std::vector<NodeId>{}, std::vector<std::uint64_t>{}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(column_hit(rows, std::vector<NodeId>{1}, zero, 0), std::invalid_argument);
  CHECK_THROWS_AS(
      column_hit(rows, std::vector<NodeId>{9}, std::vector<std::uint64_t>{0}, 0),
      std::domain_error);
}

TEST_CASE("wakeup core extraction stops at the first satisfied cutoff") {
  // delay(q) = 4q; omega = (0, 1, 100): j' = 8 (2 arrived, 8 - 0 >= 8), so
  // node 3 never joins and offsets normalise to (0, 1).
  const std::vector<NodeId> xs{1, 2, 3};
  const ActivationSchedule omega({0, 1, 100});
  const Core core =
      extract_wakeup_core(xs, omega, [](std::size_t q) { return std::uint64_t{4} * q; });
  REQUIRE(core.kind == CoreKind::wakeup);
  REQUIRE(core.size() == 2);
  CHECK(core.members[0] == CoreMember{1, 0});
  CHECK(core.members[1] == CoreMember{2, 1});
}

TEST_CASE("wakeup core offsets are normalised to min zero") {
  const std::vector<NodeId> xs{2, 3};
  const ActivationSchedule omega({0, 7, 9});
  const Core core =
      extract_wakeup_core(xs, omega, [](std::size_t q) { return std::uint64_t{10} * q; });
  REQUIRE(core.size() == 2);
  CHECK(core.members[0] == CoreMember{2, 0});
  CHECK(core.members[1] == CoreMember{3, 2});
}

TEST_CASE("block core extraction snaps arrivals to block boundaries") {
  // B = 4, r = 1, omega = (1, 5): arrivals s = (4, 8), base 4; cutoff is the
  // first j with j - 4 >= 4 * arrived, i.e. j = 12 once both arrived.
  const std::vector<NodeId> xs{1, 2};
  const ActivationSchedule omega({1, 5});
  const Core core = extract_block_core(xs, omega, 4, 1);
  REQUIRE(core.kind == CoreKind::block);
  REQUIRE(core.size() == 2);
  CHECK(core.members[0] == CoreMember{1, 0});
  CHECK(core.members[1] == CoreMember{2, 1});

  const std::vector<CoreMember> cols = core_column_members(core, 4);
  CHECK(cols[0].offset == 0);
  CHECK(cols[1].offset == 4);
}

TEST_CASE("block core drops members that arrive after the cutoff") {
  // B = 4, r = 2: with omega = (0, 0, 30) the two early arrivals satisfy
  // 2*(j-0) >= 4*2 at j = 4 < s(3) = 32.
  const std::vector<NodeId> xs{1, 2, 3};
  const ActivationSchedule omega({0, 0, 30});
  const Core core = extract_block_core(xs, omega, 4, 2);
  REQUIRE(core.size() == 2);
  CHECK(core.members[0] == CoreMember{1, 0});
  CHECK(core.members[1] == CoreMember{2, 0});
}
