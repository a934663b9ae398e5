#include "delayline/errors.hpp"
#include "delayline/oracles.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <random>

using namespace delayline;
using namespace delayline::oracles;
using reference::make_instance;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("solve_dp examples") {
  SUBCASE("{1,2,3} B=5 -> YES, witness {2,3}") {
    const auto inst = make_instance({1, 2, 3}, 5);
    const auto r = solve_dp(inst, true);
    CHECK(r.verdict == Verdict::Yes);
    REQUIRE(r.witness);
    CHECK(*r.witness == std::vector<std::size_t>{1, 2});
    CHECK(r.solver_name == "dp");
  }
  SUBCASE("{2,4} B=3 -> NO") {
    const auto r = solve_dp(make_instance({2, 4}, 3), true);
    CHECK(r.verdict == Verdict::No);
    CHECK_FALSE(r.witness);
  }
  SUBCASE("{} B=0 -> YES with the empty witness") {
    const auto r = solve_dp(make_instance({}, 0), true);
    CHECK(r.verdict == Verdict::Yes);
    REQUIRE(r.witness);
    CHECK(r.witness->empty());
  }
  SUBCASE("no witness unless asked") {
    CHECK_FALSE(solve_dp(make_instance({1, 2, 3}, 5), false).witness);
  }
  SUBCASE("targets crossing 64-bit word boundaries") {
    for (std::int64_t target : {63, 64, 65, 127, 128, 129, 200}) {
      const auto inst = make_instance({63, 1, 64, 65, 7}, target);
      const auto r = solve_dp(inst, true);
      CHECK((r.verdict == Verdict::Yes) ==
            reference::has_subset_sum(reference::values_of(inst), target));
      if (r.witness) CHECK(witness_is_valid(inst, *r.witness));
    }
  }
}

TEST_CASE("solve_dp respects its memory budget") {
  OracleLimits limits;
  limits.dp_memory_budget_bytes = 1024;
  const auto inst = make_instance({1, 2}, 100000);
  CHECK(code_of([&] { solve_dp(inst, false, limits); }) == ErrorCode::ResourceLimit);
  CHECK(dp_memory_bytes(63, false) == 8);
  CHECK(dp_memory_bytes(64, false) == 16);
  CHECK(dp_memory_bytes(63, true) == 8 + 64 * 4);
}

TEST_CASE("solve_bruteforce examples and cap") {
  CHECK(solve_bruteforce(make_instance({1, 2, 3}, 5)).verdict == Verdict::Yes);
  CHECK(solve_bruteforce(make_instance({2, 4}, 3)).verdict == Verdict::No);
  CHECK(solve_bruteforce(make_instance({}, 0)).verdict == Verdict::Yes);

  std::vector<std::int64_t> big(26, 1);
  CHECK(code_of([&] { solve_bruteforce(make_instance(big, 3)); }) == ErrorCode::ResourceLimit);
  OracleLimits limits;
  limits.bruteforce_max_n = 3;
  CHECK(code_of([&] { solve_bruteforce(make_instance({1, 2, 3, 4}, 3), limits); }) ==
        ErrorCode::ResourceLimit);
}

TEST_CASE("subset_sum_multiset examples") {
  using SC = SumCount;
  CHECK(subset_sum_multiset(make_instance({1, 1}, 0)) ==
        std::vector<SC>{{0, 1}, {1, 2}, {2, 1}});
  CHECK(subset_sum_multiset(make_instance({}, 0)) == std::vector<SC>{{0, 1}});

  const auto sums = subset_sum_multiset(make_instance({1, 2, 4, 8}, 0));
  REQUIRE(sums.size() == 16);
  for (std::size_t i = 0; i < 16; ++i) {
    CHECK(sums[i].first == static_cast<long>(i));
    CHECK(sums[i].second == 1);
  }
}

TEST_CASE("solve_mitm examples and cap") {
  CHECK(solve_mitm(make_instance({1, 2, 3}, 5)).verdict == Verdict::Yes);
  CHECK(solve_mitm(make_instance({2, 4}, 3)).verdict == Verdict::No);

  const auto huge = make_instance({1'000'000'000, 1'000'000'000}, 2'000'000'000);
  CHECK(code_of([&] { solve_dp(huge, true); }) == ErrorCode::ResourceLimit);
  const auto r = solve_mitm(huge);
  CHECK(r.verdict == Verdict::Yes);
  REQUIRE(r.witness);
  CHECK(witness_is_valid(huge, *r.witness));
  CHECK(solve_bruteforce(huge).verdict == Verdict::Yes);

  std::vector<std::int64_t> many(51, 1);
  CHECK(code_of([&] { solve_mitm(make_instance(many, 3)); }) == ErrorCode::ResourceLimit);
}

TEST_CASE("values beyond 64 bits take the arbitrary-precision path") {
  Instance inst;
  const BigInt big = pow10(30);
  inst.values = {big, big + 1, 3};
  inst.target = 2 * big + 4;
  CHECK(solve_bruteforce(inst).verdict == Verdict::Yes);
  CHECK(solve_mitm(inst).verdict == Verdict::Yes);
  inst.target = 2 * big + 2;
  CHECK(solve_bruteforce(inst).verdict == Verdict::No);
  CHECK(solve_mitm(inst).verdict == Verdict::No);
  CHECK(choose_oracle(inst) == OracleKind::BruteForce);
  const auto sums = subset_sum_multiset(inst);
  CHECK(sums.size() == 8);
  CHECK(sums.back().first == 2 * big + 4);
}

TEST_CASE("three-way agreement, witness validity and multiset agreement") {
  std::mt19937_64 rng(2024);
  for (int round = 0; round < 300; ++round) {
    const auto ri = reference::random_instance(rng, 0, 14, 60);
    const auto inst = make_instance(ri.values, ri.target);
    CAPTURE(round);
    const bool truth = reference::has_subset_sum(ri.values, ri.target);

    const auto dp = solve_dp(inst, true);
    const auto brute = solve_bruteforce(inst);
    const auto mitm = solve_mitm(inst);
    CHECK((dp.verdict == Verdict::Yes) == truth);
    CHECK(brute.verdict == dp.verdict);
    CHECK(mitm.verdict == dp.verdict);
    for (const auto* r : {&dp, &brute, &mitm}) {
      if (r->witness) CHECK(witness_is_valid(inst, *r->witness));
      CHECK(r->witness.has_value() == (r->verdict == Verdict::Yes));
    }

    const auto expected = reference::subset_sums(ri.values);
    const auto sums = subset_sum_multiset(inst);
    REQUIRE(sums.size() == expected.size());
    auto it = expected.begin();
    for (const auto& [sum, count] : sums) {
      CHECK(sum == it->first);
      CHECK(count == it->second);
      ++it;
    }
  }
}

TEST_CASE("adding an element never turns YES into NO") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::int64_t> extra(1, 100);
  for (int round = 0; round < 100; ++round) {
    auto ri = reference::random_instance(rng, 0, 10, 40);
    auto inst = make_instance(ri.values, ri.target);
    if (solve(inst, OracleKind::Auto).verdict != Verdict::Yes) continue;
    inst.values.emplace_back(extra(rng));
    CHECK(solve(inst, OracleKind::Auto).verdict == Verdict::Yes);
  }
}

TEST_CASE("automatic oracle choice") {
  // 2^3 = 8 <= 3 * 5 = 15
  CHECK(choose_oracle(make_instance({1, 2, 3}, 5)) == OracleKind::BruteForce);
  // 2^3 = 8 > 3 * 2 = 6
  CHECK(choose_oracle(make_instance({1, 2, 3}, 2)) == OracleKind::Dp);
  CHECK(choose_oracle(make_instance({}, 0)) == OracleKind::Dp);
  std::vector<std::int64_t> many(30, 1'000'000'000'000LL);
  CHECK(choose_oracle(make_instance(many, 3'000'000'000'000LL)) == OracleKind::Mitm);

  CHECK(parse_oracle_kind("brute") == OracleKind::BruteForce);
  CHECK(parse_oracle_kind("mitm") == OracleKind::Mitm);
  CHECK_THROWS_AS(parse_oracle_kind("lll"), Error);
}

TEST_CASE("witness_is_valid rejects bad witnesses") {
  const auto inst = make_instance({3, 3, 4}, 6);
  CHECK(witness_is_valid(inst, {0, 1}));
  CHECK_FALSE(witness_is_valid(inst, {0, 0}));
  CHECK_FALSE(witness_is_valid(inst, {0, 2}));
  CHECK_FALSE(witness_is_valid(inst, {7}));
}
