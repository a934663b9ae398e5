#pragma once

// Classical subset-sum solvers. These define ground truth for everything the
// optical simulator reports.

#include "delayline/core_model.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace delayline::oracles {

struct OracleResult {
  Verdict verdict = Verdict::No;
  // Indices into Instance::values; only set for YES answers when asked for.
  std::optional<std::vector<std::size_t>> witness;
  std::string solver_name;
};

struct OracleLimits {
  std::size_t bruteforce_max_n = 25;
  std::size_t mitm_max_n = 50;
  // Bytes the DP table may occupy (reachability bits plus, with witnesses,
  // one 32-bit setter index per sum).
  std::uint64_t dp_memory_budget_bytes = std::uint64_t{1} << 28;
};

enum class OracleKind { Auto, Dp, BruteForce, Mitm };

OracleKind parse_oracle_kind(std::string_view name);

// Bytes solve_dp would allocate for this target.
BigInt dp_memory_bytes(const BigInt& target, bool want_witness);

OracleResult solve_dp(const Instance& instance, bool want_witness, const OracleLimits& limits = {});

OracleResult solve_bruteforce(const Instance& instance, const OracleLimits& limits = {});

OracleResult solve_mitm(const Instance& instance, const OracleLimits& limits = {});

// Brute force when n is within its cap and 2^n <= n*B, DP when its table fits
// the budget, meet-in-the-middle otherwise.
OracleKind choose_oracle(const Instance& instance, const OracleLimits& limits = {});

OracleResult solve(const Instance& instance, OracleKind kind, bool want_witness = true,
                   const OracleLimits& limits = {});

using SumCount = std::pair<BigInt, BigInt>;

// Every subset sum with its multiplicity, ascending by sum. Same cap as
// solve_bruteforce.
std::vector<SumCount> subset_sum_multiset(const Instance& instance,
                                          const OracleLimits& limits = {});

bool witness_is_valid(const Instance& instance, const std::vector<std::size_t>& witness);

}  // namespace delayline::oracles
