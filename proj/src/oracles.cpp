#include "delayline/oracles.hpp"

#include "delayline/errors.hpp"

#include <algorithm>
#include <bit>
#include <limits>

namespace delayline::oracles {

namespace {

// Sums stay below this in the machine-word kernels, so no addition can wrap.
constexpr std::uint64_t kWordSumLimit = std::uint64_t{1} << 62;

bool fits_words(const Instance& instance) {
  return instance.total() < kWordSumLimit && instance.target < kWordSumLimit;
}

std::vector<std::uint64_t> as_words(const std::vector<BigInt>& values) {
  std::vector<std::uint64_t> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.convert_to<std::uint64_t>());
  return out;
}

std::vector<std::size_t> mask_to_indices(std::uint64_t mask, std::size_t offset = 0) {
  std::vector<std::size_t> indices;
  while (mask != 0) {
    indices.push_back(offset + static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return indices;
}

void require_cap(std::size_t n, std::size_t cap, const char* solver) {
  if (n > cap) {
    throw Error(ErrorCode::ResourceLimit, std::string(solver) + " oracle is capped at n = " +
                                              std::to_string(cap) + ", got " + std::to_string(n));
  }
}

// Gray-code walk over all 2^n subsets; one addition or subtraction per step.
template <typename Sum>
std::optional<std::uint64_t> bruteforce_search(const std::vector<Sum>& values, const Sum& target) {
  const std::size_t n = values.size();
  Sum sum = 0;
  std::uint64_t mask = 0;
  if (sum == target) return mask;
  const std::uint64_t steps = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < steps; ++i) {
    const int bit = std::countr_zero(i);
    const std::uint64_t flag = std::uint64_t{1} << bit;
    if (mask & flag) {
      sum -= values[bit];
    } else {
      sum += values[bit];
    }
    mask ^= flag;
    if (sum == target) return mask;
  }
  return std::nullopt;
}

template <typename Sum>
std::vector<std::pair<Sum, std::uint64_t>> half_sums(const std::vector<Sum>& values,
                                                     std::size_t begin, std::size_t end) {
  std::vector<std::pair<Sum, std::uint64_t>> sums{{Sum(0), 0}};
  sums.reserve(std::size_t{1} << (end - begin));
  for (std::size_t j = begin; j < end; ++j) {
    const std::size_t existing = sums.size();
    const std::uint64_t flag = std::uint64_t{1} << (j - begin);
    for (std::size_t i = 0; i < existing; ++i) {
      sums.emplace_back(sums[i].first + values[j], sums[i].second | flag);
    }
  }
  return sums;
}

template <typename Sum>
std::optional<std::vector<std::size_t>> mitm_search(const std::vector<Sum>& values,
                                                    const Sum& target) {
  const std::size_t n = values.size();
  const std::size_t split = n / 2;
  const auto left = half_sums(values, 0, split);
  auto right = half_sums(values, split, n);
  std::sort(right.begin(), right.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });

  for (const auto& [sum, mask] : left) {
    if (sum > target) continue;
    const Sum needed = target - sum;
    auto it = std::lower_bound(right.begin(), right.end(), needed,
                               [](const auto& entry, const Sum& key) { return entry.first < key; });
    if (it != right.end() && it->first == needed) {
      auto witness = mask_to_indices(mask);
      auto rest = mask_to_indices(it->second, split);
      witness.insert(witness.end(), rest.begin(), rest.end());
      return witness;
    }
  }
  return std::nullopt;
}

template <typename Sum>
std::vector<SumCount> multiset_of(const std::vector<Sum>& values) {
  std::vector<Sum> sums{Sum(0)};
  sums.reserve(std::size_t{1} << values.size());
  for (const auto& a : values) {
    const std::size_t existing = sums.size();
    for (std::size_t i = 0; i < existing; ++i) sums.push_back(sums[i] + a);
  }
  std::sort(sums.begin(), sums.end());

  std::vector<SumCount> out;
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    out.emplace_back(BigInt(sums[i]), BigInt(j - i));
    i = j;
  }
  return out;
}

}  // namespace

OracleKind parse_oracle_kind(std::string_view name) {
  if (name == "auto") return OracleKind::Auto;
  if (name == "dp") return OracleKind::Dp;
  if (name == "brute") return OracleKind::BruteForce;
  if (name == "mitm") return OracleKind::Mitm;
  throw Error(ErrorCode::ParseError, "unknown oracle '" + std::string(name) + "'");
}

BigInt dp_memory_bytes(const BigInt& target, bool want_witness) {
  const BigInt cells = target + 1;
  BigInt bytes = ((cells + 63) / 64) * 8;
  if (want_witness) bytes += cells * 4;
  return bytes;
}

OracleResult solve_dp(const Instance& instance, bool want_witness, const OracleLimits& limits) {
  if (instance.target < 0) throw Error(ErrorCode::InvalidValue, "negative target");
  if (dp_memory_bytes(instance.target, want_witness) > limits.dp_memory_budget_bytes) {
    throw Error(ErrorCode::ResourceLimit,
                "DP table for target " + instance.target.str() + " exceeds the memory budget");
  }
  OracleResult result;
  result.solver_name = "dp";

  const auto target = instance.target.convert_to<std::size_t>();
  const std::size_t words = target / 64 + 1;
  std::vector<std::uint64_t> reach(words, 0);
  reach[0] = 1;
  // Mask off bits above the target in the last word.
  const std::uint64_t tail_mask =
      (target % 64 == 63) ? ~std::uint64_t{0} : ((std::uint64_t{1} << (target % 64 + 1)) - 1);

  constexpr auto kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> setter;
  if (want_witness) setter.assign(target + 1, kUnset);

  for (std::size_t i = 0; i < instance.size(); ++i) {
    if (instance.values[i] > instance.target) continue;
    const auto a = instance.values[i].convert_to<std::size_t>();
    const std::size_t word_shift = a / 64;
    const unsigned bit_shift = a % 64;
    // Descending so every read sees the table as it was before item i.
    for (std::size_t w = words; w-- > word_shift;) {
      const std::size_t src = w - word_shift;
      std::uint64_t shifted = reach[src] << bit_shift;
      if (bit_shift != 0 && src > 0) shifted |= reach[src - 1] >> (64 - bit_shift);
      if (w == words - 1) shifted &= tail_mask;
      std::uint64_t fresh = shifted & ~reach[w];
      if (fresh == 0) continue;
      reach[w] |= fresh;
      if (want_witness) {
        while (fresh != 0) {
          setter[w * 64 + static_cast<std::size_t>(std::countr_zero(fresh))] =
              static_cast<std::uint32_t>(i);
          fresh &= fresh - 1;
        }
      }
    }
  }

  const bool yes = (reach[target / 64] >> (target % 64)) & 1U;
  result.verdict = yes ? Verdict::Yes : Verdict::No;
  if (yes && want_witness) {
    std::vector<std::size_t> witness;
    std::size_t s = target;
    while (s != 0) {
      const std::uint32_t i = setter[s];
      witness.push_back(i);
      s -= instance.values[i].convert_to<std::size_t>();
    }
    std::reverse(witness.begin(), witness.end());
    result.witness = std::move(witness);
  }
  return result;
}

OracleResult solve_bruteforce(const Instance& instance, const OracleLimits& limits) {
  require_cap(instance.size(), limits.bruteforce_max_n, "brute-force");
  OracleResult result;
  result.solver_name = "brute";
  std::optional<std::uint64_t> mask;
  if (fits_words(instance)) {
    mask = bruteforce_search(as_words(instance.values),
                             instance.target.convert_to<std::uint64_t>());
  } else {
    mask = bruteforce_search(instance.values, instance.target);
  }
  if (mask) {
    result.verdict = Verdict::Yes;
    result.witness = mask_to_indices(*mask);
  }
  return result;
}

OracleResult solve_mitm(const Instance& instance, const OracleLimits& limits) {
  require_cap(instance.size(), limits.mitm_max_n, "meet-in-the-middle");
  OracleResult result;
  result.solver_name = "mitm";
  std::optional<std::vector<std::size_t>> witness;
  if (fits_words(instance)) {
    witness = mitm_search(as_words(instance.values), instance.target.convert_to<std::uint64_t>());
  } else {
    witness = mitm_search(instance.values, instance.target);
  }
  if (witness) {
    result.verdict = Verdict::Yes;
    result.witness = std::move(witness);
  }
  return result;
}

OracleKind choose_oracle(const Instance& instance, const OracleLimits& limits) {
  const std::size_t n = instance.size();
  const BigInt n_times_b = BigInt(n) * instance.target;
  if (n <= limits.bruteforce_max_n && (BigInt(1) << n) <= n_times_b) {
    return OracleKind::BruteForce;
  }
  if (dp_memory_bytes(instance.target, true) <= limits.dp_memory_budget_bytes) {
    return OracleKind::Dp;
  }
  return OracleKind::Mitm;
}

OracleResult solve(const Instance& instance, OracleKind kind, bool want_witness,
                   const OracleLimits& limits) {
  if (kind == OracleKind::Auto) kind = choose_oracle(instance, limits);
  OracleResult result;
  switch (kind) {
    case OracleKind::Dp:
      return solve_dp(instance, want_witness, limits);
    case OracleKind::BruteForce:
      result = solve_bruteforce(instance, limits);
      break;
    case OracleKind::Mitm:
    case OracleKind::Auto:
      result = solve_mitm(instance, limits);
      break;
  }
  if (!want_witness) result.witness.reset();
  return result;
}

std::vector<SumCount> subset_sum_multiset(const Instance& instance, const OracleLimits& limits) {
  require_cap(instance.size(), limits.bruteforce_max_n, "brute-force");
  if (fits_words(instance)) return multiset_of(as_words(instance.values));
  return multiset_of(instance.values);
}

bool witness_is_valid(const Instance& instance, const std::vector<std::size_t>& witness) {
  std::vector<bool> used(instance.size(), false);
  BigInt sum = 0;
  for (const std::size_t i : witness) {
    if (i >= instance.size() || used[i]) return false;
    used[i] = true;
    sum += instance.values[i];
  }
  return sum == instance.target;
}

}  // namespace delayline::oracles
