#include "delayline/photonic_sim.hpp"

#include "delayline/analysis.hpp"
#include "delayline/errors.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <span>
#include <utility>

namespace delayline::sim {

namespace {

constexpr std::uint64_t kWordTimeLimit = std::uint64_t{1} << 62;
constexpr std::size_t kWordCountStages = 62;

template <typename Time, typename Count>
using Entries = std::vector<std::pair<Time, Count>>;

// One stage: every entry (t, c) spawns (t + skip, c) and (t + take, c); the
// two shifted copies are merged with equal moments coalesced.
template <typename Time, typename Count>
Entries<Time, Count> split_stage(const Entries<Time, Count>& in, const Time& skip,
                                 const Time& take) {
  const Time& lo = skip < take ? skip : take;
  const Time& hi = skip < take ? take : skip;
  Entries<Time, Count> out;
  out.reserve(in.size() * 2);
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < in.size() || j < in.size()) {
    if (j == in.size() || (i < in.size() && in[i].first + lo < in[j].first + hi)) {
      out.emplace_back(in[i].first + lo, in[i].second);
      ++i;
    } else if (i == in.size() || in[j].first + hi < in[i].first + lo) {
      out.emplace_back(in[j].first + hi, in[j].second);
      ++j;
    } else {
      out.emplace_back(in[i].first + lo, in[i].second + in[j].second);
      ++i;
      ++j;
    }
  }
  return out;
}

template <typename Time, typename Count>
ArrivalProfile run_stages(std::span<const Stage> stages, const PropagateOptions& options) {
  Entries<Time, Count> current{{Time(0), Count(1)}};
  for (const auto& stage : stages) {
    current = split_stage(current, static_cast<Time>(stage.skip_delay),
                          static_cast<Time>(stage.take_delay));
    if (current.size() > options.max_entries) {
      throw Error(ErrorCode::ResourceLimit,
                  "arrival profile exceeds " + std::to_string(options.max_entries) +
                      " distinct moments");
    }
  }
  std::vector<ProfileEntry> entries;
  entries.reserve(current.size());
  for (auto& [time, count] : current) entries.push_back({BigInt(time), BigInt(count)});
  return ArrivalProfile(std::move(entries), stages.size());
}

ArrivalProfile propagate_stages(std::span<const Stage> stages, const PropagateOptions& options) {
  BigInt span = 0;
  for (const auto& stage : stages) {
    if (stage.skip_delay < 1 || stage.take_delay < 1) {
      throw Error(ErrorCode::InvalidValue, "arc delays must be at least one quantum");
    }
    span += std::max(stage.skip_delay, stage.take_delay);
  }
  const bool word_times = span < kWordTimeLimit;
  const bool word_counts = stages.size() <= kWordCountStages;
  if (word_times && word_counts) return run_stages<std::uint64_t, std::uint64_t>(stages, options);
  if (word_times) return run_stages<std::uint64_t, BigInt>(stages, options);
  return run_stages<BigInt, BigInt>(stages, options);
}

std::int64_t as_steps(const BigInt& value) {
  if (value >= BigInt(kWordTimeLimit) || value <= -BigInt(kWordTimeLimit)) {
    throw Error(ErrorCode::ResourceLimit, "perturbed delays exceed 64-bit step arithmetic");
  }
  return value.convert_to<std::int64_t>();
}

std::vector<std::int64_t> subset_sums(std::span<const std::int64_t> diffs) {
  std::vector<std::int64_t> sums{0};
  sums.reserve(std::size_t{1} << diffs.size());
  for (const auto d : diffs) {
    const std::size_t existing = sums.size();
    for (std::size_t i = 0; i < existing; ++i) sums.push_back(sums[i] + d);
  }
  return sums;
}

// Whether some path's total lies in [lo, hi], where a path's total is
// base + sum of diffs over the take arcs it uses.
bool any_path_in_window(std::int64_t base, std::span<const std::int64_t> diffs, std::int64_t lo,
                        std::int64_t hi) {
  const std::size_t split = diffs.size() / 2;
  const auto left = subset_sums(diffs.first(split));
  auto right = subset_sums(diffs.subspan(split));
  std::sort(right.begin(), right.end());
  for (const auto l : left) {
    const std::int64_t want_lo = lo - base - l;
    const std::int64_t want_hi = hi - base - l;
    auto it = std::lower_bound(right.begin(), right.end(), want_lo);
    if (it != right.end() && *it <= want_hi) return true;
  }
  return false;
}

}  // namespace

BigInt ArrivalProfile::count_at(const BigInt& time) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), time,
                             [](const ProfileEntry& e, const BigInt& t) { return e.time < t; });
  if (it != entries_.end() && it->time == time) return it->count;
  return 0;
}

BigInt ArrivalProfile::total_count() const {
  BigInt total = 0;
  for (const auto& e : entries_) total += e.count;
  return total;
}

void ArrivalProfile::dump(std::ostream& out) const {
  for (const auto& e : entries_) out << e.time << ' ' << e.count << '\n';
}

ArrivalProfile propagate(const DeviceLayout& layout, const PropagateOptions& options) {
  return propagate_stages(layout.stages, options);
}

ArrivalProfile propagate_epsilon(const EpsilonLayout& layout, const PropagateOptions& options) {
  return propagate_stages(layout.stages, options);
}

ArrivalProfile propagate_prefix(const DeviceLayout& layout, std::size_t stages,
                                const PropagateOptions& options) {
  stages = std::min(stages, layout.stages.size());
  return propagate_stages(std::span<const Stage>(layout.stages).first(stages), options);
}

DetectionReport detect(const ArrivalProfile& profile, const Instance& instance,
                       const PhysicalParams& params) {
  const std::size_t n = instance.size();
  if (profile.stage_index() != n) {
    throw Error(ErrorCode::StageMismatch, "profile covers " +
                                              std::to_string(profile.stage_index()) +
                                              " stages but the instance has " + std::to_string(n));
  }
  DetectionReport report;
  report.checked_moment = instance.target + BigInt(n) * params.offset_k_quanta;
  report.ray_count_at_moment = profile.count_at(report.checked_moment);
  report.verdict = report.ray_count_at_moment >= 1 ? Verdict::Yes : Verdict::No;
  // Every path crosses exactly n splitters, so all rays carry equal power.
  report.per_ray_power_w = analysis::per_ray_power(n, params);
  report.amplified_power_w =
      params.detector_gain * report.per_ray_power_w * report.ray_count_at_moment;
  report.detectable =
      report.verdict == Verdict::Yes && report.amplified_power_w >= params.detection_threshold_w;
  return report;
}

EpsilonDemo epsilon_false_positive_demo(const Instance& instance, const BigInt& epsilon,
                                        const PhysicalParams& params,
                                        const oracles::OracleLimits& limits) {
  EpsilonDemo demo;
  const auto eps_profile = propagate_epsilon(compile_epsilon(instance, epsilon));
  demo.epsilon_verdict = eps_profile.contains(instance.target) ? Verdict::Yes : Verdict::No;

  const auto profile = propagate(compile(instance, params));
  demo.offset_verdict = detect(profile, instance, params).verdict;

  demo.oracle_verdict =
      oracles::solve(instance, oracles::OracleKind::Auto, false, limits).verdict;
  return demo;
}

PerturbationReport perturb_and_classify(const DeviceLayout& layout, const Instance& instance,
                                        const PhysicalParams& params,
                                        const PerturbationConfig& config,
                                        const oracles::OracleLimits& limits) {
  params.validate();
  if (config.max_error_m < 0) throw Error(ErrorCode::InvalidValue, "max_error_m is negative");
  if (config.trials < 1) throw Error(ErrorCode::InvalidValue, "trials must be at least 1");
  if (config.window_radius_quanta < 0) {
    throw Error(ErrorCode::InvalidValue, "window radius is negative");
  }
  const std::size_t n = layout.stages.size();
  if (n != instance.size()) {
    throw Error(ErrorCode::StageMismatch, "layout and instance sizes differ");
  }
  if (n > config.max_n) {
    throw Error(ErrorCode::ResourceLimit,
                "perturbation search is capped at n = " + std::to_string(config.max_n));
  }

  // All lengths are measured in steps of quantum_length / kErrorStepsPerQuantum.
  const Rational step_m = params.quantum_length_m() / kErrorStepsPerQuantum;
  const std::int64_t max_error_steps = as_steps(delayline::floor(config.max_error_m / step_m));
  const std::int64_t offset_steps =
      as_steps(delayline::floor(config.systematic_offset_m / step_m + Rational(1, 2)));
  const std::int64_t radius =
      as_steps(delayline::floor(config.window_radius_quanta * kErrorStepsPerQuantum));
  const BigInt center_big =
      (instance.target + BigInt(n) * layout.offset_k) * kErrorStepsPerQuantum;

  BigInt span = center_big;
  std::vector<std::int64_t> skip_nominal;
  std::vector<std::int64_t> take_nominal;
  for (const auto& stage : layout.stages) {
    skip_nominal.push_back(as_steps(stage.skip_delay * kErrorStepsPerQuantum));
    take_nominal.push_back(as_steps(stage.take_delay * kErrorStepsPerQuantum));
    span += std::max(stage.skip_delay, stage.take_delay) * kErrorStepsPerQuantum;
  }
  span += BigInt(n) * (BigInt(max_error_steps) + std::abs(offset_steps)) + radius;
  const std::int64_t center = as_steps(center_big);
  as_steps(span);

  const Verdict truth = oracles::solve(instance, oracles::OracleKind::Auto, false, limits).verdict;

  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<std::int64_t> error(-max_error_steps, max_error_steps);

  PerturbationReport report;
  report.trials = config.trials;
  std::int64_t worst_steps = 0;
  std::vector<std::int64_t> diffs(n);
  for (std::uint64_t trial = 0; trial < config.trials; ++trial) {
    std::int64_t base = 0;
    std::int64_t late = 0;   // sum over stages of the larger arc error
    std::int64_t early = 0;  // sum over stages of the smaller arc error
    for (std::size_t i = 0; i < n; ++i) {
      const std::int64_t skip_err = offset_steps + error(rng);
      const std::int64_t take_err = offset_steps + error(rng);
      const std::int64_t skip = skip_nominal[i] + skip_err;
      const std::int64_t take = take_nominal[i] + take_err;
      if (skip <= 0 || take <= 0) {
        throw Error(ErrorCode::InvalidPerturbation,
                    "perturbation makes a cable of stage " + std::to_string(i) + " non-positive");
      }
      base += skip;
      diffs[i] = take - skip;
      late += std::max(skip_err, take_err);
      early += std::min(skip_err, take_err);
    }
    worst_steps = std::max({worst_steps, late, -early});

    const bool lit = any_path_in_window(base, diffs, center - radius, center + radius);
    if (lit && truth == Verdict::No) ++report.false_positives;
    if (!lit && truth == Verdict::Yes) ++report.false_negatives;
  }
  report.misclassified = report.false_positives + report.false_negatives;
  report.max_arrival_error_s = params.delay_quantum_s * worst_steps / kErrorStepsPerQuantum;
  return report;
}

}  // namespace delayline::sim
