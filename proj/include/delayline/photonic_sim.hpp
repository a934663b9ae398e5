#pragma once

// Ray propagation through a delay-line device.
//
// A ray entering node i is split in two: one copy takes the skip arc, the
// other the take arc. Rays meeting at the same node at the same moment are
// indistinguishable, so a node's state is the multiset of arrival moments,
// kept as sorted (time, count) pairs.

#include "delayline/core_model.hpp"
#include "delayline/oracles.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace delayline::sim {

struct ProfileEntry {
  BigInt time;   // quanta
  BigInt count;  // rays

  bool operator==(const ProfileEntry&) const = default;
};

class ArrivalProfile {
 public:
  ArrivalProfile() : entries_{{0, 1}} {}
  ArrivalProfile(std::vector<ProfileEntry> entries, std::size_t stage_index)
      : entries_(std::move(entries)), stage_index_(stage_index) {}

  const std::vector<ProfileEntry>& entries() const noexcept { return entries_; }
  std::size_t stage_index() const noexcept { return stage_index_; }
  std::size_t size() const noexcept { return entries_.size(); }

  // Rays arriving at exactly `time`; 0 if none.
  BigInt count_at(const BigInt& time) const;
  bool contains(const BigInt& time) const { return count_at(time) != 0; }
  BigInt total_count() const;

  // One "<time> <count>" line per entry, ascending.
  void dump(std::ostream& out) const;

 private:
  std::vector<ProfileEntry> entries_;
  std::size_t stage_index_ = 0;
};

struct PropagateOptions {
  // Distinct arrival moments allowed at any node before giving up.
  std::size_t max_entries = std::size_t{1} << 26;
};

ArrivalProfile propagate(const DeviceLayout& layout, const PropagateOptions& options = {});

ArrivalProfile propagate_epsilon(const EpsilonLayout& layout, const PropagateOptions& options = {});

// Profile after the first `stages` stages only (the node `stages + 1`).
ArrivalProfile propagate_prefix(const DeviceLayout& layout, std::size_t stages,
                                const PropagateOptions& options = {});

struct DetectionReport {
  Verdict verdict = Verdict::No;
  BigInt checked_moment;
  BigInt ray_count_at_moment;
  Rational per_ray_power_w;
  Rational amplified_power_w;
  bool detectable = false;
};

DetectionReport detect(const ArrivalProfile& profile, const Instance& instance,
                       const PhysicalParams& params);

struct EpsilonDemo {
  Verdict epsilon_verdict = Verdict::No;
  Verdict offset_verdict = Verdict::No;
  Verdict oracle_verdict = Verdict::No;

  // The epsilon device lit up although no subset sums to B.
  bool spurious() const noexcept {
    return epsilon_verdict == Verdict::Yes && oracle_verdict == Verdict::No;
  }
  bool offset_correct() const noexcept { return offset_verdict == oracle_verdict; }
};

EpsilonDemo epsilon_false_positive_demo(const Instance& instance, const BigInt& epsilon,
                                        const PhysicalParams& params,
                                        const oracles::OracleLimits& limits = {});

struct PerturbationConfig {
  Rational max_error_m = 0;
  std::uint64_t trials = 1;
  std::uint64_t seed = 0;
  // Bias added to every cable on top of the random error, modelling cables
  // cut to p*quantum + q.
  Rational systematic_offset_m = 0;
  // Half-width of the acceptance window around (B + n*k) quanta, as a
  // fraction of one quantum. The window is closed.
  Rational window_radius_quanta = Rational(1, 2);
  std::size_t max_n = 50;
};

struct PerturbationReport {
  std::uint64_t trials = 0;
  std::uint64_t misclassified = 0;
  std::uint64_t false_positives = 0;
  std::uint64_t false_negatives = 0;
  Rational max_arrival_error_s = 0;
};

// Errors are drawn as integer multiples of this fraction of a quantum length.
inline constexpr std::int64_t kErrorStepsPerQuantum = 1'000'000;

PerturbationReport perturb_and_classify(const DeviceLayout& layout, const Instance& instance,
                                        const PhysicalParams& params,
                                        const PerturbationConfig& config,
                                        const oracles::OracleLimits& limits = {});

}  // namespace delayline::sim
