#pragma once

#include "delayline/numeric.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace delayline {

enum class Verdict { No, Yes };

std::string_view to_string(Verdict verdict) noexcept;

/// Numbers exactly as the user wrote them, before normalization.
struct RawInstance {
  std::vector<std::string> values;
  std::string target;
};

/// A subset-sum instance in integer delay quanta.
///
/// `scale` is the exact power of ten that maps raw values onto the integers
/// stored here: raw * scale == value for every element and for the target.
struct Instance {
  std::vector<BigInt> values;
  BigInt target = 0;
  Rational scale = 1;

  std::size_t size() const noexcept { return values.size(); }
  BigInt total() const;
};

struct NormalizeOptions {
  // Ceiling on the decimal digits of any scaled value.
  std::size_t max_digits = 4096;
};

// Scales values and target jointly by the power of ten that puts the least
// significant nonzero digit of the finest number in the units place.
Instance normalize(const RawInstance& raw, const NormalizeOptions& options = {});

// Integer rendering of a normalized instance (scale dropped).
RawInstance to_raw(const Instance& instance);

/// Device constants. Times are in seconds, lengths in meters, powers in watts.
struct PhysicalParams {
  Rational delay_quantum_s = Rational(1, pow10(12));
  Rational light_speed_m_s = Rational(300'000'000);
  Rational velocity_factor = 1;
  BigInt offset_k_quanta = 1;
  Rational source_power_w = 1;
  Rational splitter_transmission = 1;
  Rational detector_gain = Rational(100'000'000);
  Rational detection_threshold_w = 1;

  // Fiber length that delays a ray by one quantum.
  Rational quantum_length_m() const {
    return light_speed_m_s * velocity_factor * delay_quantum_s;
  }

  // Throws Error{InvalidValue} naming the first field out of range.
  void validate() const;
};

/// One beam-splitter stage: a ray either skips a_i or takes it.
struct Stage {
  BigInt skip_delay;
  BigInt take_delay;
  BigInt value;

  bool operator==(const Stage&) const = default;
};

/// Offset device: skip arcs of k quanta, take arcs of a_i + k quanta.
struct DeviceLayout {
  std::vector<Stage> stages;
  BigInt offset_k = 1;

  std::size_t node_count() const noexcept { return stages.size() + 1; }
};

/// Flawed variant with tiny epsilon skip arcs and bare a_i take arcs.
struct EpsilonLayout {
  std::vector<Stage> stages;
  BigInt epsilon = 1;

  std::size_t node_count() const noexcept { return stages.size() + 1; }
};

DeviceLayout compile(const Instance& instance, const PhysicalParams& params);

EpsilonLayout compile_epsilon(const Instance& instance, const BigInt& epsilon);

// Physical cable lengths in meters, stage by stage, skip arc before take arc.
std::vector<Rational> cable_lengths(const DeviceLayout& layout, const PhysicalParams& params);

}  // namespace delayline
