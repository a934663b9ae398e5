#pragma once

// Feasibility arithmetic for a physical build: how large the numbers can be
// for a given fiber, how much light reaches the detector, and how long a
// query takes. Every comparison is done in exact rationals.

#include "delayline/core_model.hpp"

#include <cstddef>

namespace delayline::analysis {

struct FeasibilityReport {
  BigInt max_encodable_value;
  Rational max_cable_length_m;
  Rational quantum_length_m;
  Rational answer_time_s;
  std::size_t max_detectable_n = 0;
  Rational required_source_power_w;
};

struct AnswerTime {
  Rational seconds;
  BigInt moment_quanta;      // B + n*k
  BigInt build_cost_quanta;  // total cable: sum(a_i) + 2*n*k
  BigInt n_times_b;
};

BigInt max_encodable(const Rational& max_cable_length_m, const PhysicalParams& params);

// Power carried by one ray after crossing n splitters.
Rational per_ray_power(std::size_t n, const PhysicalParams& params);

// Largest n for which a single amplified ray still meets the threshold.
std::size_t max_detectable_n(const PhysicalParams& params);

// Source power needed so a single ray through n splitters is detectable.
Rational required_source_power(std::size_t n, const PhysicalParams& params);

AnswerTime answer_time(const Instance& instance, const PhysicalParams& params);

PhysicalParams slow_light_rescale(const PhysicalParams& params, const Rational& factor);

FeasibilityReport feasibility(const Instance& instance, const PhysicalParams& params,
                              const Rational& max_cable_length_m);

}  // namespace delayline::analysis
