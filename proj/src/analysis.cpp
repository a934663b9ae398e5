#include "delayline/analysis.hpp"

#include "delayline/errors.hpp"

namespace delayline::analysis {

BigInt max_encodable(const Rational& max_cable_length_m, const PhysicalParams& params) {
  if (max_cable_length_m <= 0) {
    throw Error(ErrorCode::InvalidValue, "cable length must be positive");
  }
  params.validate();
  return delayline::floor(max_cable_length_m / params.quantum_length_m());
}

Rational per_ray_power(std::size_t n, const PhysicalParams& params) {
  const Rational ratio = params.splitter_transmission / 2;
  Rational power = params.source_power_w;
  for (std::size_t i = 0; i < n; ++i) power *= ratio;
  return power;
}

std::size_t max_detectable_n(const PhysicalParams& params) {
  params.validate();
  // transmission <= 1, so every stage at least halves the power and the
  // loop ends after about log2(gain * source / threshold) steps.
  const Rational ratio = params.splitter_transmission / 2;
  Rational amplified = params.detector_gain * params.source_power_w;
  if (amplified < params.detection_threshold_w) return 0;
  std::size_t n = 0;
  while (true) {
    amplified *= ratio;
    if (amplified < params.detection_threshold_w) return n;
    ++n;
  }
}

Rational required_source_power(std::size_t n, const PhysicalParams& params) {
  PhysicalParams unit = params;
  unit.source_power_w = 1;
  return params.detection_threshold_w / (params.detector_gain * per_ray_power(n, unit));
}

AnswerTime answer_time(const Instance& instance, const PhysicalParams& params) {
  const BigInt n = instance.size();
  AnswerTime out;
  out.moment_quanta = instance.target + n * params.offset_k_quanta;
  out.seconds = params.delay_quantum_s * out.moment_quanta;
  out.build_cost_quanta = instance.total() + 2 * n * params.offset_k_quanta;
  out.n_times_b = n * instance.target;
  return out;
}

PhysicalParams slow_light_rescale(const PhysicalParams& params, const Rational& factor) {
  if (factor <= 0 || factor > 1) {
    throw Error(ErrorCode::InvalidValue, "slow-light factor must lie in (0, 1]");
  }
  PhysicalParams out = params;
  out.velocity_factor *= factor;
  return out;
}

FeasibilityReport feasibility(const Instance& instance, const PhysicalParams& params,
                              const Rational& max_cable_length_m) {
  FeasibilityReport report;
  report.max_encodable_value = max_encodable(max_cable_length_m, params);
  report.max_cable_length_m = max_cable_length_m;
  report.quantum_length_m = params.quantum_length_m();
  report.answer_time_s = answer_time(instance, params).seconds;
  report.max_detectable_n = max_detectable_n(params);
  report.required_source_power_w = required_source_power(instance.size(), params);
  return report;
}

}  // namespace delayline::analysis
