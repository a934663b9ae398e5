#include "delayline/analysis.hpp"
#include "delayline/errors.hpp"
#include "delayline/photonic_sim.hpp"
#include "support/reference.hpp"

#include <doctest.h>

#include <random>

using namespace delayline;
using namespace delayline::analysis;

TEST_CASE("max_encodable from cable length") {
  const PhysicalParams params;
  CHECK(max_encodable(3000, params) == BigInt(10'000'000));
  CHECK(max_encodable(300000, params) == BigInt(1'000'000'000));
  CHECK(max_encodable(Rational(3, 10000), params) == 1);
  CHECK(max_encodable(Rational(29, 100000), params) == 0);
  CHECK_THROWS_AS(max_encodable(0, params), Error);
  CHECK_THROWS_AS(max_encodable(-5, params), Error);
}

TEST_CASE("max_encodable is monotone") {
  const PhysicalParams params;
  BigInt previous = 0;
  for (long meters = 1; meters < 5000; meters += 37) {
    const BigInt current = max_encodable(Rational(meters, 10), params);
    CHECK(current >= previous);
    previous = current;
  }
  CHECK(max_encodable(3000, slow_light_rescale(params, Rational(1, 2))) >=
        max_encodable(3000, params));
}

TEST_CASE("per_ray_power") {
  PhysicalParams params;
  params.source_power_w = 3;
  CHECK(per_ray_power(0, params) == 3);
  params.source_power_w = 1;
  CHECK(per_ray_power(10, params) == Rational(1, 1024));
  CHECK(to_double(per_ray_power(10, params)) == 0.0009765625);
  params.splitter_transmission = Rational(1, 2);
  // (1/2 / 2)^4 by repeated multiplication
  Rational expected = 1;
  for (int i = 0; i < 4; ++i) expected = expected * Rational(1, 2) / 2;
  CHECK(per_ray_power(4, params) == expected);
  CHECK(per_ray_power(4, params) == Rational(1, 256));

  params.splitter_transmission = Rational(9, 10);
  for (std::size_t n = 0; n < 40; ++n) {
    CHECK(per_ray_power(n + 1, params) == per_ray_power(n, params) * Rational(9, 20));
  }
}

TEST_CASE("max_detectable_n by exact comparison") {
  PhysicalParams params;
  params.detection_threshold_w = params.source_power_w;

  params.detector_gain = 1;
  CHECK(max_detectable_n(params) == 0);

  params.detector_gain = 100'000'000;
  CHECK(max_detectable_n(params) == 26);
  // independent integer check: 2^26 <= 10^8 < 2^27
  CHECK((std::int64_t{1} << 26) <= 100'000'000);
  CHECK(100'000'000 < (std::int64_t{1} << 27));

  params.detector_gain = 4;
  CHECK(max_detectable_n(params) == 2);

  params.detector_gain = Rational(1, 2);
  CHECK(max_detectable_n(params) == 0);

  // A boundary exactly at a power of two is still detectable.
  params.detector_gain = BigInt(1) << 40;
  CHECK(max_detectable_n(params) == 40);
}

TEST_CASE("required_source_power inverts the chain") {
  PhysicalParams params;
  params.detection_threshold_w = Rational(1, 1000);
  params.detector_gain = 1000;
  const Rational needed = required_source_power(10, params);
  params.source_power_w = needed;
  CHECK(params.detector_gain * per_ray_power(10, params) == params.detection_threshold_w);
}

TEST_CASE("answer_time") {
  PhysicalParams params;
  SUBCASE("B = 10^7, n = 4") {
    Instance inst = reference::make_instance({1, 2, 3, 4}, 10'000'000);
    const auto t = answer_time(inst, params);
    CHECK(t.seconds == Rational(10'000'004) / pow10(12));
    CHECK(t.moment_quanta == 10'000'004);
    CHECK(t.n_times_b == 40'000'000);
    CHECK(t.build_cost_quanta == 10 + 8);
  }
  SUBCASE("empty") {
    CHECK(answer_time(reference::make_instance({}, 0), params).seconds == 0);
  }
  SUBCASE("B = 5, n = 3, k = 2") {
    params.offset_k_quanta = 2;
    const auto t = answer_time(reference::make_instance({1, 1, 1}, 5), params);
    CHECK(t.seconds == Rational(11) / pow10(12));
  }
  SUBCASE("linear in B + n*k with slope delta") {
    const auto a = answer_time(reference::make_instance({4, 4}, 10), params);
    const auto b = answer_time(reference::make_instance({4, 4}, 17), params);
    CHECK(b.seconds - a.seconds == 7 * params.delay_quantum_s);
  }
}

TEST_CASE("slow_light_rescale") {
  const PhysicalParams params;
  CHECK(slow_light_rescale(params, Rational(3, 5)).quantum_length_m() == Rational(18, 100000));
  CHECK(slow_light_rescale(params, 1).quantum_length_m() == params.quantum_length_m());

  const auto slow = slow_light_rescale(params, Rational(1, 10'000'000));
  CHECK(slow.quantum_length_m() == Rational(3) / pow10(11));
  CHECK(max_encodable(3000, slow) == pow10(14));

  CHECK_THROWS_AS(slow_light_rescale(params, 0), Error);
  CHECK_THROWS_AS(slow_light_rescale(params, Rational(11, 10)), Error);
}

TEST_CASE("slow light never changes a verdict") {
  std::mt19937_64 rng(8);
  const PhysicalParams params;
  for (int round = 0; round < 50; ++round) {
    const auto ri = reference::random_instance(rng, 0, 10, 40);
    const auto inst = reference::make_instance(ri.values, ri.target);
    const auto base = sim::detect(sim::propagate(compile(inst, params)), inst, params);
    const auto slow_params = slow_light_rescale(params, Rational(3, 5));
    const auto slow = sim::detect(sim::propagate(compile(inst, slow_params)), inst, slow_params);
    CHECK(slow.verdict == base.verdict);
    CHECK(slow.checked_moment == base.checked_moment);
  }
}

TEST_CASE("feasibility report") {
  const PhysicalParams params;
  const auto inst = reference::make_instance({1, 2, 3}, 5);
  const auto report = feasibility(inst, params, 3000);
  CHECK(report.max_encodable_value == 10'000'000);
  CHECK(report.max_encodable_value == delayline::floor(report.max_cable_length_m /
                                                       report.quantum_length_m));
  CHECK(report.answer_time_s == Rational(8) / pow10(12));
  CHECK(report.max_detectable_n == 26);
  CHECK(report.required_source_power_w == Rational(8, 100'000'000));
}
