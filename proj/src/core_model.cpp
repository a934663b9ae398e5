#include "delayline/core_model.hpp"

#include "delayline/errors.hpp"

#include <algorithm>
#include <climits>
#include <optional>

namespace delayline {

namespace {

// x == mantissa * 10^exponent with mantissa not divisible by 10.
struct DecimalForm {
  BigInt mantissa;
  long exponent = 0;
};

DecimalForm decimal_form(const Rational& x) {
  BigInt num = boost::multiprecision::numerator(x);
  BigInt den = boost::multiprecision::denominator(x);

  unsigned twos = 0;
  unsigned fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  if (den != 1) throw Error(ErrorCode::InvalidValue, "value is not a terminating decimal");

  const unsigned places = std::max(twos, fives);
  for (unsigned i = twos; i < places; ++i) num *= 2;
  for (unsigned i = fives; i < places; ++i) num *= 5;

  DecimalForm form{num, -static_cast<long>(places)};
  while (form.mantissa % 10 == 0) {
    form.mantissa /= 10;
    ++form.exponent;
  }
  return form;
}

BigInt scaled_integer(const Rational& x, long exponent_shift, std::size_t max_digits) {
  const Rational scaled =
      exponent_shift >= 0 ? x * pow10(static_cast<unsigned>(exponent_shift))
                          : x / pow10(static_cast<unsigned>(-exponent_shift));
  BigInt value = boost::multiprecision::numerator(scaled);
  if (value.str().size() > max_digits) {
    throw Error(ErrorCode::Overflow, "normalized value exceeds " +
                                         std::to_string(max_digits) + " digits");
  }
  return value;
}

}  // namespace

std::string_view to_string(Verdict verdict) noexcept {
  return verdict == Verdict::Yes ? "YES" : "NO";
}

BigInt Instance::total() const {
  BigInt sum = 0;
  for (const auto& v : values) sum += v;
  return sum;
}

Instance normalize(const RawInstance& raw, const NormalizeOptions& options) {
  std::vector<Rational> values;
  values.reserve(raw.values.size());
  for (const auto& text : raw.values) {
    Rational v = parse_decimal(text);
    if (v <= 0) throw Error(ErrorCode::InvalidValue, "set value '" + text + "' is not positive");
    values.push_back(std::move(v));
  }
  const Rational target = parse_decimal(raw.target);
  if (target < 0) {
    throw Error(ErrorCode::InvalidValue, "target '" + raw.target + "' is negative");
  }

  // The finest nonzero number decides the shift; it ends up with a units
  // digit that is not 0, so no common power of ten survives.
  std::optional<long> finest;
  auto consider = [&](const Rational& x) {
    if (x == 0) return;
    const long e = decimal_form(x).exponent;
    finest = finest ? std::min(*finest, e) : e;
  };
  for (const auto& v : values) consider(v);
  consider(target);

  const long shift = finest ? -*finest : 0;
  Instance instance;
  instance.values.reserve(values.size());
  for (const auto& v : values) {
    instance.values.push_back(scaled_integer(v, shift, options.max_digits));
  }
  instance.target = scaled_integer(target, shift, options.max_digits);
  instance.scale = shift >= 0 ? Rational(pow10(static_cast<unsigned>(shift)))
                              : Rational(BigInt(1), pow10(static_cast<unsigned>(-shift)));
  return instance;
}

RawInstance to_raw(const Instance& instance) {
  RawInstance raw;
  raw.values.reserve(instance.values.size());
  for (const auto& v : instance.values) raw.values.push_back(v.str());
  raw.target = instance.target.str();
  return raw;
}

void PhysicalParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw Error(ErrorCode::InvalidValue, what);
  };
  require(delay_quantum_s > 0, "delay_quantum_s must be positive");
  require(light_speed_m_s > 0, "light_speed_m_s must be positive");
  require(velocity_factor > 0 && velocity_factor <= 1, "velocity_factor must lie in (0, 1]");
  require(offset_k_quanta >= 1, "offset_k_quanta must be at least 1");
  require(source_power_w > 0, "source_power_w must be positive");
  require(splitter_transmission > 0 && splitter_transmission <= 1,
          "splitter_transmission must lie in (0, 1]");
  require(detector_gain > 0, "detector_gain must be positive");
  require(detection_threshold_w > 0, "detection_threshold_w must be positive");
}

DeviceLayout compile(const Instance& instance, const PhysicalParams& params) {
  if (params.offset_k_quanta < 1) {
    throw Error(ErrorCode::InvalidValue, "offset_k_quanta must be at least 1");
  }
  DeviceLayout layout;
  layout.offset_k = params.offset_k_quanta;
  layout.stages.reserve(instance.size());
  for (const auto& a : instance.values) {
    if (a < 1) throw Error(ErrorCode::InvalidValue, "instance value below one quantum");
    layout.stages.push_back({params.offset_k_quanta, a + params.offset_k_quanta, a});
  }
  return layout;
}

EpsilonLayout compile_epsilon(const Instance& instance, const BigInt& epsilon) {
  if (epsilon < 1) throw Error(ErrorCode::InvalidValue, "epsilon must be at least 1 quantum");
  EpsilonLayout layout;
  layout.epsilon = epsilon;
  layout.stages.reserve(instance.size());
  for (const auto& a : instance.values) {
    if (a < 1) throw Error(ErrorCode::InvalidValue, "instance value below one quantum");
    layout.stages.push_back({epsilon, a, a});
  }
  return layout;
}

std::vector<Rational> cable_lengths(const DeviceLayout& layout, const PhysicalParams& params) {
  const Rational quantum = params.quantum_length_m();
  std::vector<Rational> lengths;
  lengths.reserve(2 * layout.stages.size());
  for (const auto& stage : layout.stages) {
    lengths.emplace_back(quantum * stage.skip_delay);
    lengths.emplace_back(quantum * stage.take_delay);
  }
  return lengths;
}

}  // namespace delayline
