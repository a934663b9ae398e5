#include "delayline/io.hpp"

#include "delayline/errors.hpp"

#include <fstream>
#include <sstream>

namespace delayline::io {

namespace {

std::string number_text(const json& node, const char* field) {
  switch (node.type()) {
    case json::value_t::string:
      return node.get<std::string>();
    case json::value_t::number_integer:
      return std::to_string(node.get<std::int64_t>());
    case json::value_t::number_unsigned:
      return std::to_string(node.get<std::uint64_t>());
    case json::value_t::number_float:
      // Shortest round-trip form, e.g. 0.001 -> "0.001".
      return node.dump();
    default:
      throw Error(ErrorCode::ParseError,
                  std::string("field '") + field + "' must be a number or decimal string");
  }
}

Rational rational_field(const json& node, const char* field) {
  return parse_decimal(number_text(node, field));
}

double as_double(const Rational& value) { return to_double(value); }

}  // namespace

InstanceFile parse_instance(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("instance is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw Error(ErrorCode::ParseError, "instance must be a JSON object");
  if (!doc.contains("set") || !doc["set"].is_array()) {
    throw Error(ErrorCode::ParseError, "instance needs an array field 'set'");
  }
  if (!doc.contains("target")) throw Error(ErrorCode::ParseError, "instance needs a 'target'");

  InstanceFile file;
  for (const auto& item : doc["set"]) file.raw.values.push_back(number_text(item, "set"));
  file.raw.target = number_text(doc["target"], "target");
  if (doc.contains("params")) {
    if (!doc["params"].is_object()) throw Error(ErrorCode::ParseError, "'params' must be an object");
    file.params = doc["params"];
  }
  return file;
}

InstanceFile read_instance_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot read instance file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

PhysicalParams apply_params(PhysicalParams base, const json& overrides) {
  for (const auto& [key, value] : overrides.items()) {
    const char* field = key.c_str();
    if (key == "delay_quantum_s") {
      base.delay_quantum_s = rational_field(value, field);
    } else if (key == "light_speed_m_s") {
      base.light_speed_m_s = rational_field(value, field);
    } else if (key == "velocity_factor") {
      base.velocity_factor = rational_field(value, field);
    } else if (key == "offset_k_quanta") {
      const Rational k = rational_field(value, field);
      if (boost::multiprecision::denominator(k) != 1) {
        throw Error(ErrorCode::InvalidValue, "offset_k_quanta must be an integer");
      }
      base.offset_k_quanta = boost::multiprecision::numerator(k);
    } else if (key == "source_power_w") {
      base.source_power_w = rational_field(value, field);
    } else if (key == "splitter_transmission") {
      base.splitter_transmission = rational_field(value, field);
    } else if (key == "detector_gain") {
      base.detector_gain = rational_field(value, field);
    } else if (key == "detection_threshold_w") {
      base.detection_threshold_w = rational_field(value, field);
    } else {
      throw Error(ErrorCode::ParseError, "unknown params field '" + key + "'");
    }
  }
  base.validate();
  return base;
}

json to_json(const BigInt& value) {
  if (auto small = to_int64(value)) return *small;
  return value.str();
}

json to_json(const Instance& instance) {
  json values = json::array();
  for (const auto& v : instance.values) values.push_back(to_json(v));
  return {{"set", values},
          {"target", to_json(instance.target)},
          {"scale", to_decimal_string(instance.scale)}};
}

json to_json(const sim::DetectionReport& report) {
  return {{"verdict", to_string(report.verdict)},
          {"checked_moment", to_json(report.checked_moment)},
          {"ray_count_at_moment", to_json(report.ray_count_at_moment)},
          {"per_ray_power_w", as_double(report.per_ray_power_w)},
          {"amplified_power_w", as_double(report.amplified_power_w)},
          {"detectable", report.detectable}};
}

json to_json(const oracles::OracleResult& result) {
  json out = {{"verdict", to_string(result.verdict)}, {"solver_name", result.solver_name}};
  if (result.witness) {
    out["witness"] = *result.witness;
  } else {
    out["witness"] = nullptr;
  }
  return out;
}

json to_json(const analysis::FeasibilityReport& report) {
  return {{"max_encodable_value", to_json(report.max_encodable_value)},
          {"max_cable_length_m", as_double(report.max_cable_length_m)},
          {"quantum_length_m", as_double(report.quantum_length_m)},
          {"answer_time_s", as_double(report.answer_time_s)},
          {"max_detectable_n", report.max_detectable_n},
          {"required_source_power_w", as_double(report.required_source_power_w)}};
}

json to_json(const sim::PerturbationReport& report) {
  return {{"trials", report.trials},
          {"misclassified", report.misclassified},
          {"false_positives", report.false_positives},
          {"false_negatives", report.false_negatives},
          {"max_arrival_error_s", as_double(report.max_arrival_error_s)}};
}

json to_json(const sim::EpsilonDemo& demo) {
  return {{"epsilon_verdict", to_string(demo.epsilon_verdict)},
          {"offset_verdict", to_string(demo.offset_verdict)},
          {"oracle_verdict", to_string(demo.oracle_verdict)},
          {"spurious", demo.spurious()},
          {"offset_correct", demo.offset_correct()}};
}

}  // namespace delayline::io
