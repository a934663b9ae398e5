#pragma once

// Instance files and JSON renderings of every report type.

#include "delayline/analysis.hpp"
#include "delayline/core_model.hpp"
#include "delayline/oracles.hpp"
#include "delayline/photonic_sim.hpp"

#include <json.hpp>

#include <filesystem>
#include <string>

namespace delayline::io {

using nlohmann::json;

struct InstanceFile {
  RawInstance raw;
  json params = json::object();
};

// {"set": [...], "target": ..., "params": {...}}. Numbers may be JSON
// numbers or decimal strings.
InstanceFile parse_instance(const std::string& text);
InstanceFile read_instance_file(const std::filesystem::path& path);

// Applies the recognised `params` keys on top of `base`.
PhysicalParams apply_params(PhysicalParams base, const json& overrides);

// Integers that fit in 64 bits become JSON numbers, larger ones strings.
json to_json(const BigInt& value);
json to_json(const Instance& instance);
json to_json(const sim::DetectionReport& report);
json to_json(const oracles::OracleResult& result);
json to_json(const analysis::FeasibilityReport& report);
json to_json(const sim::PerturbationReport& report);
json to_json(const sim::EpsilonDemo& demo);

}  // namespace delayline::io
