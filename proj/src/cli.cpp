#include "delayline/cli.hpp"

#include "delayline/analysis.hpp"
#include "delayline/errors.hpp"
#include "delayline/io.hpp"
#include "delayline/oracles.hpp"
#include "delayline/photonic_sim.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>

namespace delayline::cli {

namespace {

using io::json;

struct GlobalOptions {
  std::optional<std::string> k;
  std::optional<std::string> quantum_s;
  std::optional<std::string> velocity_factor;
  std::optional<std::string> slow_light;
  std::string oracle = "auto";
  std::optional<std::string> dump_profile;
  std::uint64_t seed = 0;
  bool verbose = false;
  bool timing = false;
  std::optional<std::string> max_cable_m;
};

struct CommandOptions {
  std::string instance_file;
  std::string epsilon = "1";
  std::string max_error_m = "0";
  std::string offset_m = "0";
  std::uint64_t trials = 1000;
};

struct Loaded {
  Instance instance;
  PhysicalParams params;
};

class PhaseTimer {
 public:
  template <typename F>
  auto measure(const char* phase, F&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto result = fn();
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
    phases_[phase] = elapsed.count();
    return result;
  }
  const json& phases() const { return phases_; }

 private:
  json phases_ = json::object();
};

BigInt parse_integer(const std::string& text, const char* what) {
  const Rational value = parse_decimal(text);
  if (boost::multiprecision::denominator(value) != 1) {
    throw Error(ErrorCode::InvalidValue, std::string(what) + " must be an integer");
  }
  return boost::multiprecision::numerator(value);
}

Loaded load(const std::string& path, const GlobalOptions& global, PhaseTimer* timer = nullptr) {
  const auto file = io::read_instance_file(path);
  PhysicalParams params = io::apply_params(PhysicalParams{}, file.params);
  if (global.k) params.offset_k_quanta = parse_integer(*global.k, "--k");
  if (global.quantum_s) params.delay_quantum_s = parse_decimal(*global.quantum_s);
  if (global.velocity_factor) params.velocity_factor = parse_decimal(*global.velocity_factor);
  params.validate();
  if (global.slow_light) {
    params = analysis::slow_light_rescale(params, parse_decimal(*global.slow_light));
  }
  Loaded loaded{{}, params};
  if (timer) {
    loaded.instance = timer->measure("normalize_s", [&] { return normalize(file.raw); });
  } else {
    loaded.instance = normalize(file.raw);
  }
  return loaded;
}

void print_table(std::ostream& err, const DeviceLayout& layout, const PhysicalParams& params) {
  const auto lengths = cable_lengths(layout, params);
  err << std::left << std::setw(7) << "stage" << std::setw(14) << "a_i" << std::setw(14)
      << "skip_quanta" << std::setw(14) << "take_quanta" << std::setw(14) << "skip_m"
      << "take_m\n";
  for (std::size_t i = 0; i < layout.stages.size(); ++i) {
    const auto& s = layout.stages[i];
    err << std::setw(7) << i + 1 << std::setw(14) << s.value.str() << std::setw(14)
        << s.skip_delay.str() << std::setw(14) << s.take_delay.str() << std::setw(14)
        << to_double(lengths[2 * i]) << to_double(lengths[2 * i + 1]) << '\n';
  }
}

int cmd_solve(const CommandOptions& cmd, const GlobalOptions& global, std::ostream& out,
              std::ostream& err) {
  PhaseTimer timer;
  const auto [instance, params] = load(cmd.instance_file, global, &timer);
  const auto layout = timer.measure("compile_s", [&] { return compile(instance, params); });
  const auto profile = timer.measure("propagate_s", [&] { return sim::propagate(layout); });
  const auto detection =
      timer.measure("detect_s", [&] { return sim::detect(profile, instance, params); });
  const auto oracle_kind = oracles::parse_oracle_kind(global.oracle);
  const auto oracle =
      timer.measure("oracle_s", [&] { return oracles::solve(instance, oracle_kind, true); });

  if (global.dump_profile) {
    std::ofstream dump(*global.dump_profile);
    if (!dump) throw Error(ErrorCode::IoError, "cannot write profile to '" + *global.dump_profile + "'");
    profile.dump(dump);
  }

  const bool witness_ok = !oracle.witness || oracles::witness_is_valid(instance, *oracle.witness);
  const bool agreement = detection.verdict == oracle.verdict && witness_ok;

  json report = {{"instance_echo", io::to_json(instance)},
                 {"simulator", io::to_json(detection)},
                 {"oracle", io::to_json(oracle)},
                 {"agreement", agreement}};
  if (global.max_cable_m) {
    report["feasibility"] =
        io::to_json(analysis::feasibility(instance, params, parse_decimal(*global.max_cable_m)));
  } else {
    report["feasibility"] = nullptr;
  }
  if (global.timing) report["timing"] = timer.phases();
  out << report.dump(2) << '\n';

  if (global.verbose) {
    print_table(err, layout, params);
    err << "profile entries: " << profile.size() << ", checked moment "
        << detection.checked_moment << '\n';
  }
  if (!agreement) {
    err << "error: simulator verdict " << to_string(detection.verdict) << " disagrees with "
        << oracle.solver_name << " oracle verdict " << to_string(oracle.verdict) << '\n';
    return kDisagreement;
  }
  return detection.verdict == Verdict::Yes ? kYes : kNo;
}

int cmd_compile(const CommandOptions& cmd, const GlobalOptions& global, std::ostream& out,
                std::ostream& err) {
  const auto [instance, params] = load(cmd.instance_file, global);
  const auto layout = compile(instance, params);
  const auto lengths = cable_lengths(layout, params);

  json stages = json::array();
  for (std::size_t i = 0; i < layout.stages.size(); ++i) {
    const auto& s = layout.stages[i];
    stages.push_back({{"stage", i + 1},
                      {"a_i", io::to_json(s.value)},
                      {"skip_quanta", io::to_json(s.skip_delay)},
                      {"take_quanta", io::to_json(s.take_delay)},
                      {"skip_m", to_double(lengths[2 * i])},
                      {"take_m", to_double(lengths[2 * i + 1])}});
  }
  json report = {{"instance_echo", io::to_json(instance)},
                 {"offset_k_quanta", io::to_json(layout.offset_k)},
                 {"node_count", layout.node_count()},
                 {"quantum_length_m", to_double(params.quantum_length_m())},
                 {"stages", stages}};
  out << report.dump(2) << '\n';
  if (global.verbose) print_table(err, layout, params);
  return kYes;
}

int cmd_analyze(const CommandOptions& cmd, const GlobalOptions& global, std::ostream& out,
                std::ostream& err) {
  const auto [instance, params] = load(cmd.instance_file, global);
  const Rational max_cable = parse_decimal(global.max_cable_m.value_or("3000"));
  const auto report = analysis::feasibility(instance, params, max_cable);
  const auto timing = analysis::answer_time(instance, params);
  json doc = io::to_json(report);
  doc["build_cost_quanta"] = io::to_json(timing.build_cost_quanta);
  doc["n_times_b"] = io::to_json(timing.n_times_b);
  out << doc.dump(2) << '\n';
  if (global.verbose) {
    err << "max encodable value " << report.max_encodable_value << " quanta over "
        << to_double(max_cable) << " m of fiber\n";
  }
  return kYes;
}

int cmd_demo_epsilon(const CommandOptions& cmd, const GlobalOptions& global, std::ostream& out,
                     std::ostream& err) {
  const auto [instance, params] = load(cmd.instance_file, global);
  const BigInt epsilon = parse_integer(cmd.epsilon, "--epsilon");
  const auto demo = sim::epsilon_false_positive_demo(instance, epsilon, params);
  json doc = io::to_json(demo);
  doc["instance_echo"] = io::to_json(instance);
  doc["epsilon_quanta"] = io::to_json(epsilon);
  out << doc.dump(2) << '\n';
  if (global.verbose && demo.spurious()) {
    err << "epsilon device lights up at moment " << instance.target
        << " although no subset sums to it\n";
  }
  if (!demo.offset_correct()) {
    err << "error: offset device disagrees with the oracle\n";
    return kDisagreement;
  }
  return kYes;
}

int cmd_perturb(const CommandOptions& cmd, const GlobalOptions& global, std::ostream& out,
                std::ostream& err) {
  const auto [instance, params] = load(cmd.instance_file, global);
  const auto layout = compile(instance, params);
  sim::PerturbationConfig config;
  config.max_error_m = parse_decimal(cmd.max_error_m);
  config.systematic_offset_m = parse_decimal(cmd.offset_m);
  config.trials = cmd.trials;
  config.seed = global.seed;
  const auto report = sim::perturb_and_classify(layout, instance, params, config);
  json doc = io::to_json(report);
  doc["seed"] = global.seed;
  out << doc.dump(2) << '\n';
  if (global.verbose) {
    err << report.misclassified << " of " << report.trials << " trials misclassified\n";
  }
  return kYes;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return kUsageError;
    case ErrorCode::IoError: return kIoError;
    case ErrorCode::ResourceLimit: return kResourceLimit;
    case ErrorCode::InvalidValue:
    case ErrorCode::Overflow:
    case ErrorCode::StageMismatch:
    case ErrorCode::InvalidPerturbation:
      return kInvalidInput;
  }
  return kInvalidInput;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Optical delay-line subset-sum simulator", "delayline"};
  app.require_subcommand(1);

  GlobalOptions global;
  CommandOptions cmd;
  app.add_option("--k", global.k, "Offset k in delay quanta (default 1)");
  app.add_option("--quantum-s", global.quantum_s, "Delay quantum in seconds (default 1e-12)");
  app.add_option("--velocity-factor", global.velocity_factor, "Fiber velocity factor (default 1)");
  app.add_option("--slow-light", global.slow_light, "Extra velocity scaling in (0, 1]");
  app.add_option("--oracle", global.oracle, "Oracle: dp, brute, mitm or auto")
      ->check(CLI::IsMember({"dp", "brute", "mitm", "auto"}));
  app.add_option("--dump-profile", global.dump_profile, "Write the destination profile here");
  app.add_option("--seed", global.seed, "RNG seed for perturbation trials");
  app.add_option("--max-cable-m", global.max_cable_m, "Longest available cable in meters");
  app.add_flag("--verbose", global.verbose, "Print human-readable tables to stderr");
  app.add_flag("--timing", global.timing, "Include per-phase wall-clock timings");

  auto add_command = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("instance", cmd.instance_file, "Instance JSON file")->required();
    return sub;
  };
  auto* solve = add_command("solve", "Simulate the device and check it against an oracle");
  auto* compile_cmd = add_command("compile", "Print the stage table and cable lengths");
  auto* analyze = add_command("analyze", "Physical feasibility bounds");
  auto* demo = add_command("demo-epsilon", "Show the epsilon-cable false positive");
  demo->add_option("--epsilon", cmd.epsilon, "Epsilon skip-arc delay in quanta");
  auto* perturb = add_command("perturb", "Classify under random cable-length errors");
  perturb->add_option("--max-error-m", cmd.max_error_m, "Largest per-cable error in meters");
  perturb->add_option("--offset-m", cmd.offset_m, "Systematic error added to every cable");
  perturb->add_option("--trials", cmd.trials, "Number of trials")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kYes;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }

  try {
    if (solve->parsed()) return cmd_solve(cmd, global, out, err);
    if (compile_cmd->parsed()) return cmd_compile(cmd, global, out, err);
    if (analyze->parsed()) return cmd_analyze(cmd, global, out, err);
    if (demo->parsed()) return cmd_demo_epsilon(cmd, global, out, err);
    if (perturb->parsed()) return cmd_perturb(cmd, global, out, err);
  } catch (const Error& e) {
    err << "error [" << to_string(e.code()) << "]: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::bad_alloc&) {
    err << "error [ResourceLimit]: out of memory\n";
    return kResourceLimit;
  }
  return kUsageError;
}

}  // namespace delayline::cli
