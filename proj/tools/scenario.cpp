#include "scenario.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cpt_cli {

using cpt::Error;
using cpt::ErrorCode;
using nlohmann::json;

namespace {

double require_finite(const json& node, const char* name) {
  if (!node.is_number())
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a number");
  const double value = node.get<double>();
  if (!std::isfinite(value))
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be finite");
  return value;
}

cpt::PTParams parse_system(const json& node, const char* name) {
  if (!node.is_object())
    throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be an object");
  cpt::PTParams params;
  params.r = require_finite(node.at("r"), "r");
  params.s = require_finite(node.at("s"), "s");
  params.t = require_finite(node.at("t"), "t");
  params.theta = require_finite(node.at("theta"), "theta");
  return params;
}

} // namespace

ScenarioConfig parse_scenario(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::InvalidArgument, "scenario must be a JSON object");
  ScenarioConfig config;

  if (doc.contains("system1")) config.system1 = parse_system(doc.at("system1"), "system1");
  if (doc.contains("system2")) config.system2 = parse_system(doc.at("system2"), "system2");

  if (doc.contains("state")) {
    const json& state = doc.at("state");
    if (state.contains("basis")) {
      config.state_basis = state.at("basis").get<std::string>();
      if (config.state_basis != "computational" && config.state_basis != "cpt-eigen")
        throw Error(ErrorCode::InvalidArgument, "state.basis must be computational or cpt-eigen");
    }
    if (state.contains("amplitudes")) {
      const json& amps = state.at("amplitudes");
      if (!amps.is_array() || amps.size() != 4)
        throw Error(ErrorCode::InvalidArgument, "state.amplitudes must hold 4 [re, im] pairs");
      for (std::size_t i = 0; i < 4; ++i) {
        const json& pair = amps.at(i);
        if (!pair.is_array() || pair.size() != 2)
          throw Error(ErrorCode::InvalidArgument, "each amplitude must be an [re, im] pair");
        config.amplitudes[i] =
            cpt::cxd(require_finite(pair.at(0), "amplitude"), require_finite(pair.at(1), "amplitude"));
      }
    }
  }

  if (doc.contains("times")) {
    const json& times = doc.at("times");
    if (times.contains("start")) config.times_start = require_finite(times.at("start"), "times.start");
    if (times.contains("stop")) config.times_stop = require_finite(times.at("stop"), "times.stop");
    if (times.contains("steps")) {
      if (!times.at("steps").is_number_unsigned())
        throw Error(ErrorCode::InvalidArgument, "times.steps must be a nonnegative integer");
      config.times_steps = times.at("steps").get<std::size_t>();
    }
    if (config.times_steps == 0)
      throw Error(ErrorCode::InvalidArgument, "times.steps must be at least 1");
    if (!(config.times_stop >= config.times_start))
      throw Error(ErrorCode::InvalidArgument, "times.stop must be >= times.start");
  }

  if (doc.contains("options")) {
    const json& options = doc.at("options");
    if (options.contains("theory")) {
      config.theory = options.at("theory").get<std::string>();
      if (config.theory != "dirac" && config.theory != "cpt")
        throw Error(ErrorCode::InvalidArgument, "options.theory must be dirac or cpt");
    }
    if (options.contains("log_base")) {
      if (options.at("log_base").get<std::string>() != "2")
        throw Error(ErrorCode::InvalidArgument, "options.log_base is fixed at \"2\"");
    }
    if (options.contains("seed")) {
      if (!options.at("seed").is_number_unsigned())
        throw Error(ErrorCode::InvalidArgument, "options.seed must be a nonnegative integer");
      config.seed = options.at("seed").get<std::uint64_t>();
    }
  }

  return config;
}

nlohmann::ordered_json dump_scenario(const ScenarioConfig& config) {
  nlohmann::ordered_json doc;
  doc["system1"] = {{"r", config.system1.r},
                    {"s", config.system1.s},
                    {"t", config.system1.t},
                    {"theta", config.system1.theta}};
  doc["system2"] = {{"r", config.system2.r},
                    {"s", config.system2.s},
                    {"t", config.system2.t},
                    {"theta", config.system2.theta}};
  nlohmann::ordered_json amps = nlohmann::ordered_json::array();
  for (const auto& amp : config.amplitudes) amps.push_back({amp.real(), amp.imag()});
  doc["state"] = {{"basis", config.state_basis}, {"amplitudes", amps}};
  doc["times"] = {{"start", config.times_start},
                  {"stop", config.times_stop},
                  {"steps", config.times_steps}};
  doc["options"] = {{"theory", config.theory}, {"log_base", "2"}, {"seed", config.seed}};
  return doc;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::string text;
  if (path == "-") {
    std::ostringstream buffer;
    buffer << std::cin.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream file(path);
    if (!file) throw Error(ErrorCode::InvalidArgument, "cannot open scenario file: " + path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    throw Error(ErrorCode::InvalidArgument, std::string("scenario is not valid JSON: ") + err.what());
  }
  return parse_scenario(doc);
}

} // namespace cpt_cli
