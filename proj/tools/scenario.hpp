#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "cpt/pt_qubit.hpp"

namespace cpt_cli {

/// Parsed scenario file. Complex amplitudes travel as [re, im] pairs; angles
/// are radians; log_base is fixed at "2".
struct ScenarioConfig {
  cpt::PTParams system1{1.0, 1.0, 1.0, 0.0};
  cpt::PTParams system2{1.0, 1.0, 1.0, 0.0};
  std::string state_basis = "computational"; // or "cpt-eigen"
  std::array<cpt::cxd, 4> amplitudes{cpt::cxd(1, 0), cpt::cxd(0, 0), cpt::cxd(0, 0),
                                     cpt::cxd(0, 0)};
  double times_start = 0.0;
  double times_stop = 3.0;
  std::size_t times_steps = 61;
  std::string theory = "cpt"; // or "dirac"
  std::uint64_t seed = 0;
};

ScenarioConfig parse_scenario(const nlohmann::json& doc);
nlohmann::ordered_json dump_scenario(const ScenarioConfig& config);

/// Reads the file, or stdin when path is "-".
ScenarioConfig load_scenario(const std::string& path);

} // namespace cpt_cli
