#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string temp_path(const std::string& name) {
  return std::string("/tmp/cpt_cli_") + std::to_string(getpid()) + "_" + name;
}

RunResult run(const std::string& args, const std::string& stdin_text = "") {
  const std::string err_path = temp_path("stderr");
  std::string command = std::string(CPT_CLI_PATH) + " " + args + " 2>" + err_path;
  if (!stdin_text.empty()) {
    const std::string in_path = temp_path("stdin");
    std::ofstream(in_path) << stdin_text;
    command += " <" + in_path;
  }

  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buffer;
  std::size_t n = 0;
  while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0)
    result.out.append(buffer.data(), n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;

  std::ifstream err_file(err_path);
  std::stringstream err_stream;
  err_stream << err_file.rdbuf();
  result.err = err_stream.str();
  return result;
}

const char* kScenario = R"({
  "system1": {"r": 1.0, "s": 1.0, "t": 1.0, "theta": 0.5235987755982988},
  "system2": {"r": 1.0, "s": 1.0, "t": 1.0, "theta": 0.5235987755982988},
  "state": {"basis": "computational", "amplitudes": [[1,0],[0,0],[0,0],[0,0]]},
  "times": {"start": 0.0, "stop": 1.0, "steps": 5},
  "options": {"theory": "cpt", "log_base": "2", "seed": 3}
})";

} // namespace

TEST_CASE("spectrum prints energies, alpha, metric eigenvalues") {
  const RunResult result = run("spectrum --r 1 --s 1 --t 1 --theta 0.5235987755982988");
  CHECK(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc.at("energies").at(0).get<double>() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(doc.at("energies").at(1).get<double>() == doctest::Approx(1.7320508075688772).epsilon(1e-12));
  CHECK(doc.at("alpha").get<double>() == doctest::Approx(0.5235987755982988).epsilon(1e-12));
  CHECK(doc.at("metric_eigenvalues").at(0).get<double>() == doctest::Approx(0.5773502691896258).epsilon(1e-10));
}

TEST_CASE("spectrum handles asymmetric couplings without a metric") {
  const RunResult result = run("spectrum --r 0.5 --s 2 --t 1 --theta 0.3");
  CHECK(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc.at("metric_eigenvalues").is_null());
}

TEST_CASE("algebra-check passes for a valid system") {
  const RunResult result = run("algebra-check --r 1 --s 1 --t 1 --theta 0.7");
  CHECK(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc.at("pass").get<bool>());
  CHECK(doc.at("c_squared").get<double>() < 1e-12);
}

TEST_CASE("broken PT phase exits 2 with a machine-readable record") {
  const RunResult result = run("spectrum --r 1 --s 0.4 --t 0.4 --theta 1.5707963267948966");
  CHECK(result.exit_code == 2);
  const json record = json::parse(result.err);
  CHECK(record.at("error").at("code").get<std::string>() == "BrokenPTPhase");
}

TEST_CASE("invalid scenario JSON exits 1") {
  const RunResult result = run("entropy --config -", "{not json");
  CHECK(result.exit_code == 1);
  const json record = json::parse(result.err);
  CHECK(record.at("error").at("code").get<std::string>() == "InvalidArgument");
}

TEST_CASE("entropy of the CPT singlet is one bit in its own theory") {
  const std::string config = R"({
    "system1": {"r": 1.0, "s": 1.0, "t": 1.0, "theta": 0.5235987755982988},
    "system2": {"r": 1.0, "s": 1.0, "t": 1.0, "theta": 0.5235987755982988},
    "state": {"basis": "cpt-eigen",
              "amplitudes": [[0,0],[0.70710678118654752,0],[-0.70710678118654752,0],[0,0]]},
    "options": {"theory": "cpt"}
  })";
  const RunResult result = run("entropy --config -", config);
  CHECK(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc.at("closed_form").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(doc.at("pipeline").get<double>() == doctest::Approx(1.0).epsilon(1e-10));
  CHECK_FALSE(doc.at("is_product").get<bool>());
}

TEST_CASE("singlet-sweep starts at the Hermitian limit") {
  const RunResult result = run("singlet-sweep --alpha-max 0.5 --steps 6");
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string header, first;
  std::getline(lines, header);
  CHECK(header == "alpha,E_paper_eq28,E_oracle,delta");
  std::getline(lines, first);
  CHECK(first.substr(0, 2) == "0,");
  std::istringstream cells(first);
  std::string cell;
  std::getline(cells, cell, ','); // alpha
  std::getline(cells, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(1.0).epsilon(1e-12));
  std::getline(cells, cell, ',');
  CHECK(std::stod(cell) == doctest::Approx(1.0).epsilon(1e-12));
  int rows = 1;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("evolve emits one CSV row per time step") {
  const RunResult result = run("evolve --config -", kScenario);
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,re_a00,im_a00,re_a01,im_a01,re_a10,im_a10,re_a11,im_a11,entropy");
  int rows = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++rows;
  CHECK(rows == 5);
}

TEST_CASE("rate CSV carries the closed-form column") {
  const RunResult result = run("rate --config -", kScenario);
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,lambda,E,gamma,bound,lambda_closed_form");
}

TEST_CASE("hmax of the pure coupling is one") {
  const std::string config = R"({
    "system1": {"r": 0.0, "s": 1.0, "t": 1.0, "theta": 0.0},
    "system2": {"r": 0.0, "s": 1.0, "t": 1.0, "theta": 0.0},
    "options": {"seed": 1}
  })";
  const RunResult result = run("hmax --config -", config);
  CHECK(result.exit_code == 0);
  const json doc = json::parse(result.out);
  CHECK(doc.at("value").get<double>() == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("identical runs produce byte-identical output") {
  const std::string config_path = temp_path("scenario.json");
  std::ofstream(config_path) << kScenario;

  const RunResult sweep1 = run("singlet-sweep --alpha-max 0.4 --steps 5");
  const RunResult sweep2 = run("singlet-sweep --alpha-max 0.4 --steps 5");
  CHECK(sweep1.out == sweep2.out);

  const RunResult hmax1 = run("hmax --config " + config_path);
  const RunResult hmax2 = run("hmax --config " + config_path);
  CHECK(hmax1.out == hmax2.out);

  const RunResult rate1 = run("rate --config " + config_path);
  const RunResult rate2 = run("rate --config " + config_path);
  CHECK(rate1.out == rate2.out);
}

TEST_CASE("singlet-sweep validates its flags") {
  const RunResult result = run("singlet-sweep --alpha-max 0.5 --steps 0");
  CHECK(result.exit_code == 1);
  const json record = json::parse(result.err);
  CHECK(record.at("error").at("code").get<std::string>() == "InvalidArgument");
}

TEST_CASE("--out writes the same bytes as stdout") {
  const std::string out_path = temp_path("spectrum.json");
  const RunResult direct = run("spectrum --r 1 --s 1 --t 1 --theta 0.3");
  const RunResult filed = run("spectrum --r 1 --s 1 --t 1 --theta 0.3 --out " + out_path);
  CHECK(filed.exit_code == 0);
  CHECK(filed.out.empty());
  std::ifstream file(out_path);
  std::stringstream content;
  content << file.rdbuf();
  CHECK(content.str() == direct.out);
}

TEST_CASE("thread cap does not change results") {
  const std::string config_path = temp_path("threads_scenario.json");
  std::ofstream(config_path) << kScenario;
  const RunResult plain = run("hmax --config " + config_path);
  CHECK_FALSE(plain.out.empty());

  const auto run_env = [&](const std::string& threads) {
    const std::string command = "CPT_ENTANGLE_THREADS=" + threads + " " +
                                std::string(CPT_CLI_PATH) + " hmax --config " + config_path +
                                " 2>/dev/null";
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buffer;
    std::size_t n = 0;
    while ((n = fread(buffer.data(), 1, buffer.size(), pipe)) > 0) out.append(buffer.data(), n);
    pclose(pipe);
    return out;
  };
  const std::string one = run_env("1");
  const std::string four = run_env("4");
  CHECK_FALSE(one.empty());
  CHECK(one == four);
  CHECK(one == plain.out);
}

TEST_CASE("evolve starts at the initial product state") {
  const RunResult result = run("evolve --config -", kScenario);
  CHECK(result.exit_code == 0);
  std::istringstream lines(result.out);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  std::istringstream cells(first);
  std::string cell;
  std::vector<double> row;
  while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
  REQUIRE(row.size() == 10);
  CHECK(row[0] == 0.0);                              // t
  CHECK(row[1] == doctest::Approx(1.0).epsilon(1e-14)); // re a00
  for (std::size_t i = 2; i < 9; ++i) CHECK(row[i] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(row[9] == doctest::Approx(0.0).epsilon(1e-12)); // entropy
}

TEST_CASE("dump-config round-trips") {
  const RunResult first = run("entropy --config - --dump-config", kScenario);
  CHECK(first.exit_code == 0);
  const RunResult second = run("entropy --config - --dump-config", first.out);
  CHECK(second.exit_code == 0);
  CHECK(first.out == second.out);
  const json parsed = json::parse(first.out);
  CHECK(parsed.at("options").at("seed").get<int>() == 3);
  CHECK(parsed.at("times").at("steps").get<int>() == 5);
}
