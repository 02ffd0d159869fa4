// Copyright 2026 The rpelab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
  std::string err;
};

std::string bin_path() {
  const char* b = std::getenv("RPELAB_BIN");
  REQUIRE(b != nullptr);
  return b;
}

std::string data_dir() {
  const char* d = std::getenv("RPELAB_DATA");
  REQUIRE(d != nullptr);
  return d;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rpelab_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Runs the CLI with `args` inside `dir`, capturing exit code and streams.
RunResult run_cli(const std::string& args, const fs::path& dir) {
  static int counter = 0;
  const fs::path out_file = dir / (".stdout_" + std::to_string(counter));
  const fs::path err_file = dir / (".stderr_" + std::to_string(counter));
  ++counter;
  const std::string cmd = "cd '" + dir.string() + "' && '" + bin_path() +
                          "' " + args + " > '" + out_file.string() +
                          "' 2> '" + err_file.string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

void write_file(const fs::path& p, const std::string& text) {
  std::ofstream os(p, std::ios::binary);
  os << text;
}

// Splits stdout into lines and returns the value following `key`, or an
// empty string when the key line is absent.
std::string line_value(const std::string& text, const std::string& key) {
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind(key + " ", 0) == 0) return line.substr(key.size() + 1);
  }
  return {};
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text) {
    if (c == '\n') ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("spectrum prints qubit count, ascending eigenvalues, and trace") {
  const fs::path dir = fresh_dir("spectrum");
  const std::string ham = data_dir() + std::string("/h2_like.txt");
  const RunResult r = run_cli("spectrum '" + ham + "'", dir);
  REQUIRE(r.code == 0);
  CHECK(line_value(r.out, "n_qubits") == "2");

  std::vector<double> eigs;
  std::istringstream is(r.out);
  std::string line;
  double trace_val = 0.0;
  while (std::getline(is, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "eigenvalue") {
      double v = 0.0;
      ls >> v;
      eigs.push_back(v);
    } else if (key == "trace") {
      ls >> trace_val;
    }
  }
  REQUIRE(eigs.size() == 4);
  for (size_t i = 1; i < eigs.size(); ++i) CHECK(eigs[i - 1] <= eigs[i]);
  double sum = 0.0;
  for (double v : eigs) sum += v;
  CHECK(sum == doctest::Approx(trace_val).epsilon(1e-9));
  CHECK(trace_val == doctest::Approx(4.0 * -0.4804).epsilon(1e-12));
  CHECK(fs::exists(dir / "spectrum_manifest.json"));
}

TEST_CASE("rpe exact run prints the estimate and writes result files") {
  const fs::path dir = fresh_dir("rpe_exact");
  write_file(dir / "z.txt", "Z 1.0\n");
  const RunResult r =
      run_cli("rpe z.txt --pair 0 1 --tau 1 --generations 6 --out res", dir);
  REQUIRE(r.code == 0);
  CHECK(std::stod(line_value(r.out, "theta_final")) ==
        doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::stod(line_value(r.out, "energy_difference")) ==
        doctest::Approx(2.0).epsilon(1e-9));

  REQUIRE(fs::exists(dir / "res.json"));
  REQUIRE(fs::exists(dir / "res.csv"));
  REQUIRE(fs::exists(dir / "res.manifest.json"));

  const nlohmann::json j = nlohmann::json::parse(slurp(dir / "res.json"));
  CHECK(j.at("config").at("pair") == nlohmann::json({0, 1}));
  CHECK(j.at("config").at("mode") == "exact");
  CHECK(j.at("config").at("generations") == 6);
  REQUIRE(j.at("generations").size() == 6);
  CHECK(j.at("generations")[5].at("k") == 32);
  CHECK(j.at("theta_final").get<double>() == doctest::Approx(2.0).epsilon(1e-9));

  std::istringstream csv(slurp(dir / "res.csv"));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "g,k,p_cos,p_sin,lambda,theta");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 6);
}

TEST_CASE("rpe defaults to exact mode and --shots selects sampling") {
  const fs::path dir = fresh_dir("rpe_modes");
  write_file(dir / "z.txt", "Z 1.0\n");
  const RunResult exact =
      run_cli("rpe z.txt --pair 0 1 --tau 1 --out a", dir);
  REQUIRE(exact.code == 0);
  const nlohmann::json ja = nlohmann::json::parse(slurp(dir / "a.json"));
  CHECK(ja.at("config").at("mode") == "exact");

  const RunResult sampled =
      run_cli("rpe z.txt --pair 0 1 --tau 1 --shots 256 --seed 11 --out b", dir);
  REQUIRE(sampled.code == 0);
  const nlohmann::json jb = nlohmann::json::parse(slurp(dir / "b.json"));
  CHECK(jb.at("config").at("mode") == "sampled");
  CHECK(jb.at("config").at("shots") == 256);
}

TEST_CASE("sampled rpe is reproducible for a fixed seed") {
  const fs::path dir = fresh_dir("rpe_seeded");
  write_file(dir / "z.txt", "Z 1.0\n");
  const std::string common =
      "rpe z.txt --pair 0 1 --tau 1 --shots 2048 --seed 7 --generations 6";
  const RunResult r1 = run_cli(common + " --out s1", dir);
  const RunResult r2 = run_cli(common + " --out s2", dir);
  REQUIRE(r1.code == 0);
  REQUIRE(r2.code == 0);
  CHECK(slurp(dir / "s1.json") == slurp(dir / "s2.json"));
  CHECK(slurp(dir / "s1.csv") == slurp(dir / "s2.csv"));
  const double theta = std::stod(line_value(r1.out, "theta_final"));
  CHECK(std::abs(theta - 2.0) < 0.05);
}

TEST_CASE("invalid inputs exit with the input error code") {
  const fs::path dir = fresh_dir("bad_inputs");
  write_file(dir / "z.txt", "Z 1.0\n");

  const RunResult equal_pair = run_cli("rpe z.txt --pair 0 0 --tau 1", dir);
  CHECK(equal_pair.code == 2);
  CHECK(!equal_pair.err.empty());

  write_file(dir / "bad.txt", "Z 1.0\nXY\n");
  const RunResult malformed = run_cli("spectrum bad.txt", dir);
  CHECK(malformed.code == 2);
  CHECK(malformed.err.find("line 2") != std::string::npos);

  const RunResult unknown_flag = run_cli("rpe z.txt --pair 0 1 --bogus", dir);
  CHECK(unknown_flag.code == 2);

  const RunResult no_subcommand = run_cli("", dir);
  CHECK(no_subcommand.code == 2);

  const RunResult missing_file = run_cli("spectrum does_not_exist.txt", dir);
  CHECK(missing_file.code == 2);

  const RunResult bad_tau = run_cli("rpe z.txt --pair 0 1 --tau -3", dir);
  CHECK(bad_tau.code == 2);

  const RunResult help = run_cli("--help", dir);
  CHECK(help.code == 0);
}

TEST_CASE("prep emits the preparation circuit and validates the pair") {
  const fs::path dir = fresh_dir("prep");
  write_file(dir / "z.txt", "Z 1.0\n");

  const RunResult plain = run_cli("prep z.txt --pair 0 1 --beta 0", dir);
  REQUIRE(plain.code == 0);
  CHECK(plain.out.rfind("qubits 1\n", 0) == 0);
  CHECK(plain.out.find("H 0") != std::string::npos);
  CHECK(plain.out.find("PHASE") == std::string::npos);
  CHECK(plain.out.find("DENSE [0]") != std::string::npos);

  const RunResult quarter =
      run_cli("prep z.txt --pair 0 1 --beta 1.5707963267948966", dir);
  REQUIRE(quarter.code == 0);
  CHECK(quarter.out.find("PHASE 0 1.57") != std::string::npos);

  const RunResult to_file =
      run_cli("prep z.txt --pair 0 1 --beta 0 --out circ.txt", dir);
  REQUIRE(to_file.code == 0);
  CHECK(slurp(dir / "circ.txt") == plain.out);

  const RunResult bad_pair = run_cli("prep z.txt --pair 0 5 --beta 0", dir);
  CHECK(bad_pair.code == 2);
}

TEST_CASE("cost prints uncontrolled and controlled gate totals") {
  const fs::path dir = fresh_dir("cost");
  const RunResult r = run_cli("cost --singles 2 --cnots 11", dir);
  REQUIRE(r.code == 0);
  CHECK(r.out == "uncontrolled 11\ncontrolled 70\n");
  const RunResult bad = run_cli("cost --singles -1 --cnots 4", dir);
  CHECK(bad.code == 2);
}

TEST_CASE("scaling reports slope for exact and sampled modes") {
  const fs::path dir = fresh_dir("scaling");
  write_file(dir / "z.txt", "Z 1.0\n");

  const RunResult exact = run_cli(
      "scaling z.txt --pair 0 1 --trials 2 --generations 3 --exact --tau 1",
      dir);
  REQUIRE(exact.code == 0);
  CHECK(exact.out.find("slope exact\n") != std::string::npos);
  REQUIRE(fs::exists(dir / "scaling.csv"));
  std::istringstream csv(slurp(dir / "scaling.csv"));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "trial,g,abs_error");
  CHECK(count_lines(slurp(dir / "scaling.csv")) == 1 + 2 * 3);

  const RunResult sampled = run_cli(
      "scaling z.txt --pair 0 1 --trials 3 --shots 8 --generations 3 "
      "--seed 5 --tau 1 --out samp.csv",
      dir);
  REQUIRE(sampled.code == 0);
  CHECK(!line_value(sampled.out, "slope").empty());
  CHECK(!line_value(sampled.out, "median_final").empty());
  CHECK(fs::exists(dir / "samp.csv"));
}

TEST_CASE("robustness writes grid and contour CSVs with a summary") {
  const fs::path dir = fresh_dir("robustness");
  const RunResult r =
      run_cli("robustness --grid 3 --max-eps 0.3 --out rmap.csv", dir);
  REQUIRE(r.code == 0);
  REQUIRE(fs::exists(dir / "rmap.csv"));
  REQUIRE(fs::exists(dir / "rmap_contour.csv"));

  std::istringstream csv(slurp(dir / "rmap.csv"));
  std::string line;
  REQUIRE(std::getline(csv, line));
  CHECK(line == "eps_c,eps_l,delta_lambda_max");
  int rows = 0;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 9);

  std::istringstream contour(slurp(dir / "rmap_contour.csv"));
  REQUIRE(std::getline(contour, line));
  CHECK(line == "eps_c,eps_l");

  CHECK(!line_value(r.out, "leak_axis_crossing_prob").empty());
  CHECK(!line_value(r.out, "coherent_axis_crossing_prob").empty());
  CHECK(!line_value(r.out, "monotonicity_violations").empty());

  const RunResult bad = run_cli("robustness --grid 1 --max-eps 0.3", dir);
  CHECK(bad.code == 2);
}

TEST_CASE("replay reproduces a recorded run byte for byte") {
  const fs::path dir = fresh_dir("replay");
  write_file(dir / "z.txt", "Z 1.0\n");
  const RunResult orig = run_cli(
      "rpe z.txt --pair 0 1 --tau 1 --shots 512 --seed 3 --out orig", dir);
  REQUIRE(orig.code == 0);
  REQUIRE(fs::exists(dir / "orig.manifest.json"));

  const RunResult rep = run_cli("replay orig.manifest.json --out rep", dir);
  REQUIRE(rep.code == 0);
  CHECK(slurp(dir / "orig.json") == slurp(dir / "rep.json"));
  CHECK(slurp(dir / "orig.csv") == slurp(dir / "rep.csv"));
  CHECK(rep.out == orig.out);
}
