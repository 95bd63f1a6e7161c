// Copyright 2026 The rotlog Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = -1;
  std::string out;
};

const char* cli_bin() {
  const char* bin = std::getenv("ROTLOG_CLI_BIN");
  REQUIRE(bin != nullptr);
  return bin;
}

/// Run the CLI with `args`, capturing stdout (stderr folded in on request).
RunResult run_cli(const std::string& args, bool merge_stderr = false,
                  const std::string& env_prefix = {}) {
  std::string cmd = env_prefix + cli_bin() + " " + args;
  cmd += merge_stderr ? " 2>&1" : " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult res;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, got);
  const int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string read_file(const fs::path& path) {
  std::ifstream is(path, std::ios::binary);
  REQUIRE(is.good());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

std::size_t line_count(const std::string& text) {
  std::size_t n = 0;
  for (char c : text) n += (c == '\n');
  return n;
}

/// Unique scratch directory, removed on scope exit.
struct TempDir {
  fs::path path;
  TempDir() {
    static int counter = 0;
    path = fs::temp_directory_path() /
           ("rotlog_cli_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("help and usage errors", "[cli]") {
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("distance --help").code == 0);
  CHECK(run_cli("").code == 1);                    // a subcommand is required
  CHECK(run_cli("distance --nope").code == 1);     // unknown flag
  CHECK(run_cli("simulate --trials 200").code == 1);  // --p is required
  CHECK(run_cli("scaling --grid 5").code == 1);    // --d is required
}

TEST_CASE("distance sweep output", "[cli]") {
  const RunResult res = run_cli("distance --grid 5");
  REQUIRE(res.code == 0);
  CHECK(res.out.rfind("# config: command=distance d=5", 0) == 0);
  CHECK(res.out.find("theta,phi,lambda,d,d_R\n") != std::string::npos);
  CHECK(line_count(res.out) == 2 + 5);
  // First row is the theta-min/phi-min corner of the default range.
  CHECK(res.out.find("1.00000e-01,1.00000e-01,1.00000e+00,5.00000e+00,") != std::string::npos);

  CHECK(run_cli("distance --grid 0").code == 1);
  CHECK(run_cli("distance --theta-min 2 --theta-max 1").code == 1);
}

TEST_CASE("identical flags and seed give byte-identical outputs", "[cli]") {
  TempDir tmp;

  const std::string distance_flags = "distance --d 7 --lambda 0.8 --grid 20 --out ";
  REQUIRE(run_cli(distance_flags + tmp.file("d1.csv")).code == 0);
  REQUIRE(run_cli(distance_flags + tmp.file("d2.csv")).code == 0);
  CHECK(read_file(tmp.file("d1.csv")) == read_file(tmp.file("d2.csv")));

  const std::string scaling_flags =
      "scaling --model si --regime large --d 5,9,13 --grid 8 --out ";
  REQUIRE(run_cli(scaling_flags + tmp.file("s1.csv")).code == 0);
  REQUIRE(run_cli(scaling_flags + tmp.file("s2.csv")).code == 0);
  CHECK(read_file(tmp.file("s1.csv")) == read_file(tmp.file("s2.csv")));

  const std::string sim_flags =
      "simulate --n 3 --p 0.01 --trials 300 --seed 7 --jobs 2 --out ";
  REQUIRE(run_cli(sim_flags + tmp.file("m1.json")).code == 0);
  REQUIRE(run_cli(sim_flags + tmp.file("m2.json")).code == 0);
  CHECK(read_file(tmp.file("m1.json")) == read_file(tmp.file("m2.json")));
}

TEST_CASE("simulate JSON document", "[cli]") {
  const RunResult res =
      run_cli("simulate --n 3 --p 0.01 --trials 200 --seed 3 --model si --eta 8");
  REQUIRE(res.code == 0);
  const auto j = nlohmann::json::parse(res.out);
  CHECK(j.at("model") == "si");
  CHECK(j.at("n") == 3);
  CHECK(j.at("eta") == 8.0);
  CHECK(j.at("trials") == 200);
  CHECK(j.at("seed") == 3);
  CHECK(j.at("p_log_hat").get<double>() >= 0.0);
  CHECK(j.at("p_log_hat").get<double>() <= 1.0);
  REQUIRE(j.at("ci95").is_array());
  CHECK(j.at("ci95").size() == 2);

  CHECK(run_cli("simulate --n 3 --p 0.01 --trials 200 --encoding ghz").code == 0);
  CHECK(run_cli("simulate --n 3 --p 0.01 --trials 200 --encoding steane").code == 1);
  CHECK(run_cli("simulate --n 3 --p 0.01 --trials 200 --noise-per-gate").code == 0);
  CHECK(run_cli("simulate --n 1 --p 0.01 --trials 200").code == 1);
}

TEST_CASE("seed comes from the environment when not passed", "[cli]") {
  TempDir tmp;
  REQUIRE(run_cli("simulate --n 3 --p 0.02 --trials 200 --out " + tmp.file("env.json"),
                  false, "ROTLOG_SEED=5 ")
              .code == 0);
  REQUIRE(run_cli("simulate --n 3 --p 0.02 --trials 200 --seed 5 --out " +
                  tmp.file("flag.json"))
              .code == 0);
  CHECK(read_file(tmp.file("env.json")) == read_file(tmp.file("flag.json")));

  // An explicit flag beats the environment.
  REQUIRE(run_cli("simulate --n 3 --p 0.02 --trials 200 --seed 5 --out " +
                      tmp.file("both.json"),
                  false, "ROTLOG_SEED=9 ")
              .code == 0);
  CHECK(read_file(tmp.file("both.json")) == read_file(tmp.file("flag.json")));
}

TEST_CASE("config file layering", "[cli]") {
  TempDir tmp;
  {
    std::ofstream cfg(tmp.file("cfg.json"));
    cfg << R"({"d": 7.0, "grid": 3})";
  }
  const RunResult from_cfg = run_cli("distance --config " + tmp.file("cfg.json"));
  REQUIRE(from_cfg.code == 0);
  CHECK(from_cfg.out.find("d=7 ") != std::string::npos);
  CHECK(from_cfg.out.find("grid=3") != std::string::npos);
  CHECK(line_count(from_cfg.out) == 2 + 3);

  // Explicit flags override file values.
  const RunResult overridden =
      run_cli("distance --config " + tmp.file("cfg.json") + " --d 9");
  REQUIRE(overridden.code == 0);
  CHECK(overridden.out.find("d=9 ") != std::string::npos);
  CHECK(overridden.out.find("grid=3") != std::string::npos);

  {
    std::ofstream cfg(tmp.file("bad.json"));
    cfg << R"({"banana": 1})";
  }
  const RunResult bad = run_cli("distance --config " + tmp.file("bad.json"), true);
  CHECK(bad.code == 1);
  CHECK(bad.out.find("unknown key 'banana'") != std::string::npos);

  const RunResult missing = run_cli("distance --config " + tmp.file("nope.json"), true);
  CHECK(missing.code == 1);
}

TEST_CASE("scaling output and overrides", "[cli]") {
  const RunResult res = run_cli("scaling --d 5,9 --grid 4");
  REQUIRE(res.code == 0);
  CHECK(res.out.find("# config: command=scaling model=sd regime=small params=headline") !=
        std::string::npos);
  CHECK(res.out.find("# crossing: p_phy=4.40000e-03 p_log=6.50000e-02") != std::string::npos);
  CHECK(res.out.find("model,regime,d,d_R,p_phy,p_log\n") != std::string::npos);
  // The default grid tops out above the pseudo-threshold, so two rows sit
  // outside [0, 1] and the sweep flags them.
  CHECK(res.out.find("# warning: 2 value(s) outside [0, 1] (extrapolated regime)") !=
        std::string::npos);
  CHECK(line_count(res.out) == 4 + 2 * 4);

  // Full-precision rows are addressed by parity.
  const RunResult fitted =
      run_cli("scaling --params fitted --parity even --model si --regime combined --d 5 --grid 3");
  REQUIRE(fitted.code == 0);
  CHECK(fitted.out.find("params=fitted parity=even") != std::string::npos);
  CHECK(fitted.out.find("# crossing: p_phy=4.20000e-03 p_log=6.43000e-02") != std::string::npos);

  // A beta override moves the crossing comment.
  const RunResult shifted = run_cli("scaling --d 5 --grid 3 --beta 0.005");
  REQUIRE(shifted.code == 0);
  CHECK(shifted.out.find("# crossing: p_phy=5.00000e-03") != std::string::npos);

  // Headline parameters exist for small/large only.
  CHECK(run_cli("scaling --regime combined --d 5").code == 1);
  CHECK(run_cli("scaling --d 5 --p-max 1.5").code == 1);
}

TEST_CASE("fit pipeline over a generated sweep", "[cli]") {
  TempDir tmp;
  REQUIRE(run_cli("scaling --model sd --regime small --d 4,7,10 --grid 12 "
                  "--p-min 1e-3 --p-max 1e-2 --out " +
                  tmp.file("data.csv"))
              .code == 0);

  const RunResult fit = run_cli("fit --input " + tmp.file("data.csv") + " --out " +
                                tmp.file("fit.json"));
  REQUIRE(fit.code == 0);
  CHECK(fit.out.find("# config: command=fit") != std::string::npos);
  CHECK(fit.out.find("model  regime    parity  d_R") != std::string::npos);
  CHECK(fit.out.find("fit status     : converged") != std::string::npos);

  const auto j = nlohmann::json::parse(read_file(tmp.file("fit.json")));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0].at("converged") == true);
  CHECK(j[0].at("alpha").get<double>() == Catch::Approx(0.065).epsilon(1e-3));
  CHECK(j[0].at("beta").get<double>() == Catch::Approx(0.0044).epsilon(1e-3));
  CHECK(j[0].at("gamma").get<double>() == Catch::Approx(0.68).epsilon(1e-3));
  CHECK(j[0].at("delta").get<double>() == Catch::Approx(-0.87).epsilon(1e-3));

  // Freezing parameters and filters are accepted.
  const RunResult frozen = run_cli("fit --input " + tmp.file("data.csv") +
                                   " --free alpha,gamma --init-beta 0.0044 "
                                   "--init-delta -0.87 --p-max 9e-3 --d-min 5");
  CHECK(frozen.code == 0);

  CHECK(run_cli("fit --input " + tmp.file("data.csv") + " --free banana").code == 1);
  CHECK(run_cli("fit --input " + tmp.file("missing.csv")).code == 1);
}

TEST_CASE("dr-sweep output", "[cli]") {
  const RunResult res = run_cli("dr-sweep --grid 5 --p 1e-3");
  REQUIRE(res.code == 0);
  CHECK(res.out.rfind("# config: command=dr-sweep model=si", 0) == 0);
  CHECK(res.out.find("model,regime,p_phy,d_R,p_log\n") != std::string::npos);
  CHECK(line_count(res.out) == 2 + 2 * 5);  // both regimes, one p, five points
  CHECK(res.out.find("si,small,1.00000e-03,2.00000e+00,") != std::string::npos);
  CHECK(res.out.find("si,large,") != std::string::npos);

  CHECK(run_cli("dr-sweep --p 2").code == 1);
  CHECK(run_cli("dr-sweep --dr-min 5 --dr-max 2").code == 1);
}

TEST_CASE("gnuplot companion scripts", "[cli]") {
  TempDir tmp;
  CHECK(run_cli("distance --grid 3 --gnuplot").code == 1);  // needs --out

  REQUIRE(run_cli("distance --grid 3 --gnuplot --out " + tmp.file("d.csv")).code == 0);
  const std::string script = read_file(tmp.file("d.csv.gp"));
  CHECK(script.find("set datafile separator ','") != std::string::npos);
  CHECK(script.find("plot '" + tmp.file("d.csv") + "'") != std::string::npos);

  REQUIRE(run_cli("dr-sweep --grid 3 --gnuplot --out " + tmp.file("r.csv")).code == 0);
  CHECK(read_file(tmp.file("r.csv.gp")).find("set logscale y") != std::string::npos);
}
