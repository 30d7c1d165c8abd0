// Copyright 2026 The hlep Authors
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

#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("hlep-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Run run(const std::string& args) {
  const fs::path out = scratch() / "stdout.txt";
  const fs::path err = scratch() / "stderr.txt";
  const std::string cmd = std::string(HLEP_CLI) + " " + args + " >" + out.string() + " 2>" +
                          err.string();
  const int status = std::system(cmd.c_str());
  return Run{WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

int count_lines(const std::string& s) {
  return static_cast<int>(std::count(s.begin(), s.end(), '\n'));
}

}  // namespace

TEST_CASE("usage errors exit 1 and name the parameter") {
  auto r = run("evolve --q0 1.5");
  CHECK(r.code == 1);
  CHECK(r.err.find("--q0") != std::string::npos);
  CHECK(r.err.find("[0, 1]") != std::string::npos);

  r = run("evolve --chi 3");
  CHECK(r.code == 1);
  CHECK(r.err.find("--chi") != std::string::npos);

  r = run("sweep --q0-grid 0:2:3");
  CHECK(r.code == 1);
  CHECK(r.err.find("--q0-grid") != std::string::npos);

  r = run("evolve --kind hopping --T 100 --T1 10 --T2 10");
  CHECK(r.code == 1);
  CHECK(r.err.find("2*T1 + T2") != std::string::npos);

  r = run("ep-map --theta-grid 0:4:5");
  CHECK(r.code == 1);
  CHECK(r.err.find("[0, pi]") != std::string::npos);

  r = run("evolve --format xml");
  CHECK(r.code == 1);
  CHECK(r.err.find("csv|json") != std::string::npos);

  r = run("nonsense");
  CHECK(r.code == 1);
}

TEST_CASE("evolve writes metrics") {
  const auto r = run("evolve --kind flat --q0 1");
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 2);
  CHECK(r.out.rfind("kind,q0,chi,T,F_normalized,F_raw,P,", 0) == 0);
  CHECK(r.out.find("\nflat,1,1,100,") != std::string::npos);
}

TEST_CASE("evolve with history and json") {
  const fs::path hist = scratch() / "history.json";
  const auto r = run("evolve --kind tilted --q0 0.5 --format json --history " + hist.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"F_normalized\"") != std::string::npos);
  const std::string h = slurp(hist);
  CHECK(h.find("\"re_rho_ud\"") != std::string::npos);
}

TEST_CASE("sweep: one-point grid gives one row") {
  const auto r = run("sweep --kind flat --q0-grid 0.5:0.5:1");
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 2);
}

TEST_CASE("sweep: all kinds") {
  const auto r = run("sweep --kind all --q0-grid 0:1:3");
  REQUIRE(r.code == 0);
  CHECK(count_lines(r.out) == 10);
}

TEST_CASE("config file with flag override") {
  const fs::path cfg = scratch() / "config.json";
  const fs::path out = scratch() / "sweep.csv";
  {
    std::ofstream f(cfg);
    f << R"({"kind": "flat", "q0_grid": "0:1:5", "chi": -1, "out": ")" << out.string() << R"("})";
  }
  auto r = run("sweep --config " + cfg.string() + " --q0-grid 0:1:2");
  REQUIRE(r.code == 0);
  const std::string table = slurp(out);
  CHECK(count_lines(table) == 3);
  CHECK(table.find("flat,0,-1,") != std::string::npos);

  // Identical config, identical bytes.
  run("sweep --config " + cfg.string() + " --q0-grid 0:1:2");
  CHECK(slurp(out) == table);

  {
    std::ofstream f(cfg);
    f << R"({"colour": "purple"})";
  }
  r = run("sweep --config " + cfg.string());
  CHECK(r.code == 1);
  CHECK(r.err.find("colour") != std::string::npos);
}

TEST_CASE("ep-map: empty grid") {
  const fs::path out = scratch() / "empty.csv";
  const auto r = run("ep-map --alpha-grid 0.5:2:0 --out " + out.string());
  REQUIRE(r.code == 0);
  CHECK(fs::file_size(out) == 0);
  CHECK(r.out.find("warnings: 0") != std::string::npos);
  CHECK(r.out.find("numeric-order-4: 0") != std::string::npos);
}

TEST_CASE("ep-map: line export spans q in [0, 1] and one fourth-order record") {
  const fs::path out = scratch() / "atlas.csv";
  const auto r = run("ep-map --alpha-grid 0.1:3:12 --theta-grid 0.05:3.0915926535898:12 "
                     "--q-grid 0:1:6 --orders 4 --out " + out.string());
  REQUIRE(r.code == 0);
  std::ifstream in(out);
  std::string line;
  std::getline(in, line);
  double qmin = 1.0, qmax = 0.0;
  int fourth = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells[0] == "third-order-line-1") {
      qmin = std::min(qmin, std::stod(cells[3]));
      qmax = std::max(qmax, std::stod(cells[3]));
    }
    if (cells[0] == "numeric-order-4") {
      ++fourth;
      CHECK(std::abs(std::stod(cells[1]) - 1.0) < 1e-6);
      CHECK(cells[7] == "EP3");
    }
  }
  CHECK(qmin == 0.0);
  CHECK(qmax == 1.0);
  CHECK(fourth == 1);
  CHECK(r.out.find("warnings: 0") != std::string::npos);
}

TEST_CASE("validate exits 0 on a healthy build") {
  const auto r = run("validate --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"evolution-conservation\"") != std::string::npos);
}

TEST_CASE("validate exits 3 when a suite fails") {
  const auto r = run("validate --tol 1e-2");
  CHECK(r.code == 3);
  CHECK(r.err.find("FAIL atlas-cross-validation") != std::string::npos);
}
