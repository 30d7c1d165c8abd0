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

#include <sstream>

#include <json.hpp>

#include "hlep/io.hpp"

using namespace hlep;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST_CASE("numbers carry twelve significant digits") {
  CHECK(format_number(pi) == "3.14159265359");
  CHECK(format_number(1.0) == "1");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.23456789012345e-20) == "1.23456789012e-20");
  CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("atlas CSV") {
  std::ostringstream empty;
  write_atlas_csv(empty, {});
  CHECK(empty.str().empty());

  const auto row = atlas_row(fourth_order_point());
  CHECK(row.branch == "fourth-order-point");
  CHECK(row.order == 4);
  CHECK(row.classification == "EP3");
  std::ostringstream os;
  write_atlas_csv(os, {row});
  CHECK(first_line(os.str()) == "branch,alpha,theta,q,re_lambda,im_lambda,order,classification");
  CHECK(os.str().find("\nfourth-order-point,1,1.57079632679,0,-1,") != std::string::npos);
}

TEST_CASE("atlas JSON mirrors the CSV columns") {
  std::ostringstream os;
  write_atlas_json(os, {atlas_row(fourth_order_point())});
  const auto j = nlohmann::json::parse(os.str());
  REQUIRE(j.size() == 1);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j[0].items()) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  std::vector<std::string> expected{"alpha", "branch", "classification", "im_lambda",
                                    "order", "q", "re_lambda", "theta"};
  CHECK(keys == expected);
  CHECK(j[0]["theta"].get<double>() == 1.57079632679);
}

TEST_CASE("sweep CSV and error marker") {
  std::vector<SweepRow> rows{
      {TrajectoryKind::hopping, 0.5, Chirality::minus, 100.0, 0.9, 0.4, 0.45, ""},
      {TrajectoryKind::flat, 0.1, Chirality::plus, 100.0, 0.0, 0.0, 0.0, "boom"}};
  std::ostringstream os;
  write_sweep_csv(os, rows);
  CHECK(os.str() ==
        "kind,q0,chi,T,F_normalized,F_raw,P\n"
        "hopping,0.5,-1,100,0.9,0.4,0.45\n"
        "flat,0.1,1,100,ERROR,ERROR,ERROR\n");

  std::ostringstream js;
  write_sweep_json(js, rows);
  const auto j = nlohmann::json::parse(js.str());
  CHECK(j[0]["chi"] == -1);
  CHECK(j[1]["P"] == "ERROR");
  CHECK(j[0].size() == 7);
}

TEST_CASE("history columns") {
  std::ostringstream os;
  write_history_csv(os, {HistoryRow{0.0, 1.0, 0.5, cplx(0.1, -0.2), 0.5}});
  CHECK(os.str() == "t,trace,rho_uu,re_rho_ud,im_rho_ud,rho_dd\n0,1,0.5,0.1,-0.2,0.5\n");
}

TEST_CASE("output is reproducible") {
  auto render = [] {
    std::vector<AtlasRow> rows;
    for (const auto& p : sample_third_order_lines(10)) rows.push_back(atlas_row(p));
    std::ostringstream os;
    write_atlas_csv(os, rows);
    return os.str();
  };
  CHECK(render() == render());
}
