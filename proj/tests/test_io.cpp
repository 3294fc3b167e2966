// Copyright 2026 The pagelab Authors
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

#include "pagelab/io.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace pagelab {
namespace {

PageCurveResult small_result() {
  PageCurveConfig c;
  c.n_qubits = 3;
  c.samples_per_point = 100;
  c.seed = 4;
  return estimate_page_curve(c);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.0), "0");
  EXPECT_EQ(format_double(-0.0), "0");
  EXPECT_EQ(format_double(0.8), "0.8");
  const double x = 0.1 + 0.2;
  EXPECT_EQ(std::stod(format_double(x)), x);
}

TEST(Csv, HeaderAndRows) {
  const std::string csv = to_csv(small_result());
  const auto rows = lines(csv);
  ASSERT_EQ(rows.size(), 5U);
  EXPECT_EQ(rows[0], "n_a,mean_entropy,entropy_se,mean_purity,purity_se,lubkin_purity,semiclassical_entropy");
  EXPECT_EQ(rows[1].rfind("0,0,0,1,0,1,0", 0), 0U) << rows[1];
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_EQ(std::count(rows[i].begin(), rows[i].end(), ','), 6);
}

TEST(Json, EmbedsConfigurationAndPoints) {
  const auto doc = to_json(small_result());
  EXPECT_EQ(doc["ensemble"], "haar_pure");
  EXPECT_EQ(doc["config"]["n_qubits"], 3);
  EXPECT_EQ(doc["config"]["seed"], 4);
  EXPECT_EQ(doc["config"]["entropy_order"], "von_neumann");
  EXPECT_FALSE(doc["config"].contains("workers"));
  ASSERT_EQ(doc["points"].size(), 4U);
  EXPECT_EQ(doc["points"][3]["n_a"], 3);
  EXPECT_EQ(doc["points"][1]["count"], 100);
  const auto reparsed = nlohmann::ordered_json::parse(doc.dump());
  EXPECT_EQ(reparsed, doc);
}

TEST(Svg, SelfContainedWithLabels) {
  const std::string svg = to_svg(small_result());
  EXPECT_EQ(svg.rfind("<svg", 0), 0U);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("Logarithm of Subsystem Dimension"), std::string::npos);
  EXPECT_NE(svg.find("Subsystem Entropy"), std::string::npos);
  EXPECT_NE(svg.find("Page Curve"), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
  EXPECT_EQ(svg.find("http://", svg.find("xmlns") + 60), std::string::npos);
  EXPECT_EQ(svg.find("<script"), std::string::npos);
}

TEST(StateFileFormat, ParsesCommentsAndBlankLines) {
  std::istringstream in("# Bell pair\n0.70710678118654752 0\n\n0 0   # nothing\n0 0\n0.70710678118654752 0\n");
  const StateFile f = read_state(in);
  EXPECT_EQ(f.state.n_qubits(), 2);
  EXPECT_NEAR(f.input_norm, 1.0, 1e-15);
  EXPECT_NEAR(f.state[3].real(), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(StateFileFormat, NormalizesInput) {
  std::istringstream in("3 0\n0 4\n");
  const StateFile f = read_state(in);
  EXPECT_DOUBLE_EQ(f.input_norm, 5.0);
  EXPECT_DOUBLE_EQ(f.state[0].real(), 0.6);
  EXPECT_DOUBLE_EQ(f.state[1].imag(), 0.8);
}

TEST(StateFileFormat, Errors) {
  std::istringstream three("1 0\n0 0\n0 0\n");
  EXPECT_THROW(read_state(three), ValidationError);
  std::istringstream one_field("1\n0 0\n");
  EXPECT_THROW(read_state(one_field), ValidationError);
  std::istringstream junk("1 0x\n0 0\n");
  EXPECT_THROW(read_state(junk), ValidationError);
  std::istringstream zero("0 0\n0 0\n");
  EXPECT_THROW(read_state(zero), ValidationError);
}

}  // namespace
}  // namespace pagelab
