// Copyright 2026 The ptflab Authors
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
//
// The text formats are the surface other tooling builds on; exercise
// them directly.

#include <sstream>

#include "doctest.h"
#include "ptf/poly.hpp"
#include "ptf/rng.hpp"
#include "ptf/tables.hpp"
#include "ptf/wht.hpp"

using ptf::ChowVector;
using ptf::MultilinearPoly;
using ptf::Rng;
using ptf::TruthTable;

namespace {

TruthTable random_table(int n, Rng& rng) {
  TruthTable t(n);
  for (std::size_t p = 0; p < t.size(); ++p) {
    if (rng.next_sign() < 0) t.flip(static_cast<std::uint32_t>(p));
  }
  return t;
}

}  // namespace

TEST_CASE("truth tables round-trip through both text bodies") {
  Rng rng(71);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 1 + static_cast<int>(rng.next_below(9));
    const TruthTable t = random_table(n, rng);
    for (const bool hex : {false, true}) {
      std::stringstream buf;
      t.save(buf, hex);
      CHECK(TruthTable::load(buf) == t);
    }
  }
}

TEST_CASE("truth table parser names the failure") {
  auto expect_error = [](const std::string& text, const char* needle) {
    std::istringstream in(text);
    try {
      (void)TruthTable::load(in);
      FAIL_CHECK("expected a parse error for: " << text);
    } catch (const ptf::ParseError& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_error("m=3\n++++++++", "header");
  expect_error("n=x\n", "dimension");
  expect_error("n=2\n++*+", "point 2");
  expect_error("n=3\n+++\n", "ended after 3");
  expect_error("n=2 hex\nzz", "hex digit");
  // An over-limit dimension surfaces as the module capacity error.
  std::istringstream too_big("n=25\n");
  CHECK_THROWS_AS((void)TruthTable::load(too_big), ptf::CapacityError);
}

TEST_CASE("whitespace in the table body is ignored") {
  std::istringstream in("n=2\n+ -\n\t+-\n");
  const TruthTable t = TruthTable::load(in);
  CHECK(t.get(0) == 1);
  CHECK(t.get(1) == -1);
  CHECK(t.get(2) == 1);
  CHECK(t.get(3) == -1);
}

TEST_CASE("coefficient vectors round-trip with full precision") {
  Rng rng(72);
  ChowVector v(6, 2);
  for (double& c : v.coeffs) c = 2.0 * rng.next_unit() - 1.0;
  std::stringstream buf;
  ptf::write_chow_csv(buf, v, "config {\"command\":\"test\"}\nsecond line");
  const ChowVector back = ptf::read_chow_csv(buf);
  CHECK(back.n == v.n);
  CHECK(back.d == v.d);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK(back.coeffs[i] == v.coeffs[i]);  // 17 digits round-trip exactly
  }
}

TEST_CASE("coefficient vector rows must follow indexer order") {
  std::istringstream in("2,1\n;0\n2;0.5\n1;0.5\n");
  CHECK_THROWS_AS((void)ptf::read_chow_csv(in), ptf::ParseError);
}

TEST_CASE("coefficient vector header and row errors") {
  std::istringstream missing("");
  CHECK_THROWS_AS((void)ptf::read_chow_csv(missing), ptf::ParseError);
  std::istringstream bad_header("banana\n");
  CHECK_THROWS_AS((void)ptf::read_chow_csv(bad_header), ptf::ParseError);
  std::istringstream short_body("2,1\n;0\n");
  CHECK_THROWS_AS((void)ptf::read_chow_csv(short_body), ptf::ParseError);
  std::istringstream no_sep("2,1\n0\n1,0.5\n2,0.5\n");
  CHECK_THROWS_AS((void)ptf::read_chow_csv(no_sep), ptf::ParseError);
}

TEST_CASE("polynomial json round trip") {
  MultilinearPoly p(5, 2);
  p.set_coeff(0, -0.75);
  p.set_coeff(0b00011, 1.25);
  p.set_coeff(0b10001, 0.5);
  const MultilinearPoly back =
      MultilinearPoly::from_json_text(p.to_json_text());
  CHECK(back.n() == 5);
  CHECK(back.d() == 2);
  CHECK(back.terms() == p.terms());
}

TEST_CASE("polynomial json rejections") {
  CHECK_THROWS_AS((void)MultilinearPoly::from_json_text("{"), ptf::ParseError);
  CHECK_THROWS_AS(
      (void)MultilinearPoly::from_json_text(R"({"n":3,"d":1})"),
      ptf::ParseError);
  // zero coefficient
  CHECK_THROWS_AS((void)MultilinearPoly::from_json_text(
                      R"({"n":3,"d":1,"terms":[{"vars":[1],"coef":0.0}]})"),
                  ptf::ParseError);
  // duplicate subset
  CHECK_THROWS_AS(
      (void)MultilinearPoly::from_json_text(
          R"({"n":3,"d":1,"terms":[{"vars":[1],"coef":1.0},
                                   {"vars":[1],"coef":2.0}]})"),
      ptf::ParseError);
  // unsorted vars
  CHECK_THROWS_AS((void)MultilinearPoly::from_json_text(
                      R"({"n":3,"d":2,"terms":[{"vars":[2,1],"coef":1.0}]})"),
                  ptf::ParseError);
  // degree overflow
  CHECK_THROWS_AS(
      (void)MultilinearPoly::from_json_text(
          R"({"n":3,"d":1,"terms":[{"vars":[1,2],"coef":1.0}]})"),
      ptf::ParseError);
  // variable out of range
  CHECK_THROWS_AS((void)MultilinearPoly::from_json_text(
                      R"({"n":3,"d":1,"terms":[{"vars":[4],"coef":1.0}]})"),
                  ptf::ParseError);
}

TEST_CASE("17-digit coefficient formatting is lossless") {
  Rng rng(73);
  for (int i = 0; i < 1000; ++i) {
    const double v = (2.0 * rng.next_unit() - 1.0) *
                     std::pow(10.0, static_cast<double>(rng.next_below(7)) -
                                        3.0);
    const std::string text = ptf::format_coefficient(v);
    CHECK(std::stod(text) == v);
  }
}
