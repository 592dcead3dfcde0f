// Copyright 2026 The icin-feedback Authors
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

#include <cmath>
#include <set>

#include "doctest.h"
#include "icin/rng.hpp"
#include "test_support.hpp"

using icin::RngStream;

TEST_CASE("philox block zero matches the published known-answer vector") {
  // Philox4x32-10, counter 0, key 0.
  RngStream rng(0, 0);
  CHECK(rng.next_u32() == 0x6627e8d5u);
  CHECK(rng.next_u32() == 0xe169c58du);
  CHECK(rng.next_u32() == 0xbc57ac4cu);
  CHECK(rng.next_u32() == 0x9b00dbd8u);
}

TEST_CASE("streams are reproducible and distinct") {
  RngStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  for (int i = 0; i < 16; ++i) {
    const auto x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
  }
}

TEST_CASE("substreams depend only on seed, parent id and tag") {
  RngStream parent(5, 11);
  parent.next_u64();  // parent position must not matter
  RngStream s1 = parent.substream(3);
  RngStream s2 = RngStream(5, 11).substream(3);
  RngStream s3 = RngStream(5, 11).substream(4);
  const auto v = s1.next_u64();
  CHECK(v == s2.next_u64());
  CHECK(v != s3.next_u64());
}

TEST_CASE("uniform stays inside the open unit interval with the right moments") {
  RngStream rng(1, 2);
  std::vector<double> u(200000);
  for (auto& x : u) {
    x = rng.uniform();
    REQUIRE(x > 0.0);
    REQUIRE(x < 1.0);
  }
  const auto s = icin::test::stats(u);
  CHECK(std::abs(s.mean - 0.5) < 4 * s.se);
  CHECK(icin::test::ks_one_sample(u, [](double x) { return x; }) < 1.63 / std::sqrt(2e5));
}

TEST_CASE("normals and complex normals have unit variance") {
  RngStream rng(9, 9);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0, c2 = 0.0, re2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sum += z;
    sum2 += z * z;
    const auto c = rng.complex_normal();
    c2 += std::norm(c);
    re2 += c.real() * c.real();
  }
  CHECK(std::abs(sum / n) < 0.015);
  CHECK(std::abs(sum2 / n - 1.0) < 0.02);
  CHECK(std::abs(c2 / n - 1.0) < 0.02);
  CHECK(std::abs(re2 / n - 0.5) < 0.01);
}
