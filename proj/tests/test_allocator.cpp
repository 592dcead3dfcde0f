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

#include "doctest.h"
#include "icin/allocator.hpp"
#include "icin/errors.hpp"
#include "icin/rng.hpp"

using namespace icin;

namespace {

std::vector<InterfererWeight> weights(std::initializer_list<double> w) {
  std::vector<InterfererWeight> out;
  std::size_t i = 0;
  for (double v : w) out.push_back({i++, v});
  return out;
}

LinkParams random_params(RngStream& rng) {
  LinkParams p;
  const std::size_t k = 2 + rng.next_u32() % 3;  // 2..4 cells
  p.nt = k + rng.next_u32() % (7 - k);           // k..6 antennas
  p.rho = std::pow(10.0, -1.0 + 3.0 * rng.uniform());
  p.eta_desired = 0.8 + 0.2 * rng.uniform();
  for (std::size_t l = 1; l < k; ++l) {
    p.alphas.push_back(rng.uniform() < 0.15 ? 0.0 : rng.uniform());
    p.eta_interferers.push_back(0.7 + 0.3 * rng.uniform());
  }
  return p;
}

}  // namespace

TEST_CASE("interferer split: worked example") {
  // B_i = 10, Nt = 3, weights 1 and 1/4: 5 +- 2 log2(2).
  const auto w = weights({1.0, 0.25});
  const auto split = partition_interferer_bits(10.0, w, 3);
  REQUIRE(split.size() == 2);
  CHECK(split[0] == doctest::Approx(7.0).epsilon(1e-14));
  CHECK(split[1] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(effective_interferer_set(w, 10.0, 3) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("interferer split sums to the budget and orders by weight") {
  const auto w = weights({0.3, 0.9, 0.5, 0.7});
  const auto split = partition_interferer_bits(40.0, w, 4);
  double sum = 0.0;
  for (double b : split) sum += b;
  CHECK(sum == doctest::Approx(40.0));
  CHECK(split[1] > split[3]);
  CHECK(split[3] > split[2]);
  CHECK(split[2] > split[0]);
  // Equal weights give equal shares.
  const auto eq = partition_interferer_bits(9.0, weights({0.4, 0.4, 0.4}), 5);
  for (double b : eq) CHECK(b == doctest::Approx(3.0));
}

TEST_CASE("effective set drops weak interferers") {
  const auto w = weights({1.0, 1.0, 0.001, 0.0005});
  const auto set = effective_interferer_set(w, 10.0, 8);
  CHECK(set == std::vector<std::size_t>{0, 1});
  for (double b : partition_interferer_bits(10.0, std::vector<InterfererWeight>{w[0], w[1]}, 8))
    CHECK(b >= 0.0);
  // With zero budget only the strongest (tied) members survive.
  CHECK(effective_interferer_set(w, 0.0, 8) == std::vector<std::size_t>{0, 1});
  // A large budget keeps everyone.
  CHECK(effective_interferer_set(w, 500.0, 8).size() == 4);
  CHECK_THROWS_AS(partition_interferer_bits(10.0, w, 8), DomainError);
  CHECK_THROWS_AS(effective_interferer_set(w, -1.0, 8), DomainError);
}

TEST_CASE("desired-bit closed forms") {
  const auto w = weights({0.5, 0.5});
  // Low SNR: B_k = Btot/3 - (2*3/3) log2(rho (4/3) 0.5) with nt = 4.
  const double expected = 12.0 / 3.0 - 2.0 * std::log2(0.1 * (4.0 / 3.0) * 0.5);
  CHECK(desired_bits_low_snr(12, 0.1, w, 4, 3) == doctest::Approx(expected));
  CHECK(desired_bits_low_snr(12, 0.1, w, 3, 3) == 0.0);  // nt == K
  CHECK(desired_bits_low_snr(12, 1e-9, w, 4, 3) == 12.0);  // clamped
  // High SNR is SNR independent: (nt-1) log2((k-1) Gamma(nt/(nt-1))).
  const double hi = 7.0 * std::log2(5.0 * std::tgamma(8.0 / 7.0));
  CHECK(desired_bits_high_snr(8, 6, 35) == doctest::Approx(hi));
  CHECK(desired_bits_high_snr(8, 1, 35) == 0.0);
  CHECK(desired_bits_high_snr(8, 40, 3) == 3.0);
}

TEST_CASE("rounding meets the budget exactly") {
  const LinkParams p{5.0, {0.9, 0.4, 0.1}, 0.99, {0.97, 0.97, 0.97}, 6};
  const auto obj = [&](const BitAllocation& a) { return approx_loss_user(p, a); };
  FractionalAllocation f{4.4, {3.3, 2.2, 1.1}};
  const BitAllocation a = round_allocation(f, 11, obj);
  CHECK(a.total() == 11);
  CHECK(std::abs(a.desired_bits - 4.4) < 1.0);
  FractionalAllocation frozen{2.0, {4.5, 4.5, 0.0}};
  const BitAllocation b = round_allocation(frozen, 11, obj, {.freeze_desired = true});
  CHECK(b.desired_bits == 2);
  CHECK(b.total() == 11);
  CHECK_THROWS_AS(round_allocation(FractionalAllocation{1.0, {1.0}}, 5, obj), DomainError);
}

TEST_CASE("equal-bit baseline") {
  CHECK(equal_bit_allocation(35, 7) == BitAllocation{5, {5, 5, 5, 5, 5, 5}});
  CHECK(equal_bit_allocation(7, 7) == BitAllocation{1, {1, 1, 1, 1, 1, 1}});
  CHECK(equal_bit_allocation(10, 7) == BitAllocation{2, {2, 2, 1, 1, 1, 1}});
  CHECK(equal_bit_allocation(3, 1) == BitAllocation{3, {}});
  CHECK(equal_bit_allocation(10, 7).to_pipe_string() == "2|2|2|1|1|1|1");
  CHECK(equal_bit_allocation(10, 3).to_tuple_string() == "(4, 3, 3)");
}

TEST_CASE("allocate: degenerate links") {
  // No interference at all: every bit goes to the desired channel.
  const LinkParams quiet{50.0, {0.0, 0.0}, 0.99, {0.9, 0.9}, 4};
  CHECK(allocate(9, quiet) == BitAllocation{9, {0, 0}});
  // nt == K: the desired channel gets nothing.
  const LinkParams tight{5.0, {0.6, 0.3}, 0.99, {0.95, 0.95}, 3};
  CHECK(allocate(10, tight).desired_bits == 0);
  CHECK(allocate(10, tight).total() == 10);
  CHECK(exhaustive_allocation(10, tight).desired_bits == 0);
  CHECK(allocate(0, tight) == BitAllocation{0, {0, 0}});
  CHECK_THROWS_AS(allocate(-1, tight), DomainError);
}

TEST_CASE("allocate favors strong, fresh interferers") {
  const LinkParams p{20.0, {1.0, 1.0, 0.05, 0.05}, 0.99, {0.99, 0.5, 0.99, 0.99}, 8};
  const BitAllocation a = allocate(24, p);
  CHECK(a.total() == 24);
  CHECK(a.interferer_bits[0] >= a.interferer_bits[1]);
  CHECK(a.interferer_bits[0] >= a.interferer_bits[2]);
}

TEST_CASE("allocate is close to the exhaustive optimum") {
  RngStream rng(21, 0);
  int checked = 0;
  for (int i = 0; i < 150; ++i) {
    const LinkParams p = random_params(rng);
    const int btot = static_cast<int>(rng.next_u32() % 13);
    const BitAllocation a = allocate(btot, p);
    const BitAllocation best = exhaustive_allocation(btot, p);
    CHECK(a.total() == btot);
    CAPTURE(a.to_tuple_string());
    CAPTURE(best.to_tuple_string());
    CHECK(approx_loss_user(p, a) <= 1.05 * approx_loss_user(p, best) + 1e-12);
    CHECK(approx_loss_user(p, best) <= approx_loss_user(p, a) + 1e-12);
    ++checked;
  }
  CHECK(checked == 150);
}

TEST_CASE("exhaustive search capacity guard") {
  const LinkParams p{1.0, std::vector<double>(9, 0.5), 1.0, std::vector<double>(9, 1.0), 10};
  CHECK_THROWS_AS(exhaustive_allocation(40, p), CapacityError);
}

TEST_CASE("regime parsing") {
  CHECK(parse_regime("low_snr") == Regime::kLowSnr);
  CHECK(parse_regime("high") == Regime::kHighSnr);
  CHECK(to_string(Regime::kAuto) == "auto");
  CHECK_THROWS_AS(parse_regime("medium"), DomainError);
  const LinkParams weak{0.5, {0.5}, 1.0, {1.0}, 3};
  const LinkParams strong{50.0, {0.5}, 1.0, {1.0}, 3};
  CHECK(resolve_regime(weak, Regime::kAuto) == Regime::kLowSnr);
  CHECK(resolve_regime(strong, Regime::kAuto) == Regime::kHighSnr);
  CHECK(resolve_regime(strong, Regime::kLowSnr) == Regime::kLowSnr);
}
