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
#include <sstream>

#include "doctest.h"
#include "icin/errors.hpp"
#include "icin/fading.hpp"
#include "icin/precoder.hpp"
#include "icin/quantizer.hpp"
#include "icin/scenario.hpp"
#include "icin/simulator.hpp"
#include "test_support.hpp"

using namespace icin;

TEST_CASE("hex scenario geometry") {
  const Scenario s = build_hex_scenario(SimConfig{});
  CHECK(s.bs_positions[0].x == 0.0);
  CHECK(s.bs_positions[0].y == 0.0);
  for (std::size_t j = 1; j < kHexCells; ++j)
    CHECK(std::hypot(s.bs_positions[j].x, s.bs_positions[j].y) ==
          doctest::Approx(692.8203230275509).epsilon(1e-12));
  // Clockwise from the northeast.
  CHECK(s.bs_positions[1].x > 0.0);
  CHECK(s.bs_positions[1].y > 0.0);
  CHECK(s.bs_positions[2].y < 0.0);
  CHECK(s.bs_positions[3].x == doctest::Approx(0.0).scale(1000));
  CHECK(s.bs_positions[6].y > 0.0);
  CHECK(s.interferer_delay_symbols() >= s.feedback_delay_symbols);
}

TEST_CASE("table defaults") {
  const SimConfig c;
  CHECK(c.es_dbw == 3.0);
  CHECK(c.noise_dbw == -144.0);
  CHECK(c.cell_radius_m == 400.0);
  CHECK(c.nt == 8);
  const SimConfig loaded = load_config(std::string(ICIN_SOURCE_DIR) + "/configs/table1.json");
  CHECK(loaded.es_dbw == 3.0);
  CHECK(loaded.noise_dbw == -144.0);
  CHECK(build_hex_scenario(loaded).bs_positions.size() - 1 == 6);
}

TEST_CASE("trajectory link parameters") {
  const Scenario s = build_hex_scenario(SimConfig{});
  for (double d : {1.0, 10.0, 100.0, 250.0, 400.0}) {
    const LinkParams p = user_link_params(s, d);
    CAPTURE(d);
    CHECK(std::abs(p.alphas[1] - p.alphas[2]) < 1e-12);  // mirror symmetry
    CHECK(std::abs(p.alphas[0] - p.alphas[3]) < 1e-12);
    CHECK(std::abs(p.alphas[4] - p.alphas[5]) < 1e-12);
  }
  const LinkParams edge = user_link_params(s, 400.0);
  CHECK(edge.alphas[1] == doctest::Approx(1.0));
  for (std::size_t l : {0u, 3u, 4u, 5u}) CHECK(edge.alphas[l] < edge.alphas[1]);
  CHECK(edge.rho == doctest::Approx(22.865).epsilon(1e-4));
  const LinkParams near = user_link_params(s, 10.0);
  CHECK(near.rho > 1e6);
  for (double a : near.alphas) CHECK(a < 1e-4);
  CHECK(edge.eta_desired == doctest::Approx(clarke_correlation(1, s.doppler)));
  CHECK(edge.eta_interferers[0] == doctest::Approx(clarke_correlation(2, s.doppler)));
  CHECK_THROWS_AS(user_link_params(s, 0.5), DomainError);
  CHECK_THROWS_AS(user_link_params(s, 401.0), DomainError);
}

TEST_CASE("config parsing") {
  const SimConfig c = parse_config(R"({"btot": 21, "regime": "low_snr", "trials": 10})");
  CHECK(c.btot == 21);
  CHECK(c.regime == Regime::kLowSnr);
  CHECK(c.trials == 10);
  CHECK(c.nt == 8);
  CHECK_THROWS_AS(parse_config(R"({"warp": 1})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"nt": "eight"})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"nt": 4})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"cell_radius_m": -3})"), ConfigError);
  CHECK_THROWS_AS(parse_config(R"({"regime": "medium"})"), ConfigError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ConfigError);
  CHECK_THROWS_AS(parse_config("{"), ConfigError);
  const SimConfig round = parse_config(config_to_json(c));
  CHECK(round.btot == 21);
  CHECK(round.regime == Regime::kLowSnr);
}

TEST_CASE("run_trial: perfect CSI limit") {
  SimConfig c;
  c.velocity_mps = 1e-9;  // eta -> 1
  const Scenario s = build_hex_scenario(c);
  const LinkParams p = user_link_params(s, 300.0);
  const BitAllocation fine{300, {300, 300, 300, 300, 300, 300}};
  RngStream rng(3, 0);
  double lim = 0.0, full = 0.0;
  for (int t = 0; t < 200; ++t) {
    const TrialResult r = run_trial(s, p, fine, rng, 8);
    lim += r.rate_limited;
    full += r.rate_fullcsi;
  }
  CHECK(lim / full == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("run_trial: same stream gives the same result") {
  const Scenario s = build_hex_scenario(SimConfig{});
  const LinkParams p = user_link_params(s, 400.0);
  const BitAllocation a{15, {0, 10, 10, 0, 0, 0}};
  RngStream r1(9, 42), r2(9, 42);
  const TrialResult x = run_trial(s, p, a, r1, 8);
  const TrialResult y = run_trial(s, p, a, r2, 8);
  CHECK(x.rate_limited == y.rate_limited);
  CHECK(x.rate_fullcsi == y.rate_fullcsi);
  CHECK(x.rate_limited >= 0.0);
}

TEST_CASE("zero bits on a strong interferer leaves residual interference") {
  // Oracle check on the BS-side beam: a random codeword almost surely misses
  // the null space of the true direction.
  RngStream rng(4, 0);
  for (int t = 0; t < 100; ++t) {
    const CVector g = rayleigh_channel(rng, 8);
    const CVector g_hat = rvq_quantize(normalized(g), 0, rng).direction;
    std::vector<CVector> nulls{g_hat};
    for (int j = 0; j < 5; ++j) nulls.push_back(isotropic_direction(rng, 8));
    const Beamformer f = icin_beamformer({isotropic_direction(rng, 8), nulls});
    CHECK(std::norm(inner(g, f.vector)) > 0.0);
  }
}

TEST_CASE("sweep report: determinism, envelope and CSV layout") {
  SimConfig c;
  c.trials = 300;
  c.distance_points = {100.0, 250.0, 400.0};
  const SweepReport one = run_sweep(SweepKind::kDistance, c, 1);
  const SweepReport three = run_sweep(SweepKind::kDistance, c, 3);
  CHECK(to_csv(one) == to_csv(three));
  REQUIRE(one.rows.size() == 3);
  for (const auto& r : one.rows) {
    CHECK(r.rate_fullcsi + 2 * r.se_fullcsi >= r.rate_adaptive - 2 * r.se_adaptive);
    CHECK(r.rate_fullcsi + 2 * r.se_fullcsi >= r.rate_equal - 2 * r.se_equal);
    CHECK(r.norm_adaptive >= 0.0);
    CHECK(r.norm_adaptive <= 1.05);
    CHECK(r.allocation.total() == c.btot);
  }
  const std::string csv = to_csv(one);
  std::istringstream in(csv);
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "sweep_value,rate_adaptive,rate_equal,rate_fullcsi,norm_adaptive,norm_equal,allocation");
  std::getline(in, line);
  CHECK(line.rfind("100,", 0) == 0);
  CHECK(std::count(line.begin(), line.end(), ',') == 6);
  CHECK(std::count(line.begin(), line.end(), '|') == 6);
  CHECK(csv.find('\r') == std::string::npos);
}

TEST_CASE("fixed-codebook sweeps are repeatable and differ from fresh codebooks") {
  SimConfig c;
  c.trials = 40;
  c.distance_points = {200.0, 400.0};
  c.fixed_codebook = true;
  const std::string a = to_csv(run_sweep(SweepKind::kDistance, c, 1));
  CHECK(a == to_csv(run_sweep(SweepKind::kDistance, c, 2)));
  c.fixed_codebook = false;
  CHECK(a != to_csv(run_sweep(SweepKind::kDistance, c, 1)));
  CHECK(parse_config(R"({"fixed_codebook": true})").fixed_codebook);
  CHECK_THROWS_AS(parse_config(R"({"fixed_codebook": 1})"), ConfigError);
}

TEST_CASE("bits and delay sweeps use the cell edge") {
  SimConfig c;
  c.trials = 20;
  c.btot_values = {7, 35};
  c.backhaul_delays = {0, 3};
  const SweepReport bits = run_sweep(SweepKind::kBits, c, 1);
  REQUIRE(bits.rows.size() == 2);
  CHECK(bits.rows[0].allocation == BitAllocation{7, {0, 0, 0, 0, 0, 0}});
  CHECK(bits.rows[1].allocation.total() == 35);
  const SweepReport delay = run_sweep(SweepKind::kDelay, c, 1);
  REQUIRE(delay.rows.size() == 2);
  CHECK(delay.rows[1].sweep_value == 3.0);
  CHECK(parse_sweep_kind("bits") == SweepKind::kBits);
  CHECK_THROWS_AS(parse_sweep_kind("angle"), DomainError);
}

TEST_CASE("bits to the far interferers do not grow toward the edge") {
  const Scenario s = build_hex_scenario(SimConfig{});
  BitAllocation prev = allocate(35, user_link_params(s, 40.0));
  for (double d = 80.0; d <= 400.0; d += 40.0) {
    const BitAllocation a = allocate(35, user_link_params(s, d));
    CAPTURE(d);
    for (std::size_t l : {0u, 3u, 4u, 5u}) CHECK(a.interferer_bits[l] <= prev.interferer_bits[l]);
    prev = a;
  }
}
