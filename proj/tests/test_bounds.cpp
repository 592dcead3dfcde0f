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
#include <numbers>

#include <boost/math/quadrature/tanh_sinh.hpp>

#include "doctest.h"
#include "icin/bounds.hpp"
#include "icin/errors.hpp"
#include "icin/precoder.hpp"
#include "icin/quantizer.hpp"
#include "network_mc.hpp"
#include "test_support.hpp"

using namespace icin;

namespace {

// E[ln(1 - X)] where X has density N M x^(M-1) (1 - x^M)^(N-1): the mean log
// of cos^2 of the RVQ error, which the alternating binomial sum equals.
double mean_log_cos2(int bits, std::size_t nt) {
  const double n = std::ldexp(1.0, bits);
  const double m = static_cast<double>(nt - 1);
  boost::math::quadrature::tanh_sinh<double> integrator;
  return integrator.integrate(
      [&](double x, double complement) {
        const double one_minus = x > 0.5 ? complement : 1.0 - x;
        return std::log(one_minus) * n * m * std::pow(x, m - 1.0) *
               std::pow(1.0 - std::pow(x, m), n - 1.0);
      },
      0.0, 1.0);
}

LinkParams two_cell(double rho, double alpha, double eta, std::size_t nt) {
  return LinkParams{rho, {alpha}, eta, {eta}, nt};
}

}  // namespace

TEST_CASE("Lemma binomial sum: worked values") {
  CHECK(lemma1_binomial_sum(0, 2) == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(lemma1_binomial_sum(1, 2) == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(lemma1_binomial_sum(0, 3) == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(lemma1_beta_form(1, 2) == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(lemma1_beta_form(0, 2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(std::abs(lemma1_binomial_sum(2, 3) - lemma1_beta_form(2, 3)) < 1e-9);
  CHECK_THROWS_AS(lemma1_binomial_sum(kLemmaBinomialCap + 1, 3), CapacityError);
}

TEST_CASE("Lemma identity over the exact-arithmetic range") {
  for (int bits = 0; bits <= 6; ++bits)
    for (std::size_t nt = 2; nt <= 8; ++nt) {
      CAPTURE(bits);
      CAPTURE(nt);
      CHECK(std::abs(lemma1_binomial_sum(bits, nt) - lemma1_beta_form(bits, nt)) < 1e-12);
    }
}

TEST_CASE("Lemma identity in wide floating point up to the cap") {
  for (int bits = 7; bits <= kLemmaBinomialCap; ++bits)
    for (std::size_t nt : {2u, 4u, 8u}) {
      CAPTURE(bits);
      CAPTURE(nt);
      CHECK(std::abs(lemma1_binomial_sum(bits, nt) - lemma1_beta_form(bits, nt)) < 1e-12);
    }
}

TEST_CASE("Lemma value equals the mean log of cos^2 of the RVQ error") {
  for (int bits : {0, 1, 3, 6, 12, 20})
    for (std::size_t nt : {2u, 3u, 4u, 8u}) {
      CAPTURE(bits);
      CAPTURE(nt);
      CHECK(lemma1_beta_form(bits, nt) == doctest::Approx(mean_log_cos2(bits, nt)).epsilon(1e-8));
    }
}

TEST_CASE("Lemma beta form is negative and shrinks with bits") {
  const double at0 = lemma1_beta_form(0, 8);
  const double at35 = lemma1_beta_form(35, 8);
  CHECK(std::isfinite(at35));
  CHECK(at35 < 0.0);
  CHECK(std::abs(at35) < std::abs(at0));
  for (int b = 0; b < 40; ++b) CHECK(lemma1_beta_form(b + 1, 5) > lemma1_beta_form(b, 5));
}

TEST_CASE("desired term bound") {
  CHECK(desired_term_bound(0, 1.0, 2, 1.0) == doctest::Approx(-std::numbers::log2e));
  // log2(e) Gamma(8/7) 2^(-B/7) to leading order.
  const double at35 = desired_term_bound(35, 1.0, 8, 1.0);
  CHECK(at35 < 0.0);
  CHECK(at35 == doctest::Approx(-std::numbers::log2e * std::tgamma(8.0 / 7.0) / 32.0).epsilon(0.05));
  const double fine = desired_term_bound(210, 1.0, 8, 1.0);
  CHECK(fine < 0.0);
  CHECK(fine > -2e-9);
  CHECK(desired_term_bound(3, 0.4, 4, 5.0) - desired_term_bound(3, 0.8, 4, 5.0) ==
        doctest::Approx(-2.0));
  CHECK_THROWS_AS(desired_term_bound(3, 0.0, 4, 5.0), DomainError);
  CHECK_THROWS_AS(desired_term_bound(3, 1.0, 4, 0.0), DomainError);
}

TEST_CASE("interference term bound") {
  for (int b : {0, 3, 20}) CHECK(interference_term_bound(b, 0.0, 4) == doctest::Approx(1.0));
  CHECK(interference_term_bound(0, 1.0, 2) == doctest::Approx(1.0).epsilon(1e-14));
  for (int b = 8; b <= 40; b += 8) {
    const double asym = std::tgamma(4.0 / 3.0) * (4.0 / 3.0) * std::exp2(-b / 3.0);
    CHECK(interference_term_bound(b, 1.0, 4) == doctest::Approx(asym).epsilon(0.02));
    CHECK(interference_term_bound(b, 1.0, 4) < interference_term_bound(b - 1, 1.0, 4));
  }
  for (double eta : {0.0, 0.3, 0.9, 1.0})
    for (int b = 0; b <= 30; ++b)
      for (std::size_t nt : {2u, 4u, 8u}) {
        const double v = interference_term_bound(b, eta, nt);
        CHECK(v >= 0.0);
        CHECK(v <= 1.0 + 1e-12);
      }
}

TEST_CASE("interference residual dominated by its bound (Monte Carlo)") {
  // Nt = 4, two cells: BS nulls the quantized delayed direction of g.
  RngStream rng(11, 0);
  for (double eta : {0.9, 1.0})
    for (int bits : {0, 2, 4}) {
      std::vector<double> residual;
      for (int t = 0; t < 10000; ++t) {
        const CVector g_old = rayleigh_channel(rng, 4);
        const CVector g = gauss_markov_evolve(g_old, eta, rng);
        const CVector g_hat = rvq_quantize(normalized(g_old), bits, rng).direction;
        const Beamformer f = icin_beamformer({isotropic_direction(rng, 4), {g_hat}});
        residual.push_back(std::norm(inner(g, f.vector)));
      }
      const auto s = test::stats(residual);
      CAPTURE(eta);
      CAPTURE(bits);
      CHECK(s.mean <= interference_term_bound(bits, eta, 4) + 3 * s.se);
    }
}

TEST_CASE("loss upper bound: term-by-term evaluation") {
  // K=2, Nt=2, rho=10, alpha=0.5, eta=1, all B=2.
  // Desired magnitude log2(e) B(4,1) = log2(e)/4; interference term
  // 4 B(4,2) 2 = 0.4, so log2(1 + 10 * 0.5 * 0.4) = log2(3).
  const double per_user = std::numbers::log2e / 4.0 + std::log2(3.0);
  const LinkParams p = two_cell(10.0, 0.5, 1.0, 2);
  const BitAllocation a{2, {2}};
  CHECK(loss_upper_bound_user(p, a) == doctest::Approx(per_user).epsilon(1e-13));
  const std::vector<LinkParams> ps{p, p};
  const std::vector<BitAllocation> as{a, a};
  CHECK(loss_upper_bound(ps, as) == doctest::Approx(2 * per_user).epsilon(1e-13));
}

TEST_CASE("loss upper bound: limits and monotonicity") {
  const LinkParams p{10.0, {0.5, 0.2, 0.9}, 1.0, {1.0, 1.0, 1.0}, 6};
  CHECK(std::abs(loss_upper_bound_user(p, BitAllocation{200, {200, 200, 200}})) < 1e-9);
  const BitAllocation base{3, {2, 5, 1}};
  const double v = loss_upper_bound_user(p, base);
  for (std::size_t l = 0; l < 3; ++l) {
    BitAllocation more = base;
    more.interferer_bits[l] += 1;
    CHECK(loss_upper_bound_user(p, more) <= v);
  }
  BitAllocation more_desired = base;
  more_desired.desired_bits += 1;
  CHECK(loss_upper_bound_user(p, more_desired) < v);
  CHECK_THROWS_AS(loss_upper_bound_user(p, BitAllocation{1, {1}}), DomainError);
  LinkParams bad = p;
  bad.nt = 3;
  CHECK_THROWS_AS(loss_upper_bound_user(bad, base), DomainError);
}

TEST_CASE("approximate loss objective") {
  const LinkParams p{10.0, {0.5, 0.2}, 0.95, {0.99, 0.9}, 4};
  CHECK(approx_loss_user(p, BitAllocation{30, {30, 30}}) <
        approx_loss_user(p, BitAllocation{0, {0, 0}}));
  // Nt = 2: the desired part is log2(e) 2^-B.
  const LinkParams p2 = two_cell(3.0, 0.0, 1.0, 2);
  CHECK(approx_loss_user(p2, BitAllocation{3, {0}}) == doctest::Approx(std::numbers::log2e / 8.0));
  // The interference part is the bound's with the Gamma(b) a^-b approximation
  // of the beta function and rho scaled by Nt.
  for (std::size_t nt : {4u, 8u}) {
    const LinkParams q{10.0, {0.5, 0.3}, 1.0, {0.97, 0.9}, nt};
    const LinkParams q_scaled{10.0 * static_cast<double>(nt), {0.5, 0.3}, 1.0, {0.97, 0.9}, nt};
    const BitAllocation big{0, {24, 20}};
    const double desired = std::numbers::log2e * std::tgamma(static_cast<double>(nt) / (nt - 1));
    const double approx_int = approx_loss_user(q, big) - desired;
    const double bound_int = loss_upper_bound_user(q_scaled, big) +
                             std::numbers::log2e * lemma1_beta_form(0, nt);
    CAPTURE(nt);
    CHECK(approx_int == doctest::Approx(bound_int).epsilon(1e-3));
  }
}

TEST_CASE("network loss dominated by the loss bound (K=2 spot check)") {
  test::SymmetricNetwork net{4, 2, 10.0, 0.5, 1.0, 2};
  RngStream rng(12, 0);
  std::vector<double> loss;
  for (int t = 0; t < 3000; ++t) loss.push_back(test::network_loss_trial(net, rng));
  const auto s = test::stats(loss);
  const LinkParams p = two_cell(10.0, 0.5, 1.0, 4);
  const std::vector<LinkParams> ps{p, p};
  const std::vector<BitAllocation> as{{2, {2}}, {2, {2}}};
  CHECK(s.mean > 0.0);
  CHECK(s.mean <= loss_upper_bound(ps, as) + 3 * s.se);
}
