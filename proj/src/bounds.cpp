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

#include "icin/bounds.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numbers>
#include <sstream>

#include "icin/errors.hpp"
#include "icin/numerics.hpp"

namespace icin {
namespace {

namespace mp = boost::multiprecision;
using WideFloat = mp::number<mp::cpp_bin_float<1300, mp::digit_base_2>>;

constexpr int kExactRationalBits = 6;

void require_nt(std::size_t nt, const char* what) {
  if (nt < 2) throw DomainError(std::string(what) + ": nt must be >= 2");
}

void require_bits(int bits, const char* what) {
  if (bits < 0) throw DomainError(std::string(what) + ": negative bit count");
}

// Shared driver: accumulate sum_i C(N, i) (-1)^i H_{iM} in type T.
template <typename T>
T alternating_harmonic_sum(std::size_t n, std::size_t m) {
  T total = 0;
  T binom = 1;     // C(n, i)
  T harmonic = 0;  // H_{i m}
  std::size_t h_index = 0;
  for (std::size_t i = 0; i <= n; ++i) {
    if (i > 0) {
      binom = binom * T(n - i + 1) / T(i);
      for (; h_index < i * m; ++h_index) harmonic += T(1) / T(h_index + 1);
    }
    if (i % 2 == 0)
      total += binom * harmonic;
    else
      total -= binom * harmonic;
  }
  return total;
}

}  // namespace

void LinkParams::validate(bool require_nulling) const {
  if (!(rho >= 0.0) || !std::isfinite(rho)) throw DomainError("LinkParams: rho must be >= 0");
  if (alphas.size() != eta_interferers.size())
    throw DomainError("LinkParams: alphas and eta_interferers differ in length");
  for (double a : alphas)
    if (!(a >= 0.0 && a <= 1.0)) throw DomainError("LinkParams: alpha outside [0, 1]");
  for (double e : eta_interferers)
    if (!(std::abs(e) <= 1.0)) throw DomainError("LinkParams: eta outside [-1, 1]");
  if (!(std::abs(eta_desired) <= 1.0)) throw DomainError("LinkParams: eta outside [-1, 1]");
  if (nt < 2) throw DomainError("LinkParams: nt must be >= 2");
  if (require_nulling && nt < n_cells()) {
    std::ostringstream os;
    os << "LinkParams: nulling needs nt >= K, got nt=" << nt << " K=" << n_cells();
    throw DomainError(os.str());
  }
}

double lemma1_binomial_sum(int bits, std::size_t nt) {
  require_bits(bits, "lemma1_binomial_sum");
  require_nt(nt, "lemma1_binomial_sum");
  if (bits > kLemmaBinomialCap) {
    std::ostringstream os;
    os << "lemma1_binomial_sum: " << bits << " bits exceeds cap " << kLemmaBinomialCap
       << "; use lemma1_beta_form";
    throw CapacityError(os.str());
  }
  const std::size_t n = std::size_t{1} << bits;
  const std::size_t m = nt - 1;
  if (bits <= kExactRationalBits)
    return alternating_harmonic_sum<mp::cpp_rational>(n, m).convert_to<double>();
  // Terms reach C(N, N/2) ~ 2^N; 1300 bits leaves > 250 bits after cancellation.
  return alternating_harmonic_sum<WideFloat>(n, m).convert_to<double>();
}

double lemma1_beta_form(int bits, std::size_t nt) {
  require_bits(bits, "lemma1_beta_form");
  require_nt(nt, "lemma1_beta_form");
  const double n = std::ldexp(1.0, bits);
  const double m = static_cast<double>(nt - 1);
  double sum = 0.0;
  for (std::size_t i = 1; i <= nt - 1; ++i) sum += beta_fn(n, static_cast<double>(i) / m);
  return -sum / m;
}

double desired_term_bound(int bits, double eta, std::size_t nt, double rho) {
  if (eta == 0.0 || rho == 0.0)
    throw DomainError("desired_term_bound: eta and rho must be nonzero (log diverges)");
  if (!(rho > 0.0)) throw DomainError("desired_term_bound: rho must be positive");
  return std::log2(rho * eta * eta) + std::numbers::log2e * lemma1_beta_form(bits, nt);
}

double interference_term_bound(int bits, double eta, std::size_t nt) {
  require_bits(bits, "interference_term_bound");
  require_nt(nt, "interference_term_bound");
  const double b = static_cast<double>(nt) / static_cast<double>(nt - 1);
  // 2^B B(2^B, b) evaluated in log space; B may be large.
  const double quant = std::exp(bits * std::numbers::ln2 + ln_beta(std::ldexp(1.0, bits), b)) * b;
  const double e2 = eta * eta;
  return (1.0 - e2) + e2 * quant;
}

double loss_upper_bound_user(const LinkParams& params, const BitAllocation& allocation) {
  params.validate();
  if (allocation.interferer_bits.size() != params.alphas.size())
    throw DomainError("loss_upper_bound: allocation does not match interferer count");
  if (params.eta_desired == 0.0)
    throw DomainError("loss_upper_bound: eta_desired = 0 makes log2(eta^2) diverge");
  double interference = 0.0;
  for (std::size_t l = 0; l < params.alphas.size(); ++l)
    interference += params.alphas[l] * interference_term_bound(allocation.interferer_bits[l],
                                                               params.eta_interferers[l], params.nt);
  // -lemma1_beta_form is the magnitude (log2 e / (nt-1)) sum B(2^Bk, i/(nt-1)).
  return std::log2(params.eta_desired * params.eta_desired) -
         std::numbers::log2e * lemma1_beta_form(allocation.desired_bits, params.nt) +
         std::log2(1.0 + params.rho * interference);
}

double loss_upper_bound(std::span<const LinkParams> params,
                        std::span<const BitAllocation> allocations) {
  if (params.size() != allocations.size())
    throw DomainError("loss_upper_bound: one allocation per user required");
  double total = 0.0;
  for (std::size_t k = 0; k < params.size(); ++k)
    total += loss_upper_bound_user(params[k], allocations[k]);
  return total;
}

double approx_loss_user(const LinkParams& params, double desired_bits,
                        std::span<const double> interferer_bits) {
  if (interferer_bits.size() != params.alphas.size())
    throw DomainError("approx_loss_user: allocation does not match interferer count");
  const double nt = static_cast<double>(params.nt);
  const double m = nt - 1.0;
  const double desired = std::numbers::log2e * std::exp(ln_gamma(nt / m)) * std::exp2(-desired_bits / m);
  double floor_term = 0.0;
  double quant_term = 0.0;
  for (std::size_t l = 0; l < params.alphas.size(); ++l) {
    const double e2 = params.eta_interferers[l] * params.eta_interferers[l];
    floor_term += params.alphas[l] * (1.0 - e2);
    quant_term += params.alphas[l] * e2 * std::exp2(-interferer_bits[l] / m);
  }
  const double g = std::exp(ln_gamma((2.0 * nt - 1.0) / m));
  return desired + std::log2(1.0 + nt * params.rho * floor_term + g * nt * params.rho * quant_term);
}

double approx_loss_user(const LinkParams& params, const BitAllocation& allocation) {
  std::vector<double> bits(allocation.interferer_bits.begin(), allocation.interferer_bits.end());
  return approx_loss_user(params, static_cast<double>(allocation.desired_bits), bits);
}

}  // namespace icin
