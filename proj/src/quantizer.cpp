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

#include "icin/quantizer.hpp"

#include <cmath>
#include <sstream>

#include "icin/errors.hpp"
#include "icin/fading.hpp"

namespace icin {

CVector isotropic_direction(RngStream& rng, std::size_t nt) {
  return normalized(rayleigh_channel(rng, nt));
}

Codebook generate_codebook(RngStream& rng, int bits, std::size_t nt, int explicit_cap) {
  if (nt == 0) throw DomainError("generate_codebook: nt must be at least 1");
  if (bits < 0) throw DomainError("generate_codebook: negative bit count");
  if (bits > explicit_cap) {
    std::ostringstream os;
    os << "generate_codebook: " << bits << " bits exceeds the explicit-search cap of "
       << explicit_cap << "; use statistical_quantize";
    throw CapacityError(os.str());
  }
  Codebook cb;
  cb.bits = bits;
  cb.nt = nt;
  const std::size_t size = std::size_t{1} << bits;
  cb.codewords.reserve(size);
  for (std::size_t i = 0; i < size; ++i) cb.codewords.push_back(isotropic_direction(rng, nt));
  return cb;
}

QuantizedDirection quantize(std::span<const Complex> direction, const Codebook& codebook) {
  if (codebook.codewords.empty()) throw DomainError("quantize: empty codebook");
  std::size_t best = 0;
  double best_gain = -1.0;
  for (std::size_t i = 0; i < codebook.codewords.size(); ++i) {
    const double gain = std::norm(inner(direction, codebook.codewords[i]));
    if (gain > best_gain) {
      best_gain = gain;
      best = i;
    }
  }
  return {codebook.codewords[best], std::min(1.0, best_gain)};
}

double rvq_sin2_from_uniform(double u, int bits, std::size_t nt) {
  // min of N = 2^bits draws with CDF y^M: P(min > y) = (1 - y^M)^N, so
  // y = (1 - (1 - u)^(1/N))^(1/M). expm1/log1p keep this exact for huge N.
  const double m = static_cast<double>(nt - 1);
  const double inv_n = std::ldexp(1.0, -bits);
  const double y_pow_m = -std::expm1(inv_n * std::log1p(-u));
  return std::pow(y_pow_m, 1.0 / m);
}

QuantizedDirection statistical_quantize(std::span<const Complex> direction, int bits,
                                        RngStream& rng) {
  const std::size_t nt = direction.size();
  if (nt < 2) throw DomainError("statistical_quantize: nt must be >= 2 for a null space");
  if (bits < 0) throw DomainError("statistical_quantize: negative bit count");

  const double sin2 = rvq_sin2_from_uniform(rng.uniform(), bits, nt);

  // Isotropic unit vector orthogonal to the true direction. Projecting twice
  // keeps the residual component at rounding level.
  CVector s = rayleigh_channel(rng, nt);
  for (int pass = 0; pass < 2; ++pass) {
    const Complex c = inner(direction, s);
    for (std::size_t i = 0; i < nt; ++i) s[i] -= c * direction[i];
  }
  s = normalized(s);

  // q = cos(theta) h + sin(theta) s is unit-norm with |<h, q>|^2 = cos^2(theta),
  // and h = cos(theta) q + sin(theta) s' with s' orthogonal to q.
  const double cos_t = std::sqrt(1.0 - sin2);
  const double sin_t = std::sqrt(sin2);
  CVector q(nt);
  for (std::size_t i = 0; i < nt; ++i) q[i] = cos_t * direction[i] + sin_t * s[i];
  q = normalized(q);
  return {std::move(q), 1.0 - sin2};
}

QuantizedDirection rvq_quantize(std::span<const Complex> direction, int bits, RngStream& rng,
                                int explicit_cap) {
  if (bits > explicit_cap) return statistical_quantize(direction, bits, rng);
  const std::size_t nt = direction.size();
  if (nt == 0) throw DomainError("rvq_quantize: empty direction");
  if (bits < 0) throw DomainError("rvq_quantize: negative bit count");

  // Same draws, in the same order, as generate_codebook + quantize, but the
  // codebook is streamed and only the winning codeword is normalized.
  const std::size_t size = std::size_t{1} << bits;
  CVector c(nt), best(nt);
  double best_gain = -1.0;
  for (std::size_t i = 0; i < size; ++i) {
    double norm2 = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
      c[k] = rng.complex_normal();
      norm2 += std::norm(c[k]);
    }
    const double gain = std::norm(inner(direction, c)) / norm2;
    if (gain > best_gain) {
      best_gain = gain;
      best.swap(c);
    }
  }
  best = normalized(best);
  const double cos2 = std::min(1.0, std::norm(inner(direction, best)));
  return {std::move(best), cos2};
}

FixedCodebooks::FixedCodebooks(std::uint64_t seed, std::size_t nt, int explicit_cap)
    : seed_(seed), nt_(nt), cap_(explicit_cap) {}

void FixedCodebooks::prepare(std::size_t slot, int bits) {
  if (bits > cap_ || books_.contains({slot, bits})) return;
  // Stream ids with the top byte set never collide with (point << 32) | trial.
  constexpr std::uint64_t kCodebookStreams = 0xCBull << 56;
  RngStream rng(seed_, kCodebookStreams | (std::uint64_t{slot} << 8) |
                           static_cast<std::uint64_t>(bits));
  books_.emplace(std::pair{slot, bits}, generate_codebook(rng, bits, nt_, cap_));
}

const Codebook* FixedCodebooks::find(std::size_t slot, int bits) const {
  const auto it = books_.find({slot, bits});
  return it == books_.end() ? nullptr : &it->second;
}

QuantizedDirection FixedCodebooks::quantize(std::span<const Complex> direction, std::size_t slot,
                                            int bits, RngStream& rng) const {
  if (const Codebook* cb = find(slot, bits)) return icin::quantize(direction, *cb);
  return rvq_quantize(direction, bits, rng, cap_);
}

}  // namespace icin
