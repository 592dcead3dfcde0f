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

#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "icin/numerics.hpp"
#include "icin/rng.hpp"

namespace icin {

inline constexpr int kDefaultExplicitCap = 16;

/// Random vector quantization codebook: 2^bits i.i.d. isotropic unit vectors.
struct Codebook {
  int bits = 0;
  std::size_t nt = 0;
  std::vector<CVector> codewords;
};

struct QuantizedDirection {
  CVector direction;        ///< unit-norm quantized direction
  double cos2_theta = 1.0;  ///< |<true, quantized>|^2
  double sin2_theta() const { return 1.0 - cos2_theta; }
};

/// Isotropically distributed unit vector in C^nt.
CVector isotropic_direction(RngStream& rng, std::size_t nt);

/// Throws CapacityError when bits > explicit_cap.
Codebook generate_codebook(RngStream& rng, int bits, std::size_t nt,
                           int explicit_cap = kDefaultExplicitCap);

/// Nearest codeword in the |<h, c>|^2 sense; ties go to the lowest index.
QuantizedDirection quantize(std::span<const Complex> direction, const Codebook& codebook);

/// Draws a quantized direction with exactly the distribution an explicit RVQ
/// codebook of 2^bits entries would produce, without building the codebook.
///
/// sin^2(theta) is the minimum of 2^bits i.i.d. variables with CDF y^(nt-1),
/// sampled by inversion; the error component is isotropic in the orthogonal
/// complement of the true direction. Requires nt >= 2.
QuantizedDirection statistical_quantize(std::span<const Complex> direction, int bits,
                                        RngStream& rng);

/// Explicit codebook search up to `explicit_cap` bits, statistical sampling above.
QuantizedDirection rvq_quantize(std::span<const Complex> direction, int bits, RngStream& rng,
                                int explicit_cap = kDefaultExplicitCap);

/// Fixed codebooks, one per (slot, bits), each drawn once from its own
/// stream of `seed`. Used to make quantization repeatable while debugging.
/// prepare() is not thread-safe; find() is.
class FixedCodebooks {
 public:
  FixedCodebooks(std::uint64_t seed, std::size_t nt, int explicit_cap);

  /// Draws the codebook for (slot, bits) if it does not exist yet. No-op
  /// above the explicit cap.
  void prepare(std::size_t slot, int bits);
  /// nullptr when the pair was not prepared or lies above the cap.
  const Codebook* find(std::size_t slot, int bits) const;

  /// Codebook search when a codebook is available, rvq_quantize otherwise.
  QuantizedDirection quantize(std::span<const Complex> direction, std::size_t slot, int bits,
                              RngStream& rng) const;

 private:
  std::uint64_t seed_;
  std::size_t nt_;
  int cap_;
  std::map<std::pair<std::size_t, int>, Codebook> books_;
};

/// sin^2(theta) for a uniform draw u, inverse-CDF form shared with tests.
double rvq_sin2_from_uniform(double u, int bits, std::size_t nt);

}  // namespace icin
