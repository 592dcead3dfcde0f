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

#include "icin/precoder.hpp"

#include <cmath>
#include <sstream>

#include "icin/errors.hpp"

namespace icin {

Beamformer icin_beamformer(const CellSideInfo& info, double condition_cap) {
  const std::size_t nt = info.desired_direction.size();
  const std::size_t k = 1 + info.caused_interference.size();
  if (nt == 0) throw DomainError("icin_beamformer: empty desired direction");
  if (k > nt) {
    std::ostringstream os;
    os << "icin_beamformer: " << k << " stacked directions exceed " << nt << " antennas";
    throw CapacityError(os.str());
  }
  // Rows are v^H so that A f = e_1 reads <h, f> = 1 and <g, f> = 0.
  std::vector<CVector> rows;
  rows.reserve(k);
  const auto push_adjoint = [&rows, nt](const CVector& v) {
    if (v.size() != nt) throw DomainError("icin_beamformer: direction length mismatch");
    CVector row(nt);
    for (std::size_t i = 0; i < nt; ++i) row[i] = std::conj(v[i]);
    rows.push_back(std::move(row));
  };
  push_adjoint(info.desired_direction);
  for (const auto& g : info.caused_interference) push_adjoint(g);
  const ComplexMatrix pinv = right_pseudo_inverse(ComplexMatrix::from_rows(rows), condition_cap);
  return {normalized(pinv.column(0))};
}

double sinr(std::span<const Complex> desired_channel, const Beamformer& own_beam,
            std::span<const CVector> interfering_channels,
            std::span<const Beamformer> interfering_beams, double rho,
            std::span<const double> alphas) {
  if (interfering_channels.size() != interfering_beams.size() ||
      interfering_channels.size() != alphas.size())
    throw DomainError("sinr: interferer lists have inconsistent lengths");
  const double signal = rho * std::norm(inner(desired_channel, own_beam.vector));
  double interference = 0.0;
  for (std::size_t l = 0; l < alphas.size(); ++l)
    interference +=
        alphas[l] * rho * std::norm(inner(interfering_channels[l], interfering_beams[l].vector));
  return signal / (1.0 + interference);
}

double sum_rate(std::span<const double> sinrs) {
  double total = 0.0;
  for (double s : sinrs) {
    if (!(s >= 0.0)) throw DomainError("sum_rate: SINR must be non-negative");
    total += std::log2(1.0 + s);
  }
  return total;
}

}  // namespace icin
