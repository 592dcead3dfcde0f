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

#include <numeric>
#include <string>
#include <vector>

namespace icin {

/// Integer feedback-bit split for one user: desired channel plus one entry per
/// interfering base station (same order as LinkParams::alphas).
struct BitAllocation {
  int desired_bits = 0;
  std::vector<int> interferer_bits;

  int total() const {
    return std::accumulate(interferer_bits.begin(), interferer_bits.end(), desired_bits);
  }
  bool operator==(const BitAllocation&) const = default;

  /// "B0|B01|B02|..." as used in CSV output.
  std::string to_pipe_string() const;
  /// "(B0, B01, B02, ...)".
  std::string to_tuple_string() const;
};

/// Real-valued allocation before integer rounding.
struct FractionalAllocation {
  double desired_bits = 0.0;
  std::vector<double> interferer_bits;

  double total() const {
    return std::accumulate(interferer_bits.begin(), interferer_bits.end(), desired_bits);
  }
};

}  // namespace icin
