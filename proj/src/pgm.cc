// Copyright 2026 The GCGTS Authors.
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

#include "gcgts/pgm.h"

#include <algorithm>
#include <cmath>

#include "gcgts/errors.h"
#include "gcgts/vocab.h"

namespace gcgts {

std::uint8_t ProbabilityPixel(double p) {
  // std::round rounds halves away from zero.
  const double v = std::round(255.0 * (1.0 - std::clamp(p, 0.0, 1.0)));
  return static_cast<std::uint8_t>(v);
}

std::string RenderPgm(const num::Tensor<double>& p) {
  if (p.rank() != 2 || p.dim(0) != p.dim(1)) {
    throw DimensionError("pgm: expected a square matrix, got " +
                         num::ShapeString(p.shape()));
  }
  const std::size_t n = p.dim(0);
  std::string out = "P5\n" + std::to_string(n) + " " + std::to_string(n) +
                    "\n255\n";
  for (double v : p.data()) out.push_back(static_cast<char>(ProbabilityPixel(v)));
  return out;
}

num::Tensor<double> PairChannel(const num::Tensor<float>& probs) {
  if (probs.rank() != 3 || probs.dim(0) != probs.dim(1) ||
      probs.dim(2) != static_cast<std::size_t>(kLabelCount)) {
    throw DimensionError("pgm: expected [n, n, 4], got " +
                         num::ShapeString(probs.shape()));
  }
  const std::size_t n = probs.dim(0);
  num::Tensor<double> out(num::Shape{n, n});
  const int p = static_cast<int>(Label::kP);
  for (std::size_t k = 0; k < n * n; ++k) out[k] = probs[k * kLabelCount + p];
  return out;
}

}  // namespace gcgts
