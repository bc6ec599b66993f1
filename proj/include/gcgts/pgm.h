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

// Grayscale export of pair probabilities: binary PGM (P5), one pixel per
// grid cell, rows = first character, columns = second character. Darker
// means more likely: pixel = round(255 * (1 - p)), halves rounded away from
// zero, so p = 0, 0.5, 1 map to 255, 128, 0.

#ifndef GCGTS_PGM_H_
#define GCGTS_PGM_H_

#include <cstdint>
#include <string>

#include "gcgts/tensor.h"

namespace gcgts {

std::uint8_t ProbabilityPixel(double p);

// `p` is an [n, n] probability matrix.
std::string RenderPgm(const num::Tensor<double>& p);

// The P channel of an [n, n, 4] prediction grid as an [n, n] matrix.
num::Tensor<double> PairChannel(const num::Tensor<float>& probs);

}  // namespace gcgts

#endif  // GCGTS_PGM_H_
