// Copyright 2026 The lexdist Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Builds the idealized distribution of 100 geometrically decaying tokens in
// which the 6 most frequent carry half the mass, and prints its profile.

#include <cstdio>

#include "lexdist/lexdist.hpp"

int main() {
  const auto ideal = lexdist::solve_idealized_geometric({100, 6, 0.5});
  const auto summary = lexdist::summarize_entropy(ideal.distribution);
  std::printf("ratio      %.10f (%d bisection steps, residual %.3g)\n", ideal.ratio,
              ideal.iterations, ideal.residual);
  std::printf("entropy    %.4f bits, perplexity %.3f\n", summary.entropy_bits,
              summary.perplexity);
  std::printf("rank  probability\n");
  for (std::size_t k = 0; k < 10; ++k) {
    std::printf("%4zu  %.6f\n", k + 1, ideal.distribution[k]);
  }
  return 0;
}
