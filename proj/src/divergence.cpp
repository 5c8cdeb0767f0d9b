// Copyright 2026 The maxleak Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maxleak/divergence.hpp"

#include "maxleak/types.hpp"

namespace maxleak {

Distribution pushforward(const Distribution& p, const Mechanism& w) {
  if (p.size() != w.size()) {
    throw Error(Errc::kDimensionMismatch,
                "distribution over " + std::to_string(p.size()) +
                    " letters cannot drive a " + std::to_string(w.size()) +
                    "-letter mechanism");
  }
  // Pushforwards may carry exact zeros (e.g. through a column of zeros).
  return Distribution::nonnegative(p.probs() * w.rows(), kFeasibilityTol);
}

double utility(const Distribution& p1, const Distribution& p2,
               const Mechanism& w) {
  return utility(p1.probs(), p2.probs(), w.rows());
}

}  // namespace maxleak
