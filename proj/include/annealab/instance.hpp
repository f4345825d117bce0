// Copyright 2026 The annealab Authors
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

#pragma once

#include "annealab/model.hpp"

namespace annealab {

/// Random spin-glass instance: h_1..h_N then J_{1,2}, J_{1,3}, ...,
/// J_{N-1,N}, in that fixed order, each uniform on the closed interval
/// [-J, J]. The generator is SplitMix64 with the 53-bit closed-interval
/// mapping, so a seed reproduces the instance bit-identically everywhere.
inline LogicalModel generate_instance(int n, double j_scale, std::uint64_t seed) {
    if (!(j_scale > 0)) throw ValidationError("instance scale J must be positive");
    LogicalModel model(n);
    SplitMix64 rng(seed);
    for (int k = 1; k <= n; ++k) model.set_field(k, rng.uniform_symmetric(j_scale));
    for (int i = 1; i < n; ++i)
        for (int j = i + 1; j <= n; ++j)
            model.set_coupling(i, j, rng.uniform_symmetric(j_scale));
    return model;
}

}  // namespace annealab
