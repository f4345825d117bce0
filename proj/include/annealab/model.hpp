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

#include <algorithm>
#include <map>
#include <vector>

#include "annealab/common.hpp"

namespace annealab {

/// The logical Ising problem: N spins with local fields h, pair couplings J
/// and optional higher-order terms K. Keys are unordered (stored sorted) and
/// zero-valued entries are never stored.
struct LogicalModel {
    int n = 0;
    std::vector<double> h;                            // index k-1 holds h_k
    std::map<std::pair<int, int>, double> couplings;  // {i,j} with i < j
    std::map<std::vector<int>, double> higher_order;  // sorted subsets, size >= 3

    LogicalModel() = default;
    explicit LogicalModel(int n_logical) : n(n_logical), h(static_cast<std::size_t>(n), 0.0) {
        if (n < 1) throw ValidationError("logical model needs at least one spin");
    }

    void check_index(int k) const {
        if (k < 1 || k > n)
            throw ValidationError("logical index " + std::to_string(k) + " outside 1.." +
                                  std::to_string(n));
    }

    void set_field(int k, double value) {
        check_index(k);
        h[static_cast<std::size_t>(k - 1)] = value;
    }

    double field(int k) const {
        check_index(k);
        return h[static_cast<std::size_t>(k - 1)];
    }

    void set_coupling(int i, int j, double value) {
        check_index(i);
        check_index(j);
        if (i == j) throw ValidationError("coupling needs two distinct spins");
        if (i > j) std::swap(i, j);
        if (value == 0.0)
            couplings.erase({i, j});
        else
            couplings[{i, j}] = value;
    }

    double coupling(int i, int j) const {
        if (i > j) std::swap(i, j);
        auto it = couplings.find({i, j});
        return it == couplings.end() ? 0.0 : it->second;
    }

    void set_higher_order(std::vector<int> subset, double value) {
        std::sort(subset.begin(), subset.end());
        if (subset.size() < 3) throw ValidationError("higher-order terms need at least 3 spins");
        if (std::adjacent_find(subset.begin(), subset.end()) != subset.end())
            throw ValidationError("higher-order term repeats a spin");
        for (int k : subset) check_index(k);
        if (value == 0.0)
            higher_order.erase(subset);
        else
            higher_order[std::move(subset)] = value;
    }

    /// Energy of a +-1 configuration (index k-1 holds spin k).
    double energy(const std::vector<int>& alpha) const {
        if (alpha.size() != static_cast<std::size_t>(n))
            throw DimensionError("configuration length mismatch");
        double e = 0.0;
        for (int k = 1; k <= n; ++k)
            e += h[static_cast<std::size_t>(k - 1)] * alpha[static_cast<std::size_t>(k - 1)];
        for (const auto& [key, value] : couplings)
            e += value * alpha[static_cast<std::size_t>(key.first - 1)] *
                 alpha[static_cast<std::size_t>(key.second - 1)];
        for (const auto& [subset, value] : higher_order) {
            int prod = 1;
            for (int k : subset) prod *= alpha[static_cast<std::size_t>(k - 1)];
            e += value * prod;
        }
        return e;
    }
};

}  // namespace annealab
