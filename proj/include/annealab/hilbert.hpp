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

#include <cstdint>
#include <vector>

#include "annealab/common.hpp"

namespace annealab {

/// Mixed-radix basis over qubit (dim 2) and qutrit (dim 3) sites. Site 0 is
/// least significant. Digit-to-spin convention: digit 0 is the +1 eigenstate;
/// qubits map digits {0,1} to z = {+1,-1}, qutrits map {0,1,2} to
/// T = {+1,0,-1}.
struct HilbertSpec {
    std::vector<int> site_dims;
    std::vector<std::uint64_t> strides;
    std::uint64_t total_dim = 1;

    static HilbertSpec from_dims(std::vector<int> dims) {
        HilbertSpec spec;
        spec.site_dims = std::move(dims);
        spec.strides.reserve(spec.site_dims.size());
        unsigned __int128 total = 1;
        for (int d : spec.site_dims) {
            if (d != 2 && d != 3) throw ValidationError("site dimensions must be 2 or 3");
            spec.strides.push_back(static_cast<std::uint64_t>(total));
            total *= static_cast<unsigned>(d);
            if (total > (unsigned __int128)1 << 62)
                throw DimensionError("Hilbert space exceeds 2^62 states");
        }
        spec.total_dim = static_cast<std::uint64_t>(total);
        return spec;
    }

    std::size_t n_sites() const { return site_dims.size(); }

    int digit(std::uint64_t basis, std::size_t site) const {
        return static_cast<int>((basis / strides[site]) %
                                static_cast<std::uint64_t>(site_dims[site]));
    }

    /// Spin value of a site digit: +1,-1 for qubits; +1,0,-1 for qutrits.
    static int spin_value(int dim, int digit) { return dim == 2 ? 1 - 2 * digit : 1 - digit; }

    int value(std::uint64_t basis, std::size_t site) const {
        return spin_value(site_dims[site], digit(basis, site));
    }

    /// All site digits of one basis state.
    std::vector<int> digits(std::uint64_t basis) const {
        std::vector<int> d(n_sites());
        for (std::size_t q = 0; q < n_sites(); ++q) d[q] = digit(basis, q);
        return d;
    }

    std::uint64_t index_of(const std::vector<int>& digits_in) const {
        if (digits_in.size() != n_sites()) throw DimensionError("digit count mismatch");
        std::uint64_t b = 0;
        for (std::size_t q = 0; q < n_sites(); ++q)
            b += static_cast<std::uint64_t>(digits_in[q]) * strides[q];
        return b;
    }
};

/// Mixed-radix counter for cheap basis enumeration: call advance() after
/// processing each state; digits() stays in sync with the basis index.
class BasisCounter {
  public:
    explicit BasisCounter(const HilbertSpec& spec)
        : spec_(&spec), digits_(spec.n_sites(), 0) {}

    const std::vector<int>& digits() const { return digits_; }

    void advance() {
        for (std::size_t q = 0; q < digits_.size(); ++q) {
            if (++digits_[q] < spec_->site_dims[q]) return;
            digits_[q] = 0;
        }
    }

  private:
    const HilbertSpec* spec_;
    std::vector<int> digits_;
};

}  // namespace annealab
