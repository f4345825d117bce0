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

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "annealab/common.hpp"

namespace annealab {

/// Fixed-length bit vector over GF(2), packed into 64-bit words. Holds the
/// support of a Z-type stabiliser or an X-type logical chain, indexed by
/// physical spin. Length is fixed at creation; XOR of equal-length vectors
/// is the group operation.
class SupportVector {
  public:
    SupportVector() = default;
    explicit SupportVector(std::size_t n_bits)
        : size_(n_bits), words_((n_bits + 63) / 64, 0) {}

    static SupportVector from_indices(std::size_t n_bits,
                                      const std::vector<std::size_t>& indices) {
        SupportVector v(n_bits);
        for (std::size_t i : indices) v.set(i);
        return v;
    }

    std::size_t size() const { return size_; }

    bool test(std::size_t i) const {
        check_index(i);
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool value = true) {
        check_index(i);
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (value)
            words_[i >> 6] |= mask;
        else
            words_[i >> 6] &= ~mask;
    }

    void flip(std::size_t i) {
        check_index(i);
        words_[i >> 6] ^= std::uint64_t(1) << (i & 63);
    }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::uint64_t word : words_) w += std::popcount(word);
        return w;
    }

    bool any() const {
        for (std::uint64_t word : words_)
            if (word) return true;
        return false;
    }

    SupportVector& operator^=(const SupportVector& other) {
        require_same_length(other);
        for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
        return *this;
    }

    friend SupportVector operator^(SupportVector a, const SupportVector& b) {
        a ^= b;
        return a;
    }

    /// Parity of |a AND b|. This is the symplectic form restricted to the
    /// Z/X split used here: an X-chain and a Z-product commute iff the
    /// overlap parity is even.
    bool odd_overlap(const SupportVector& other) const {
        require_same_length(other);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < words_.size(); ++w) acc ^= words_[w] & other.words_[w];
        return std::popcount(acc) & 1;
    }

    friend bool operator==(const SupportVector& a, const SupportVector& b) {
        return a.size_ == b.size_ && a.words_ == b.words_;
    }
    friend bool operator!=(const SupportVector& a, const SupportVector& b) { return !(a == b); }

    /// Lexicographic order reading bit 0 first (bit value 0 < 1). Used only
    /// as the documented tie-break when canonicalising logical X chains.
    bool lex_less(const SupportVector& other) const {
        require_same_length(other);
        for (std::size_t w = 0; w < words_.size(); ++w) {
            if (words_[w] == other.words_[w]) continue;
            std::uint64_t diff = words_[w] ^ other.words_[w];
            std::size_t bit = static_cast<std::size_t>(std::countr_zero(diff));
            return !((words_[w] >> bit) & 1u);
        }
        return false;
    }

    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        for (std::size_t w = 0; w < words_.size(); ++w) {
            std::uint64_t word = words_[w];
            while (word) {
                std::size_t bit = static_cast<std::size_t>(std::countr_zero(word));
                out.push_back(w * 64 + bit);
                word &= word - 1;
            }
        }
        return out;
    }

  private:
    void check_index(std::size_t i) const {
        if (i >= size_) throw DimensionError("support index out of range");
    }
    void require_same_length(const SupportVector& other) const {
        if (size_ != other.size_) throw DimensionError("support length mismatch");
    }

    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

/// True iff the X operator with support `x_support` commutes with the
/// Z operator with support `z_support`.
inline bool commutes(const SupportVector& x_support, const SupportVector& z_support) {
    return !x_support.odd_overlap(z_support);
}

/// Dense GF(2) matrix as a list of equal-length rows.
struct Gf2Matrix {
    std::vector<SupportVector> rows;
    std::size_t n_cols = 0;

    Gf2Matrix() = default;
    explicit Gf2Matrix(std::size_t cols) : n_cols(cols) {}

    void add_row(SupportVector row) {
        if (row.size() != n_cols) throw DimensionError("row length mismatch");
        rows.push_back(std::move(row));
    }
    std::size_t n_rows() const { return rows.size(); }
};

struct Gf2Solution {
    /// Empty iff the system is infeasible; a fabricated vector is never returned.
    std::optional<SupportVector> particular;
    /// Basis of the homogeneous solution space; every solution is
    /// particular XOR a subset of these.
    std::vector<SupportVector> nullspace;

    bool feasible() const { return particular.has_value(); }
};

namespace detail {

/// Row-echelon elimination with deterministic pivoting: columns are scanned
/// in ascending index order and the first row with a 1 in the current column
/// becomes the pivot. `rhs` columns (one bit vector per system) are carried
/// through the same row operations.
struct Gf2Elimination {
    std::vector<SupportVector> rows;   // echelon rows
    std::vector<std::size_t> pivot_col;  // pivot column per echelon row
    std::vector<SupportVector> rhs;    // rhs[k] is the k-th right-hand side, length n_rows

    static Gf2Elimination run(const Gf2Matrix& m, std::vector<SupportVector> rhs_in) {
        Gf2Elimination e;
        e.rows = m.rows;
        e.rhs = std::move(rhs_in);
        std::size_t n_rows = e.rows.size();
        std::size_t next = 0;  // next echelon slot
        for (std::size_t col = 0; col < m.n_cols && next < n_rows; ++col) {
            std::size_t pivot = next;
            while (pivot < n_rows && !e.rows[pivot].test(col)) ++pivot;
            if (pivot == n_rows) continue;
            if (pivot != next) {
                std::swap(e.rows[pivot], e.rows[next]);
                for (auto& r : e.rhs) {
                    bool a = r.test(pivot), b = r.test(next);
                    r.set(pivot, b);
                    r.set(next, a);
                }
            }
            for (std::size_t row = 0; row < n_rows; ++row) {
                if (row != next && e.rows[row].test(col)) {
                    e.rows[row] ^= e.rows[next];
                    for (auto& r : e.rhs)
                        if (r.test(next)) r.flip(row);
                }
            }
            e.pivot_col.push_back(col);
            ++next;
        }
        return e;
    }

    std::size_t rank() const { return pivot_col.size(); }
};

}  // namespace detail

/// GF(2) row rank.
inline std::size_t gf2_rank(const Gf2Matrix& m) {
    return detail::Gf2Elimination::run(m, {}).rank();
}

/// Solve m * x = rhs over GF(2). `rhs` has one bit per row. Returns a
/// particular solution (or infeasible) plus a nullspace basis; output is
/// deterministic for a fixed input.
inline Gf2Solution gf2_solve(const Gf2Matrix& m, const SupportVector& rhs) {
    if (rhs.size() != m.n_rows()) throw DimensionError("rhs length must equal row count");
    auto elim = detail::Gf2Elimination::run(m, {rhs});
    const SupportVector& b = elim.rhs[0];

    Gf2Solution sol;
    // Inconsistent iff some zero row has a nonzero rhs bit.
    for (std::size_t row = elim.rank(); row < m.n_rows(); ++row)
        if (b.test(row)) return sol;

    SupportVector x(m.n_cols);
    for (std::size_t r = 0; r < elim.rank(); ++r)
        if (b.test(r)) x.set(elim.pivot_col[r]);
    sol.particular = std::move(x);

    // One nullspace basis vector per free column: the free column itself
    // plus the pivot columns needed to clear it.
    std::vector<bool> is_pivot(m.n_cols, false);
    for (std::size_t c : elim.pivot_col) is_pivot[c] = true;
    for (std::size_t col = 0; col < m.n_cols; ++col) {
        if (is_pivot[col]) continue;
        SupportVector v(m.n_cols);
        v.set(col);
        for (std::size_t r = 0; r < elim.rank(); ++r)
            if (elim.rows[r].test(col)) v.set(elim.pivot_col[r]);
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

/// Batch variant: solve m * x = rhs_k for several right-hand sides with one
/// elimination pass. Row k of the result corresponds to rhs_list[k].
inline std::vector<Gf2Solution> gf2_solve_many(const Gf2Matrix& m,
                                               const std::vector<SupportVector>& rhs_list) {
    for (const auto& r : rhs_list)
        if (r.size() != m.n_rows()) throw DimensionError("rhs length must equal row count");
    auto elim = detail::Gf2Elimination::run(m, rhs_list);

    std::vector<bool> is_pivot(m.n_cols, false);
    for (std::size_t c : elim.pivot_col) is_pivot[c] = true;
    std::vector<SupportVector> nullspace;
    for (std::size_t col = 0; col < m.n_cols; ++col) {
        if (is_pivot[col]) continue;
        SupportVector v(m.n_cols);
        v.set(col);
        for (std::size_t r = 0; r < elim.rank(); ++r)
            if (elim.rows[r].test(col)) v.set(elim.pivot_col[r]);
        nullspace.push_back(std::move(v));
    }

    std::vector<Gf2Solution> out;
    out.reserve(rhs_list.size());
    for (const auto& b : elim.rhs) {
        Gf2Solution sol;
        bool ok = true;
        for (std::size_t row = elim.rank(); row < m.n_rows() && ok; ++row)
            if (b.test(row)) ok = false;
        if (ok) {
            SupportVector x(m.n_cols);
            for (std::size_t r = 0; r < elim.rank(); ++r)
                if (b.test(r)) x.set(elim.pivot_col[r]);
            sol.particular = std::move(x);
            sol.nullspace = nullspace;
        }
        out.push_back(std::move(sol));
    }
    return out;
}

/// Substitution check: does x satisfy every row equation of m * x = rhs?
inline bool gf2_check_solution(const Gf2Matrix& m, const SupportVector& rhs,
                               const SupportVector& x) {
    for (std::size_t r = 0; r < m.n_rows(); ++r)
        if (m.rows[r].odd_overlap(x) != rhs.test(r)) return false;
    return true;
}

}  // namespace annealab
