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
#include <cmath>
#include <vector>

#include "annealab/anneal.hpp"

namespace annealab {

/// Recover the logical model a program was compiled from: field terms on a
/// spin labelled L contribute mu * strength to the coefficient of L. Also
/// the basis of the coefficient-conservation check.
inline LogicalModel reconstruct_logical_model(const PhysicalProgram& program) {
    LogicalModel model(program.code.n_logical);
    for (const auto& f : program.fields) {
        if (f.site >= program.n_physical())
            throw InternalError("field term on ancilla site");
        const auto& label = program.code.labels[f.site];
        double signed_strength = static_cast<double>(label.mu) * f.strength;
        if (label.logicals.size() == 1) {
            int k = label.logicals[0];
            model.set_field(k, model.field(k) + signed_strength);
        } else if (label.logicals.size() == 2) {
            int i = label.logicals[0], j = label.logicals[1];
            model.set_coupling(i, j, model.coupling(i, j) + signed_strength);
        } else {
            auto it = model.higher_order.find(label.logicals);
            double prev = it == model.higher_order.end() ? 0.0 : it->second;
            model.set_higher_order(label.logicals, prev + signed_strength);
        }
    }
    return model;
}

/// Residuals for the encoding-correctness conditions of a compiled program,
/// checked by explicit enumeration of the constraint ground space:
///   (i)   commutator of the ground-space projector with the final
///         Hamiltonian (identically zero for z-diagonal programs);
///   (ii)  stabiliser eigenvalues on P0 plus the mu sign rule;
///   (iii) invariance of P0 under the dressed logical flips U X V, with
///         U = V the controlled ancilla-correction permutation;
///   (iv)  spectral separation margin E'_g - (E0 + E_g).
/// The report also carries the multiplicity factor D = dim(P0) / 2^N and the
/// deviation of the lowest 2^N * D program levels from E0 + logical spectrum.
struct ConditionsReport {
    double commutator_residual_i = 0.0;
    double parity_residual_ii = 0.0;
    double flip_unitary_residual_iii = 0.0;
    double gap_margin_iv = 0.0;
    std::uint64_t p0_dimension = 0;
    std::uint64_t d_factor = 0;
    double spectrum_match_deviation = 0.0;

    bool pass(double residual_tol = 1e-9, double spectrum_tol = 1e-8) const {
        return commutator_residual_i <= residual_tol && parity_residual_ii <= residual_tol &&
               flip_unitary_residual_iii <= residual_tol && gap_margin_iv > 0.0 &&
               d_factor > 0 && spectrum_match_deviation <= spectrum_tol;
    }
};

namespace detail {

/// Controlled ancilla-correction permutation W (applied face by face).
/// Qubit gadgets flip the face ancilla iff exactly one face spin points
/// down; qutrit gadgets swap the required T value with T = 0 on satisfied
/// faces. W is an involution and acts only on ancilla digits, so it
/// commutes with every physical z operator by construction.
inline std::uint64_t apply_correction(const PhysicalProgram& prog, const HilbertSpec& spec,
                                      std::uint64_t b) {
    for (const auto& group : prog.constraints) {
        if (group.ancilla_sites.empty()) continue;  // formal gadget
        const std::size_t anc = group.ancilla_sites[0];
        if (prog.variant == Variant::OddQubit) {
            int down = 0;
            for (std::size_t p : group.face_sites)
                if (spec.digit(b, p) == 1) ++down;
            if (down == 1) {
                int digit = spec.digit(b, anc);
                b += digit == 0 ? spec.strides[anc] : -spec.strides[anc];
            }
        } else if (prog.variant == Variant::EvenQutrit) {
            int m = 0;
            for (std::size_t p : group.face_sites) m += spec.value(b, p);
            int t = m + (group.gadget.n_face == 3 ? 1 : 0);
            if (t == -4 || t == 0 || t == 4) {
                int required_digit = 1 - (-t / 4);  // digit of the forced T value
                if (required_digit != 1) {
                    int digit = spec.digit(b, anc);
                    if (digit == required_digit)
                        b += static_cast<std::uint64_t>(1 - required_digit) *
                             spec.strides[anc];
                    else if (digit == 1)
                        b += static_cast<std::uint64_t>(required_digit - 1) *
                             spec.strides[anc];
                }
            }
        } else {
            throw ValidationError(
                "conditions checker supports formal, even_qutrit and odd_qubit programs");
        }
    }
    return b;
}

}  // namespace detail

inline ConditionsReport check_conditions(const PhysicalProgram& program,
                                         const SolverOptions& opts = {}) {
    AnnealSystem sys = build_system(program, DriverOptions{}, opts);
    if (sys.spec.total_dim > opts.dense_dim_cap)
        throw ValidationError("conditions check needs total dimension <= " +
                              std::to_string(opts.dense_dim_cap) +
                              "; use N <= 3 or raise the cap");
    const HilbertSpec& spec = sys.spec;
    const std::uint64_t dim = spec.total_dim;

    std::int64_t min_penalty = *std::min_element(sys.penalty_int.begin(), sys.penalty_int.end());
    std::vector<bool> in_p0(dim, false);
    ConditionsReport report;
    for (std::uint64_t b = 0; b < dim; ++b)
        if (sys.penalty_int[b] == min_penalty) {
            in_p0[b] = true;
            ++report.p0_dimension;
        }

    // (i) The final Hamiltonian is z-diagonal, as is P0; the commutator has
    // no nonzero matrix elements to accumulate.
    report.commutator_residual_i = 0.0;

    // (ii) stabiliser eigenvalues and the mu rule on every P0 basis state.
    const ParityCode& code = program.code;
    for (std::uint64_t b = 0; b < dim; ++b) {
        if (!in_p0[b]) continue;
        for (const auto& s : code.stabilisers) {
            int prod = 1;
            for (std::size_t p : s.support.indices()) prod *= spec.value(b, p);
            report.parity_residual_ii =
                std::max(report.parity_residual_ii, std::abs(double(prod - s.nu)));
        }
        for (std::size_t p = 0; p < code.spin_count(); ++p) {
            int expected = code.labels[p].mu;
            for (int k : code.labels[p].logicals)
                expected *= spec.value(b, code.logical_z[static_cast<std::size_t>(k - 1)]);
            report.parity_residual_ii = std::max(
                report.parity_residual_ii, std::abs(double(spec.value(b, p) - expected)));
        }
    }

    // (iii) P0 must be invariant under W X_k W for every logical k, and W
    // must commute with every logical Z (it never touches physical digits).
    for (int k = 0; k < code.n_logical; ++k) {
        const auto& chain = code.logical_x[static_cast<std::size_t>(k)];
        auto chain_bits = chain.indices();
        for (std::uint64_t b = 0; b < dim; ++b) {
            std::uint64_t image = detail::apply_correction(program, spec, b);
            for (std::size_t p : chain_bits)
                image += spec.digit(image, p) == 0 ? spec.strides[p] : -spec.strides[p];
            image = detail::apply_correction(program, spec, image);
            if (in_p0[image] != in_p0[b]) report.flip_unitary_residual_iii = 1.0;
        }
    }
    // Involution sanity: applying W twice is the identity.
    for (std::uint64_t b = 0; b < dim; ++b) {
        std::uint64_t once = detail::apply_correction(program, spec, b);
        if (detail::apply_correction(program, spec, once) != b)
            report.flip_unitary_residual_iii = std::max(report.flip_unitary_residual_iii, 1.0);
    }

    // (iv) spectral separation.
    auto analysis = subspace_analysis(sys);
    report.gap_margin_iv = analysis.margin;

    // Subspace spectrum: lowest 2^N * D levels must equal E0 + logical
    // spectrum with every level repeated D times.
    const std::uint64_t logical_dim = std::uint64_t(1) << code.n_logical;
    if (report.p0_dimension % logical_dim == 0 && report.p0_dimension > 0) {
        report.d_factor = report.p0_dimension / logical_dim;
        LogicalModel model = reconstruct_logical_model(program);
        AnnealSystem logical = build_logical_system(model);
        std::vector<double> expected;
        expected.reserve(report.p0_dimension);
        for (double e : logical.final_diagonal)
            for (std::uint64_t r = 0; r < report.d_factor; ++r)
                expected.push_back(analysis.e0 + e);
        std::sort(expected.begin(), expected.end());

        std::vector<double> program_levels(sys.final_diagonal);
        std::partial_sort(program_levels.begin(),
                          program_levels.begin() + static_cast<std::ptrdiff_t>(expected.size()),
                          program_levels.end());
        for (std::size_t i = 0; i < expected.size(); ++i)
            report.spectrum_match_deviation =
                std::max(report.spectrum_match_deviation,
                         std::abs(program_levels[i] - expected[i]));
    } else {
        report.d_factor = 0;
        report.spectrum_match_deviation = std::numeric_limits<double>::infinity();
    }
    return report;
}

}  // namespace annealab
