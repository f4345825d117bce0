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

#include <span>
#include <string>
#include <vector>

#include "annealab/code.hpp"
#include "annealab/common.hpp"

namespace annealab {

enum class AncillaKind { Qubit, Qutrit };

/// One emitted interaction of a constraint group, in local coordinates:
/// sites 0..M-1 are the face spins, sites M.. are the group's ancillas.
/// Coefficients are exact rationals in units of the penalty scale Delta.
struct GadgetTerm {
    enum class Kind {
        SiteField,    // coeff * v(a)
        SiteSquared,  // coeff * v(a)^2  (nontrivial only on qutrits)
        TwoBody,      // coeff * v(a) * v(b)
        ZProduct,     // coeff * prod over all face spins (formal variant only)
    };
    Kind kind = Kind::SiteField;
    int a = -1;
    int b = -1;
    Rational coeff;
};

/// A constraint Hamiltonian fragment enforcing one stabiliser: the emitted
/// terms plus the separately recorded constant that shifts the ground energy
/// of the group to zero on the target parity states.
struct GadgetGroup {
    std::string face_id;
    int nu = +1;
    int n_face = 0;
    std::vector<AncillaKind> ancillas;
    std::vector<GadgetTerm> terms;
    Rational constant;

    std::size_t n_ancillas() const { return ancillas.size(); }

    /// Group energy in Delta units, exact. `face_z` holds +-1 per face spin;
    /// `ancilla_vals` holds +-1 for qubits and -1/0/+1 for qutrits.
    Rational energy_coeff(std::span<const int> face_z, std::span<const int> ancilla_vals) const {
        if (face_z.size() != static_cast<std::size_t>(n_face) ||
            ancilla_vals.size() != ancillas.size())
            throw DimensionError("gadget evaluation arity mismatch");
        auto value = [&](int local) -> std::int64_t {
            return local < n_face ? face_z[static_cast<std::size_t>(local)]
                                  : ancilla_vals[static_cast<std::size_t>(local - n_face)];
        };
        Rational e = constant;
        for (const auto& t : terms) {
            switch (t.kind) {
                case GadgetTerm::Kind::SiteField:
                    e = e + t.coeff * value(t.a);
                    break;
                case GadgetTerm::Kind::SiteSquared: {
                    std::int64_t v = value(t.a);
                    e = e + t.coeff * (v * v);
                    break;
                }
                case GadgetTerm::Kind::TwoBody:
                    e = e + t.coeff * (value(t.a) * value(t.b));
                    break;
                case GadgetTerm::Kind::ZProduct: {
                    std::int64_t prod = 1;
                    for (int p = 0; p < n_face; ++p) prod *= face_z[static_cast<std::size_t>(p)];
                    e = e + t.coeff * prod;
                    break;
                }
            }
        }
        return e;
    }
};

namespace detail {

/// Formal penalty (Delta/2)(1 - nu S): zero on satisfying configurations,
/// Delta on violating ones.
inline GadgetGroup make_formal_group(const std::string& face_id, int nu, int n_face) {
    GadgetGroup g;
    g.face_id = face_id;
    g.nu = nu;
    g.n_face = n_face;
    g.constant = Rational(1, 2);
    g.terms.push_back({GadgetTerm::Kind::ZProduct, -1, -1, Rational(-nu, 2)});
    return g;
}

/// Even-parity (nu = +1) qutrit gadget, (Delta/4)(offset + 4 T + sum z)^2
/// with offset = 1 on three-spin faces. Expanded termwise; the (T^z)^2 piece
/// stays explicit as a SiteSquared term.
inline GadgetGroup make_even_qutrit_group(const std::string& face_id, int n_face) {
    if (n_face != 3 && n_face != 4)
        throw CodeDesignError("even-parity gadget supports 3- or 4-spin faces, got " +
                              std::to_string(n_face) + " on " + face_id);
    const int offset = n_face == 3 ? 1 : 0;
    GadgetGroup g;
    g.face_id = face_id;
    g.nu = +1;
    g.n_face = n_face;
    g.ancillas = {AncillaKind::Qutrit};
    const int anc = n_face;
    for (int a = 0; a < n_face; ++a)
        for (int b = a + 1; b < n_face; ++b)
            g.terms.push_back({GadgetTerm::Kind::TwoBody, a, b, Rational(1, 2)});
    for (int a = 0; a < n_face; ++a)
        g.terms.push_back({GadgetTerm::Kind::TwoBody, anc, a, Rational(2)});
    g.terms.push_back({GadgetTerm::Kind::SiteSquared, anc, -1, Rational(4)});
    if (offset) {
        for (int a = 0; a < n_face; ++a)
            g.terms.push_back({GadgetTerm::Kind::SiteField, a, -1, Rational(1, 2)});
        g.terms.push_back({GadgetTerm::Kind::SiteField, anc, -1, Rational(2)});
    }
    g.constant = Rational(n_face + offset, 4);
    return g;
}

/// Odd-parity (nu = -1) qubit gadget. At ratio 2 this is exactly
/// (Delta/4)(offset + 2 s + sum z)^2; the generalised form keeps the
/// face-pair couplings at Delta/2 and scales the ancilla couplings by
/// ratio/2, with the constant chosen so the odd-parity ground energy is 0.
inline GadgetGroup make_odd_qubit_group(const std::string& face_id, int n_face,
                                        const Rational& ratio) {
    if (n_face != 3 && n_face != 4)
        throw CodeDesignError("odd-parity gadget supports 3- or 4-spin faces, got " +
                              std::to_string(n_face) + " on " + face_id);
    const int offset = n_face == 3 ? 1 : 0;
    GadgetGroup g;
    g.face_id = face_id;
    g.nu = -1;
    g.n_face = n_face;
    g.ancillas = {AncillaKind::Qubit};
    const int anc = n_face;
    const Rational half_ratio = ratio * Rational(1, 2);
    for (int a = 0; a < n_face; ++a)
        for (int b = a + 1; b < n_face; ++b)
            g.terms.push_back({GadgetTerm::Kind::TwoBody, a, b, Rational(1, 2)});
    for (int a = 0; a < n_face; ++a)
        g.terms.push_back({GadgetTerm::Kind::TwoBody, anc, a, half_ratio});
    if (offset) {
        for (int a = 0; a < n_face; ++a)
            g.terms.push_back({GadgetTerm::Kind::SiteField, a, -1, Rational(1, 2)});
        g.terms.push_back({GadgetTerm::Kind::SiteField, anc, -1, half_ratio});
    }
    g.constant = ratio;
    return g;
}

/// Minimal qubit-ancilla count for an M-body parity constraint, as
/// established by the exhaustive ground-space audit (`gadget-audit`):
/// odd M needs (M-1)/2 either sign; even M needs M/2 for a positive
/// constraint and M/2 - 1 for a negative one.
inline int audited_ancilla_count(int m, int target_sign) {
    if (m % 2 == 1) return (m - 1) / 2;
    return target_sign > 0 ? m / 2 : m / 2 - 1;
}

/// M-body ancilla gadget with an explicit ancilla count (the audit probes
/// non-minimal counts through this). Odd M:
/// (Delta/4)(sum z -+ (1 + 2 sum a))^2 with the sign matching the target
/// eigenvalue. Even M: (Delta/4)(sum z + 2 sum a)^2.
inline GadgetGroup make_mbody_group_with_count(const std::string& face_id, int n_face,
                                               int target_sign, int p) {
    if (n_face < 3)
        throw CodeDesignError("M-body gadget needs at least 3 face spins on " + face_id);
    if (target_sign != 1 && target_sign != -1)
        throw ValidationError("target sign must be +1 or -1");
    if (p < 0) throw ValidationError("ancilla count must be non-negative");
    GadgetGroup g;
    g.face_id = face_id;
    g.nu = target_sign;
    g.n_face = n_face;
    g.ancillas.assign(static_cast<std::size_t>(p), AncillaKind::Qubit);

    for (int a = 0; a < n_face; ++a)
        for (int b = a + 1; b < n_face; ++b)
            g.terms.push_back({GadgetTerm::Kind::TwoBody, a, b, Rational(1, 2)});
    for (int a = 0; a < p; ++a)
        for (int b = a + 1; b < p; ++b)
            g.terms.push_back({GadgetTerm::Kind::TwoBody, n_face + a, n_face + b, Rational(2)});

    if (n_face % 2 == 1) {
        const int s = target_sign;
        for (int a = 0; a < n_face; ++a)
            for (int j = 0; j < p; ++j)
                g.terms.push_back({GadgetTerm::Kind::TwoBody, a, n_face + j, Rational(-s)});
        for (int a = 0; a < n_face; ++a)
            g.terms.push_back({GadgetTerm::Kind::SiteField, a, -1, Rational(-s, 2)});
        for (int j = 0; j < p; ++j)
            g.terms.push_back({GadgetTerm::Kind::SiteField, n_face + j, -1, Rational(1)});
        g.constant = Rational(n_face + 1 + 4 * p, 4);
    } else {
        for (int a = 0; a < n_face; ++a)
            for (int j = 0; j < p; ++j)
                g.terms.push_back({GadgetTerm::Kind::TwoBody, a, n_face + j, Rational(1)});
        g.constant = Rational(n_face + 4 * p, 4);
    }
    return g;
}

/// M-body gadget at the audited minimal ancilla count.
inline GadgetGroup make_mbody_group(const std::string& face_id, int n_face, int target_sign) {
    return make_mbody_group_with_count(face_id, n_face, target_sign,
                                       audited_ancilla_count(n_face, target_sign));
}

}  // namespace detail

inline void require_positive_delta(double delta) {
    if (!(delta > 0)) throw ValidationError("Delta must be positive");
}

/// Formal stabiliser penalties for a whole code: per face,
/// (Delta/2)(1 - nu S). Term coefficients are in Delta units.
inline std::vector<GadgetGroup> formal_constraint(const ParityCode& code, double delta) {
    require_positive_delta(delta);
    std::vector<GadgetGroup> groups;
    for (const auto& s : code.stabilisers)
        groups.push_back(detail::make_formal_group(s.face_id, s.nu,
                                                   static_cast<int>(s.support.weight())));
    return groups;
}

/// Qutrit gadget for one even-parity face.
inline GadgetGroup even_parity_gadget(const Stabiliser& stabiliser, double delta) {
    require_positive_delta(delta);
    if (stabiliser.nu != +1)
        throw CodeDesignError("even-parity gadget requires nu = +1 on face " +
                              stabiliser.face_id);
    return detail::make_even_qutrit_group(stabiliser.face_id,
                                          static_cast<int>(stabiliser.support.weight()));
}

/// Qubit gadget for one odd-parity face. `ratio` is the ancilla-to-face
/// coupling ratio; any value strictly between 1 and 3 enforces the
/// constraint and 2 is the optimum. Out-of-window ratios are rejected
/// unless explicitly overridden (the override exists so the boundary
/// failure is testable).
inline GadgetGroup odd_parity_gadget(const Stabiliser& stabiliser, double delta,
                                     double ratio = 2.0, bool allow_out_of_window = false) {
    require_positive_delta(delta);
    if (stabiliser.nu != -1)
        throw CodeDesignError("odd-parity gadget requires nu = -1 on face " +
                              stabiliser.face_id);
    if (!allow_out_of_window && !(ratio > 1.0 && ratio < 3.0))
        throw ValidationError("coupling ratio " + std::to_string(ratio) +
                              " outside the working window (1, 3)");
    return detail::make_odd_qubit_group(stabiliser.face_id,
                                        static_cast<int>(stabiliser.support.weight()),
                                        rational_from_double(ratio));
}

/// Qubit-ancilla gadget for an M-body stabiliser of either sign.
inline GadgetGroup mbody_gadget(const Stabiliser& stabiliser, int target_sign, double delta) {
    require_positive_delta(delta);
    return detail::make_mbody_group(stabiliser.face_id,
                                    static_cast<int>(stabiliser.support.weight()), target_sign);
}

}  // namespace annealab
