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

#include <map>
#include <string>
#include <vector>

#include "annealab/gadgets.hpp"
#include "annealab/model.hpp"

namespace annealab {

enum class Variant { Formal, EvenQutrit, OddQubit, MBody };

inline std::string variant_name(Variant v) {
    switch (v) {
        case Variant::Formal: return "formal";
        case Variant::EvenQutrit: return "even_qutrit";
        case Variant::OddQubit: return "odd_qubit";
        case Variant::MBody: return "mbody";
    }
    throw InternalError("unreachable variant");
}

inline Variant variant_from_name(const std::string& name) {
    if (name == "formal") return Variant::Formal;
    if (name == "even_qutrit") return Variant::EvenQutrit;
    if (name == "odd_qubit") return Variant::OddQubit;
    if (name == "mbody") return Variant::MBody;
    throw ValidationError("unknown variant '" + name +
                          "'; expected formal, even_qutrit, odd_qubit or mbody");
}

/// The nu assignment each gadget variant can enforce.
inline NuPolicy default_policy_for(Variant v) {
    switch (v) {
        case Variant::EvenQutrit: return NuPolicy::all_even();
        case Variant::OddQubit: return NuPolicy::all_odd();
        case Variant::Formal:
        case Variant::MBody: return NuPolicy::all_even();
    }
    throw InternalError("unreachable variant");
}

enum class SiteRole { Physical, Ancilla };

struct Site {
    std::string name;
    int dimension = 2;  // 2 qubit, 3 qutrit
    SiteRole role = SiteRole::Physical;
};

struct FieldTerm {
    std::size_t site = 0;
    double strength = 0.0;
};

/// One stabiliser's constraint gadget bound to global program sites.
struct ConstraintGroup {
    GadgetGroup gadget;
    std::vector<std::size_t> face_sites;     // global index per local face slot
    std::vector<std::size_t> ancilla_sites;  // global index per local ancilla slot
};

/// A compiled annealing program: the site catalogue (physical spins first,
/// then per-face ancillas), the logical-derived field terms, and the
/// constraint groups at penalty scale Delta.
struct PhysicalProgram {
    ParityCode code;
    Variant variant = Variant::Formal;
    double delta = 0.0;
    Rational ratio{2};  // odd-qubit ancilla coupling ratio
    std::vector<Site> sites;
    std::vector<FieldTerm> fields;
    std::vector<ConstraintGroup> constraints;
    std::vector<std::string> notes;  // metadata: duplicate-label splits etc.

    std::size_t n_physical() const { return code.spin_count(); }
    std::size_t site_count() const { return sites.size(); }
};

/// Map a logical model onto a code: h_j lands on the logical-Z spin (0,j),
/// each J/K coefficient lands on the spin(s) carrying that label scaled by
/// the spin's mu sign (split equally across duplicate labels), and one
/// constraint group per stabiliser enforces the code at scale Delta.
///
/// Delta = 0 is accepted so the unpenalised program remains inspectable;
/// the per-gadget entry points reject it.
inline PhysicalProgram compile_program(const LogicalModel& model, const ParityCode& code,
                                       Variant variant, double delta, double ratio = 2.0,
                                       bool allow_out_of_window_ratio = false) {
    if (model.n != code.n_logical)
        throw ValidationError("model has " + std::to_string(model.n) + " logicals but code has " +
                              std::to_string(code.n_logical));
    if (!(delta >= 0)) throw ValidationError("Delta must be non-negative");
    if (variant == Variant::OddQubit && !allow_out_of_window_ratio &&
        !(ratio > 1.0 && ratio < 3.0))
        throw ValidationError("coupling ratio " + std::to_string(ratio) +
                              " outside the working window (1, 3)");

    PhysicalProgram prog;
    prog.code = code;
    prog.variant = variant;
    prog.delta = delta;
    prog.ratio = rational_from_double(ratio);

    for (std::size_t p = 0; p < code.spin_count(); ++p)
        prog.sites.push_back({code.spins[p], 2, SiteRole::Physical});

    // Spins grouped by label subset.
    std::map<std::vector<int>, std::vector<std::size_t>> by_label;
    for (std::size_t p = 0; p < code.spin_count(); ++p)
        by_label[code.labels[p].logicals].push_back(p);

    for (int k = 1; k <= model.n; ++k) {
        double hk = model.h[static_cast<std::size_t>(k - 1)];
        if (hk != 0.0)
            prog.fields.push_back({code.logical_z[static_cast<std::size_t>(k - 1)], hk});
    }
    auto place = [&](const std::vector<int>& label, double value, const std::string& what) {
        auto it = by_label.find(label);
        if (it == by_label.end() || it->second.empty()) {
            std::string key;
            for (std::size_t i = 0; i < label.size(); ++i)
                key += (i ? "," : "") + std::to_string(label[i]);
            throw CodeDesignError("connectivity: no spin carries label {" + key + "} needed by " +
                                  what);
        }
        const auto& carriers = it->second;
        double share = value / static_cast<double>(carriers.size());
        for (std::size_t p : carriers)
            prog.fields.push_back({p, static_cast<double>(code.labels[p].mu) * share});
        if (carriers.size() > 1) {
            std::string key;
            for (std::size_t i = 0; i < label.size(); ++i)
                key += (i ? "," : "") + std::to_string(label[i]);
            prog.notes.push_back("label {" + key + "} carried by " +
                                 std::to_string(carriers.size()) +
                                 " spins; coefficient split equally");
        }
    };
    for (const auto& [key, value] : model.couplings)
        place({key.first, key.second}, value,
              "J(" + std::to_string(key.first) + "," + std::to_string(key.second) + ")");
    for (const auto& [subset, value] : model.higher_order) place(subset, value, "K term");

    for (const auto& s : code.stabilisers) {
        ConstraintGroup group;
        const int m = static_cast<int>(s.support.weight());
        switch (variant) {
            case Variant::Formal:
                group.gadget = detail::make_formal_group(s.face_id, s.nu, m);
                break;
            case Variant::EvenQutrit:
                if (s.nu != +1)
                    throw CodeDesignError("even_qutrit variant requires nu = +1; face " +
                                          s.face_id + " has nu = -1");
                group.gadget = detail::make_even_qutrit_group(s.face_id, m);
                break;
            case Variant::OddQubit:
                if (s.nu != -1)
                    throw CodeDesignError("odd_qubit variant requires nu = -1; face " +
                                          s.face_id + " has nu = +1");
                group.gadget = detail::make_odd_qubit_group(s.face_id, m, prog.ratio);
                break;
            case Variant::MBody:
                group.gadget = detail::make_mbody_group(s.face_id, m, s.nu);
                break;
        }
        group.face_sites = s.support.indices();
        for (std::size_t a = 0; a < group.gadget.n_ancillas(); ++a) {
            std::string name = "anc" + s.face_id;
            if (group.gadget.n_ancillas() > 1) name += ":" + std::to_string(a);
            int dim = group.gadget.ancillas[a] == AncillaKind::Qutrit ? 3 : 2;
            group.ancilla_sites.push_back(prog.sites.size());
            prog.sites.push_back({name, dim, SiteRole::Ancilla});
        }
        prog.constraints.push_back(std::move(group));
    }
    return prog;
}

}  // namespace annealab
