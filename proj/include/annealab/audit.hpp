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

#include <set>
#include <sstream>

#include "annealab/spectral.hpp"

namespace annealab {

/// Does the gadget's exhaustive ground set project exactly onto the
/// target-parity eigenspace of its face spins?
inline bool gadget_enforces_parity(const GadgetGroup& gadget) {
    auto space = gadget_groundspace_oracle(gadget);
    std::set<std::vector<int>> projected;
    for (const auto& [face, anc] : space.states) projected.insert(face);

    std::set<std::vector<int>> target;
    std::vector<int> face(static_cast<std::size_t>(gadget.n_face));
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << gadget.n_face); ++bits) {
        int prod = 1;
        for (int i = 0; i < gadget.n_face; ++i) {
            face[static_cast<std::size_t>(i)] = ((bits >> i) & 1) ? -1 : +1;
            prod *= face[static_cast<std::size_t>(i)];
        }
        if (prod == gadget.nu) target.insert(face);
    }
    return projected == target;
}

/// One audited M-body configuration. `minimal` is the smallest qubit count
/// for which the exhaustive ground-set check passes; `builtin` is what
/// mbody_gadget uses; `nominal` is the closed-form count under audit
/// (odd M: (M-1)/2 either sign; even M: M/2+1 positive, M/2 negative).
struct GadgetAuditRow {
    int m = 0;
    int sign = +1;
    int minimal = -1;
    int builtin = 0;
    int nominal = 0;
    bool builtin_is_minimal = false;
    bool nominal_agrees = false;
};

inline int nominal_ancilla_count(int m, int sign) {
    if (m % 2 == 1) return (m - 1) / 2;
    return sign > 0 ? m / 2 + 1 : m / 2;
}

inline std::vector<GadgetAuditRow> audit_gadget_ancilla_counts(int max_m) {
    if (max_m < 3 || max_m > 16) throw ValidationError("audit supports M between 3 and 16");
    std::vector<GadgetAuditRow> rows;
    for (int m = 3; m <= max_m; ++m) {
        for (int sign : {+1, -1}) {
            GadgetAuditRow row;
            row.m = m;
            row.sign = sign;
            row.builtin = detail::audited_ancilla_count(m, sign);
            row.nominal = nominal_ancilla_count(m, sign);
            for (int p = 0; p <= m / 2 + 2; ++p) {
                auto g = detail::make_mbody_group_with_count("audit", m, sign, p);
                if (gadget_enforces_parity(g)) {
                    row.minimal = p;
                    break;
                }
            }
            row.builtin_is_minimal = row.minimal == row.builtin;
            row.nominal_agrees = row.minimal == row.nominal;
            rows.push_back(row);
        }
    }
    return rows;
}

inline std::string format_audit_table(const std::vector<GadgetAuditRow>& rows) {
    std::ostringstream out;
    out << "  M  sign  minimal  builtin  nominal  verdict\n";
    for (const auto& r : rows) {
        out << "  " << r.m << "  " << (r.sign > 0 ? "  +1" : "  -1") << "  "
            << (r.minimal < 0 ? std::string("none<=") + std::to_string(r.m / 2 + 2)
                              : std::to_string(r.minimal))
            << "        " << r.builtin << "        " << r.nominal << "        "
            << (r.nominal_agrees ? "nominal ok" : "nominal count disagrees") << "\n";
    }
    return out.str();
}

}  // namespace annealab
