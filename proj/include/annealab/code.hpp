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
#include <set>
#include <string>
#include <vector>

#include "annealab/gf2.hpp"

namespace annealab {

/// Conventional name of a lattice spin with coordinates (i, j), i < j.
/// Vertex spins are (0, j); edge spins carry both coordinates.
inline std::string grid_spin_name(int i, int j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

inline std::string face_name(int i, int j) {
    return "[" + std::to_string(i) + "," + std::to_string(j) + "]";
}

/// One parity constraint: a Z-product over `support` pinned to eigenvalue nu.
struct Stabiliser {
    SupportVector support;
    int nu = +1;  // +1 positive (even) constraint, -1 negative (odd)
    std::string face_id;
};

/// Role of one physical spin: the set of logical spins whose Z-product it
/// carries, and the +-1 sign mu relating the two.
struct SpinLabel {
    std::vector<int> logicals;  // sorted, 1-based logical indices
    int mu = +1;

    friend bool operator==(const SpinLabel& a, const SpinLabel& b) {
        return a.logicals == b.logicals && a.mu == b.mu;
    }
};

/// Target-eigenvalue assignment for a family of stabilisers.
struct NuPolicy {
    enum class Kind { AllEven, AllOdd, PerFace };
    Kind kind = Kind::AllEven;
    std::map<std::string, int> per_face;

    static NuPolicy all_even() { return {Kind::AllEven, {}}; }
    static NuPolicy all_odd() { return {Kind::AllOdd, {}}; }
    static NuPolicy per_face_map(std::map<std::string, int> m) {
        return {Kind::PerFace, std::move(m)};
    }

    int nu_for(const std::string& face_id) const {
        switch (kind) {
            case Kind::AllEven: return +1;
            case Kind::AllOdd: return -1;
            case Kind::PerFace: {
                auto it = per_face.find(face_id);
                if (it == per_face.end())
                    throw ValidationError("nu policy has no entry for face " + face_id);
                if (it->second != 1 && it->second != -1)
                    throw ValidationError("nu for face " + face_id + " must be +1 or -1");
                return it->second;
            }
        }
        throw InternalError("unreachable nu policy kind");
    }
};

/// A parity code: physical spins, stabilisers with target eigenvalues,
/// logical-Z assignment, and the derived logical-X chains and spin labels.
/// Immutable once built; all operations below return fresh values.
struct ParityCode {
    int n_logical = 0;
    std::vector<std::string> spins;            // ordered spin ids
    std::vector<Stabiliser> stabilisers;
    std::vector<std::size_t> logical_z;        // spin index carrying logical k+1
    std::vector<SupportVector> logical_x;      // derived, one chain per logical
    std::vector<SpinLabel> labels;             // derived, one per spin

    std::size_t spin_count() const { return spins.size(); }

    std::size_t index_of(const std::string& spin) const {
        auto it = std::find(spins.begin(), spins.end(), spin);
        if (it == spins.end()) throw ValidationError("unknown spin id '" + spin + "'");
        return static_cast<std::size_t>(it - spins.begin());
    }

    bool has_spin(const std::string& spin) const {
        return std::find(spins.begin(), spins.end(), spin) != spins.end();
    }

    /// Matrix whose rows are all stabiliser supports.
    Gf2Matrix stabiliser_matrix() const {
        Gf2Matrix m(spin_count());
        for (const auto& s : stabilisers) m.add_row(s.support);
        return m;
    }

    /// Stabiliser supports followed by the logical-Z singletons; full GF(2)
    /// rank of this matrix is what makes spin roles uniquely defined.
    Gf2Matrix generator_matrix() const {
        Gf2Matrix m = stabiliser_matrix();
        for (std::size_t z : logical_z)
            m.add_row(SupportVector::from_indices(spin_count(), {z}));
        return m;
    }
};

/// Derive the logical X chains. Chain k must anti-commute with logical Z_k,
/// commute with every other logical Z and with every stabiliser. For valid
/// codes the solution is unique; when a custom code leaves freedom the
/// canonical representative is the minimal-weight solution, ties broken by
/// lexicographic bit order.
inline std::vector<SupportVector> derive_logical_x(const ParityCode& code) {
    const std::size_t n_stab = code.stabilisers.size();
    const std::size_t n_rows = n_stab + code.logical_z.size();

    Gf2Matrix constraints = code.generator_matrix();
    std::vector<SupportVector> rhs_list;
    for (int k = 0; k < code.n_logical; ++k) {
        SupportVector rhs(n_rows);
        rhs.set(n_stab + static_cast<std::size_t>(k));
        rhs_list.push_back(std::move(rhs));
    }

    auto solutions = gf2_solve_many(constraints, rhs_list);
    std::vector<SupportVector> chains;
    for (int k = 0; k < code.n_logical; ++k) {
        auto& sol = solutions[static_cast<std::size_t>(k)];
        if (!sol.feasible())
            throw CodeDesignError("no logical X chain exists for logical spin " +
                                  std::to_string(k + 1));
        SupportVector best = *sol.particular;
        if (!sol.nullspace.empty()) {
            if (sol.nullspace.size() > 20)
                throw CodeDesignError("logical X solution space too large to canonicalise");
            const std::size_t combos = std::size_t(1) << sol.nullspace.size();
            for (std::size_t mask = 1; mask < combos; ++mask) {
                SupportVector cand = *sol.particular;
                for (std::size_t b = 0; b < sol.nullspace.size(); ++b)
                    if ((mask >> b) & 1) cand ^= sol.nullspace[b];
                if (cand.weight() < best.weight() ||
                    (cand.weight() == best.weight() && cand.lex_less(best)))
                    best = cand;
            }
        }
        chains.push_back(std::move(best));
    }
    return chains;
}

/// Label every spin with the logical subset it represents and the sign mu.
/// Two independent routes are computed and must agree on the subset:
///   1. intersections of the derived logical X chains, and
///   2. the GF(2) decomposition of the spin's Z operator into logical Zs and
///      stabilisers, whose stabiliser factor also yields mu as a product of
///      nu eigenvalues.
inline std::vector<SpinLabel> label_spins(const ParityCode& code) {
    if (code.logical_x.size() != static_cast<std::size_t>(code.n_logical))
        throw ValidationError("logical X chains must be derived before labelling");

    const std::size_t n = code.spin_count();
    const std::size_t n_stab = code.stabilisers.size();
    const std::size_t n_gen = n_stab + code.logical_z.size();

    // Route 1: chain intersections.
    std::vector<std::vector<int>> by_intersection(n);
    for (int k = 1; k <= code.n_logical; ++k) {
        const auto& chain = code.logical_x[static_cast<std::size_t>(k - 1)];
        for (std::size_t p : chain.indices()) by_intersection[p].push_back(k);
    }

    // Route 2: decomposition. Solve sum_g y_g support_g = e_p for every p;
    // the coordinate rows of the generator matrix form the system.
    Gf2Matrix coordinate_rows(n_gen);
    {
        Gf2Matrix gens = code.generator_matrix();
        for (std::size_t c = 0; c < n; ++c) {
            SupportVector row(n_gen);
            for (std::size_t g = 0; g < n_gen; ++g)
                if (gens.rows[g].test(c)) row.set(g);
            coordinate_rows.add_row(std::move(row));
        }
    }
    std::vector<SupportVector> units;
    for (std::size_t p = 0; p < n; ++p) {
        SupportVector e(n);
        e.set(p);
        units.push_back(std::move(e));
    }
    auto decompositions = gf2_solve_many(coordinate_rows, units);

    std::vector<SpinLabel> labels(n);
    for (std::size_t p = 0; p < n; ++p) {
        if (!decompositions[p].feasible())
            throw CodeDesignError("spin '" + code.spins[p] +
                                  "' is not expressible from stabilisers and logical Zs");
        const SupportVector& y = *decompositions[p].particular;
        SpinLabel label;
        label.mu = +1;
        for (std::size_t s = 0; s < n_stab; ++s)
            if (y.test(s)) label.mu *= code.stabilisers[s].nu;
        for (int k = 1; k <= code.n_logical; ++k)
            if (y.test(n_stab + static_cast<std::size_t>(k - 1))) label.logicals.push_back(k);

        if (label.logicals != by_intersection[p])
            throw InternalError("label methods disagree on spin '" + code.spins[p] + "'");
        labels[p] = std::move(label);
    }
    return labels;
}

namespace detail {

/// Derive chains and labels in place, after structural validation.
inline void finalize_code(ParityCode& code) {
    if (code.stabilisers.size() + static_cast<std::size_t>(code.n_logical) != code.spin_count())
        throw CodeDesignError(
            "stabiliser count must equal spins minus logicals: have " +
            std::to_string(code.stabilisers.size()) + " stabilisers, " +
            std::to_string(code.spin_count()) + " spins, " + std::to_string(code.n_logical) +
            " logicals");
    std::size_t stab_rank = gf2_rank(code.stabiliser_matrix());
    if (stab_rank != code.stabilisers.size())
        throw CodeDesignError("dependent stabilisers: rank " + std::to_string(stab_rank) +
                              " of " + std::to_string(code.stabilisers.size()));
    code.logical_x = derive_logical_x(code);
    code.labels = label_spins(code);
    for (int k = 1; k <= code.n_logical; ++k) {
        const auto& label = code.labels[code.logical_z[static_cast<std::size_t>(k - 1)]];
        if (label.logicals != std::vector<int>{k} || label.mu != +1)
            throw InternalError("logical Z spin " + std::to_string(k) + " mislabelled");
    }
}

}  // namespace detail

/// The square-cell lattice: N(N+1)/2 spins (i,j) with 0 <= i < j <= N,
/// one face stabiliser [i,j] per pair j >= i+2 (four spins, or three along
/// the bottom row where j = i+2), logical Z on the left diagonal (0,k).
inline ParityCode build_square_lattice(int n_logical, const NuPolicy& policy) {
    if (n_logical < 2) throw ValidationError("square lattice needs at least 2 logical spins");
    ParityCode code;
    code.n_logical = n_logical;

    std::map<std::pair<int, int>, std::size_t> index;
    for (int i = 0; i <= n_logical; ++i)
        for (int j = i + 1; j <= n_logical; ++j) {
            index[{i, j}] = code.spins.size();
            code.spins.push_back(grid_spin_name(i, j));
        }
    for (int k = 1; k <= n_logical; ++k) code.logical_z.push_back(index[{0, k}]);

    // Faces top-to-bottom, left-to-right: [0,N]; [0,N-1],[1,N]; ...
    for (int span = n_logical; span >= 2; --span) {
        for (int i = 0; i + span <= n_logical; ++i) {
            int j = i + span;
            std::vector<std::size_t> support = {index[{i, j}], index[{i, j - 1}],
                                                index[{i + 1, j}]};
            if (i + 2 < j) support.push_back(index[{i + 1, j - 1}]);
            Stabiliser s;
            s.face_id = face_name(i, j);
            s.nu = policy.nu_for(s.face_id);
            s.support = SupportVector::from_indices(code.spins.size(), support);
            code.stabilisers.push_back(std::move(s));
        }
    }
    detail::finalize_code(code);
    return code;
}

/// All-to-all lattice built from three-spin stabilisers only. The spin set
/// matches the square lattice; the generating set consists of the corner
/// triangles {(0,i),(0,i+1),(i,i+1)} along the base plus one triangle
/// {(i,j-1),(j-1,j),(i,j)} per remaining pair, so that the three faces
/// [i,i+1], [i+1,i+2], [i,i+2] multiply to the corner operator
/// {(0,i),(0,i+2),(i,i+2)}.
inline ParityCode build_triangular_lattice(int n_logical, const NuPolicy& policy) {
    if (n_logical < 2)
        throw ValidationError("triangular lattice needs at least 2 logical spins");
    ParityCode code;
    code.n_logical = n_logical;

    std::map<std::pair<int, int>, std::size_t> index;
    for (int i = 0; i <= n_logical; ++i)
        for (int j = i + 1; j <= n_logical; ++j) {
            index[{i, j}] = code.spins.size();
            code.spins.push_back(grid_spin_name(i, j));
        }
    for (int k = 1; k <= n_logical; ++k) code.logical_z.push_back(index[{0, k}]);

    for (int j = 2; j <= n_logical; ++j) {
        for (int i = 1; i < j; ++i) {
            std::vector<std::size_t> support;
            if (j == i + 1)
                support = {index[{0, i}], index[{0, i + 1}], index[{i, i + 1}]};
            else
                support = {index[{i, j - 1}], index[{j - 1, j}], index[{i, j}]};
            Stabiliser s;
            s.face_id = face_name(i, j);
            s.nu = policy.nu_for(s.face_id);
            s.support = SupportVector::from_indices(code.spins.size(), support);
            code.stabilisers.push_back(std::move(s));
        }
    }
    detail::finalize_code(code);
    return code;
}

/// Code for a tree-shaped logical connectivity graph: one vertex spin per
/// logical, one edge spin per tree edge, and a three-spin stabiliser
/// {(0,i),(0,j),(i,j)} per edge. Total 2N-1 physical spins.
inline ParityCode build_tree_code(int n_logical, const std::vector<std::pair<int, int>>& edges,
                                  const NuPolicy& policy = NuPolicy::all_even()) {
    if (n_logical < 2) throw ValidationError("tree code needs at least 2 logical spins");

    std::set<std::pair<int, int>> normalized;
    std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(n_logical) + 1);
    for (auto [a, b] : edges) {
        if (a > b) std::swap(a, b);
        if (a < 1 || b > n_logical || a == b)
            throw ValidationError("tree edge (" + std::to_string(a) + "," + std::to_string(b) +
                                  ") is not between distinct logicals in 1.." +
                                  std::to_string(n_logical));
        if (!normalized.insert({a, b}).second)
            throw ValidationError("duplicate tree edge (" + std::to_string(a) + "," +
                                  std::to_string(b) + ") forms a cycle");
        adjacency[static_cast<std::size_t>(a)].push_back(b);
        adjacency[static_cast<std::size_t>(b)].push_back(a);
    }
    if (normalized.size() != static_cast<std::size_t>(n_logical) - 1)
        throw ValidationError("input graph is not a tree: " + std::to_string(normalized.size()) +
                              " edges for " + std::to_string(n_logical) + " vertices");
    // Connectivity; with |E| = N-1 this also rules out cycles.
    std::vector<bool> seen(static_cast<std::size_t>(n_logical) + 1, false);
    std::vector<int> stack = {1};
    seen[1] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : adjacency[static_cast<std::size_t>(v)])
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = true;
                stack.push_back(w);
            }
    }
    for (int v = 1; v <= n_logical; ++v)
        if (!seen[static_cast<std::size_t>(v)])
            throw ValidationError("input graph is not a tree: vertex " + std::to_string(v) +
                                  " is disconnected");

    ParityCode code;
    code.n_logical = n_logical;
    for (int k = 1; k <= n_logical; ++k) {
        code.logical_z.push_back(code.spins.size());
        code.spins.push_back(grid_spin_name(0, k));
    }
    std::map<std::pair<int, int>, std::size_t> edge_index;
    for (const auto& e : normalized) {
        edge_index[e] = code.spins.size();
        code.spins.push_back(grid_spin_name(e.first, e.second));
    }
    for (const auto& e : normalized) {
        Stabiliser s;
        s.face_id = face_name(e.first, e.second);
        s.nu = policy.nu_for(s.face_id);
        s.support = SupportVector::from_indices(
            code.spins.size(),
            {code.logical_z[static_cast<std::size_t>(e.first - 1)],
             code.logical_z[static_cast<std::size_t>(e.second - 1)], edge_index[e]});
        code.stabilisers.push_back(std::move(s));
    }
    detail::finalize_code(code);
    return code;
}

/// Descriptor for one stabiliser of a custom code, by spin id.
struct StabiliserSpec {
    std::vector<std::string> spins;
    int nu = +1;
    std::string face_id;
};

/// Assemble a code from explicit parts, with each defect reported
/// distinctly: bad ids, count mismatch, dependent stabilisers and an
/// infeasible logical-X system all carry the offending element.
inline ParityCode make_custom_code(int n_logical, std::vector<std::string> spin_ids,
                                   const std::vector<StabiliserSpec>& stabiliser_specs,
                                   const std::vector<std::string>& logical_z_ids) {
    if (n_logical < 1) throw ValidationError("n_logical must be at least 1");
    ParityCode code;
    code.n_logical = n_logical;
    code.spins = std::move(spin_ids);

    std::map<std::string, std::size_t> index;
    for (std::size_t p = 0; p < code.spins.size(); ++p) {
        if (code.spins[p].empty()) throw ValidationError("empty spin id");
        if (!index.emplace(code.spins[p], p).second)
            throw ValidationError("duplicate spin id '" + code.spins[p] + "'");
    }

    if (logical_z_ids.size() != static_cast<std::size_t>(n_logical))
        throw ValidationError("logical_z must list exactly " + std::to_string(n_logical) +
                              " spins");
    std::set<std::string> z_seen;
    for (const auto& id : logical_z_ids) {
        auto it = index.find(id);
        if (it == index.end()) throw ValidationError("logical_z names unknown spin '" + id + "'");
        if (!z_seen.insert(id).second)
            throw ValidationError("logical_z lists spin '" + id + "' twice");
        code.logical_z.push_back(it->second);
    }

    std::set<std::string> face_seen;
    for (std::size_t s = 0; s < stabiliser_specs.size(); ++s) {
        const auto& spec = stabiliser_specs[s];
        if (spec.spins.empty())
            throw ValidationError("stabiliser " + std::to_string(s) + " has empty support");
        if (spec.nu != 1 && spec.nu != -1)
            throw ValidationError("stabiliser " + std::to_string(s) + " has nu " +
                                  std::to_string(spec.nu) + "; must be +1 or -1");
        Stabiliser st;
        st.nu = spec.nu;
        st.face_id = spec.face_id.empty() ? "S" + std::to_string(s) : spec.face_id;
        if (!face_seen.insert(st.face_id).second)
            throw ValidationError("duplicate face id '" + st.face_id + "'");
        std::set<std::string> support_seen;
        std::vector<std::size_t> bits;
        for (const auto& id : spec.spins) {
            auto it = index.find(id);
            if (it == index.end())
                throw ValidationError("stabiliser " + st.face_id + " names unknown spin '" + id +
                                      "'");
            if (!support_seen.insert(id).second)
                throw ValidationError("stabiliser " + st.face_id + " repeats spin '" + id + "'");
            bits.push_back(it->second);
        }
        st.support = SupportVector::from_indices(code.spins.size(), bits);
        code.stabilisers.push_back(std::move(st));
    }

    detail::finalize_code(code);
    return code;
}

/// Extend a code with one spin that represents a multi-logical Z product.
/// The target subset must equal the XOR of the labels of the caller-supplied
/// locality spins; one new stabiliser couples the locality set to the new
/// spin and the derived data is rebuilt.
inline ParityCode add_multibody_spin(const ParityCode& base, const std::vector<int>& target,
                                     const std::vector<std::string>& locality_spins,
                                     int nu = +1) {
    std::vector<int> want = target;
    std::sort(want.begin(), want.end());
    if (want.empty() || std::adjacent_find(want.begin(), want.end()) != want.end())
        throw ValidationError("target logical subset must be non-empty and duplicate-free");
    for (int k : want)
        if (k < 1 || k > base.n_logical)
            throw ValidationError("target names logical " + std::to_string(k) +
                                  " outside 1.." + std::to_string(base.n_logical));
    if (nu != 1 && nu != -1) throw ValidationError("nu must be +1 or -1");
    if (locality_spins.empty()) throw ValidationError("locality set must be non-empty");

    std::set<int> acc;
    std::vector<std::size_t> locality_idx;
    std::set<std::size_t> locality_seen;
    for (const auto& id : locality_spins) {
        std::size_t p = base.index_of(id);
        if (!locality_seen.insert(p).second)
            throw ValidationError("locality set repeats spin '" + id + "'");
        locality_idx.push_back(p);
        for (int k : base.labels[p].logicals) {
            if (!acc.erase(k)) acc.insert(k);
        }
    }
    std::vector<int> achieved(acc.begin(), acc.end());
    if (achieved != want) {
        std::set<int> residual;
        for (int k : achieved) residual.insert(k);
        for (int k : want) {
            if (!residual.erase(k)) residual.insert(k);
        }
        std::string msg = "locality labels do not XOR to the target; residual {";
        bool first = true;
        for (int k : residual) {
            if (!first) msg += ",";
            msg += std::to_string(k);
            first = false;
        }
        throw CodeDesignError(msg + "}");
    }

    ParityCode code;
    code.n_logical = base.n_logical;
    code.spins = base.spins;
    code.logical_z = base.logical_z;

    std::string base_name = "m(";
    for (std::size_t i = 0; i < want.size(); ++i)
        base_name += (i ? "," : "") + std::to_string(want[i]);
    base_name += ")";
    std::string name = base_name;
    for (int suffix = 2; code.has_spin(name); ++suffix)
        name = base_name + "#" + std::to_string(suffix);
    std::size_t new_idx = code.spins.size();
    code.spins.push_back(name);

    const std::size_t n = code.spins.size();
    for (const auto& s : base.stabilisers) {
        Stabiliser widened;
        widened.nu = s.nu;
        widened.face_id = s.face_id;
        widened.support = SupportVector::from_indices(n, s.support.indices());
        code.stabilisers.push_back(std::move(widened));
    }
    Stabiliser extra;
    extra.nu = nu;
    std::string face_base = "M" + name;
    extra.face_id = face_base;
    for (int suffix = 2;; ++suffix) {
        bool clash = false;
        for (const auto& s : code.stabilisers)
            if (s.face_id == extra.face_id) clash = true;
        if (!clash) break;
        extra.face_id = face_base + "#" + std::to_string(suffix);
    }
    std::vector<std::size_t> bits = locality_idx;
    bits.push_back(new_idx);
    extra.support = SupportVector::from_indices(n, bits);
    code.stabilisers.push_back(std::move(extra));

    detail::finalize_code(code);
    return code;
}

struct CodeCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CodeCheck> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const CodeCheck& check(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return c;
        throw ValidationError("no check named '" + name + "'");
    }
};

/// Re-verify a code from scratch. Failures become report entries, never
/// exceptions, so malformed hand-built codes can be inspected.
inline VerificationReport verify_code(const ParityCode& code) {
    VerificationReport report;

    {
        CodeCheck c{"stabiliser count", false, ""};
        std::size_t expected = code.spin_count() - static_cast<std::size_t>(code.n_logical);
        c.pass = code.stabilisers.size() == expected;
        c.detail = std::to_string(code.stabilisers.size()) + " stabilisers, expected " +
                   std::to_string(expected);
        report.checks.push_back(c);
    }
    {
        CodeCheck c{"stabiliser independence", false, ""};
        std::size_t rank = gf2_rank(code.stabiliser_matrix());
        c.pass = rank == code.stabilisers.size();
        c.detail = "rank " + std::to_string(rank) + " of " +
                   std::to_string(code.stabilisers.size()) +
                   (c.pass ? "" : " (deficit " +
                                      std::to_string(code.stabilisers.size() - rank) + ")");
        report.checks.push_back(c);
    }
    {
        CodeCheck c{"full generator rank", false, ""};
        std::size_t rank = gf2_rank(code.generator_matrix());
        c.pass = rank == code.spin_count();
        c.detail = "rank " + std::to_string(rank) + " of " + std::to_string(code.spin_count());
        report.checks.push_back(c);
    }
    {
        CodeCheck c{"logical X relations", false, ""};
        if (code.logical_x.size() != static_cast<std::size_t>(code.n_logical)) {
            c.detail = "logical X chains not derived";
        } else {
            c.pass = true;
            for (int k = 0; k < code.n_logical && c.pass; ++k) {
                const auto& chain = code.logical_x[static_cast<std::size_t>(k)];
                for (int k2 = 0; k2 < code.n_logical && c.pass; ++k2) {
                    SupportVector z = SupportVector::from_indices(
                        code.spin_count(), {code.logical_z[static_cast<std::size_t>(k2)]});
                    bool should_commute = (k != k2);
                    if (commutes(chain, z) != should_commute) {
                        c.pass = false;
                        c.detail = "chain " + std::to_string(k + 1) + " vs logical Z " +
                                   std::to_string(k2 + 1);
                    }
                }
                for (const auto& s : code.stabilisers)
                    if (!commutes(chain, s.support)) {
                        c.pass = false;
                        c.detail = "chain " + std::to_string(k + 1) + " anti-commutes with " +
                                   s.face_id;
                        break;
                    }
            }
            if (c.pass) c.detail = "all commutation relations hold";
        }
        report.checks.push_back(c);
    }
    {
        CodeCheck c{"label method agreement", false, ""};
        try {
            auto relabelled = label_spins(code);
            c.pass = code.labels == relabelled;
            c.detail = c.pass ? "intersection and decomposition methods agree"
                              : "stored labels differ from recomputation";
        } catch (const std::exception& e) {
            c.detail = e.what();
        }
        report.checks.push_back(c);
    }
    {
        CodeCheck c{"logical spins self-labelled", false, ""};
        c.pass = code.labels.size() == code.spin_count();
        for (int k = 1; c.pass && k <= code.n_logical; ++k) {
            const auto& label = code.labels[code.logical_z[static_cast<std::size_t>(k - 1)]];
            if (label.logicals != std::vector<int>{k} || label.mu != +1) {
                c.pass = false;
                c.detail = "logical " + std::to_string(k);
            }
        }
        if (c.pass) c.detail = "each (0,k) labelled ({k}, +1)";
        report.checks.push_back(c);
    }
    return report;
}

struct SyndromeReport {
    std::vector<std::string> violated;  // face ids, in stabiliser order
    std::size_t satisfied_count = 0;
};

/// Which stabilisers does a measured z-configuration violate?
inline SyndromeReport syndrome(const ParityCode& code, const std::vector<int>& z_configuration) {
    if (z_configuration.size() != code.spin_count())
        throw DimensionError("configuration length " + std::to_string(z_configuration.size()) +
                             " does not match " + std::to_string(code.spin_count()) + " spins");
    for (int v : z_configuration)
        if (v != 1 && v != -1) throw ValidationError("configuration values must be +1 or -1");

    SyndromeReport report;
    for (const auto& s : code.stabilisers) {
        int product = 1;
        for (std::size_t p : s.support.indices()) product *= z_configuration[p];
        if (product != s.nu)
            report.violated.push_back(s.face_id);
        else
            ++report.satisfied_count;
    }
    return report;
}

}  // namespace annealab
