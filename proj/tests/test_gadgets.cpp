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

#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "annealab/audit.hpp"
#include "annealab/conditions.hpp"
#include "annealab/program.hpp"
#include "annealab/spectral.hpp"

using namespace annealab;

namespace {

Stabiliser face_of(int n_spins, std::vector<std::size_t> bits, int nu,
                   const std::string& id) {
    Stabiliser s;
    s.support = SupportVector::from_indices(static_cast<std::size_t>(n_spins), bits);
    s.nu = nu;
    s.face_id = id;
    return s;
}

/// Enumerate every local state of a group and compare the emitted terms
/// plus constant against a squared-form oracle, in exact rational
/// arithmetic.
template <typename Oracle>
void check_expansion_identity(const GadgetGroup& g, Oracle&& squared_form) {
    std::vector<int> face(static_cast<std::size_t>(g.n_face)), anc(g.n_ancillas());
    std::uint64_t anc_states = 1;
    for (auto kind : g.ancillas) anc_states *= kind == AncillaKind::Qutrit ? 3u : 2u;
    for (std::uint64_t fb = 0; fb < (std::uint64_t(1) << g.n_face); ++fb) {
        for (int i = 0; i < g.n_face; ++i)
            face[static_cast<std::size_t>(i)] = ((fb >> i) & 1) ? -1 : +1;
        for (std::uint64_t ab = 0; ab < anc_states; ++ab) {
            std::uint64_t rest = ab;
            for (std::size_t j = 0; j < g.ancillas.size(); ++j) {
                int dim = g.ancillas[j] == AncillaKind::Qutrit ? 3 : 2;
                anc[j] = HilbertSpec::spin_value(
                    dim, static_cast<int>(rest % static_cast<std::uint64_t>(dim)));
                rest /= static_cast<std::uint64_t>(dim);
            }
            REQUIRE(g.energy_coeff(face, anc) == squared_form(face, anc));
        }
    }
}

std::set<std::vector<int>> parity_eigenspace(int m, int nu) {
    std::set<std::vector<int>> out;
    std::vector<int> face(static_cast<std::size_t>(m));
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << m); ++bits) {
        int prod = 1;
        for (int i = 0; i < m; ++i) {
            face[static_cast<std::size_t>(i)] = ((bits >> i) & 1) ? -1 : +1;
            prod *= face[static_cast<std::size_t>(i)];
        }
        if (prod == nu) out.insert(face);
    }
    return out;
}

std::set<std::vector<int>> ground_projection(const GadgetGroup& g) {
    auto space = gadget_groundspace_oracle(g);
    std::set<std::vector<int>> out;
    for (const auto& [face, anc] : space.states) out.insert(face);
    return out;
}

int face_sum(const std::vector<int>& face) {
    int m = 0;
    for (int v : face) m += v;
    return m;
}

}  // namespace

TEST_CASE("formal penalty is 0 on satisfying configurations and Delta otherwise") {
    auto code = build_square_lattice(3, NuPolicy::all_odd());
    auto groups = formal_constraint(code, 2.5);
    REQUIRE(groups.size() == code.stabilisers.size());

    // Zero-penalty configurations exist and carry zero total penalty.
    std::size_t n = code.spin_count();
    std::size_t zero_count = 0;
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << n); ++bits) {
        std::vector<int> z(n);
        for (std::size_t p = 0; p < n; ++p) z[p] = ((bits >> p) & 1) ? -1 : +1;
        Rational total;
        for (std::size_t s = 0; s < groups.size(); ++s) {
            std::vector<int> face;
            for (std::size_t p : code.stabilisers[s].support.indices()) face.push_back(z[p]);
            total = total + groups[s].energy_coeff(face, {});
        }
        auto report = syndrome(code, z);
        // Each violated face costs exactly 1 (in Delta units).
        REQUIRE(total == Rational(static_cast<std::int64_t>(report.violated.size())));
        if (report.violated.empty()) ++zero_count;
    }
    REQUIRE(zero_count == (std::uint64_t(1) << 3));

    // All-up on the all-odd N=3 code violates every face: penalty 3 Delta.
    std::vector<int> all_up(n, +1);
    REQUIRE(syndrome(code, all_up).violated.size() == 3);

    REQUIRE_THROWS_AS(formal_constraint(code, 0.0), ValidationError);
}

TEST_CASE("even-parity qutrit gadget matches its squared form exactly") {
    auto square = detail::make_even_qutrit_group("F", 4);
    check_expansion_identity(square, [](const std::vector<int>& face,
                                        const std::vector<int>& anc) {
        std::int64_t inner = 4 * anc[0] + face_sum(face);
        return Rational(inner * inner, 4);
    });
    auto triangle = detail::make_even_qutrit_group("F", 3);
    check_expansion_identity(triangle, [](const std::vector<int>& face,
                                          const std::vector<int>& anc) {
        std::int64_t inner = 1 + 4 * anc[0] + face_sum(face);
        return Rational(inner * inner, 4);
    });
}

TEST_CASE("even-parity gadget ground space") {
    auto g = detail::make_even_qutrit_group("F", 4);
    auto space = gadget_groundspace_oracle(g);
    REQUIRE(space.minimum == Rational(0));
    // 8 even-parity configurations, each with its qutrit value forced.
    REQUIRE(space.states.size() == 8);
    REQUIRE(ground_projection(g) == parity_eigenspace(4, +1));
    for (const auto& [face, anc] : space.states)
        REQUIRE(4 * anc[0] + face_sum(face) == 0);

    // Sum +2 has no zero-energy qutrit assignment.
    Rational best(1000);
    for (int t : {-1, 0, 1}) {
        Rational e = g.energy_coeff(std::vector<int>{1, 1, 1, -1}, std::vector<int>{t});
        if (e < best) best = e;
    }
    REQUIRE(Rational(0) < best);

    // Sum -4 with T = +1 gives exactly zero.
    REQUIRE(g.energy_coeff(std::vector<int>{-1, -1, -1, -1}, std::vector<int>{+1}) ==
            Rational(0));

    auto tri = detail::make_even_qutrit_group("F", 3);
    REQUIRE(ground_projection(tri) == parity_eigenspace(3, +1));
    REQUIRE(gadget_groundspace_oracle(tri).minimum == Rational(0));

    REQUIRE_THROWS_AS(detail::make_even_qutrit_group("F", 5), CodeDesignError);
    auto stab = face_of(4, {0, 1, 2, 3}, -1, "F");
    REQUIRE_THROWS_AS(even_parity_gadget(stab, 1.0), CodeDesignError);
}

TEST_CASE("odd-parity qubit gadget at ratio 2 is exactly the squared form") {
    auto square = detail::make_odd_qubit_group("F", 4, Rational(2));
    check_expansion_identity(square, [](const std::vector<int>& face,
                                        const std::vector<int>& anc) {
        std::int64_t inner = 2 * anc[0] + face_sum(face);
        return Rational(inner * inner, 4);
    });
    auto triangle = detail::make_odd_qubit_group("F", 3, Rational(2));
    check_expansion_identity(triangle, [](const std::vector<int>& face,
                                          const std::vector<int>& anc) {
        std::int64_t inner = 1 + 2 * anc[0] + face_sum(face);
        return Rational(inner * inner, 4);
    });

    // Pure two-body structure: face pairs at 1/2, ancilla couplings at
    // ratio/2, fields only through the three-spin offset.
    for (const auto& t : square.terms) {
        REQUIRE(t.kind == GadgetTerm::Kind::TwoBody);
        if (t.a == 4 || t.b == 4)
            REQUIRE(t.coeff == Rational(1));
        else
            REQUIRE(t.coeff == Rational(1, 2));
    }
}

TEST_CASE("odd-parity gadget ground space and forced ancilla") {
    auto g = detail::make_odd_qubit_group("F", 4, Rational(2));
    auto space = gadget_groundspace_oracle(g);
    REQUIRE(space.minimum == Rational(0));
    REQUIRE(space.states.size() == 8);
    REQUIRE(ground_projection(g) == parity_eigenspace(4, -1));
    for (const auto& [face, anc] : space.states)
        REQUIRE(2 * anc[0] == -face_sum(face));

    // Sum +2 forces the ancilla to -1.
    REQUIRE(g.energy_coeff(std::vector<int>{1, 1, 1, -1}, std::vector<int>{-1}) == Rational(0));
    REQUIRE(Rational(0) < g.energy_coeff(std::vector<int>{1, 1, 1, -1}, std::vector<int>{+1}));

    auto tri = detail::make_odd_qubit_group("F", 3, Rational(2));
    REQUIRE(ground_projection(tri) == parity_eigenspace(3, -1));
    REQUIRE(gadget_groundspace_oracle(tri).minimum == Rational(0));
}

TEST_CASE("odd-parity coupling ratio window") {
    for (double ratio : {1.5, 2.0, 2.5}) {
        for (int m : {3, 4}) {
            auto g = detail::make_odd_qubit_group("F", m, rational_from_double(ratio));
            REQUIRE(ground_projection(g) == parity_eigenspace(m, -1));
            REQUIRE(gadget_groundspace_oracle(g).minimum == Rational(0));
        }
    }
    for (double ratio : {0.9, 3.1}) {
        for (int m : {3, 4}) {
            auto g = detail::make_odd_qubit_group("F", m, rational_from_double(ratio));
            REQUIRE(ground_projection(g) != parity_eigenspace(m, -1));
        }
    }
    auto stab = face_of(4, {0, 1, 2, 3}, -1, "F");
    REQUIRE_THROWS_AS(odd_parity_gadget(stab, 1.0, 0.9), ValidationError);
    REQUIRE_THROWS_AS(odd_parity_gadget(stab, 1.0, 3.1), ValidationError);
    REQUIRE_NOTHROW(odd_parity_gadget(stab, 1.0, 3.1, /*allow_out_of_window=*/true));
}

TEST_CASE("M-body gadgets match their squared forms") {
    for (int m = 3; m <= 7; m += 2) {
        for (int sign : {+1, -1}) {
            auto g = detail::make_mbody_group("F", m, sign);
            REQUIRE(static_cast<int>(g.n_ancillas()) == (m - 1) / 2);
            check_expansion_identity(g, [sign](const std::vector<int>& face,
                                               const std::vector<int>& anc) {
                std::int64_t bracket = 1;
                for (int a : anc) bracket += 2 * a;
                std::int64_t inner = face_sum(face) - sign * bracket;
                return Rational(inner * inner, 4);
            });
        }
    }
    for (int m = 4; m <= 8; m += 2) {
        for (int sign : {+1, -1}) {
            auto g = detail::make_mbody_group("F", m, sign);
            check_expansion_identity(g, [](const std::vector<int>& face,
                                           const std::vector<int>& anc) {
                std::int64_t inner = face_sum(face);
                for (int a : anc) inner += 2 * a;
                return Rational(inner * inner, 4);
            });
        }
    }
}

TEST_CASE("M-body ground spaces hit the documented spin sums") {
    // M=3, target -1: plus-sign form, one ancilla, sums in {-3, +1}.
    auto g3 = detail::make_mbody_group("F", 3, -1);
    REQUIRE(g3.n_ancillas() == 1);
    std::set<int> sums;
    for (const auto& [face, anc] : gadget_groundspace_oracle(g3).states)
        sums.insert(face_sum(face));
    REQUIRE(sums == std::set<int>{-3, 1});

    // M=4, target -1: a single ancilla reproduces the face-gadget ground set.
    auto g4 = detail::make_mbody_group("F", 4, -1);
    REQUIRE(g4.n_ancillas() == 1);
    REQUIRE(ground_projection(g4) == ground_projection(detail::make_odd_qubit_group("F", 4, Rational(2))));

    // M=5, target +1: sums in {5, 1, -3}.
    auto g5 = detail::make_mbody_group("F", 5, +1);
    sums.clear();
    for (const auto& [face, anc] : gadget_groundspace_oracle(g5).states)
        sums.insert(face_sum(face));
    REQUIRE(sums == std::set<int>{5, 1, -3});

    // M=6, target -1: two ancillas suffice.
    auto g6 = detail::make_mbody_group("F", 6, -1);
    REQUIRE(g6.n_ancillas() == 2);
    REQUIRE(ground_projection(g6) == parity_eigenspace(6, -1));
}

TEST_CASE("every gadget variant projects onto the target parity eigenspace") {
    for (int m : {3, 4}) {
        REQUIRE(gadget_enforces_parity(detail::make_even_qutrit_group("F", m)));
        REQUIRE(gadget_enforces_parity(detail::make_odd_qubit_group("F", m, Rational(2))));
    }
    for (int m = 3; m <= 8; ++m)
        for (int sign : {+1, -1})
            REQUIRE(gadget_enforces_parity(detail::make_mbody_group("F", m, sign)));
    for (int m = 3; m <= 8; ++m)
        for (int sign : {+1, -1})
            REQUIRE(gadget_enforces_parity(detail::make_formal_group("F", sign, m)));
}

TEST_CASE("ancilla-count audit finds the minimal counts and flags the nominal ones") {
    auto rows = audit_gadget_ancilla_counts(8);
    REQUIRE(rows.size() == 12);
    for (const auto& row : rows) {
        REQUIRE(row.minimal >= 0);
        REQUIRE(row.builtin_is_minimal);
        if (row.m % 2 == 1) {
            REQUIRE(row.minimal == (row.m - 1) / 2);
            REQUIRE(row.nominal_agrees);
        } else {
            REQUIRE(row.minimal == (row.sign > 0 ? row.m / 2 : row.m / 2 - 1));
            REQUIRE_FALSE(row.nominal_agrees);
        }
    }
}

TEST_CASE("compile maps fields, couplings and higher-order terms onto labels") {
    LogicalModel model(3);
    model.set_field(1, 0.3);
    model.set_field(2, -0.1);
    model.set_coupling(1, 2, 0.7);
    model.set_coupling(2, 3, -0.4);

    auto even_code = build_square_lattice(3, NuPolicy::all_even());
    auto program = compile_program(model, even_code, Variant::EvenQutrit, 10.0);
    REQUIRE(program.sites.size() == even_code.spin_count() + even_code.stabilisers.size());
    for (const auto& group : program.constraints) {
        REQUIRE(group.gadget.n_ancillas() == 1);
        REQUIRE(program.sites[group.ancilla_sites[0]].dimension == 3);
    }
    auto field_on = [&](const PhysicalProgram& p, const std::string& spin) {
        double total = 0.0;
        std::size_t site = p.code.index_of(spin);
        for (const auto& f : p.fields)
            if (f.site == site) total += f.strength;
        return total;
    };
    REQUIRE(field_on(program, "(0,1)") == 0.3);
    REQUIRE(field_on(program, "(1,2)") == 0.7);   // mu = +1 everywhere
    REQUIRE(field_on(program, "(2,3)") == -0.4);

    auto odd_code = build_square_lattice(3, NuPolicy::all_odd());
    auto odd_program = compile_program(model, odd_code, Variant::OddQubit, 10.0);
    REQUIRE(field_on(odd_program, "(1,2)") == -0.7);  // mu_{1,2} = -1
    for (const auto& group : odd_program.constraints)
        REQUIRE(odd_program.sites[group.ancilla_sites[0]].dimension == 2);

    // Reconstruction inverts the mapping.
    auto recovered = reconstruct_logical_model(odd_program);
    REQUIRE(recovered.h == model.h);
    REQUIRE(recovered.couplings == model.couplings);
}

TEST_CASE("compile reports unmappable couplings and arity mismatches") {
    LogicalModel model(4);
    model.set_coupling(1, 3, 0.5);
    auto chain = build_tree_code(4, {{1, 2}, {2, 3}, {3, 4}});
    REQUIRE_THROWS_WITH(compile_program(model, chain, Variant::Formal, 1.0),
                        Catch::Matchers::ContainsSubstring("connectivity") &&
                            Catch::Matchers::ContainsSubstring("{1,3}"));

    LogicalModel ok(4);
    ok.set_coupling(1, 2, 0.5);
    REQUIRE_NOTHROW(compile_program(ok, chain, Variant::Formal, 1.0));
    REQUIRE_NOTHROW(compile_program(ok, chain, Variant::MBody, 1.0));

    auto even_code = build_square_lattice(3, NuPolicy::all_even());
    REQUIRE_THROWS_AS(compile_program(ok, even_code, Variant::Formal, 1.0), ValidationError);

    LogicalModel three(3);
    auto odd_code = build_square_lattice(3, NuPolicy::all_odd());
    REQUIRE_THROWS_AS(compile_program(three, even_code, Variant::OddQubit, 1.0),
                      CodeDesignError);
    REQUIRE_THROWS_AS(compile_program(three, odd_code, Variant::EvenQutrit, 1.0),
                      CodeDesignError);
    REQUIRE_THROWS_AS(compile_program(three, odd_code, Variant::OddQubit, 1.0, 3.5),
                      ValidationError);
}

TEST_CASE("duplicate labels split the coupling equally and conserve it") {
    // Doubled pair: a three-spin code would not do; reuse the multibody
    // duplicate trick. Spins (2,4) and m(2,4) both carry label {2,4}.
    auto base = build_square_lattice(4, NuPolicy::all_even());
    auto dup = add_multibody_spin(base, {2, 4}, {"(2,4)"});
    LogicalModel model(4);
    model.set_coupling(2, 4, 0.8);
    auto program = compile_program(model, dup, Variant::Formal, 5.0);

    double conserved = 0.0;
    int carriers = 0;
    for (const auto& f : program.fields) {
        const auto& label = program.code.labels[f.site];
        REQUIRE(label.logicals == std::vector<int>{2, 4});
        conserved += static_cast<double>(label.mu) * f.strength;
        ++carriers;
    }
    REQUIRE(carriers == 2);
    REQUIRE(conserved == 0.8);
    bool noted = false;
    for (const auto& note : program.notes)
        if (note.find("split equally") != std::string::npos) noted = true;
    REQUIRE(noted);
}

TEST_CASE("higher-order terms land on multibody spins") {
    auto base = build_square_lattice(3, NuPolicy::all_even());
    auto extended = add_multibody_spin(base, {1, 2, 3}, {"(0,1)", "(2,3)"});
    LogicalModel model(3);
    model.set_higher_order({1, 2, 3}, 0.25);
    auto program = compile_program(model, extended, Variant::Formal, 2.0);
    REQUIRE(program.fields.size() == 1);
    REQUIRE(program.code.labels[program.fields[0].site].logicals ==
            std::vector<int>{1, 2, 3});
    auto recovered = reconstruct_logical_model(program);
    REQUIRE(recovered.higher_order == model.higher_order);
}

TEST_CASE("gadget ground sets agree with the formal penalty kernel per face") {
    // For every face of a compiled program, the physical-spin projection of
    // the gadget ground set must equal the zero set of the formal penalty.
    auto even_code = build_square_lattice(3, NuPolicy::all_even());
    auto odd_code = build_square_lattice(3, NuPolicy::all_odd());
    for (const auto& [code, variant] :
         {std::pair{&even_code, Variant::EvenQutrit}, {&odd_code, Variant::OddQubit},
          {&even_code, Variant::MBody}, {&odd_code, Variant::MBody}}) {
        LogicalModel model(3);
        auto program = compile_program(model, *code, variant, 1.0);
        for (const auto& group : program.constraints) {
            auto formal = detail::make_formal_group(group.gadget.face_id, group.gadget.nu,
                                                    group.gadget.n_face);
            REQUIRE(ground_projection(group.gadget) == ground_projection(formal));
        }
    }
}
