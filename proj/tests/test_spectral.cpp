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

#include "annealab/anneal.hpp"
#include "annealab/conditions.hpp"
#include "annealab/instance.hpp"

using namespace annealab;
using Catch::Matchers::WithinAbs;

namespace {

PhysicalProgram compiled(int n, Variant variant, double r, std::uint64_t seed,
                         double j_scale = 1.0) {
    LogicalModel model = generate_instance(n, j_scale, seed);
    auto code = build_square_lattice(n, default_policy_for(variant));
    return compile_program(model, code, variant, r * j_scale / 2.0);
}

/// Re-index an operator under a site permutation (perm[new_site] = old site).
AssembledOperator permute_sites(const AssembledOperator& op,
                                const std::vector<std::size_t>& perm) {
    std::vector<int> dims(perm.size());
    for (std::size_t q = 0; q < perm.size(); ++q) dims[q] = op.spec.site_dims[perm[q]];
    AssembledOperator out;
    out.spec = HilbertSpec::from_dims(dims);
    out.diagonal.resize(out.spec.total_dim);
    for (std::uint64_t b2 = 0; b2 < out.spec.total_dim; ++b2) {
        std::uint64_t b = 0;
        for (std::size_t q = 0; q < perm.size(); ++q)
            b += static_cast<std::uint64_t>(out.spec.digit(b2, q)) * op.spec.strides[perm[q]];
        out.diagonal[b2] = op.diagonal[b];
    }
    std::vector<std::size_t> inverse(perm.size());
    for (std::size_t q = 0; q < perm.size(); ++q) inverse[perm[q]] = q;
    for (const auto& t : op.transverse) out.transverse.push_back({inverse[t.site], t.coeff});
    return out;
}

}  // namespace

TEST_CASE("site catalogue reproduces the size accounting") {
    LogicalModel model(3);
    auto odd = compile_program(model, build_square_lattice(3, NuPolicy::all_odd()),
                               Variant::OddQubit, 1.0);
    auto odd_sys = build_system(odd);
    REQUIRE(odd_sys.spec.total_dim == (std::uint64_t(1) << 9));  // 2^(N^2)

    auto even = compile_program(model, build_square_lattice(3, NuPolicy::all_even()),
                                Variant::EvenQutrit, 1.0);
    auto even_sys = build_system(even);
    REQUIRE(even_sys.spec.total_dim == 64ull * 27ull);  // 2^6 3^3
}

TEST_CASE("assemble validates inputs") {
    LogicalModel model(2);
    auto prog = compile_program(model, build_square_lattice(2, NuPolicy::all_odd()),
                                Variant::OddQubit, 1.0);
    REQUIRE_THROWS_AS(assemble(prog, 1.5), ValidationError);
    SolverOptions tiny;
    tiny.total_dim_cap = 8;
    REQUIRE_THROWS_AS(build_system(prog, DriverOptions{}, tiny), DimensionError);
}

TEST_CASE("diagonal-only operators short-circuit to a partial sort") {
    AssembledOperator op;
    op.spec = HilbertSpec::from_dims({2, 2});
    op.diagonal = {3.0, -1.0, 2.0, 0.5};
    auto result = lowest_eigs(op, 2);
    REQUIRE(result.method == "diagonal");
    REQUIRE(result.eigenvalues == std::vector<double>{-1.0, 0.5});
    REQUIRE_THROWS_AS(lowest_eigs(op, 0), ValidationError);
    REQUIRE_THROWS_AS(lowest_eigs(op, 9), ValidationError);
}

TEST_CASE("two-spin logical model has the Z-Z spectrum") {
    LogicalModel model(2);
    model.set_coupling(1, 2, 1.0);
    auto sys = build_logical_system(model);
    auto result = lowest_eigs(assemble(sys, 1.0), 4);
    REQUIRE_THAT(result.eigenvalues[0], WithinAbs(-1.0, 1e-12));
    REQUIRE_THAT(result.eigenvalues[1], WithinAbs(-1.0, 1e-12));
    REQUIRE_THAT(result.eigenvalues[2], WithinAbs(1.0, 1e-12));
    REQUIRE_THAT(result.eigenvalues[3], WithinAbs(1.0, 1e-12));
}

TEST_CASE("pure driver ground energy is minus the site count") {
    LogicalModel model(4);
    auto sys = build_logical_system(model);
    auto result = lowest_eigs(assemble(sys, 0.0), 1);
    REQUIRE(result.method == "dense");
    REQUIRE_THAT(result.eigenvalues[0], WithinAbs(-4.0, 1e-10));

    DriverOptions paper_sign;
    paper_sign.driver_sign = +1.0;
    auto flipped = build_logical_system(model, paper_sign);
    auto r2 = lowest_eigs(assemble(flipped, 0.0), 1);
    REQUIRE_THAT(r2.eigenvalues[0], WithinAbs(-4.0, 1e-10));
}

TEST_CASE("N=2 odd-parity program: lowest 4 final levels equal the logical spectrum") {
    LogicalModel model = generate_instance(2, 1.0, 7);
    auto code = build_square_lattice(2, NuPolicy::all_odd());
    auto prog = compile_program(model, code, Variant::OddQubit, 50.0);
    auto sys = build_system(prog);

    auto logical = build_logical_system(model);
    std::vector<double> expected(logical.final_diagonal);
    std::sort(expected.begin(), expected.end());

    auto result = lowest_eigs(assemble(sys, 1.0), 4);
    for (int i = 0; i < 4; ++i)
        REQUIRE_THAT(result.eigenvalues[static_cast<std::size_t>(i)],
                     WithinAbs(expected[static_cast<std::size_t>(i)], 1e-12));

    auto analysis = subspace_analysis(sys);
    REQUIRE_THAT(analysis.e0, WithinAbs(0.0, 1e-15));
}

TEST_CASE("dense and Lanczos eigenvalues agree") {
    auto prog = compiled(3, Variant::OddQubit, 30.0, 11);
    auto op = assemble(prog, 0.5);
    REQUIRE(op.spec.total_dim == 512);

    auto dense = lowest_eigs(op, 4);
    REQUIRE(dense.method == "dense");

    SolverOptions force_iterative;
    force_iterative.dense_dim_cap = 16;
    auto lanczos = lowest_eigs(op, 4, force_iterative);
    REQUIRE(lanczos.method == "lanczos");
    REQUIRE(lanczos.residual <= force_iterative.tol * 10);
    for (int i = 0; i < 4; ++i)
        REQUIRE_THAT(lanczos.eigenvalues[static_cast<std::size_t>(i)],
                     WithinAbs(dense.eigenvalues[static_cast<std::size_t>(i)], 1e-9));
}

TEST_CASE("eigenvalues are invariant under site reordering", "[property]") {
    auto prog = compiled(2, Variant::EvenQutrit, 8.0, 23);
    auto op = assemble(prog, 0.4);

    SplitMix64 rng(99);
    std::vector<std::size_t> perm(op.spec.n_sites());
    for (std::size_t q = 0; q < perm.size(); ++q) perm[q] = q;
    for (std::size_t i = perm.size(); i > 1; --i)
        std::swap(perm[i - 1], perm[rng.below(i)]);

    auto permuted = permute_sites(op, perm);
    auto a = lowest_eigs(op, 6);
    auto b = lowest_eigs(permuted, 6);
    for (std::size_t i = 0; i < 6; ++i)
        REQUIRE_THAT(a.eigenvalues[i], WithinAbs(b.eigenvalues[i], 1e-10));
}

TEST_CASE("brute force ground state and tie-breaking") {
    LogicalModel pair(2);
    pair.set_coupling(1, 2, 1.0);
    auto ground = brute_force_logical_ground(pair);
    REQUIRE_THAT(ground.energy, WithinAbs(-1.0, 1e-15));
    REQUIRE(ground.configuration == std::vector<int>{+1, -1});
    REQUIRE(logical_ground_multiplicity(pair) == 2);

    LogicalModel flat(3);
    auto all_up = brute_force_logical_ground(flat);
    REQUIRE(all_up.energy == 0.0);
    REQUIRE(all_up.configuration == std::vector<int>{+1, +1, +1});

    LogicalModel big(25);
    REQUIRE_THROWS_AS(brute_force_logical_ground(big), ValidationError);

    // Matches the lowest logical eigenvalue on a random instance.
    LogicalModel random = generate_instance(3, 1.0, 17);
    auto logical = build_logical_system(random);
    auto spectrum = lowest_eigs(assemble(logical, 1.0), 1);
    REQUIRE_THAT(brute_force_logical_ground(random).energy,
                 WithinAbs(spectrum.eigenvalues[0], 1e-12));
}

TEST_CASE("final ground state decodes to the logical minimiser") {
    for (Variant variant : {Variant::OddQubit, Variant::EvenQutrit}) {
        auto code = build_square_lattice(3, default_policy_for(variant));
        int checked = 0;
        for (std::uint64_t seed = 100; seed < 112; ++seed) {
            LogicalModel model = generate_instance(3, 1.0, seed);
            if (logical_ground_multiplicity(model) != 1) continue;
            auto prog = compile_program(model, code, variant, 50.0);
            auto sys = build_system(prog);
            auto values = ground_configuration(sys);
            auto expected = brute_force_logical_ground(model);
            for (int k = 1; k <= 3; ++k)
                REQUIRE(values[code.logical_z[static_cast<std::size_t>(k - 1)]] ==
                        expected.configuration[static_cast<std::size_t>(k - 1)]);
            ++checked;
        }
        REQUIRE(checked >= 8);
    }
}

TEST_CASE("subspace margin is positive at large R and negative at Delta = 0") {
    LogicalModel model = generate_instance(3, 1.0, 5);
    auto code = build_square_lattice(3, NuPolicy::all_odd());

    auto strong = build_system(compile_program(model, code, Variant::OddQubit, 50.0));
    REQUIRE(subspace_analysis(strong).margin > 0);

    auto unpenalised = build_system(compile_program(model, code, Variant::OddQubit, 0.0));
    auto analysis = subspace_analysis(unpenalised);
    REQUIRE(analysis.margin < 0);
    REQUIRE(analysis.p0_dimension == 8);  // structural P0 survives Delta = 0
}

TEST_CASE("gap identity: e_phys = min(subspace margin, e_logic) when separated") {
    int min_branch = 0;
    for (Variant variant : {Variant::OddQubit, Variant::EvenQutrit}) {
        for (int n : {2, 3}) {
            auto code = build_square_lattice(n, default_policy_for(variant));
            for (std::uint64_t seed = 40; seed < 45; ++seed) {
                LogicalModel model = generate_instance(n, 1.0, seed);
                for (double r : {6.0, 100.0}) {
                    auto prog = compile_program(model, code, variant, r / 2.0);
                    auto logical = build_logical_system(model);
                    auto physical = build_system(prog);
                    auto analysis = subspace_analysis(physical);
                    if (!(analysis.margin > 0)) continue;  // identity presumes separation
                    auto result = delta_e_between(logical, physical, SolverOptions{}, true);
                    REQUIRE(result.identity_checked);
                    REQUIRE(result.identity_gap <= 1e-8);
                    if (analysis.margin < result.e_logic) ++min_branch;
                }
            }
        }
    }
    REQUIRE(min_branch > 0);  // the nontrivial branch is exercised
}

TEST_CASE("identical systems give delta_e = 0 and chi = 1") {
    LogicalModel model = generate_instance(2, 1.0, 3);
    auto sys = build_logical_system(model);
    auto d = delta_e_between(sys, sys);
    REQUIRE(d.delta_e == 0.0);

    auto schedule = AnnealSchedule::uniform(41);
    auto chi = chi_between(sys, sys, schedule);
    REQUIRE_FALSE(chi.logical_degenerate);
    REQUIRE_THAT(chi.chi, WithinAbs(1.0, 1e-12));
}

TEST_CASE("anneal gap profile on a generic instance") {
    LogicalModel model = generate_instance(2, 1.0, 21);
    auto prog = compile_program(model, build_square_lattice(2, NuPolicy::all_odd()),
                                Variant::OddQubit, 5.0);
    auto sys = build_system(prog);
    auto profile = anneal_gap_profile(sys, AnnealSchedule::uniform(101));
    REQUIRE(profile.gaps.size() == 101);
    REQUIRE(profile.min_gap > 0);
    REQUIRE_FALSE(profile.any_degenerate);
    for (double g : profile.gaps) REQUIRE(g >= profile.min_gap);
    REQUIRE(profile.min_gap_s > 0.0);
}

TEST_CASE("degenerate final ground state is flagged and reported as gap 0") {
    // h = 0, J > 0: the two anti-aligned states are exactly degenerate at
    // s = 1, so the endpoint gap is 0 and flagged; interior gaps stay open.
    LogicalModel model(2);
    model.set_coupling(1, 2, 1.0);
    auto sys = build_logical_system(model);
    auto profile = anneal_gap_profile(sys, AnnealSchedule::uniform(101));
    REQUIRE(profile.any_degenerate);
    REQUIRE(profile.degenerate.back());
    REQUIRE(profile.gaps.back() == 0.0);
    for (std::size_t i = 0; i + 1 < profile.gaps.size(); ++i) REQUIRE(profile.gaps[i] > 0);

    auto chi = chi_between(sys, sys, AnnealSchedule::uniform(21));
    REQUIRE(chi.logical_degenerate);
}

TEST_CASE("schedule validation") {
    REQUIRE_THROWS_AS(AnnealSchedule::uniform(1), ValidationError);
    AnnealSchedule bad;
    bad.grid = {0.0, 0.5, 0.9};
    REQUIRE_THROWS_AS(bad.validate(), ValidationError);
    AnnealSchedule good = AnnealSchedule::uniform(11);
    REQUIRE_NOTHROW(good.validate());
    REQUIRE(good.grid.front() == 0.0);
    REQUIRE(good.grid.back() == 1.0);
}

TEST_CASE("conditions hold for N=3 programs at R=100") {
    for (Variant variant : {Variant::OddQubit, Variant::EvenQutrit}) {
        auto code = build_square_lattice(3, default_policy_for(variant));
        LogicalModel model = generate_instance(3, 1.0, 71);
        auto prog = compile_program(model, code, variant, 50.0);
        auto report = check_conditions(prog);
        REQUIRE(report.commutator_residual_i <= 1e-9);
        REQUIRE(report.parity_residual_ii <= 1e-9);
        REQUIRE(report.flip_unitary_residual_iii <= 1e-9);
        REQUIRE(report.gap_margin_iv > 0);
        REQUIRE(report.p0_dimension == 8);
        REQUIRE(report.d_factor == 1);
        REQUIRE(report.spectrum_match_deviation <= 1e-8);
        REQUIRE(report.pass());
    }
}

TEST_CASE("conditions report a negative margin at Delta = 0") {
    auto code = build_square_lattice(2, NuPolicy::all_odd());
    LogicalModel model = generate_instance(2, 1.0, 29);
    auto prog = compile_program(model, code, Variant::OddQubit, 0.0);
    auto report = check_conditions(prog);
    REQUIRE(report.gap_margin_iv < 0);
    REQUIRE_FALSE(report.pass());
    // Everything structural still checks out.
    REQUIRE(report.parity_residual_ii <= 1e-9);
    REQUIRE(report.flip_unitary_residual_iii <= 1e-9);
}

TEST_CASE("conditions checker refuses oversized programs and formal passes") {
    LogicalModel model = generate_instance(2, 1.0, 31);
    auto code = build_square_lattice(2, NuPolicy::all_even());
    auto prog = compile_program(model, code, Variant::Formal, 4.0);
    auto report = check_conditions(prog);
    REQUIRE(report.pass());
    REQUIRE(report.p0_dimension == 4);

    SolverOptions small;
    small.dense_dim_cap = 4;
    REQUIRE_THROWS_WITH(check_conditions(prog, small),
                        Catch::Matchers::ContainsSubstring("N <= 3"));
}
