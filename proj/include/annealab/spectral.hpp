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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "annealab/hilbert.hpp"
#include "annealab/program.hpp"

namespace annealab {

struct DriverOptions {
    double driver_sign = -1.0;  // sign of the transverse sum; -1 by default
    bool drive_ancillas = true;
};

struct SolverOptions {
    std::uint64_t dense_dim_cap = 4096;       // dense/iterative crossover
    std::uint64_t total_dim_cap = 1u << 26;   // assembly refusal threshold
    double tol = 1e-10;
    double degeneracy_threshold = 1e-8;
    std::size_t max_lanczos_iters = 400;
    std::uint64_t start_vector_seed = 0x5ca1ab1eULL;
};

/// A code-compiled system in annealable form. `final_diagonal` is the s=1
/// energy per basis state (logical fields plus constraint penalties);
/// `penalty_int` keeps the constraint part in exact integer units so the
/// zero-penalty subspace can be identified without floating-point ties:
/// penalty energy = penalty_scale * penalty_int.
struct AnnealSystem {
    HilbertSpec spec;
    std::vector<double> final_diagonal;
    std::vector<std::int64_t> penalty_int;
    double penalty_scale = 0.0;
    std::vector<std::size_t> driven_sites;
    double driver_sign = -1.0;
};

/// Spec-facing assembled form at a fixed schedule point:
/// diagonal = s * (fields + constraints), one transverse generator per
/// driven site with coefficient (1-s) * driver_sign. Qubit sites use X,
/// qutrit sites the spin-1 Sx.
struct TransverseTerm {
    std::size_t site = 0;
    double coeff = 0.0;
};

struct AssembledOperator {
    HilbertSpec spec;
    std::vector<double> diagonal;
    std::vector<TransverseTerm> transverse;
};

namespace detail {

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace detail

/// Lower a compiled program into an AnnealSystem.
inline AnnealSystem build_system(const PhysicalProgram& prog,
                                 const DriverOptions& driver = {},
                                 const SolverOptions& solver = {}) {
    std::vector<int> dims;
    dims.reserve(prog.sites.size());
    for (const auto& site : prog.sites) dims.push_back(site.dimension);
    AnnealSystem sys;
    sys.spec = HilbertSpec::from_dims(std::move(dims));
    if (sys.spec.total_dim > solver.total_dim_cap)
        throw DimensionError("total dimension " + std::to_string(sys.spec.total_dim) +
                             " exceeds the configured cap " +
                             std::to_string(solver.total_dim_cap));
    sys.driver_sign = driver.driver_sign;
    for (std::size_t q = 0; q < prog.sites.size(); ++q)
        if (driver.drive_ancillas || prog.sites[q].role == SiteRole::Physical)
            sys.driven_sites.push_back(q);

    std::int64_t common_den = 1;
    for (const auto& group : prog.constraints) {
        common_den = detail::lcm64(common_den, group.gadget.constant.den);
        for (const auto& t : group.gadget.terms)
            common_den = detail::lcm64(common_den, t.coeff.den);
    }
    sys.penalty_scale = prog.delta / static_cast<double>(common_den);

    const std::uint64_t dim = sys.spec.total_dim;
    sys.final_diagonal.assign(dim, 0.0);
    sys.penalty_int.assign(dim, 0);

    std::int64_t constant_sum = 0;
    for (const auto& group : prog.constraints)
        constant_sum += group.gadget.constant.scaled(common_den);

    BasisCounter counter(sys.spec);
    std::vector<int> values(sys.spec.n_sites());
    for (std::uint64_t b = 0; b < dim; ++b, counter.advance()) {
        const auto& digits = counter.digits();
        for (std::size_t q = 0; q < values.size(); ++q)
            values[q] = HilbertSpec::spin_value(sys.spec.site_dims[q], digits[q]);

        double field_energy = 0.0;
        for (const auto& f : prog.fields) field_energy += f.strength * values[f.site];

        std::int64_t penalty = constant_sum;
        for (const auto& group : prog.constraints) {
            const auto& g = group.gadget;
            auto local_value = [&](int local) -> std::int64_t {
                return local < g.n_face
                           ? values[group.face_sites[static_cast<std::size_t>(local)]]
                           : values[group.ancilla_sites[static_cast<std::size_t>(local -
                                                                                 g.n_face)]];
            };
            for (const auto& t : g.terms) {
                switch (t.kind) {
                    case GadgetTerm::Kind::SiteField:
                        penalty += t.coeff.scaled(common_den) * local_value(t.a);
                        break;
                    case GadgetTerm::Kind::SiteSquared: {
                        std::int64_t v = local_value(t.a);
                        penalty += t.coeff.scaled(common_den) * v * v;
                        break;
                    }
                    case GadgetTerm::Kind::TwoBody:
                        penalty += t.coeff.scaled(common_den) * local_value(t.a) *
                                   local_value(t.b);
                        break;
                    case GadgetTerm::Kind::ZProduct: {
                        std::int64_t prod = 1;
                        for (int p = 0; p < g.n_face; ++p) prod *= local_value(p);
                        penalty += t.coeff.scaled(common_den) * prod;
                        break;
                    }
                }
            }
        }
        sys.penalty_int[b] = penalty;
        sys.final_diagonal[b] = field_energy + sys.penalty_scale * static_cast<double>(penalty);
    }
    return sys;
}

/// The bare logical model as an annealable system (every logical spin is a
/// driven qubit; no constraints).
inline AnnealSystem build_logical_system(const LogicalModel& model,
                                         const DriverOptions& driver = {}) {
    AnnealSystem sys;
    sys.spec = HilbertSpec::from_dims(std::vector<int>(static_cast<std::size_t>(model.n), 2));
    sys.driver_sign = driver.driver_sign;
    for (std::size_t q = 0; q < sys.spec.n_sites(); ++q) sys.driven_sites.push_back(q);
    sys.penalty_int.assign(sys.spec.total_dim, 0);
    sys.penalty_scale = 0.0;
    sys.final_diagonal.assign(sys.spec.total_dim, 0.0);

    std::vector<int> alpha(static_cast<std::size_t>(model.n));
    BasisCounter counter(sys.spec);
    for (std::uint64_t b = 0; b < sys.spec.total_dim; ++b, counter.advance()) {
        for (std::size_t q = 0; q < alpha.size(); ++q)
            alpha[q] = HilbertSpec::spin_value(2, counter.digits()[q]);
        sys.final_diagonal[b] = model.energy(alpha);
    }
    return sys;
}

/// Operator at schedule point s: H(s) = s * H_final + (1-s) * driver_sign *
/// sum of per-site transverse generators.
inline AssembledOperator assemble(const AnnealSystem& sys, double s) {
    if (!(s >= 0.0 && s <= 1.0)) throw ValidationError("schedule point must lie in [0, 1]");
    AssembledOperator op;
    op.spec = sys.spec;
    op.diagonal.resize(sys.spec.total_dim);
    for (std::uint64_t b = 0; b < sys.spec.total_dim; ++b)
        op.diagonal[b] = s * sys.final_diagonal[b];
    const double c = (1.0 - s) * sys.driver_sign;
    if (c != 0.0)
        for (std::size_t q : sys.driven_sites) op.transverse.push_back({q, c});
    return op;
}

inline AssembledOperator assemble(const PhysicalProgram& prog, double s,
                                  const DriverOptions& driver = {},
                                  const SolverOptions& solver = {}) {
    return assemble(build_system(prog, driver, solver), s);
}

/// y = H x.
inline void apply_operator(const AssembledOperator& op, const std::vector<double>& x,
                           std::vector<double>& y) {
    const std::uint64_t dim = op.spec.total_dim;
    y.assign(dim, 0.0);
    for (std::uint64_t b = 0; b < dim; ++b) y[b] = op.diagonal[b] * x[b];
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& t : op.transverse) {
        const std::uint64_t stride = op.spec.strides[t.site];
        const int d = op.spec.site_dims[t.site];
        const std::uint64_t period = stride * static_cast<std::uint64_t>(d);
        const double w = d == 2 ? t.coeff : t.coeff * inv_sqrt2;
        for (std::uint64_t base = 0; base < dim; base += period) {
            for (std::uint64_t off = 0; off < stride; ++off) {
                // couple adjacent digits: (0,1) and, for qutrits, (1,2)
                for (int dig = 0; dig + 1 < d; ++dig) {
                    std::uint64_t lo = base + off + stride * static_cast<std::uint64_t>(dig);
                    std::uint64_t hi = lo + stride;
                    y[lo] += w * x[hi];
                    y[hi] += w * x[lo];
                }
            }
        }
    }
}

inline Eigen::MatrixXd dense_matrix(const AssembledOperator& op) {
    const std::uint64_t dim = op.spec.total_dim;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b)
        h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) = op.diagonal[b];
    static const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (const auto& t : op.transverse) {
        const std::uint64_t stride = op.spec.strides[t.site];
        const int d = op.spec.site_dims[t.site];
        const std::uint64_t period = stride * static_cast<std::uint64_t>(d);
        const double w = d == 2 ? t.coeff : t.coeff * inv_sqrt2;
        for (std::uint64_t base = 0; base < dim; base += period)
            for (std::uint64_t off = 0; off < stride; ++off)
                for (int dig = 0; dig + 1 < d; ++dig) {
                    std::uint64_t lo = base + off + stride * static_cast<std::uint64_t>(dig);
                    std::uint64_t hi = lo + stride;
                    h(static_cast<Eigen::Index>(lo), static_cast<Eigen::Index>(hi)) += w;
                    h(static_cast<Eigen::Index>(hi), static_cast<Eigen::Index>(lo)) += w;
                }
    }
    return h;
}

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending, k entries
    double degeneracy_threshold = 1e-8;
    std::string method;  // "diagonal", "dense" or "lanczos"
    std::size_t iterations = 0;
    double residual = 0.0;
};

namespace detail {

inline SpectrumResult lanczos_lowest(const AssembledOperator& op, std::size_t k,
                                     const SolverOptions& opts) {
    const std::uint64_t dim = op.spec.total_dim;
    const std::size_t max_m =
        std::min<std::size_t>(static_cast<std::size_t>(dim),
                              std::max<std::size_t>(opts.max_lanczos_iters, 3 * k + 30));

    // Deterministic seeded start vector.
    std::vector<double> v(dim);
    SplitMix64 rng(opts.start_vector_seed);
    double norm = 0.0;
    for (auto& x : v) {
        x = rng.uniform_symmetric(1.0);
        norm += x * x;
    }
    norm = std::sqrt(norm);
    for (auto& x : v) x /= norm;

    std::vector<std::vector<double>> basis;  // kept for full reorthogonalisation
    basis.push_back(v);
    std::vector<double> alpha, beta;
    std::vector<double> w(dim), prev(dim, 0.0);

    auto dot = [dim](const std::vector<double>& a, const std::vector<double>& b) {
        double s = 0.0;
        for (std::uint64_t i = 0; i < dim; ++i) s += a[i] * b[i];
        return s;
    };

    SpectrumResult result;
    result.method = "lanczos";
    result.degeneracy_threshold = opts.degeneracy_threshold;

    for (std::size_t m = 0; m < max_m; ++m) {
        apply_operator(op, basis[m], w);
        double a = dot(w, basis[m]);
        alpha.push_back(a);
        for (std::uint64_t i = 0; i < dim; ++i)
            w[i] -= a * basis[m][i] + (m > 0 ? beta[m - 1] * basis[m - 1][i] : 0.0);
        // Full reorthogonalisation, two passes.
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : basis) {
                double proj = dot(w, u);
                if (proj != 0.0)
                    for (std::uint64_t i = 0; i < dim; ++i) w[i] -= proj * u[i];
            }
        double b = std::sqrt(dot(w, w));

        const bool breakdown = b < 1e-13;
        const bool last_chance = alpha.size() + 1 >= max_m;
        // Ritz checks cost O(m^3); run them every few steps.
        const bool due = alpha.size() >= k && (alpha.size() % 5 == 0 || last_chance);
        if (breakdown || due) {
            // Ritz values and residual bounds from the tridiagonal matrix.
            Eigen::Index mm = static_cast<Eigen::Index>(alpha.size());
            Eigen::MatrixXd t = Eigen::MatrixXd::Zero(mm, mm);
            for (Eigen::Index i = 0; i < mm; ++i) {
                t(i, i) = alpha[static_cast<std::size_t>(i)];
                if (i + 1 < mm)
                    t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
            bool converged = alpha.size() >= k;
            double worst = 0.0;
            for (std::size_t i = 0; i < k && converged; ++i) {
                double theta = es.eigenvalues()(static_cast<Eigen::Index>(i));
                double bound = breakdown ? 0.0
                                         : std::abs(b * es.eigenvectors()(
                                                            mm - 1, static_cast<Eigen::Index>(i)));
                worst = std::max(worst, bound);
                if (bound > opts.tol * std::max(1.0, std::abs(theta))) converged = false;
            }
            if ((converged || breakdown) && alpha.size() >= k) {
                for (std::size_t i = 0; i < k; ++i)
                    result.eigenvalues.push_back(
                        es.eigenvalues()(static_cast<Eigen::Index>(i)));
                result.iterations = alpha.size();
                result.residual = worst;
                return result;
            }
            if (breakdown)
                throw SolverError("Lanczos basis exhausted before " + std::to_string(k) +
                                  " eigenvalues converged");
        }
        beta.push_back(b);
        for (auto& x : w) x /= b;
        basis.push_back(w);
    }
    throw SolverError("Lanczos did not converge in " + std::to_string(max_m) + " iterations");
}

}  // namespace detail

/// k smallest eigenvalues. Diagonal operators short-circuit to a partial
/// sort; small problems use a dense symmetric solve; larger ones a seeded
/// Lanczos iteration with full reorthogonalisation. Multiplicities from the
/// iterative path reflect distinct converged Ritz values, so exactly
/// degenerate interior levels should be resolved with the dense path.
inline SpectrumResult lowest_eigs(const AssembledOperator& op, std::size_t k,
                                  const SolverOptions& opts = {}) {
    if (k < 1) throw ValidationError("k must be at least 1");
    if (!(opts.tol > 0)) throw ValidationError("tolerance must be positive");
    if (k > op.spec.total_dim)
        throw ValidationError("requested more eigenvalues than the dimension");

    SpectrumResult result;
    result.degeneracy_threshold = opts.degeneracy_threshold;

    bool diagonal_only = true;
    for (const auto& t : op.transverse)
        if (t.coeff != 0.0) diagonal_only = false;

    if (diagonal_only) {
        std::vector<double> vals(op.diagonal);
        std::partial_sort(vals.begin(), vals.begin() + static_cast<std::ptrdiff_t>(k),
                          vals.end());
        vals.resize(k);
        result.eigenvalues = std::move(vals);
        result.method = "diagonal";
        return result;
    }

    if (op.spec.total_dim <= opts.dense_dim_cap) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(dense_matrix(op),
                                                          Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) throw SolverError("dense eigensolver failed");
        for (std::size_t i = 0; i < k; ++i)
            result.eigenvalues.push_back(es.eigenvalues()(static_cast<Eigen::Index>(i)));
        result.method = "dense";
        return result;
    }

    return detail::lanczos_lowest(op, k, opts);
}

/// Exhaustive minimiser of the logical model. Deterministic tie-break:
/// the lexicographically smallest configuration, reading spin 1 first with
/// +1 ordered before -1.
struct GroundResult {
    std::vector<int> configuration;
    double energy = 0.0;
};

inline GroundResult brute_force_logical_ground(const LogicalModel& model) {
    if (model.n > 24) throw ValidationError("brute force capped at 24 logical spins");
    const std::uint64_t count = std::uint64_t(1) << model.n;
    GroundResult best;
    std::vector<int> alpha(static_cast<std::size_t>(model.n));
    for (std::uint64_t rank = 0; rank < count; ++rank) {
        // Lexicographic rank: bit (n-k) decides spin k, 0 meaning +1.
        for (int k = 1; k <= model.n; ++k)
            alpha[static_cast<std::size_t>(k - 1)] =
                ((rank >> (model.n - k)) & 1) ? -1 : +1;
        double e = model.energy(alpha);
        if (rank == 0 || e < best.energy) {
            best.energy = e;
            best.configuration = alpha;
        }
    }
    return best;
}

/// Count of minimisers (within exact double comparison); used to detect a
/// unique logical ground state before decoding checks.
inline std::size_t logical_ground_multiplicity(const LogicalModel& model) {
    auto ground = brute_force_logical_ground(model);
    std::size_t hits = 0;
    std::vector<int> alpha(static_cast<std::size_t>(model.n));
    for (std::uint64_t rank = 0; rank < (std::uint64_t(1) << model.n); ++rank) {
        for (int k = 1; k <= model.n; ++k)
            alpha[static_cast<std::size_t>(k - 1)] =
                ((rank >> (model.n - k)) & 1) ? -1 : +1;
        if (model.energy(alpha) == ground.energy) ++hits;
    }
    return hits;
}

/// Exhaustive ground set of one gadget group. States are (face values,
/// ancilla values) pairs; energies are exact rationals in Delta units.
struct GadgetGroundSpace {
    Rational minimum;  // in Delta units
    std::vector<std::pair<std::vector<int>, std::vector<int>>> states;
};

inline GadgetGroundSpace gadget_groundspace_oracle(const GadgetGroup& gadget) {
    const int m = gadget.n_face;
    const std::size_t p = gadget.n_ancillas();
    if (m + static_cast<int>(p) > 20)
        throw ValidationError("gadget enumeration capped at 20 local sites");

    std::uint64_t anc_states = 1;
    for (auto kind : gadget.ancillas) anc_states *= kind == AncillaKind::Qutrit ? 3u : 2u;

    GadgetGroundSpace out;
    bool first = true;
    std::vector<int> face(static_cast<std::size_t>(m)), anc(p);
    for (std::uint64_t fb = 0; fb < (std::uint64_t(1) << m); ++fb) {
        for (int i = 0; i < m; ++i)
            face[static_cast<std::size_t>(i)] = ((fb >> i) & 1) ? -1 : +1;
        for (std::uint64_t ab = 0; ab < anc_states; ++ab) {
            std::uint64_t rest = ab;
            for (std::size_t j = 0; j < p; ++j) {
                int dim = gadget.ancillas[j] == AncillaKind::Qutrit ? 3 : 2;
                anc[j] = HilbertSpec::spin_value(dim,
                                                 static_cast<int>(rest %
                                                                  static_cast<std::uint64_t>(dim)));
                rest /= static_cast<std::uint64_t>(dim);
            }
            Rational e = gadget.energy_coeff(face, anc);
            if (first || e < out.minimum) {
                first = false;
                out.minimum = e;
                out.states.clear();
                out.states.push_back({face, anc});
            } else if (e == out.minimum) {
                out.states.push_back({face, anc});
            }
        }
    }
    return out;
}

/// Ground-state z-configuration of the final diagonal (ties resolve to the
/// lowest basis index, i.e. the most spin-up state).
inline std::vector<int> ground_configuration(const AnnealSystem& sys) {
    std::uint64_t best = 0;
    for (std::uint64_t b = 1; b < sys.spec.total_dim; ++b)
        if (sys.final_diagonal[b] < sys.final_diagonal[best]) best = b;
    std::vector<int> values(sys.spec.n_sites());
    for (std::size_t q = 0; q < values.size(); ++q) values[q] = sys.spec.value(best, q);
    return values;
}

/// Constraint-subspace bookkeeping: the zero-penalty basis states form P0;
/// the report carries the ground energies inside and outside P0 and the
/// margin of the spectral-separation condition.
struct SubspaceAnalysis {
    double e0 = 0.0;            // constraint ground energy (0 for shifted gadgets)
    double ground_in_p0 = 0.0;  // lowest final energy inside P0
    double ground_outside = 0.0;  // E'_g; +inf if the complement is empty
    double margin = 0.0;          // E'_g - (E0 + E_g)
    std::uint64_t p0_dimension = 0;
};

inline SubspaceAnalysis subspace_analysis(const AnnealSystem& sys) {
    std::int64_t min_penalty = 0;
    bool have = false;
    for (std::int64_t p : sys.penalty_int)
        if (!have || p < min_penalty) {
            min_penalty = p;
            have = true;
        }
    SubspaceAnalysis a;
    a.e0 = sys.penalty_scale * static_cast<double>(min_penalty);
    a.ground_in_p0 = std::numeric_limits<double>::infinity();
    a.ground_outside = std::numeric_limits<double>::infinity();
    for (std::uint64_t b = 0; b < sys.spec.total_dim; ++b) {
        if (sys.penalty_int[b] == min_penalty) {
            ++a.p0_dimension;
            a.ground_in_p0 = std::min(a.ground_in_p0, sys.final_diagonal[b]);
        } else {
            a.ground_outside = std::min(a.ground_outside, sys.final_diagonal[b]);
        }
    }
    a.margin = a.ground_outside - a.ground_in_p0;
    return a;
}

}  // namespace annealab
