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

#include <cmath>
#include <limits>
#include <vector>

#include "annealab/spectral.hpp"

namespace annealab {

/// Linear-interpolation schedule H(s) = (1-s) H_driver + s H_final over a
/// sorted grid of points with both endpoints present.
struct AnnealSchedule {
    std::vector<double> grid;

    static AnnealSchedule uniform(std::size_t points = 101) {
        if (points < 2) throw ValidationError("schedule needs at least 2 points");
        AnnealSchedule sched;
        sched.grid.reserve(points);
        for (std::size_t i = 0; i < points; ++i)
            sched.grid.push_back(static_cast<double>(i) / static_cast<double>(points - 1));
        return sched;
    }

    void validate() const {
        if (grid.size() < 2 || grid.front() != 0.0 || grid.back() != 1.0)
            throw ValidationError("schedule grid must run from 0 to 1");
        for (std::size_t i = 1; i < grid.size(); ++i)
            if (!(grid[i] > grid[i - 1]))
                throw ValidationError("schedule grid must be strictly increasing");
    }
};

struct GapProfile {
    std::vector<double> s_values;
    std::vector<double> gaps;          // per grid point; 0 when flagged degenerate
    std::vector<bool> degenerate;      // gap below the degeneracy threshold
    double min_gap = 0.0;
    double min_gap_s = 0.0;
    bool any_degenerate = false;
};

namespace detail {

inline double gap_at(const AnnealSystem& sys, double s, const SolverOptions& opts) {
    auto spectrum = lowest_eigs(assemble(sys, s), 2, opts);
    return spectrum.eigenvalues[1] - spectrum.eigenvalues[0];
}

}  // namespace detail

/// Gap profile over the schedule plus the minimum gap. When the minimum sits
/// at an interior grid point, one golden-section refinement level (three
/// extra solves in the bracketing interval) sharpens it.
inline GapProfile anneal_gap_profile(const AnnealSystem& sys, const AnnealSchedule& schedule,
                                     const SolverOptions& opts = {}, bool refine = true) {
    schedule.validate();
    GapProfile profile;
    profile.s_values = schedule.grid;
    std::size_t min_index = 0;
    for (std::size_t i = 0; i < schedule.grid.size(); ++i) {
        double gap = detail::gap_at(sys, schedule.grid[i], opts);
        bool degenerate = gap < opts.degeneracy_threshold;
        if (degenerate) gap = 0.0;
        profile.gaps.push_back(gap);
        profile.degenerate.push_back(degenerate);
        profile.any_degenerate = profile.any_degenerate || degenerate;
        if (gap < profile.gaps[min_index]) min_index = i;
    }
    profile.min_gap = profile.gaps[min_index];
    profile.min_gap_s = profile.s_values[min_index];

    if (refine && min_index > 0 && min_index + 1 < schedule.grid.size() &&
        !profile.degenerate[min_index]) {
        const double a = schedule.grid[min_index - 1];
        const double b = schedule.grid[min_index + 1];
        const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = b - phi * (b - a);
        double x2 = a + phi * (b - a);
        double g1 = detail::gap_at(sys, x1, opts);
        double g2 = detail::gap_at(sys, x2, opts);
        double x3 = g1 < g2 ? a + phi * (x2 - a) : x1 + phi * (b - x1);
        double g3 = detail::gap_at(sys, x3, opts);
        for (auto [x, g] : {std::pair{x1, g1}, {x2, g2}, {x3, g3}}) {
            if (g < opts.degeneracy_threshold) {
                g = 0.0;
                profile.any_degenerate = true;
            }
            if (g < profile.min_gap) {
                profile.min_gap = g;
                profile.min_gap_s = x;
            }
        }
    }
    return profile;
}

/// End-of-sweep gap deviation between two systems (the logical model and
/// its compiled program). When `with_subspace_check` both the measured
/// physical gap and its subspace prediction min{E'_g - (E0+E_g), e_logic}
/// are reported.
struct DeltaEResult {
    double e_logic = 0.0;
    double e_phys = 0.0;
    double delta_e = 0.0;
    bool identity_checked = false;
    double identity_gap = 0.0;  // |e_phys - min{margin-from-P0, e_logic}|
};

inline double final_gap(const AnnealSystem& sys, const SolverOptions& opts = {}) {
    auto spectrum = lowest_eigs(assemble(sys, 1.0), 2, opts);
    return spectrum.eigenvalues[1] - spectrum.eigenvalues[0];
}

inline DeltaEResult delta_e_between(const AnnealSystem& logical, const AnnealSystem& physical,
                                    const SolverOptions& opts = {},
                                    bool with_subspace_check = false) {
    DeltaEResult out;
    out.e_logic = final_gap(logical, opts);
    out.e_phys = final_gap(physical, opts);
    out.delta_e = std::abs(out.e_logic - out.e_phys);
    if (with_subspace_check) {
        auto analysis = subspace_analysis(physical);
        double predicted = std::min(analysis.ground_outside - analysis.ground_in_p0,
                                    out.e_logic);
        out.identity_checked = true;
        out.identity_gap = std::abs(out.e_phys - predicted);
    }
    return out;
}

inline DeltaEResult metric_delta_e(const LogicalModel& model, const PhysicalProgram& program,
                                   const DriverOptions& driver = {},
                                   const SolverOptions& opts = {},
                                   bool with_subspace_check = false) {
    return delta_e_between(build_logical_system(model, driver),
                           build_system(program, driver, opts), opts, with_subspace_check);
}

/// Minimum-gap ratio chi = MinGap_phys / MinGap_logic under a shared
/// schedule family. A logical minimum gap below the degeneracy threshold
/// flags the instance instead of producing a ratio.
struct ChiResult {
    double min_gap_logic = 0.0;
    double min_gap_phys = 0.0;
    double chi = 0.0;
    bool logical_degenerate = false;  // excluded from averages upstream
    bool phys_gap_closed = false;
};

inline ChiResult chi_between(const AnnealSystem& logical, const AnnealSystem& physical,
                             const AnnealSchedule& schedule, const SolverOptions& opts = {},
                             bool refine = true) {
    ChiResult out;
    auto logical_profile = anneal_gap_profile(logical, schedule, opts, refine);
    out.min_gap_logic = logical_profile.min_gap;
    auto physical_profile = anneal_gap_profile(physical, schedule, opts, refine);
    out.min_gap_phys = physical_profile.min_gap;
    if (logical_profile.min_gap < opts.degeneracy_threshold) {
        out.logical_degenerate = true;
        return out;
    }
    out.phys_gap_closed = physical_profile.min_gap < opts.degeneracy_threshold;
    out.chi = out.phys_gap_closed ? 0.0 : out.min_gap_phys / out.min_gap_logic;
    return out;
}

inline ChiResult metric_chi(const LogicalModel& model, const PhysicalProgram& program,
                            const AnnealSchedule& schedule, const DriverOptions& driver = {},
                            const SolverOptions& opts = {}, bool refine = true) {
    return chi_between(build_logical_system(model, driver),
                       build_system(program, driver, opts), schedule, opts, refine);
}

}  // namespace annealab
