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

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <thread>

#include "annealab/anneal.hpp"
#include "annealab/instance.hpp"
#include "annealab/io.hpp"

namespace annealab {

/// One experiment: a batch of random instances swept over an R = Delta/J_av
/// grid for each requested variant. J_av = J/2 is always derived, never
/// stored.
struct ExperimentConfig {
    int n_logical = 2;
    std::vector<Variant> variants = {Variant::EvenQutrit, Variant::OddQubit};
    enum class NuMode { FromVariant, AllEven, AllOdd };
    NuMode nu_mode = NuMode::FromVariant;
    double j_scale = 1.0;
    std::vector<double> r_grid;
    int instances = 1;
    std::uint64_t base_seed = 0;
    std::size_t schedule_points = 101;
    bool compute_min_gaps = true;
    bool refine_min_gap = true;
    double ratio = 2.0;
    double near_zero_chi = 1e-3;  // chi below this counts as a near-closure
    DriverOptions driver;
    SolverOptions solver;
    std::string output;          // records CSV path ("" = do not write)
    std::string summary_output;  // summary CSV path ("" = derive from output)

    /// Default R grid: 25 geometric points from 1 to 1000 (a choice of this
    /// toolkit, documented as such).
    static std::vector<double> default_r_grid() {
        std::vector<double> grid;
        for (int i = 0; i < 25; ++i)
            grid.push_back(std::pow(10.0, 3.0 * static_cast<double>(i) / 24.0));
        return grid;
    }

    void validate() const {
        if (n_logical < 2) throw ValidationError("sweep needs n_logical >= 2");
        if (variants.empty()) throw ValidationError("sweep needs at least one variant");
        if (!(j_scale > 0)) throw ValidationError("J must be positive");
        if (instances < 1) throw ValidationError("sweep needs at least one instance");
        if (r_grid.empty()) throw ValidationError("sweep needs a non-empty R grid");
        for (double r : r_grid)
            if (!(r > 0)) throw ValidationError("every R must be positive");
        if (schedule_points < 2) throw ValidationError("schedule needs at least 2 points");
    }

    double j_av() const { return j_scale / 2.0; }

    NuPolicy policy_for(Variant v) const {
        switch (nu_mode) {
            case NuMode::FromVariant: return default_policy_for(v);
            case NuMode::AllEven: return NuPolicy::all_even();
            case NuMode::AllOdd: return NuPolicy::all_odd();
        }
        throw InternalError("unreachable nu mode");
    }
};

/// One (variant, R, instance) result row. Optional fields stay empty in the
/// CSV when not computed (min gaps disabled) or excluded (degenerate
/// logical instance).
struct SweepRecord {
    std::uint64_t seed = 0;
    int instance_id = 0;
    int n = 0;
    std::string variant;
    double r = 0.0;
    double delta = 0.0;
    std::optional<double> e_logic;
    std::optional<double> e_phys;
    std::optional<double> delta_e;
    std::optional<double> min_gap_logic;
    std::optional<double> min_gap_phys;
    std::optional<double> chi;
    std::vector<std::string> flags;
    double solver_ms = 0.0;
};

struct SweepSummaryRow {
    std::string variant;
    double r = 0.0;
    int records = 0;
    int excluded = 0;  // degenerate-logical instances left out of chi-bar
    std::optional<double> mean_delta_e;
    std::optional<double> median_delta_e;
    std::optional<double> chi_bar;  // 1 / mean(1/chi)
    int near_zero_chi = 0;
};

struct SweepResult {
    std::vector<SweepRecord> records;
    std::vector<SweepSummaryRow> summary;
};

namespace detail {

inline std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    return quoted + "\"";
}

inline std::string csv_opt(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string();
}

inline std::size_t worker_count() {
    if (const char* env = std::getenv("ANNEAL_LAB_WORKERS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<std::size_t>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace detail

inline const char* sweep_csv_header() {
    return "seed,instance_id,N,variant,R,Delta,e_logic,e_phys,delta_e,"
           "min_gap_logic,min_gap_phys,chi,flags,solver_ms";
}

inline std::string record_to_csv(const SweepRecord& rec) {
    std::string flags;
    for (std::size_t i = 0; i < rec.flags.size(); ++i) flags += (i ? ";" : "") + rec.flags[i];
    std::ostringstream out;
    out << rec.seed << ',' << rec.instance_id << ',' << rec.n << ','
        << detail::csv_quote(rec.variant) << ',' << format_double(rec.r) << ','
        << format_double(rec.delta) << ',' << detail::csv_opt(rec.e_logic) << ','
        << detail::csv_opt(rec.e_phys) << ',' << detail::csv_opt(rec.delta_e) << ','
        << detail::csv_opt(rec.min_gap_logic) << ',' << detail::csv_opt(rec.min_gap_phys) << ','
        << detail::csv_opt(rec.chi) << ',' << detail::csv_quote(flags) << ','
        << format_double(rec.solver_ms);
    return out.str();
}

/// Compute one sweep cell. Codes are shared and immutable; everything else
/// is derived from (variant, R, instance) so records are reproducible
/// individually.
inline SweepRecord sweep_cell(const ExperimentConfig& config, const ParityCode& code,
                              Variant variant, double r, int instance_id) {
    SweepRecord rec;
    rec.instance_id = instance_id;
    rec.n = config.n_logical;
    rec.variant = variant_name(variant);
    rec.r = r;
    rec.seed = config.base_seed ^ static_cast<std::uint64_t>(instance_id);
    rec.delta = r * config.j_av();

    auto started = std::chrono::steady_clock::now();
    try {
        LogicalModel model = generate_instance(config.n_logical, config.j_scale, rec.seed);
        PhysicalProgram program =
            compile_program(model, code, variant, rec.delta, config.ratio);
        AnnealSystem logical = build_logical_system(model, config.driver);
        AnnealSystem physical = build_system(program, config.driver, config.solver);

        rec.e_logic = final_gap(logical, config.solver);
        rec.e_phys = final_gap(physical, config.solver);
        rec.delta_e = std::abs(*rec.e_logic - *rec.e_phys);

        if (config.compute_min_gaps) {
            auto schedule = AnnealSchedule::uniform(config.schedule_points);
            auto chi = chi_between(logical, physical, schedule, config.solver,
                                   config.refine_min_gap);
            rec.min_gap_logic = chi.min_gap_logic;
            rec.min_gap_phys = chi.min_gap_phys;
            if (chi.logical_degenerate) {
                rec.flags.push_back("logical_degenerate");
            } else {
                rec.chi = chi.chi;
                if (chi.phys_gap_closed) rec.flags.push_back("phys_gap_closed");
            }
        }
    } catch (const DimensionError& e) {
        rec.flags.push_back("error:dim_cap");
        rec.flags.push_back(e.what());
    } catch (const SolverError& e) {
        rec.flags.push_back("error:solver");
        rec.flags.push_back(e.what());
    }
    rec.solver_ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - started)
                        .count();
    return rec;
}

inline SweepResult run_sweep(const ExperimentConfig& config) {
    config.validate();

    std::vector<ParityCode> codes;
    for (Variant v : config.variants) {
        NuPolicy policy = config.policy_for(v);
        codes.push_back(build_square_lattice(config.n_logical, policy));
    }

    const std::size_t cells = config.variants.size() * config.r_grid.size() *
                              static_cast<std::size_t>(config.instances);
    SweepResult result;
    result.records.resize(cells);

    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        for (;;) {
            std::size_t cell = next.fetch_add(1);
            if (cell >= cells) return;
            std::size_t inst = cell % static_cast<std::size_t>(config.instances);
            std::size_t rest = cell / static_cast<std::size_t>(config.instances);
            std::size_t r_idx = rest % config.r_grid.size();
            std::size_t v_idx = rest / config.r_grid.size();
            result.records[cell] =
                sweep_cell(config, codes[v_idx], config.variants[v_idx],
                           config.r_grid[r_idx], static_cast<int>(inst));
        }
    };
    std::size_t workers = std::min(detail::worker_count(), cells);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // Summaries per (variant, R), in task order.
    for (std::size_t v_idx = 0; v_idx < config.variants.size(); ++v_idx) {
        for (std::size_t r_idx = 0; r_idx < config.r_grid.size(); ++r_idx) {
            SweepSummaryRow row;
            row.variant = variant_name(config.variants[v_idx]);
            row.r = config.r_grid[r_idx];
            std::vector<double> deltas;
            double inv_chi_sum = 0.0;
            int chi_count = 0;
            bool chi_closed = false;
            for (int inst = 0; inst < config.instances; ++inst) {
                std::size_t cell = (v_idx * config.r_grid.size() + r_idx) *
                                       static_cast<std::size_t>(config.instances) +
                                   static_cast<std::size_t>(inst);
                const SweepRecord& rec = result.records[cell];
                ++row.records;
                if (rec.delta_e) deltas.push_back(*rec.delta_e);
                if (config.compute_min_gaps) {
                    if (!rec.chi) {
                        ++row.excluded;
                    } else {
                        ++chi_count;
                        if (*rec.chi < config.near_zero_chi) ++row.near_zero_chi;
                        if (*rec.chi == 0.0)
                            chi_closed = true;
                        else
                            inv_chi_sum += 1.0 / *rec.chi;
                    }
                }
            }
            if (!deltas.empty()) {
                double sum = 0.0;
                for (double d : deltas) sum += d;
                row.mean_delta_e = sum / static_cast<double>(deltas.size());
                std::sort(deltas.begin(), deltas.end());
                std::size_t mid = deltas.size() / 2;
                row.median_delta_e = deltas.size() % 2 ? deltas[mid]
                                                       : 0.5 * (deltas[mid - 1] + deltas[mid]);
            }
            if (chi_count > 0)
                row.chi_bar = chi_closed
                                  ? 0.0
                                  : static_cast<double>(chi_count) / inv_chi_sum;
            result.summary.push_back(row);
        }
    }

    if (!config.output.empty()) {
        std::ofstream out(config.output);
        if (!out) throw ParseError("cannot write '" + config.output + "'");
        out << sweep_csv_header() << "\n";
        for (const auto& rec : result.records) out << record_to_csv(rec) << "\n";

        std::string summary_path = config.summary_output.empty()
                                       ? config.output + ".summary.csv"
                                       : config.summary_output;
        std::ofstream sum(summary_path);
        if (!sum) throw ParseError("cannot write '" + summary_path + "'");
        sum << "variant,R,records,excluded,mean_delta_e,median_delta_e,chi_bar,"
               "near_zero_chi\n";
        for (const auto& row : result.summary)
            sum << detail::csv_quote(row.variant) << ',' << format_double(row.r) << ','
                << row.records << ',' << row.excluded << ','
                << detail::csv_opt(row.mean_delta_e) << ','
                << detail::csv_opt(row.median_delta_e) << ',' << detail::csv_opt(row.chi_bar)
                << ',' << row.near_zero_chi << "\n";
    }
    return result;
}

/// Parse an experiment config from JSON (see README for the schema).
inline ExperimentConfig config_from_json(const json& j,
                                         const std::string& what = "sweep config") {
    ExperimentConfig config;
    config.n_logical = detail::field_as<int>(j, "n_logical", what);
    if (j.contains("variants")) {
        config.variants.clear();
        for (const auto& name :
             detail::field_as<std::vector<std::string>>(j, "variants", what))
            config.variants.push_back(variant_from_name(name));
    }
    std::string nu = detail::field_or<std::string>(j, "nu_policy", "from_variant", what);
    if (nu == "from_variant")
        config.nu_mode = ExperimentConfig::NuMode::FromVariant;
    else if (nu == "all_even")
        config.nu_mode = ExperimentConfig::NuMode::AllEven;
    else if (nu == "all_odd")
        config.nu_mode = ExperimentConfig::NuMode::AllOdd;
    else
        throw ParseError(what + ": nu_policy must be from_variant, all_even or all_odd");
    config.j_scale = detail::field_or<double>(j, "J", 1.0, what);
    if (j.contains("R_grid")) {
        const json& grid = j.at("R_grid");
        if (grid.is_array()) {
            config.r_grid = grid.get<std::vector<double>>();
        } else if (grid.is_object()) {
            double lo = detail::field_as<double>(grid, "min", what + ": R_grid");
            double hi = detail::field_as<double>(grid, "max", what + ": R_grid");
            int points = detail::field_as<int>(grid, "points", what + ": R_grid");
            if (!(lo > 0) || !(hi > lo) || points < 2)
                throw ParseError(what + ": R_grid needs 0 < min < max and points >= 2");
            for (int i = 0; i < points; ++i)
                config.r_grid.push_back(
                    lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1)));
        } else {
            throw ParseError(what + ": R_grid must be an array or {min,max,points}");
        }
    } else {
        config.r_grid = ExperimentConfig::default_r_grid();
    }
    config.instances = detail::field_or<int>(j, "instances", 1, what);
    config.base_seed = detail::field_or<std::uint64_t>(j, "base_seed", 0, what);
    config.schedule_points =
        detail::field_or<std::size_t>(j, "schedule_points", 101, what);
    config.compute_min_gaps = detail::field_or<bool>(j, "compute_min_gaps", true, what);
    config.refine_min_gap = detail::field_or<bool>(j, "refine_min_gap", true, what);
    config.ratio = detail::field_or<double>(j, "ratio", 2.0, what);
    config.driver.driver_sign = detail::field_or<double>(j, "driver_sign", -1.0, what);
    config.driver.drive_ancillas = detail::field_or<bool>(j, "drive_ancillas", true, what);
    config.solver.dense_dim_cap =
        detail::field_or<std::uint64_t>(j, "dense_dim_cap", 4096, what);
    config.solver.total_dim_cap =
        detail::field_or<std::uint64_t>(j, "total_dim_cap", std::uint64_t(1) << 26, what);
    config.output = detail::field_or<std::string>(j, "output", "", what);
    config.summary_output = detail::field_or<std::string>(j, "summary_output", "", what);
    return config;
}

}  // namespace annealab
