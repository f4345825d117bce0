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

#include <fstream>
#include <json.hpp>
#include <string>

#include "annealab/code.hpp"
#include "annealab/model.hpp"
#include "annealab/program.hpp"

namespace annealab {

using nlohmann::json;

namespace detail {

inline json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_json(text, path);
}

inline const json& field(const json& j, const char* key, const std::string& what) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(what + ": missing field '" + key + "'");
    return *it;
}

template <typename T>
T field_as(const json& j, const char* key, const std::string& what) {
    try {
        return field(j, key, what).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(what + ": field '" + key + "': " + e.what());
    }
}

template <typename T>
T field_or(const json& j, const char* key, T fallback, const std::string& what) {
    if (!j.contains(key)) return fallback;
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(what + ": field '" + key + "': " + e.what());
    }
}

}  // namespace detail

// --- code files ------------------------------------------------------------

inline json code_to_json(const ParityCode& code) {
    json j;
    j["n_logical"] = code.n_logical;
    j["spins"] = code.spins;
    json stabs = json::array();
    for (const auto& s : code.stabilisers) {
        json entry;
        json support = json::array();
        for (std::size_t p : s.support.indices()) support.push_back(code.spins[p]);
        entry["spins"] = support;
        entry["nu"] = s.nu;
        entry["face"] = s.face_id;
        stabs.push_back(entry);
    }
    j["stabilisers"] = stabs;
    json z = json::array();
    for (std::size_t p : code.logical_z) z.push_back(code.spins[p]);
    j["logical_z"] = z;
    return j;
}

inline ParityCode code_from_json(const json& j, const std::string& what = "code file") {
    int n = detail::field_as<int>(j, "n_logical", what);
    auto spins = detail::field_as<std::vector<std::string>>(j, "spins", what);
    auto z = detail::field_as<std::vector<std::string>>(j, "logical_z", what);
    const json& stabs = detail::field(j, "stabilisers", what);
    if (!stabs.is_array()) throw ParseError(what + ": 'stabilisers' must be an array");
    std::vector<StabiliserSpec> specs;
    for (std::size_t i = 0; i < stabs.size(); ++i) {
        const std::string ctx = what + ": stabilisers[" + std::to_string(i) + "]";
        StabiliserSpec spec;
        spec.spins = detail::field_as<std::vector<std::string>>(stabs[i], "spins", ctx);
        spec.nu = detail::field_as<int>(stabs[i], "nu", ctx);
        spec.face_id = detail::field_or<std::string>(stabs[i], "face", "", ctx);
        specs.push_back(std::move(spec));
    }
    return make_custom_code(n, std::move(spins), specs, z);
}

inline ParityCode load_code_file(const std::string& path) {
    return code_from_json(detail::load_json_file(path), path);
}

inline void save_code_file(const std::string& path, const ParityCode& code) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << code_to_json(code).dump(2) << "\n";
}

// --- model files -----------------------------------------------------------

inline json model_to_json(const LogicalModel& model) {
    json j;
    j["n"] = model.n;
    j["h"] = model.h;
    json couplings = json::array();
    for (const auto& [key, value] : model.couplings)
        couplings.push_back({{"i", key.first}, {"j", key.second}, {"value", value}});
    j["J"] = couplings;
    json higher = json::array();
    for (const auto& [subset, value] : model.higher_order)
        higher.push_back({{"spins", subset}, {"value", value}});
    j["K"] = higher;
    return j;
}

inline LogicalModel model_from_json(const json& j, const std::string& what = "model file") {
    int n = detail::field_as<int>(j, "n", what);
    LogicalModel model(n);
    auto h = detail::field_or<std::vector<double>>(j, "h", {}, what);
    if (!h.empty()) {
        if (h.size() != static_cast<std::size_t>(n))
            throw ParseError(what + ": 'h' must list " + std::to_string(n) + " fields");
        for (int k = 1; k <= n; ++k) model.set_field(k, h[static_cast<std::size_t>(k - 1)]);
    }
    if (j.contains("J")) {
        const json& couplings = j.at("J");
        if (!couplings.is_array()) throw ParseError(what + ": 'J' must be an array");
        for (std::size_t idx = 0; idx < couplings.size(); ++idx) {
            const std::string ctx = what + ": J[" + std::to_string(idx) + "]";
            int i = detail::field_as<int>(couplings[idx], "i", ctx);
            int jj = detail::field_as<int>(couplings[idx], "j", ctx);
            double value = detail::field_as<double>(couplings[idx], "value", ctx);
            try {
                model.set_coupling(i, jj, model.coupling(i, jj) + value);
            } catch (const ValidationError& e) {
                throw ParseError(ctx + ": " + e.what());
            }
        }
    }
    if (j.contains("K")) {
        const json& higher = j.at("K");
        if (!higher.is_array()) throw ParseError(what + ": 'K' must be an array");
        for (std::size_t idx = 0; idx < higher.size(); ++idx) {
            const std::string ctx = what + ": K[" + std::to_string(idx) + "]";
            auto spins = detail::field_as<std::vector<int>>(higher[idx], "spins", ctx);
            double value = detail::field_as<double>(higher[idx], "value", ctx);
            try {
                model.set_higher_order(spins, value);
            } catch (const ValidationError& e) {
                throw ParseError(ctx + ": " + e.what());
            }
        }
    }
    return model;
}

inline LogicalModel load_model_file(const std::string& path) {
    return model_from_json(detail::load_json_file(path), path);
}

inline void save_model_file(const std::string& path, const LogicalModel& model) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << model_to_json(model).dump(2) << "\n";
}

// --- tree graph files ------------------------------------------------------

struct TreeGraph {
    int n = 0;
    std::vector<std::pair<int, int>> edges;
};

inline TreeGraph tree_from_json(const json& j, const std::string& what = "tree file") {
    TreeGraph tree;
    tree.n = detail::field_as<int>(j, "n", what);
    const json& edges = detail::field(j, "edges", what);
    if (!edges.is_array()) throw ParseError(what + ": 'edges' must be an array");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        const json& e = edges[i];
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer())
            throw ParseError(what + ": edges[" + std::to_string(i) +
                             "] must be a pair of integers");
        tree.edges.push_back({e[0].get<int>(), e[1].get<int>()});
    }
    return tree;
}

inline TreeGraph load_tree_file(const std::string& path) {
    return tree_from_json(detail::load_json_file(path), path);
}

// --- program serialisation (write-only) --------------------------------------

inline json program_to_json(const PhysicalProgram& prog) {
    json j;
    j["variant"] = variant_name(prog.variant);
    j["delta"] = prog.delta;
    j["ratio"] = prog.ratio.value();
    json sites = json::array();
    for (const auto& site : prog.sites)
        sites.push_back({{"name", site.name},
                         {"dimension", site.dimension},
                         {"role", site.role == SiteRole::Physical ? "physical" : "ancilla"}});
    j["sites"] = sites;
    json fields = json::array();
    for (const auto& f : prog.fields)
        fields.push_back({{"site", prog.sites[f.site].name}, {"strength", f.strength}});
    j["fields"] = fields;
    json groups = json::array();
    for (const auto& group : prog.constraints) {
        json entry;
        entry["face"] = group.gadget.face_id;
        entry["nu"] = group.gadget.nu;
        entry["constant_delta_units"] = group.gadget.constant.str();
        json face_sites = json::array();
        for (std::size_t p : group.face_sites) face_sites.push_back(prog.sites[p].name);
        entry["face_sites"] = face_sites;
        json anc = json::array();
        for (std::size_t p : group.ancilla_sites) anc.push_back(prog.sites[p].name);
        entry["ancilla_sites"] = anc;
        json terms = json::array();
        auto site_name = [&](int local) {
            return local < group.gadget.n_face
                       ? prog.sites[group.face_sites[static_cast<std::size_t>(local)]].name
                       : prog.sites[group.ancilla_sites[static_cast<std::size_t>(
                             local - group.gadget.n_face)]].name;
        };
        for (const auto& t : group.gadget.terms) {
            json term;
            term["coeff_delta_units"] = t.coeff.str();
            switch (t.kind) {
                case GadgetTerm::Kind::SiteField:
                    term["kind"] = "site_field";
                    term["site"] = site_name(t.a);
                    break;
                case GadgetTerm::Kind::SiteSquared:
                    term["kind"] = "site_squared";
                    term["site"] = site_name(t.a);
                    break;
                case GadgetTerm::Kind::TwoBody:
                    term["kind"] = "two_body";
                    term["sites"] = {site_name(t.a), site_name(t.b)};
                    break;
                case GadgetTerm::Kind::ZProduct:
                    term["kind"] = "z_product";
                    break;
            }
            terms.push_back(term);
        }
        entry["terms"] = terms;
        groups.push_back(entry);
    }
    j["constraints"] = groups;
    j["notes"] = prog.notes;
    return j;
}

inline void save_program_file(const std::string& path, const PhysicalProgram& prog) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << program_to_json(prog).dump(2) << "\n";
}

}  // namespace annealab
