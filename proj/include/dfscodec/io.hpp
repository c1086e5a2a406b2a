// Copyright 2026 The dfscodec Authors
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
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dfscodec/character_table.hpp"
#include "dfscodec/circuit.hpp"
#include "dfscodec/codec.hpp"
#include "dfscodec/group.hpp"
#include "dfscodec/representation.hpp"
#include "dfscodec/statevec.hpp"

namespace dfscodec::io {

using json = nlohmann::ordered_json;

/// Doubles are written on a 1e-12 grid so reports do not depend on the last
/// few bits of floating-point noise.
inline double rounded(double x) {
    double r = std::round(x * 1e12) / 1e12;
    return r == 0.0 ? 0.0 : r;  // no negative zero
}

inline json to_json(Complex c) { return json::array({rounded(c.real()), rounded(c.imag())}); }

inline json to_json(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            row.push_back(to_json(m(i, k)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json to_json(const Vector &v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out.push_back(to_json(v(i)));
    }
    return out;
}

inline json load_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::Parse, "cannot open '" + path + "'");
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        fail(ErrorKind::Parse, "'" + path + "': " + e.what());
    }
}

inline void save_file(const std::string &path, const json &j) {
    std::ofstream out(path);
    if (!out) {
        fail(ErrorKind::Configuration, "cannot write '" + path + "'");
    }
    out << j.dump(2) << '\n';
}

inline const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) {
        fail(ErrorKind::Parse, std::string("missing field '") + key + "'");
    }
    return j.at(key);
}

inline Complex complex_from_json(const json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    fail(ErrorKind::Parse, "expected a number or a [re, im] pair, got " + j.dump());
}

inline Matrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        fail(ErrorKind::Parse, "expected a matrix as an array of rows");
    }
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const json &row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            fail(ErrorKind::Parse, "ragged matrix row " + std::to_string(i));
        }
        for (Eigen::Index k = 0; k < cols; ++k) {
            m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
        }
    }
    return m;
}

// ---- groups ---------------------------------------------------------------

/// { "order": n, "cayley": [[...]], "labels": [...] }
inline FiniteGroup group_from_json(const json &j, const std::string &name = "custom") {
    const json &table = field(j, "cayley");
    if (!table.is_array()) {
        fail(ErrorKind::Parse, "'cayley' must be an array of rows");
    }
    std::vector<std::vector<long long>> raw;
    for (const auto &row : table) {
        if (!row.is_array()) {
            fail(ErrorKind::Parse, "'cayley' rows must be arrays");
        }
        std::vector<long long> r;
        for (const auto &x : row) {
            if (!x.is_number_integer()) {
                fail(ErrorKind::Parse, "cayley entries must be integers, got " + x.dump());
            }
            r.push_back(x.get<long long>());
        }
        raw.push_back(std::move(r));
    }
    if (j.contains("order")) {
        if (!j["order"].is_number_integer() || j["order"].get<long long>() != static_cast<long long>(raw.size())) {
            fail(ErrorKind::NotAGroup, "declared order does not match the table size " + std::to_string(raw.size()));
        }
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        for (const auto &l : j["labels"]) {
            labels.push_back(l.get<std::string>());
        }
    }
    return validate_group(raw, labels, j.value("name", name));
}

inline json group_to_json(const FiniteGroup &g) {
    json j;
    j["name"] = g.name;
    j["order"] = g.order;
    j["cayley"] = g.cayley;
    j["labels"] = g.labels;
    return j;
}

inline json classes_to_json(const FiniteGroup &g, const ConjugacyClasses &c) {
    json out = json::array();
    for (const auto &cls : c.classes) {
        json labels = json::array();
        for (std::size_t x : cls) {
            labels.push_back(g.label(x));
        }
        out.push_back({{"elements", cls}, {"labels", labels}, {"size", cls.size()}});
    }
    return out;
}

inline json group_info(const FiniteGroup &g) {
    ConjugacyClasses c = conjugacy_classes(g);
    json j;
    j["name"] = g.name;
    j["order"] = g.order;
    j["abelian"] = g.is_abelian();
    j["num_classes"] = c.count();
    j["labels"] = g.labels;
    j["inverse"] = g.inverse;
    json gens = json::array();
    for (std::size_t x : g.generators) {
        gens.push_back(g.label(x));
    }
    j["generators"] = gens;
    json orders = json::array();
    for (std::size_t x = 0; x < g.order; ++x) {
        orders.push_back(element_order(g, x));
    }
    j["element_orders"] = orders;
    j["classes"] = classes_to_json(g, c);
    return j;
}

// ---- representations and character tables --------------------------------

/// { "dim": d, "matrices": [ U_0, U_1, ... ], "projective": false }, each U as
/// rows of [re, im] pairs.
inline UnitaryRep rep_from_json(const json &j, std::shared_ptr<const FiniteGroup> group,
                                const std::string &name = "custom", const Tolerances &tol = {}) {
    const json &mats = field(j, "matrices");
    if (!mats.is_array()) {
        fail(ErrorKind::Parse, "'matrices' must be an array");
    }
    std::vector<Matrix> ms;
    for (const auto &m : mats) {
        ms.push_back(matrix_from_json(m));
    }
    if (j.contains("dim")) {
        auto d = j["dim"].get<long long>();
        for (const auto &m : ms) {
            if (m.rows() != d || m.cols() != d) {
                fail(ErrorKind::InvalidRepresentation, "matrix shape differs from dim " + std::to_string(d));
            }
        }
    }
    RepOptions opts;
    opts.allow_projective = j.value("projective", false);
    opts.tol = tol;
    return UnitaryRep::create(std::move(group), std::move(ms), j.value("name", name), opts);
}

inline json rep_to_json(const UnitaryRep &u) {
    json j;
    j["name"] = u.name();
    j["dim"] = u.dim();
    j["projective"] = u.is_projective();
    json mats = json::array();
    for (const auto &m : u.matrices()) {
        mats.push_back(to_json(m));
    }
    j["matrices"] = mats;
    return j;
}

/// { "dims": [...], "chars": [[...]], "irrep_matrices": [[U_lambda(g) ...] ...] }
inline CharacterTable character_table_from_json(const json &j, const FiniteGroup &g, const Tolerances &tol = {}) {
    std::vector<std::size_t> dims;
    for (const auto &d : field(j, "dims")) {
        dims.push_back(d.get<std::size_t>());
    }
    Matrix chars = matrix_from_json(field(j, "chars"));
    std::vector<std::vector<Matrix>> irreps;
    if (j.contains("irrep_matrices")) {
        for (const auto &per_irrep : j["irrep_matrices"]) {
            std::vector<Matrix> ms;
            for (const auto &m : per_irrep) {
                ms.push_back(matrix_from_json(m));
            }
            irreps.push_back(std::move(ms));
        }
    }
    return make_character_table(g, std::move(dims), std::move(chars), std::move(irreps), tol);
}

inline json character_table_to_json(const CharacterTable &t) {
    json j;
    j["dims"] = t.dims;
    j["class_sizes"] = t.classes.class_sizes;
    j["chars"] = to_json(t.chars);
    j["orthogonality_defect"] = rounded(orthogonality_defect(t));
    return j;
}

inline json multiplicity_to_json(const MultiplicityVector &mv) {
    return {{"n", mv.n}, {"gammas", mv.gammas}, {"residue_below_1e-6", mv.max_residue < 1e-6}};
}

// ---- states and reports ---------------------------------------------------

inline json state_to_json(const StateVector &s) {
    json j;
    j["local_dim"] = s.local_dim();
    j["num_qudits"] = s.num_qudits();
    json amps = json::array();
    for (std::size_t i = 0; i < s.size(); ++i) {
        Complex a = s.amp(i);
        if (std::abs(a) > 1e-12) {
            amps.push_back({{"index", i}, {"amplitude", to_json(a)}});
        }
    }
    j["nonzero_amplitudes"] = amps;
    return j;
}

inline json report_to_json(const ProtocolReport &r) {
    json j;
    j["m"] = r.m;
    j["r"] = r.r;
    j["rate"] = {{"numerator", r.rate_numerator}, {"denominator", r.rate_denominator}, {"value", rounded(r.rate)}};
    j["fidelity"] = r.fidelity ? json(rounded(*r.fidelity)) : json(nullptr);
    j["outcome"] = r.outcome;
    j["channel_element"] = r.channel_element ? json(*r.channel_element) : json(nullptr);
    j["channel_seed"] = r.channel_seed ? json(*r.channel_seed) : json(nullptr);
    j["measurement_seed"] = r.measurement_seed;
    j["perp_probability"] = rounded(r.perp_probability);
    json probs = json::array();
    for (double p : r.outcome_probabilities) {
        probs.push_back(rounded(p));
    }
    j["outcome_probabilities"] = probs;
    return j;
}

inline json token_set_to_json(const TokenSet &t, bool dump_states) {
    json j;
    j["group"] = t.rep.group().name;
    j["rep"] = t.rep.name();
    j["d"] = t.local_dim();
    j["r"] = t.r;
    j["num_tokens"] = t.order();
    j["gram_residue_below_1e-8"] = t.gram_residue <= 1e-8;
    j["closure_residue_below_1e-9"] = t.closure_residue <= 1e-9;
    if (dump_states) {
        j["fiducial"] = state_to_json(t.fiducial);
        json toks = json::array();
        for (std::size_t g = 0; g < t.order(); ++g) {
            json e = state_to_json(t.tokens[g]);
            e["element"] = t.rep.group().label(g);
            toks.push_back(std::move(e));
        }
        j["tokens"] = toks;
    }
    return j;
}

template <typename T>
json optional_json(const std::optional<T> &v) {
    return v ? json(*v) : json(nullptr);
}

inline json gate_count_to_json(const GateCountReport &r) {
    json j;
    j["group"] = r.group;
    j["group_order"] = r.group_order;
    j["d"] = r.d;
    j["m"] = r.m;
    j["r_prime"] = r.r_prime;
    j["r"] = optional_json(r.r);
    j["path"] = r.path;
    j["general"] = {{"count", optional_json(r.general_count)},
                    {"depth", optional_json(r.general_depth)},
                    {"formula_count", r.general_formula},
                    {"formula_depth", r.depth_formula},
                    {"formula_applicable", r.general_formula_applicable},
                    {"x_gates_fused", optional_json(r.physical_x_count)},
                    {"x_gates_unfused", optional_json(r.unfused_x_count)}};
    j["abelian"] = {{"count", optional_json(r.abelian_count)},
                    {"bound", optional_json(r.abelian_bound)},
                    {"bound_unclamped", optional_json(r.abelian_bound_raw)}};
    j["cyclic"] = {{"count", optional_json(r.cyclic_count)},
                   {"t_cnots", optional_json(r.t_cyclic_cnots)},
                   {"t_fourier_gates", optional_json(r.t_cyclic_fourier)}};
    j["t_direct_bound"] = optional_json(r.t_direct_bound);
    if (r.rate) {
        j["rate"] = {{"numerator", *r.rate_numerator}, {"denominator", *r.rate_denominator}, {"value", rounded(*r.rate)}};
    } else {
        j["rate"] = nullptr;
    }
    j["scaling"] = r.scaling;
    return j;
}

inline json plan_to_json(const CircuitPlan &p) {
    json j;
    j["name"] = p.name;
    j["num_qubits"] = p.layout.num_qubits;
    j["layout"] = {{"control", p.layout.control}, {"token", p.layout.token}, {"message", p.layout.message}};
    j["labels"] = p.labels;
    j["total_count"] = p.total_count;
    j["logical_depth"] = p.logical_depth;
    json gates = json::array();
    for (const auto &g : p.gates) {
        json e;
        e["kind"] = to_string(g.kind);
        json controls = json::array();
        for (const auto &c : g.controls) {
            controls.push_back({{"qubit", c.qudit}, {"value", c.value}});
        }
        e["controls"] = controls;
        e["targets"] = g.targets;
        e["cost"] = g.cost;
        if (g.kind == GateKind::Single || g.kind == GateKind::Controlled) {
            e["matrix"] = to_json(g.unitary);
        }
        gates.push_back(std::move(e));
    }
    j["gates"] = gates;
    return j;
}

/// FNV-1a of the canonical dump, in hex.
inline std::string digest(const json &j) {
    std::ostringstream os;
    os << std::hex << fnv1a(j.dump());
    return os.str();
}

}  // namespace dfscodec::io
