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

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dfscodec/dfscodec.hpp"
#include "dfscodec/io.hpp"

namespace dfscodec::cli {

using io::json;

inline constexpr std::uint64_t kDefaultSeed = 20260101;

enum ExitCode : int { kOk = 0, kUsage = 2, kValidation = 3, kProtocol = 4 };

inline int exit_code_for(ErrorKind k) {
    switch (k) {
        case ErrorKind::PerpOutcome:
        case ErrorKind::ConditionOneViolated:
        case ErrorKind::ConditionTwoViolated: return kProtocol;
        default: return kValidation;
    }
}

struct RunConfig {
    std::string command;  // e.g. "group info"
    std::string group = "k4";
    std::string rep = "builtin";
    std::string table_file;
    std::size_t m = 1;
    std::size_t r = 0;  // 0 = smallest admissible
    std::size_t r_max = kDefaultRMax;
    std::string dist = "uniform";
    std::uint64_t seed = kDefaultSeed;
    std::string seed_source = "default";
    Tolerances tol{};
    std::string report_path;
    bool json_output = false;
    bool dump_state = false;
    std::string path = "general";
    bool verify = false;
    std::size_t trials = 0;
    std::string export_path;
    std::optional<std::size_t> tamper;
    std::optional<std::size_t> realign;
    std::size_t max_power = 0;
};

namespace detail {

inline bool is_file_spec(const std::string &s) {
    return s.find('/') != std::string::npos || (s.size() > 5 && s.substr(s.size() - 5) == ".json");
}

struct Problem {
    std::shared_ptr<const FiniteGroup> group;
    std::optional<CharacterTable> table;
    std::optional<UnitaryRep> rep;
    bool builtin = false;
    json inputs;  // canonical description of what was loaded
};

/// Default name for file inputs without a "name" field.
inline std::string file_stem(const std::string &path) { return std::filesystem::path(path).stem().string(); }

inline Problem load_group(const RunConfig &c) {
    Problem p;
    if (is_file_spec(c.group)) {
        json j = io::load_file(c.group);
        p.group = std::make_shared<const FiniteGroup>(io::group_from_json(j, file_stem(c.group)));
        p.inputs["group_file"] = j;
    } else {
        p.group = std::make_shared<const FiniteGroup>(builtin_group(c.group));
        p.builtin = true;
        p.inputs["group"] = c.group;
    }
    if (!c.table_file.empty()) {
        json j = io::load_file(c.table_file);
        p.table = io::character_table_from_json(j, *p.group, c.tol);
        p.inputs["table_file"] = j;
    } else if (p.builtin) {
        p.table = builtin_character_table(c.group);
    }
    return p;
}

inline Problem load_problem(const RunConfig &c) {
    Problem p = load_group(c);
    if (is_file_spec(c.rep)) {
        json j = io::load_file(c.rep);
        p.rep = io::rep_from_json(j, p.group, file_stem(c.rep), c.tol);
        p.inputs["rep_file"] = j;
    } else {
        if (!p.builtin) {
            fail(ErrorKind::Configuration, "a custom group needs a rep file");
        }
        p.rep = builtin_rep(c.group, p.group, c.rep);
        p.inputs["rep"] = c.rep;
    }
    return p;
}

inline const CharacterTable &need_table(const Problem &p) {
    if (!p.table) {
        fail(ErrorKind::Configuration, "a custom group needs --table");
    }
    return *p.table;
}

inline ChannelSpec parse_channel(const std::string &dist, const UnitaryRep &rep) {
    if (dist == "uniform") {
        return ChannelSpec::uniform(rep);
    }
    if (dist.rfind("fixed:", 0) == 0) {
        return ChannelSpec::fixed(rep, std::stoul(dist.substr(6)));
    }
    if (dist.rfind("weights:", 0) == 0) {
        std::vector<double> w;
        std::string rest = dist.substr(8);
        std::size_t pos = 0;
        while (pos <= rest.size()) {
            std::size_t comma = rest.find(',', pos);
            w.push_back(std::stod(rest.substr(pos, comma - pos)));
            if (comma == std::string::npos) {
                break;
            }
            pos = comma + 1;
        }
        return ChannelSpec::with_distribution(rep, std::move(w));
    }
    fail(ErrorKind::Configuration, "unknown distribution '" + dist + "' (uniform, fixed:<k>, weights:p0,p1,...)");
}

inline std::optional<std::size_t> try_min_r(const UnitaryRep &rep, const CharacterTable &t, const RunConfig &c) {
    try {
        return min_r(rep, t, c.r_max, c.tol);
    } catch (const Error &e) {
        if (e.kind() == ErrorKind::RMaxExceeded || e.kind() == ErrorKind::NotFaithful) {
            return std::nullopt;
        }
        throw;
    }
}

inline std::optional<AbelianDecomposition> decomposition_for(const Problem &p, const RunConfig &c) {
    return p.builtin ? builtin_abelian_decomposition(c.group) : std::nullopt;
}

// ---- commands ---------------------------------------------------------------

inline json cmd_group_validate(const RunConfig &c, json &inputs) {
    json j = io::load_file(c.group);
    inputs["group_file"] = j;
    FiniteGroup g = io::group_from_json(j, file_stem(c.group));
    json out = io::group_info(g);
    out["valid"] = true;
    return out;
}

inline json cmd_group_info(const RunConfig &c, json &inputs) {
    Problem p = load_group(c);
    inputs = p.inputs;
    return io::group_info(*p.group);
}

inline json cmd_rep_analyze(const RunConfig &c, json &inputs) {
    Problem p = load_problem(c);
    inputs = p.inputs;
    const UnitaryRep &u = *p.rep;
    const CharacterTable &t = need_table(p);
    json out;
    out["group"] = p.group->name;
    out["rep"] = u.name();
    out["d"] = u.dim();
    out["projective"] = u.is_projective();
    out["faithful"] = is_faithful(u, c.tol);
    out["character_table"] = io::character_table_to_json(t);
    out["compound_character"] = io::to_json(compound_character(u, t.classes, 1, c.tol));
    std::optional<std::size_t> r = try_min_r(u, t, c);
    out["min_r"] = io::optional_json(r);
    std::size_t top = c.max_power ? c.max_power : (r ? *r : 3);
    json mults = json::array();
    for (std::size_t n = 1; n <= top; ++n) {
        if (!u.power_is_linear(n)) {
            mults.push_back({{"n", n}, {"skipped", "projective power"}});
            continue;
        }
        MultiplicityVector mv = multiplicities(u, t, n, c.tol);
        json e = io::multiplicity_to_json(mv);
        e["contains_regular"] = contains_regular(mv, t);
        mults.push_back(std::move(e));
    }
    out["multiplicities"] = mults;
    return out;
}

inline json cmd_rep_min_r(const RunConfig &c, json &inputs) {
    Problem p = load_problem(c);
    inputs = p.inputs;
    std::size_t r = min_r(*p.rep, need_table(p), c.r_max, c.tol);
    json out;
    out["group"] = p.group->name;
    out["rep"] = p.rep->name();
    out["r_max"] = c.r_max;
    out["r"] = r;
    out["multiplicities"] = io::multiplicity_to_json(multiplicities(*p.rep, need_table(p), r, c.tol));
    return out;
}

inline json cmd_tokens_build(const RunConfig &c, json &inputs) {
    Problem p = load_problem(c);
    inputs = p.inputs;
    TokenSet ts = make_token_set(*p.rep, need_table(p), c.r, c.r_max, c.tol);
    return io::token_set_to_json(ts, c.dump_state);
}

inline json cmd_roundtrip(const RunConfig &c, json &inputs) {
    Problem p = load_problem(c);
    inputs = p.inputs;
    if (c.m < 1) {
        fail(ErrorKind::Configuration, "--m must be at least 1");
    }
    TokenSet ts = make_token_set(*p.rep, need_table(p), c.r, c.r_max, c.tol);
    const std::size_t d = ts.local_dim();
    Rng msg_rng(derive_seed(c.seed, "message"));
    StateVector msg = StateVector::from_amplitudes(d, c.m, random_state(msg_rng, ipow(d, c.m)));
    ChannelSpec channel = parse_channel(c.dist, *p.rep);
    const std::uint64_t cseed = derive_seed(c.seed, "channel");
    const std::uint64_t mseed = derive_seed(c.seed, "measure");
    json out;
    out["group"] = p.group->name;
    out["rep"] = p.rep->name();
    out["distribution"] = c.dist;
    DecodeResult res{StateVector(d, c.m), {}};
    if (c.realign) {
        res = measure_and_realign(ts, msg, *c.realign, channel, cseed, mseed);
        out["mode"] = "measure_and_realign";
        out["alice_element"] = *c.realign;
    } else if (c.tamper) {
        // Replace the ancilla register by a basis state to model corrupted input.
        StateVector chi = encode(ts, msg);
        Transmission tx = transmit(channel, std::move(chi), cseed);
        if (*c.tamper >= ipow(d, ts.r)) {
            fail(ErrorKind::Configuration, "--tamper index out of range");
        }
        StateVector bad = StateVector::basis(d, ts.r, *c.tamper).tensor(msg);
        out["mode"] = "tampered";
        res = decode(ts, bad, mseed);
        res.report.channel_element = tx.applied_element;
    } else {
        res = roundtrip(ts, channel, msg, cseed, mseed);
        out["mode"] = "roundtrip";
    }
    out["report"] = io::report_to_json(res.report);
    return out;
}

inline EncoderPath parse_path(const std::string &path, std::size_t order) {
    if (path == "general") {
        return EncoderPath::GeneralDirectT;
    }
    if (path == "abelian") {
        return EncoderPath::AbelianDirectT;
    }
    if (path == "cyclic") {
        return is_power_of_two(order) ? EncoderPath::CyclicNetworkT : EncoderPath::CyclicDirectT;
    }
    if (path == "cyclic-direct") {
        return EncoderPath::CyclicDirectT;
    }
    fail(ErrorKind::Configuration, "unknown path '" + path + "' (general, abelian, cyclic, cyclic-direct)");
}

inline json cmd_circuit_count(const RunConfig &c, json &inputs) {
    Problem p = load_problem(c);
    inputs = p.inputs;
    if (c.path != "general" && c.path != "abelian" && c.path != "cyclic" && c.path != "all") {
        fail(ErrorKind::Configuration, "unknown path '" + c.path + "' (general, abelian, cyclic, all)");
    }
    std::optional<std::size_t> r;
    if (c.r) {
        r = c.r;
    } else if (p.table) {
        r = try_min_r(*p.rep, *p.table, c);
    }
    GateCountReport rep = gate_count_report(*p.rep, c.m, c.path, r, decomposition_for(p, c));
    return io::gate_count_to_json(rep);
}

inline json cmd_circuit_simulate(const RunConfig &c, json &inputs) {
    Problem p = load_problem(c);
    inputs = p.inputs;
    TokenSet ts = make_token_set(*p.rep, need_table(p), c.r, c.r_max, c.tol);
    EncoderPath path = parse_path(c.path, p.group->order);
    EncoderCircuit enc = build_encoder(ts, c.m, path, decomposition_for(p, c));
    json out;
    out["group"] = p.group->name;
    out["path"] = to_string(path);
    out["m"] = c.m;
    out["r"] = enc.tokens.r;
    out["w_count"] = enc.w.total_count;
    out["w_depth"] = enc.w.logical_depth;
    if (enc.t_cyclic) {
        out["t_cnots"] = enc.t_cyclic->cnot_count;
        out["t_fourier_gates"] = enc.t_cyclic->fourier_gates;
    } else {
        out["t_direct_bound"] = enc.t_direct->cost_bound();
    }
    if (c.verify) {
        const std::size_t trials = c.trials ? c.trials : 10;
        Rng rng(derive_seed(c.seed, "simulate"));
        double worst = 0.0;
        bool agree = true;
        for (std::size_t t = 0; t < trials; ++t) {
            StateVector msg = StateVector::from_amplitudes(2, c.m, random_state(rng, std::size_t{1} << c.m));
            StateVector ref = encode(enc.tokens, msg);
            worst = std::max(worst, 1.0 - fidelity(enc.run(msg), ref));
            std::uint64_t s = derive_seed(c.seed, "decode/" + std::to_string(t));
            agree = agree && enc.measure_label(ref, s).outcome == decode(enc.tokens, ref, s).report.outcome;
        }
        out["verify"] = {{"trials", trials},
                         {"fidelity_at_least_1-1e-9", worst <= 1e-9},
                         {"decode_outcomes_agree", agree}};
    }
    if (!c.export_path.empty()) {
        json plans = {{"W", io::plan_to_json(enc.w)}};
        if (enc.t_cyclic) {
            plans["T"] = io::plan_to_json(enc.t_cyclic->plan);
        }
        io::save_file(c.export_path, plans);
    }
    return out;
}

inline json cmd_demo_su2(const RunConfig &c, json &inputs) {
    inputs["demo"] = "su2";
    const std::size_t trials = c.trials ? c.trials : 50;
    su2::BlockCertificate cert = su2::block_structure_certificate(trials, c.seed);
    const double phi = kPi / 3;
    su2::WignerRow closed = su2::wigner_closed_form(phi);
    su2::WignerRow block = su2::wigner_from_block(phi);
    Rng rng(derive_seed(c.seed, "logical"));
    double worst = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        Vector ab = random_state(rng, 2);
        Matrix u = su2::random_su2(rng.next());
        worst = std::max(worst, 1.0 - su2::logical_qubit_roundtrip({}, u, ab(0), ab(1)));
    }
    json out;
    out["trials"] = trials;
    out["block_violation_at_most_1e-10"] = cert.max_violation <= 1e-10;
    out["wigner_d33_pi_over_3"] = io::rounded(block.d33);
    out["wigner_matches_closed_form"] = std::abs(block.d33 - closed.d33) <= 1e-12;
    out["logical_fidelity_at_least_1-1e-9"] = worst <= 1e-9;
    out["rate"] = {{"numerator", 1}, {"denominator", 3}};
    return out;
}

inline void print_human(const json &result, std::ostream &out) {
    for (auto it = result.begin(); it != result.end(); ++it) {
        out << it.key() << " = ";
        if (it.value().is_string()) {
            out << it.value().get<std::string>();
        } else {
            out << it.value().dump();
        }
        out << '\n';
    }
}

}  // namespace detail

/// Parses argv-style arguments (without the program name), runs the command and
/// writes its report. `env_seed` is the value of DFSCODEC_SEED, if set.
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err,
               std::optional<std::string> env_seed = std::nullopt) {
    RunConfig c;
    CLI::App app{"Group-covariant decoherence-free codec toolkit", "dfscodec"};
    app.require_subcommand(1);
    std::optional<std::uint64_t> seed_flag;
    double tol_mult = c.tol.multiplicity;
    double tol_unit = c.tol.unitarity;

    auto common = [&](CLI::App *s) {
        s->add_option("--seed", seed_flag, "RNG seed (default: $DFSCODEC_SEED, then a fixed constant)");
        s->add_option("--report", c.report_path, "Also write the JSON report to this file");
        s->add_flag("--json", c.json_output, "Print the JSON report instead of key = value lines");
        s->add_option("--tol-multiplicity", tol_mult, "Multiplicity rounding tolerance");
        s->add_option("--tol-unitarity", tol_unit, "Unitarity/homomorphism tolerance");
    };
    auto problem = [&](CLI::App *s) {
        s->add_option("--group,group", c.group, "Built-in group (z<N>, k4, s3, products like z4xz2) or JSON file");
        s->add_option("--rep,rep", c.rep, "Built-in rep name or JSON file");
        s->add_option("--table", c.table_file, "Character table JSON for custom groups");
        s->add_option("--r-max", c.r_max, "Largest tensor power searched");
        common(s);
    };

    CLI::App *group = app.add_subcommand("group", "Finite groups");
    group->require_subcommand(1);
    CLI::App *gv = group->add_subcommand("validate", "Validate a group file");
    gv->add_option("file", c.group, "Group JSON file")->required();
    common(gv);
    CLI::App *gi = group->add_subcommand("info", "Group structure");
    gi->add_option("--builtin,--group,group", c.group, "Built-in group name or JSON file");
    gi->add_option("--table", c.table_file, "Character table JSON");
    common(gi);

    CLI::App *rep = app.add_subcommand("rep", "Representations");
    rep->require_subcommand(1);
    CLI::App *ra = rep->add_subcommand("analyze", "Characters and multiplicities");
    problem(ra);
    ra->add_option("--max-power", c.max_power, "Largest tensor power listed (default: min r)");
    CLI::App *rm = rep->add_subcommand("min-r", "Smallest r whose tensor power contains the regular rep");
    problem(rm);

    CLI::App *tok = app.add_subcommand("tokens", "Token states");
    tok->require_subcommand(1);
    CLI::App *tb = tok->add_subcommand("build", "Build the fiducial and token states");
    problem(tb);
    tb->add_option("--r", c.r, "Token register size (default: smallest admissible)");
    tb->add_flag("--dump-state", c.dump_state, "Include the state amplitudes");

    CLI::App *rt = app.add_subcommand("roundtrip", "Encode, send through collective noise, decode");
    problem(rt);
    rt->add_option("--m", c.m, "Message qudits");
    rt->add_option("--r", c.r, "Token register size");
    rt->add_option("--dist", c.dist, "uniform | fixed:<k> | weights:p0,p1,...");
    CLI::Option *tamper =
        rt->add_option("--tamper", c.tamper, "Replace the ancilla register by this basis state before decoding");
    rt->add_option("--realign", c.realign, "Measure-and-realign with this element on the sender side")->excludes(tamper);

    CLI::App *circ = app.add_subcommand("circuit", "Circuit synthesis");
    circ->require_subcommand(1);
    CLI::App *cc = circ->add_subcommand("count", "Gate counts per synthesis path");
    problem(cc);
    cc->add_option("--m", c.m, "Message qubits");
    cc->add_option("--r", c.r, "Token register size");
    cc->add_option("--path", c.path, "general | abelian | cyclic | all");
    CLI::App *cs = circ->add_subcommand("simulate", "Simulate the encoder circuit");
    problem(cs);
    cs->add_option("--m", c.m, "Message qubits");
    cs->add_option("--r", c.r, "Token register size");
    cs->add_option("--path", c.path, "general | abelian | cyclic | cyclic-direct");
    cs->add_flag("--verify", c.verify, "Compare against the direct encoder on random messages");
    cs->add_option("--trials", c.trials, "Random messages for --verify (default 10)");
    cs->add_option("--export", c.export_path, "Write the gate lists as JSON");

    CLI::App *demo = app.add_subcommand("demo", "Demonstrations");
    demo->require_subcommand(1);
    CLI::App *ds = demo->add_subcommand("su2", "Three-qubit SU(2) subsystem check");
    ds->add_option("--trials", c.trials, "Random rotations (default 50)");
    common(ds);

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    json inputs;
    json result;
    std::string name;
    try {
        if (seed_flag) {
            c.seed = *seed_flag;
            c.seed_source = "flag";
        } else if (env_seed && !env_seed->empty()) {
            try {
                c.seed = std::stoull(*env_seed);
            } catch (const std::exception &) {
                fail(ErrorKind::Configuration, "DFSCODEC_SEED is not an integer: '" + *env_seed + "'");
            }
            c.seed_source = "env";
        }
        if (!(tol_mult > 0) || !(tol_unit > 0)) {
            fail(ErrorKind::Configuration, "tolerances must be positive");
        }
        c.tol.multiplicity = tol_mult;
        c.tol.unitarity = tol_unit;
        c.tol.homomorphism = tol_unit;

        if (gv->parsed()) {
            name = "group validate";
            result = detail::cmd_group_validate(c, inputs);
        } else if (gi->parsed()) {
            name = "group info";
            result = detail::cmd_group_info(c, inputs);
        } else if (ra->parsed()) {
            name = "rep analyze";
            result = detail::cmd_rep_analyze(c, inputs);
        } else if (rm->parsed()) {
            name = "rep min-r";
            result = detail::cmd_rep_min_r(c, inputs);
        } else if (tb->parsed()) {
            name = "tokens build";
            result = detail::cmd_tokens_build(c, inputs);
        } else if (rt->parsed()) {
            name = "roundtrip";
            result = detail::cmd_roundtrip(c, inputs);
        } else if (cc->parsed()) {
            name = "circuit count";
            result = detail::cmd_circuit_count(c, inputs);
        } else if (cs->parsed()) {
            name = "circuit simulate";
            result = detail::cmd_circuit_simulate(c, inputs);
        } else if (ds->parsed()) {
            name = "demo su2";
            result = detail::cmd_demo_su2(c, inputs);
        }
    } catch (const Error &e) {
        json j = {{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}};
        err << j.dump() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception &e) {
        json j = {{"error", {{"kind", "Configuration"}, {"message", e.what()}}}};
        err << j.dump() << '\n';
        return kValidation;
    }

    inputs["command"] = name;
    inputs["options"] = {{"m", c.m},
                         {"r", c.r},
                         {"r_max", c.r_max},
                         {"dist", c.dist},
                         {"path", c.path},
                         {"trials", c.trials},
                         {"max_power", c.max_power},
                         {"dump_state", c.dump_state},
                         {"verify", c.verify},
                         {"tamper", io::optional_json(c.tamper)},
                         {"realign", io::optional_json(c.realign)},
                         {"tol_multiplicity", c.tol.multiplicity},
                         {"tol_unitarity", c.tol.unitarity}};
    json report;
    report["command"] = name;
    report["input_digest"] = io::digest(inputs);
    report["seed"] = c.seed;
    report["seed_source"] = c.seed_source;
    report["result"] = result;
    try {
        if (!c.report_path.empty()) {
            io::save_file(c.report_path, report);
        }
    } catch (const Error &e) {
        err << json{{"error", {{"kind", to_string(e.kind())}, {"message", e.what()}}}}.dump() << '\n';
        return kValidation;
    }
    if (c.json_output) {
        out << report.dump(2) << '\n';
    } else {
        detail::print_human(result, out);
    }
    return kOk;
}

}  // namespace dfscodec::cli
