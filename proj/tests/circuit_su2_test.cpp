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

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dfscodec/dfscodec.hpp"
#include "oracles.hpp"

namespace dfscodec {
namespace {

ErrorKind kind_of(const std::function<void()> &f) {
    try {
        f();
    } catch (const Error &e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected an Error";
    return ErrorKind::Parse;
}

struct Setup {
    std::shared_ptr<const FiniteGroup> group;
    UnitaryRep rep;
    CharacterTable table;
};

Setup setup(const std::string &group, const std::string &rep = "builtin") {
    auto g = std::make_shared<const FiniteGroup>(builtin_group(group));
    return {g, builtin_rep(group, g, rep), builtin_character_table(group)};
}

StateVector random_message(Rng &rng, std::size_t m) {
    return StateVector::from_amplitudes(2, m, random_state(rng, std::size_t{1} << m));
}

std::size_t summed_cost(const CircuitPlan &p) {
    std::size_t total = 0;
    for (const auto &g : p.gates) {
        total += g.cost;
    }
    return total;
}

std::size_t count_kind(const CircuitPlan &p, GateKind k) {
    std::size_t n = 0;
    for (const auto &g : p.gates) {
        n += g.kind == k ? 1 : 0;
    }
    return n;
}

// Basis index from per-qubit bits, qubit 0 most significant.
std::size_t index_of(const std::vector<std::size_t> &bits) {
    std::size_t idx = 0;
    for (std::size_t b : bits) {
        idx = (idx << 1U) | b;
    }
    return idx;
}

// Checks that the plan maps |label(g)> (x) phi to |label(g)> (x) U_g^(x)m phi.
void expect_controlled_action(const CircuitPlan &plan, const UnitaryRep &rep, std::size_t m, std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t g = 0; g < rep.order(); ++g) {
        StateVector msg = random_message(rng, m);
        StateVector in = prepare_encoder_input(plan.layout, {plan.labels[g]}, msg);
        simulate(plan, in);
        oracle::Vec moved = oracle::tensor_power(rep.matrix(g), m) * msg.amplitudes();
        oracle::Vec expected = oracle::Vec::Zero(static_cast<Eigen::Index>(in.size()));
        for (std::size_t mi = 0; mi < msg.size(); ++mi) {
            expected(static_cast<Eigen::Index>(compose_index(plan.layout, plan.labels[g], mi))) =
                moved(static_cast<Eigen::Index>(mi));
        }
        EXPECT_LT((in.amplitudes() - expected).norm(), 1e-12) << plan.name << " g=" << g;
    }
}

// ---- gate counts ----------------------------------------------------------------

TEST(GeneralW, KleinCounts) {
    auto k = setup("k4");
    CircuitPlan w3 = synth_W_general(k.rep, 3);
    EXPECT_EQ(w3.total_count, 20U);
    EXPECT_EQ(summed_cost(w3), 20U);
    EXPECT_EQ(general_count_formula(4, 3), 20);
    CircuitPlan w1 = synth_W_general(k.rep, 1);
    EXPECT_EQ(w1.total_count, 12U);
    EXPECT_EQ(summed_cost(w1), 12U);
    EXPECT_TRUE(w1.formula_applicable);
    EXPECT_EQ(count_kind(w3, GateKind::Controlled), 12U);
    EXPECT_EQ(count_kind(w3, GateKind::ToffoliChain), 0U);
}

TEST(GeneralW, DepthIndependentOfMessageLength) {
    auto k = setup("k4");
    for (std::size_t m : {1U, 2U, 3U, 16U, 64U}) {
        CircuitPlan w = synth_W_general(k.rep, m);
        EXPECT_EQ(w.logical_depth, 12U) << "m=" << m;
        EXPECT_EQ(w.total_count, 4U * (2U + m));
    }
    EXPECT_EQ(general_depth_formula(4), 12);
    auto z = setup("z8");
    for (std::size_t m : {1U, 2U, 64U}) {
        CircuitPlan w = synth_W_general(z.rep, m);
        EXPECT_EQ(w.logical_depth, 352U) << "m=" << m;
        EXPECT_EQ(static_cast<long long>(w.total_count), general_count_formula(8, m));
    }
    EXPECT_EQ(synth_W_general(z.rep, 2).total_count, 360U);
    EXPECT_EQ(general_depth_formula(8), 352);
}

TEST(GeneralW, CountIntegrity) {
    for (const std::string g : {"z2", "z3", "z4", "z5", "z8", "k4", "s3"}) {
        auto s = setup(g);
        for (std::size_t m : {1U, 3U}) {
            CircuitPlan w = synth_W_general(s.rep, m);
            EXPECT_EQ(summed_cost(w), w.total_count) << g;
            EXPECT_EQ(count_kind(w, GateKind::Controlled), s.rep.order() * m) << g;
            const std::size_t rp = ceil_log2(s.rep.order());
            for (const auto &gate : w.gates) {
                if (gate.kind == GateKind::Controlled) {
                    EXPECT_EQ(gate.controls.size(), rp);
                    for (const auto &c : gate.controls) {
                        EXPECT_EQ(c.value, 1U);
                    }
                }
            }
            EXPECT_LE(w.physical_x_count, w.unfused_x_count) << g;
            EXPECT_EQ(w.formula_applicable, s.rep.order() == (std::size_t{1} << rp) && rp >= 2) << g;
            if (w.formula_applicable) {
                EXPECT_EQ(static_cast<long long>(w.total_count), general_count_formula(s.rep.order(), m)) << g;
            }
        }
    }
}

TEST(GeneralW, ControlledAction) {
    for (const std::string g : {"z2", "z3", "z5", "z8", "k4", "s3"}) {
        auto s = setup(g);
        for (std::size_t m : {1U, 2U}) {
            expect_controlled_action(synth_W_general(s.rep, m), s.rep, m, 40 + m);
        }
    }
}

TEST(GeneralW, NeedsQubits) {
    auto z = setup("z3", "diag:3");
    EXPECT_EQ(kind_of([&] { synth_W_general(z.rep, 1); }), ErrorKind::UnsupportedDimension);
    EXPECT_EQ(kind_of([&] { synth_W_cyclic(z.rep, 1); }), ErrorKind::UnsupportedDimension);
    // counts for d = 3 stay symbolic
    GateCountReport r = gate_count_report(z.rep, 2, "all", 1);
    EXPECT_FALSE(r.general_count.has_value());
    EXPECT_EQ(r.general_formula, 3 * (41 * 2 - 80 + 2));
    EXPECT_EQ(r.t_direct_bound, std::optional<std::size_t>(3));
}

TEST(CyclicW, CountsAndAction) {
    auto z = setup("z8");
    CircuitPlan w = synth_W_cyclic(z.rep, 4);
    EXPECT_EQ(w.total_count, 12U);
    EXPECT_EQ(count_kind(w, GateKind::Controlled), 12U);
    for (const auto &gate : w.gates) {
        EXPECT_EQ(gate.controls.size(), 1U);
    }
    for (const std::string g : {"z2", "z3", "z5", "z8"}) {
        auto s = setup(g);
        expect_controlled_action(synth_W_cyclic(s.rep, 2), s.rep, 2, 7);
    }
    auto k = setup("k4");
    EXPECT_EQ(kind_of([&] { synth_W_cyclic(k.rep, 1); }), ErrorKind::Configuration);
}

TEST(CyclicW, DepthIndependentOfMessageLength) {
    auto z = setup("z8");
    EXPECT_EQ(synth_W_cyclic(z.rep, 1).logical_depth, synth_W_cyclic(z.rep, 64).logical_depth);
}

TEST(CyclicW, ExponentIdentity) {
    for (std::size_t n : {2U, 3U, 5U, 8U}) {
        auto z = setup("z" + std::to_string(n));
        for (std::size_t j = 0; j < n; ++j) {
            EXPECT_LT(oracle::max_abs(matrix_power(z.rep.matrix(1), j) - z.rep.matrix(j)), 1e-12);
        }
        EXPECT_TRUE(is_residue_cyclic(*z.group));
    }
    EXPECT_FALSE(is_residue_cyclic(builtin_group("k4")));
}

TEST(AbelianW, KleinDecompositions) {
    auto k = setup("k4", "pauli");
    auto dec = builtin_abelian_decomposition("k4");
    ASSERT_TRUE(dec.has_value());
    CircuitPlan w = synth_W_abelian(k.rep, *dec, 2);
    for (std::size_t g = 0; g < 4; ++g) {
        EXPECT_EQ(w.labels[g], g);
    }
    expect_controlled_action(w, k.rep, 2, 3);
    // (x, z): U_x U_z = -i U_y for the Pauli rep, so the generator product misses U_y.
    AbelianDecomposition xz{{1, 3}, {2, 2}};
    EXPECT_EQ(kind_of([&] { synth_W_abelian(k.rep, xz, 1); }), ErrorKind::InvalidDecomposition);
    // A linear diagonal rep of K4 accepts the same decomposition.
    Matrix id = Matrix::Identity(2, 2);
    Matrix zx = Matrix::Identity(2, 2);
    zx(1, 1) = -1.0;
    Matrix zz = -Matrix::Identity(2, 2);
    zz(1, 1) = 1.0;
    UnitaryRep diag = UnitaryRep::create(k.group, {id, zx, zx * zz, zz});
    CircuitPlan wd = synth_W_abelian(diag, xz, 2);
    expect_controlled_action(wd, diag, 2, 4);
}

TEST(AbelianW, CountWithinBound) {
    for (const std::string g : {"z2", "z4", "z8", "k4", "z4xz2"}) {
        auto s = setup(g);
        auto dec = builtin_abelian_decomposition(g);
        ASSERT_TRUE(dec.has_value()) << g;
        for (std::size_t m : {1U, 2U, 5U}) {
            CircuitPlan w = synth_W_abelian(s.rep, *dec, m);
            AbelianBound b = abelian_count_bound(*dec, m);
            EXPECT_EQ(summed_cost(w), w.total_count);
            EXPECT_LE(static_cast<long long>(w.total_count), b.clamped) << g << " m=" << m;
            EXPECT_LE(b.raw, b.clamped);
        }
        expect_controlled_action(synth_W_abelian(s.rep, *dec, 2), s.rep, 2, 5);
    }
    // sum_j L_j (40 (log2 L_j - 2) + m) for Z8: 8 (40 + 3)
    EXPECT_EQ(abelian_count_bound({{1}, {8}}, 3).raw, 344);
    EXPECT_EQ(abelian_count_bound({{2, 1}, {2, 2}}, 3).raw, 2 * 2 * (3 - 40));
    EXPECT_EQ(abelian_count_bound({{2, 1}, {2, 2}}, 3).clamped, 12);
}

// ---- cyclic T ---------------------------------------------------------------------

TEST(CyclicT, CnotAndFourierCounts) {
    for (std::size_t n : {2U, 4U, 8U, 16U}) {
        CyclicTPlan t = synth_T_cyclic(n);
        const std::size_t rp = ceil_log2(n);
        EXPECT_EQ(t.cnot_count, (n - 1) + rp) << n;
        EXPECT_EQ(t.fourier_gates, rp * (rp + 1) / 2) << n;
        EXPECT_EQ(count_kind(t.plan, GateKind::Cnot), t.cnot_count);
        EXPECT_EQ(t.plan.total_count, t.cnot_count + t.fourier_gates);
    }
    EXPECT_EQ(synth_T_cyclic(8).cnot_count, 10U);
    EXPECT_EQ(synth_T_cyclic(2).cnot_count, 2U);
    EXPECT_EQ(synth_T_cyclic(16).cnot_count, 19U);
    EXPECT_EQ(kind_of([] { synth_T_cyclic(6); }), ErrorKind::Configuration);
}

TEST(CyclicT, RegisterNetworkFourQubitExample) {
    // N = 4: controls hold j = 2 big-endian (|10>); A_2 (two qubits) takes j_2 = 1, A_1 takes j_1 = 0.
    Layout l = cyclic_encoder_layout(4, 0);
    CircuitPlan net = synth_register_network(l);
    StateVector s = StateVector::basis(2, 5, index_of({1, 0, 0, 0, 0}));
    simulate(net, s);
    EXPECT_NEAR(std::abs(s.amp(index_of({0, 0, 1, 1, 0}))), 1.0, 1e-15);
}

TEST(CyclicT, RegisterNetworkExhaustive) {
    for (std::size_t n : {2U, 4U, 8U, 16U}) {
        const std::size_t rp = ceil_log2(n);
        Layout l = cyclic_encoder_layout(n, 0);
        CircuitPlan net = synth_register_network(l);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<std::size_t> in(rp + n - 1, 0);
            std::vector<std::size_t> out(rp + n - 1, 0);
            for (std::size_t k = 0; k < rp; ++k) {
                in[k] = (j >> (rp - 1 - k)) & 1U;  // big-endian on the controls
            }
            std::size_t pos = rp;
            std::size_t ones = 0;
            for (std::size_t mm = rp; mm >= 1; --mm) {
                for (std::size_t c = 0; c < (std::size_t{1} << (mm - 1)); ++c) {
                    out[pos++] = (j >> (mm - 1)) & 1U;
                    ones += out[pos - 1];
                }
            }
            EXPECT_EQ(ones, j);
            StateVector s = StateVector::basis(2, rp + n - 1, index_of(in));
            simulate(net, s);
            EXPECT_NEAR(std::abs(s.amp(index_of(out))), 1.0, 1e-15) << "n=" << n << " j=" << j;
        }
    }
}

TEST(CyclicT, MapsLabelsToFourierTokens) {
    for (std::size_t n : {2U, 4U, 8U}) {
        const std::size_t rp = ceil_log2(n);
        CyclicTPlan t = synth_T_cyclic(n);
        StateVector fid = cyclic_network_fiducial(n);
        std::vector<std::size_t> reps;
        for (std::size_t i = 0; i < fid.size(); ++i) {
            if (std::abs(fid.amp(i)) > 1e-12) {
                reps.push_back(i);
            }
        }
        ASSERT_EQ(reps.size(), n);
        for (std::size_t g = 0; g < n; ++g) {
            std::vector<std::size_t> in(rp + n - 1, 0);
            for (std::size_t b = 0; b < rp; ++b) {
                in[b] = (g >> b) & 1U;  // little-endian label
            }
            StateVector s = StateVector::basis(2, rp + n - 1, index_of(in));
            simulate(t.plan, s);
            for (std::size_t j = 0; j < n; ++j) {
                // rep_j has popcount j; control register back to |0>
                std::size_t w = 0;
                for (std::size_t x = reps[j]; x; x >>= 1U) {
                    w += x & 1U;
                }
                const std::size_t idx = reps[j];  // control bits zero, so the index is the token index
                const double ang = 2.0 * kPi * static_cast<double>(g * w) / static_cast<double>(n);
                Complex expected = std::polar(1.0 / std::sqrt(static_cast<double>(n)), ang);
                EXPECT_LT(std::abs(s.amp(idx) - expected), 1e-12) << "n=" << n << " g=" << g << " j=" << j;
            }
        }
    }
}

// ---- T as an operator and full encoders ---------------------------------------------

TEST(TokenMap, KleinLabelsMapToTokens) {
    auto k = setup("k4", "pauli");
    TokenSet ts = make_token_set(k.rep, k.table);
    TokenMap t = TokenMap::build(ts);
    Matrix dense = t.dense();
    EXPECT_LT(unitarity_defect(dense), 1e-12);
    for (std::size_t g = 0; g < 4; ++g) {
        EXPECT_LT((dense.col(static_cast<Eigen::Index>(g)) - ts.tokens[g].amplitudes()).norm(), 1e-12);
    }
    EXPECT_EQ(t.cost_bound(), 4U);
    EXPECT_EQ(kind_of([&] { TokenMap::build(ts, {0, 1, 1, 2}); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([&] { TokenMap::build(ts, {0, 1, 2}); }), ErrorKind::Configuration);
}

TEST(TokenMap, ApplyMatchesDenseAndInverts) {
    auto z = setup("z4");
    TokenSet ts = make_token_set(z.rep, z.table);
    TokenMap t = TokenMap::build(ts);
    Rng rng(21);
    StateVector s = random_message(rng, ts.r + 2);
    StateVector orig = s;
    Vector expected = oracle::kron(t.dense(), oracle::Mat::Identity(4, 4)) * s.amplitudes();
    t.apply(s, 0);
    EXPECT_LT((s.amplitudes() - expected).norm(), 1e-12);
    t.apply_inverse(s, 0);
    EXPECT_LT((s.amplitudes() - orig.amplitudes()).norm(), 1e-12);
}

struct EncoderCase {
    std::string group;
    EncoderPath path;
};

std::vector<EncoderCase> encoder_cases() {
    std::vector<EncoderCase> out{{"k4", EncoderPath::GeneralDirectT}, {"k4", EncoderPath::AbelianDirectT}};
    for (std::size_t n = 2; n <= 8; ++n) {
        const std::string g = "z" + std::to_string(n);
        out.push_back({g, EncoderPath::GeneralDirectT});
        out.push_back({g, EncoderPath::CyclicDirectT});
        if (is_power_of_two(n)) {
            out.push_back({g, EncoderPath::CyclicNetworkT});
        }
    }
    return out;
}

TEST(Encoder, CircuitMatchesCodec) {
    Rng rng(77);
    for (const auto &c : encoder_cases()) {
        auto s = setup(c.group);
        TokenSet ts = make_token_set(s.rep, s.table);
        auto dec = builtin_abelian_decomposition(c.group);
        for (std::size_t m : {1U, 2U}) {
            EncoderCircuit enc = build_encoder(ts, m, c.path, dec);
            for (std::size_t trial = 0; trial < 3; ++trial) {
                StateVector msg = random_message(rng, m);
                StateVector a = enc.run(msg);
                StateVector b = encode(enc.tokens, msg);
                EXPECT_GT(fidelity(a, b), 1.0 - 1e-9) << c.group << " " << to_string(c.path) << " m=" << m;
            }
        }
    }
}

TEST(Encoder, InverseTMeasurementAgreesWithDecode) {
    Rng rng(5);
    for (const auto &c : encoder_cases()) {
        auto s = setup(c.group);
        TokenSet ts = make_token_set(s.rep, s.table);
        EncoderCircuit enc = build_encoder(ts, 1, c.path, builtin_abelian_decomposition(c.group));
        StateVector msg = random_message(rng, 1);
        StateVector chi = enc.run(msg);
        for (std::size_t k = 0; k < s.rep.order(); ++k) {
            Transmission tx = transmit(ChannelSpec::fixed(s.rep, k), chi, 0);
            for (std::uint64_t seed = 0; seed < 4; ++seed) {
                MeasurementRecord rec = enc.measure_label(tx.state, seed);
                DecodeResult res = decode(enc.tokens, tx.state, seed);
                EXPECT_FALSE(rec.remainder);
                EXPECT_EQ(rec.outcome, res.report.outcome) << c.group << " " << to_string(c.path);
                for (std::size_t g = 0; g < s.rep.order(); ++g) {
                    EXPECT_NEAR(rec.probabilities[g], 1.0 / static_cast<double>(s.rep.order()), 1e-10);
                }
            }
        }
    }
}

TEST(Encoder, LabelMustFitTokenRegister) {
    auto z = setup("z7");
    TokenSet ts = make_token_set(z.rep, z.table);
    EXPECT_EQ(ts.r, 6U);
    EXPECT_NO_THROW(build_encoder(ts, 1, EncoderPath::GeneralDirectT));
    auto k = setup("k4");
    TokenSet kt = make_token_set(k.rep, k.table);
    EXPECT_EQ(kind_of([&] { build_encoder(kt, 1, EncoderPath::AbelianDirectT); }), ErrorKind::Configuration);
}

TEST(GateCountReport, CyclicEightAllPaths) {
    auto z = setup("z8");
    GateCountReport r = gate_count_report(z.rep, 4, "all", 7, builtin_abelian_decomposition("z8"));
    EXPECT_EQ(r.r_prime, 3U);
    EXPECT_EQ(r.cyclic_count, std::optional<std::size_t>(12));
    EXPECT_EQ(r.t_cyclic_cnots, std::optional<std::size_t>(10));
    EXPECT_EQ(r.t_cyclic_fourier, std::optional<std::size_t>(6));
    EXPECT_EQ(r.general_count, std::optional<std::size_t>(8 * (41 * 3 - 80 + 4)));
    EXPECT_EQ(r.general_depth, std::optional<std::size_t>(352));
    EXPECT_EQ(r.t_direct_bound, std::optional<std::size_t>(128));
    EXPECT_EQ(r.rate_denominator, std::optional<std::size_t>(11));
    ASSERT_TRUE(r.abelian_count.has_value());
    EXPECT_LE(static_cast<long long>(*r.abelian_count), *r.abelian_bound);
}

// ---- su2_demo ---------------------------------------------------------------------

TEST(Su2, CoupledBasisIsOrthonormal) {
    Matrix b = su2::coupled_basis();
    EXPECT_LT(unitarity_defect(b), 1e-15);
    EXPECT_LT(su2::block_violation(Matrix::Identity(2, 2)), 1e-15);
}

TEST(Su2, RandomRotationsAreSpecialUnitary) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        Matrix u = su2::random_su2(seed);
        EXPECT_LT(unitarity_defect(u), 1e-14);
        EXPECT_LT(std::abs(u.determinant() - Complex(1.0)), 1e-14);
    }
}

TEST(Su2, DiagonalRotationPhasesFollowTotalSpin) {
    const double theta = 0.83;
    Matrix m = su2::coupled_form(su2::euler_matrix(theta, 0, 0));
    const auto &labels = su2::basis_labels();
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t k = 0; k < 8; ++k) {
            Complex expected = i == k ? std::polar(1.0, -labels[i].m * theta) : Complex(0.0);
            EXPECT_LT(std::abs(m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) - expected), 1e-14);
        }
    }
}

TEST(Su2, BlockStructureCertificate) {
    su2::BlockCertificate c = su2::block_structure_certificate(50, 20260101);
    EXPECT_EQ(c.trials, 50U);
    EXPECT_EQ(c.seeds.size(), 50U);
    EXPECT_LE(c.max_violation, 1e-10);
    // a non-collective operator breaks the structure
    Matrix u = su2::random_su2(1);
    Matrix v = su2::random_su2(2);
    Matrix mixed = su2::coupled_basis().adjoint() * kron(kron(u, v), u) * su2::coupled_basis();
    EXPECT_GT(oracle::max_abs(mixed.block(0, 4, 4, 4)), 1e-3);
}

TEST(Su2, WignerEntries) {
    const auto w = su2::wigner_closed_form(kPi / 3);
    EXPECT_NEAR(w.d33, 0.75 * std::cos(kPi / 6), 1e-15);
    for (double phi : {0.0, 0.3, kPi / 3, 1.7, kPi}) {
        const auto a = su2::wigner_closed_form(phi);
        const auto b = su2::wigner_from_block(phi);
        EXPECT_NEAR(a.d33, b.d33, 1e-12) << phi;
        EXPECT_NEAR(a.d31, b.d31, 1e-12) << phi;
        EXPECT_NEAR(a.d3m1, b.d3m1, 1e-12) << phi;
        EXPECT_NEAR(a.d3m3, b.d3m3, 1e-12) << phi;
        EXPECT_NEAR(a.d11, b.d11, 1e-12) << phi;
        EXPECT_NEAR(a.d1m1, b.d1m1, 1e-12) << phi;
        // first row of a unitary block has unit norm
        EXPECT_NEAR(a.d33 * a.d33 + a.d31 * a.d31 + a.d3m1 * a.d3m1 + a.d3m3 * a.d3m3, 1.0, 1e-12);
    }
}

TEST(Su2, LogicalQubitRoundtrip) {
    Rng rng(31);
    for (std::size_t trial = 0; trial < 20; ++trial) {
        Vector ab = random_state(rng, 2);
        Matrix u = su2::random_su2(derive_seed(31, "trial/" + std::to_string(trial)));
        EXPECT_GT(su2::logical_qubit_roundtrip({}, u, ab(0), ab(1)), 1.0 - 1e-9);
        Vector c = random_state(rng, 2);
        Vector d = random_state(rng, 2);
        su2::LogicalCode code{c(0), c(1), d(0), d(1)};
        EXPECT_GT(su2::logical_qubit_roundtrip(code, u, ab(0), ab(1)), 1.0 - 1e-9);
    }
    // the physical three-qubit state itself is not preserved
    Matrix u = su2::random_su2(5);
    Vector in = su2::encode_logical({}, 1.0, 0.0);
    EXPECT_LT(std::norm(in.dot(su2::three_fold(u) * in)), 1.0 - 1e-3);
    EXPECT_NEAR(su2::kRate, 1.0 / 3.0, 0.0);
}

TEST(Su2, Errors) {
    EXPECT_EQ(kind_of([] { su2::encode_logical({}, 1.0, 1.0); }), ErrorKind::BadNormalization);
    su2::LogicalCode bad{Complex(1.0), Complex(1.0), Complex(1.0), Complex(0.0)};
    EXPECT_EQ(kind_of([&] { su2::encode_logical(bad, 1.0, 0.0); }), ErrorKind::BadNormalization);
}

}  // namespace
}  // namespace dfscodec
