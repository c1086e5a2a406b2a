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
#include <set>
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

StateVector random_message(Rng &rng, std::size_t d, std::size_t m) {
    return StateVector::from_amplitudes(d, m, random_state(rng, ipow(d, m)));
}

// Groups and reps used by the protocol properties. Each pair has a small min r.
const std::vector<std::pair<std::string, std::string>> kProtocolCases = {
    {"z2", "builtin"}, {"z3", "builtin"},  {"z4", "builtin"}, {"z3", "diag:3"}, {"z5", "diag:3"},
    {"k4", "pauli"},   {"s3", "builtin"},  {"z6", "diag:3"},  {"z1", "diag:2"},
};

// ---- statevec -----------------------------------------------------------------

TEST(StateVector, BasisAndNormalization) {
    StateVector s = StateVector::basis(3, 2, 5);
    EXPECT_EQ(s.size(), 9U);
    EXPECT_EQ(s.amp(5), Complex(1.0));
    EXPECT_EQ(s.digit(5, 0), 1U);
    EXPECT_EQ(s.digit(5, 1), 2U);
    EXPECT_EQ(kind_of([] { StateVector::basis(2, 2, 4); }), ErrorKind::ShapeMismatch);
    EXPECT_EQ(kind_of([] { StateVector::from_amplitudes(2, 1, Vector::Ones(2)); }), ErrorKind::BadNormalization);
    EXPECT_EQ(kind_of([] { StateVector::from_amplitudes(2, 2, Vector::Ones(2) / std::sqrt(2.0)); }),
              ErrorKind::ShapeMismatch);
    EXPECT_EQ(kind_of([] { StateVector(2, 25); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([] { StateVector(1, 3); }), ErrorKind::ShapeMismatch);
}

TEST(StateVector, TensorMatchesKron) {
    Rng rng(11);
    StateVector a = random_message(rng, 3, 1);
    StateVector b = random_message(rng, 3, 2);
    Vector expected = oracle::kron(Vector(a.amplitudes()), Vector(b.amplitudes()));
    EXPECT_LT((a.tensor(b).amplitudes() - expected).norm(), 1e-14);
    EXPECT_EQ(kind_of([&] { a.tensor(random_message(rng, 2, 1)); }), ErrorKind::DimensionMismatch);
}

TEST(StateVector, ApplyLocalMatchesEmbeddedOperator) {
    Rng rng(7);
    for (std::size_t d : {2U, 3U}) {
        for (std::size_t target = 0; target < 3; ++target) {
            StateVector s = random_message(rng, d, 3);
            Matrix u = random_unitary(rng, d);
            Vector expected = oracle::embed(u, target, 3) * s.amplitudes();
            apply_local(s, u, target);
            EXPECT_LT((s.amplitudes() - expected).norm(), 1e-13) << "d=" << d << " target=" << target;
        }
    }
}

TEST(StateVector, ApplyCollectiveMatchesProduct) {
    Rng rng(8);
    StateVector s = random_message(rng, 2, 4);
    Matrix u = random_unitary(rng, 2);
    Vector expected = oracle::embed(u, 0, 4) * oracle::embed(u, 2, 4) * oracle::embed(u, 3, 4) * s.amplitudes();
    std::vector<std::size_t> targets{3, 0, 2};
    apply_collective(s, u, targets);
    EXPECT_LT((s.amplitudes() - expected).norm(), 1e-13);

    StateVector t = random_message(rng, 3, 3);
    Matrix v = random_unitary(rng, 3);
    Vector full = oracle::tensor_power(v, 3) * t.amplitudes();
    apply_collective_range(t, v, 0, 3);
    EXPECT_LT((t.amplitudes() - full).norm(), 1e-13);
}

TEST(StateVector, ApplyControlledMatchesDenseOperator) {
    Rng rng(9);
    StateVector s = random_message(rng, 2, 3);
    Matrix u = random_unitary(rng, 2);
    // control qubit 2 on value 1, target qubit 0
    oracle::Mat p1 = oracle::Mat::Zero(2, 2);
    p1(1, 1) = 1.0;
    const oracle::Mat id = oracle::Mat::Identity(2, 2);
    const oracle::Mat p0 = id - p1;
    oracle::Mat dense = oracle::kron(oracle::kron(id, id), p0) + oracle::kron(oracle::kron(u, id), p1);
    Vector expected = dense * s.amplitudes();
    std::vector<Control> controls{{2, 1}};
    std::vector<std::size_t> targets{0};
    apply_controlled(s, controls, u, targets);
    EXPECT_LT((s.amplitudes() - expected).norm(), 1e-13);
}

TEST(StateVector, TwoQuditBlockOrder) {
    // CNOT with target list {2, 0}: the first listed target is the most significant.
    Matrix cnot = Matrix::Zero(4, 4);
    cnot(0, 0) = cnot(1, 1) = cnot(2, 3) = cnot(3, 2) = 1.0;
    StateVector s = StateVector::basis(2, 3, 0b001);  // qubit 2 set
    std::vector<std::size_t> targets{2, 0};
    apply_controlled(s, {}, cnot, targets);
    EXPECT_NEAR(std::abs(s.amp(0b101)), 1.0, 1e-15);
}

TEST(StateVector, TargetErrors) {
    StateVector s(2, 3);
    Matrix x = Matrix::Zero(2, 2);
    x(0, 1) = x(1, 0) = 1.0;
    std::vector<std::size_t> dup{1, 1};
    std::vector<std::size_t> one{1};
    EXPECT_EQ(kind_of([&] { apply_local(s, x, 3); }), ErrorKind::BadTarget);
    EXPECT_EQ(kind_of([&] { apply_collective(s, x, dup); }), ErrorKind::DuplicateTargets);
    std::vector<Control> overlap{{1, 1}};
    EXPECT_EQ(kind_of([&] { apply_controlled(s, overlap, x, one); }), ErrorKind::ControlTargetOverlap);
    std::vector<Control> twice{{0, 1}, {0, 0}};
    EXPECT_EQ(kind_of([&] { apply_controlled(s, twice, x, one); }), ErrorKind::DuplicateTargets);
    std::vector<Control> bad_value{{0, 2}};
    EXPECT_EQ(kind_of([&] { apply_controlled(s, bad_value, x, one); }), ErrorKind::BadTarget);
    EXPECT_EQ(kind_of([&] { apply_local(s, Matrix::Identity(3, 3), 0); }), ErrorKind::ShapeMismatch);
    EXPECT_EQ(kind_of([&] { apply_local(s, Matrix::Ones(2, 2), 0); }), ErrorKind::InvalidRepresentation);
}

TEST(StateVector, InnerAndFidelity) {
    StateVector a = StateVector::basis(2, 1, 0);
    Vector plus = Vector::Ones(2) / std::sqrt(2.0);
    StateVector b = StateVector::from_amplitudes(2, 1, plus);
    EXPECT_NEAR(fidelity(a, b), 0.5, 1e-15);
    EXPECT_EQ(kind_of([&] { inner(a, StateVector(2, 2)); }), ErrorKind::ShapeMismatch);
}

TEST(ProjectMeasure, ProbabilitiesAndPostState) {
    // |psi> = (|00> + |01> + |10>) / sqrt(3); measure qubit 1 in {|0>}, remainder is |1>.
    Vector amps = Vector::Zero(4);
    amps(0) = amps(1) = amps(2) = 1.0 / std::sqrt(3.0);
    StateVector s = StateVector::from_amplitudes(2, 2, amps);
    Vector zero = Vector::Zero(2);
    zero(0) = 1.0;
    std::vector<Projector> ps{Projector::rank_one(zero)};
    std::vector<std::size_t> subset{1};
    MeasurementRecord rec = project_measure(s, subset, ps, 1);
    ASSERT_EQ(rec.probabilities.size(), 2U);
    EXPECT_NEAR(rec.probabilities[0], 2.0 / 3.0, 1e-14);
    EXPECT_NEAR(rec.probabilities[1], 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(rec.post_state.norm(), 1.0, 1e-14);
    if (rec.remainder) {
        EXPECT_EQ(rec.outcome, 1U);
        EXPECT_NEAR(std::abs(rec.post_state.amp(1)), 1.0, 1e-14);
    } else {
        EXPECT_NEAR(std::abs(rec.post_state.amp(0)), std::sqrt(0.5), 1e-14);
        EXPECT_NEAR(std::abs(rec.post_state.amp(2)), std::sqrt(0.5), 1e-14);
    }
}

TEST(ProjectMeasure, SeedDeterminesOutcome) {
    Rng rng(3);
    StateVector s = random_message(rng, 2, 3);
    auto ps = computational_projectors(2, 2);
    std::vector<std::size_t> subset{2, 0};
    std::set<std::size_t> seen;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        MeasurementRecord a = project_measure(s, subset, ps, seed);
        MeasurementRecord b = project_measure(s, subset, ps, seed);
        EXPECT_EQ(a.outcome, b.outcome);
        EXPECT_EQ(a.post_state.amplitudes(), b.post_state.amplitudes());
        EXPECT_FALSE(a.remainder);
        seen.insert(a.outcome);
    }
    EXPECT_GT(seen.size(), 1U);
}

TEST(ProjectMeasure, ComputationalProbabilitiesMatchAmplitudes) {
    Rng rng(4);
    StateVector s = random_message(rng, 3, 2);
    auto ps = computational_projectors(3, 1);
    std::vector<std::size_t> subset{1};
    MeasurementRecord rec = project_measure(s, subset, ps, 0);
    for (std::size_t k = 0; k < 3; ++k) {
        double p = 0.0;
        for (std::size_t a = 0; a < 3; ++a) {
            p += std::norm(s.amp(3 * a + k));
        }
        EXPECT_NEAR(rec.probabilities[k], p, 1e-14);
    }
    EXPECT_NEAR(rec.probabilities[3], 0.0, 1e-14);
}

TEST(ProjectMeasure, Errors) {
    StateVector s(2, 2);
    Vector zero = Vector::Zero(2);
    zero(0) = 1.0;
    Vector plus = Vector::Ones(2) / std::sqrt(2.0);
    std::vector<Projector> overlapping{Projector::rank_one(zero), Projector::rank_one(plus)};
    std::vector<std::size_t> subset{0};
    EXPECT_EQ(kind_of([&] { project_measure(s, subset, overlapping, 0); }), ErrorKind::NonOrthogonalProjectors);
    std::vector<Projector> wrong{Projector::rank_one(Vector::Ones(4) / 2.0)};
    EXPECT_EQ(kind_of([&] { project_measure(s, subset, wrong, 0); }), ErrorKind::ShapeMismatch);
    std::vector<std::size_t> none;
    std::vector<Projector> ok{Projector::rank_one(zero)};
    EXPECT_EQ(kind_of([&] { project_measure(s, none, ok, 0); }), ErrorKind::BadTarget);
}

TEST(ContractLeading, MatchesDenseContraction) {
    Rng rng(5);
    StateVector s = random_message(rng, 3, 3);
    Vector v = random_state(rng, 9);
    Vector expected = Vector::Zero(3);
    for (std::size_t c = 0; c < 3; ++c) {
        Complex acc = 0.0;
        for (std::size_t row = 0; row < 9; ++row) {
            acc += std::conj(v(static_cast<Eigen::Index>(row))) * s.amp(row * 3 + c);
        }
        expected(static_cast<Eigen::Index>(c)) = acc;
    }
    EXPECT_LT((contract_leading(s, 2, v) - expected).norm(), 1e-14);
    EXPECT_EQ(kind_of([&] { contract_leading(s, 1, v); }), ErrorKind::ShapeMismatch);
}

// ---- dfs_codec fixtures ----------------------------------------------------------

TEST(Tokens, KleinPauliTokens) {
    auto k = setup("k4", "pauli");
    TokenSet ts = make_token_set(k.rep, k.table);
    ASSERT_EQ(ts.r, 2U);
    const double h = 1.0 / std::sqrt(2.0);
    // rows: amplitudes on |00>, |01>, |10>, |11>
    const std::vector<std::vector<double>> expected = {
        {h, h, 0, 0},    // |0+>
        {0, 0, h, h},    // |1+>
        {0, 0, -h, h},   // -|1->
        {h, -h, 0, 0},   // |0->
    };
    for (std::size_t g = 0; g < 4; ++g) {
        for (std::size_t i = 0; i < 4; ++i) {
            EXPECT_NEAR(std::abs(ts.tokens[g].amp(i) - Complex(expected[g][i])), 0.0, 1e-14) << g << "," << i;
        }
    }
}

TEST(Tokens, CyclicThreeFiducial) {
    auto z = setup("z3");
    TokenSet ts = make_token_set(z.rep, z.table);
    ASSERT_EQ(ts.r, 2U);
    const double a = 1.0 / std::sqrt(3.0);
    EXPECT_NEAR(std::abs(ts.fiducial.amp(0) - a), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ts.fiducial.amp(1) - a), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ts.fiducial.amp(3) - a), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ts.fiducial.amp(2)), 0.0, 1e-14);
}

TEST(Tokens, CyclicStaircaseFiducial) {
    for (std::size_t n : {4U, 5U, 8U}) {
        auto z = setup("z" + std::to_string(n));
        TokenSet ts = make_token_set(z.rep, z.table);
        ASSERT_EQ(ts.r, n - 1);
        const double a = 1.0 / std::sqrt(static_cast<double>(n));
        for (std::size_t i = 0; i < ts.fiducial.size(); ++i) {
            // nonzero exactly on 0...01...1 with k trailing ones, k = 0..n-1
            const bool stair = ((i + 1) & i) == 0;
            EXPECT_NEAR(std::abs(ts.fiducial.amp(i)), stair ? a : 0.0, 1e-14) << "n=" << n << " i=" << i;
        }
    }
}

TEST(Tokens, OrthonormalAndClosed) {
    for (const auto &[g, r] : kProtocolCases) {
        auto s = setup(g, r);
        TokenSet ts = make_token_set(s.rep, s.table);
        std::vector<oracle::Vec> toks;
        for (const auto &t : ts.tokens) {
            toks.push_back(t.amplitudes());
        }
        for (std::size_t i = 0; i < toks.size(); ++i) {
            for (std::size_t j = 0; j < toks.size(); ++j) {
                EXPECT_NEAR(std::abs(toks[i].dot(toks[j]) - (i == j ? 1.0 : 0.0)), 0.0, 1e-10) << g;
            }
        }
        // U_k^(x)r psi(g_i) = psi(g_k g_i)
        for (std::size_t k = 0; k < ts.order(); ++k) {
            oracle::Mat big = oracle::tensor_power(s.rep.matrix(k), ts.r);
            for (std::size_t i = 0; i < ts.order(); ++i) {
                oracle::Vec moved = big * toks[i];
                EXPECT_LT((moved - toks[s.group->mul(k, i)]).norm(), 1e-10) << g << " k=" << k << " i=" << i;
            }
        }
    }
}

TEST(Tokens, BuildTokensValidatesFiducial) {
    auto z = setup("z3");
    EXPECT_EQ(kind_of([&] { build_tokens(z.rep, 2, StateVector(2, 3)); }), ErrorKind::DimensionMismatch);
    // |00> is fixed by every U_g, so the tokens coincide.
    EXPECT_EQ(kind_of([&] { build_tokens(z.rep, 2, StateVector::basis(2, 2, 0)); }),
              ErrorKind::ConditionOneViolated);
}

// ---- protocol properties ----------------------------------------------------------

TEST(Protocol, RoundtripExactForEveryChannelElement) {
    Rng rng(2026);
    for (const auto &[g, r] : kProtocolCases) {
        auto s = setup(g, r);
        TokenSet ts = make_token_set(s.rep, s.table);
        const std::size_t d = s.rep.dim();
        for (std::size_t trial = 0; trial < 20; ++trial) {
            const std::size_t m = 1 + trial % 2;
            StateVector msg = random_message(rng, d, m);
            for (std::size_t k = 0; k < ts.order(); ++k) {
                DecodeResult res = roundtrip(ts, ChannelSpec::fixed(s.rep, k), msg, 0, trial * 31 + k);
                EXPECT_NEAR(*res.report.fidelity, 1.0, 1e-10) << g << " k=" << k;
                EXPECT_EQ(res.report.channel_element, k);
            }
        }
    }
}

TEST(Protocol, RoundtripUnderRandomDistributions) {
    Rng rng(99);
    auto s = setup("s3");
    TokenSet ts = make_token_set(s.rep, s.table);
    for (std::size_t trial = 0; trial < 5; ++trial) {
        ChannelSpec ch = ChannelSpec::with_distribution(s.rep, random_distribution(rng, ts.order()));
        StateVector msg = random_message(rng, 2, 2);
        DecodeResult res = roundtrip(ts, ch, msg, 100 + trial, 200 + trial);
        EXPECT_NEAR(*res.report.fidelity, 1.0, 1e-10);
        EXPECT_TRUE(res.report.channel_element.has_value());
        EXPECT_EQ(res.report.channel_seed, std::optional<std::uint64_t>(100 + trial));
    }
}

TEST(Protocol, OutcomesAreUniformBeforeTheChannel) {
    Rng rng(5);
    for (const auto &[g, r] : kProtocolCases) {
        auto s = setup(g, r);
        TokenSet ts = make_token_set(s.rep, s.table);
        StateVector chi = encode(ts, random_message(rng, s.rep.dim(), 2));
        auto p = outcome_distribution(ts, chi);
        for (double x : p) {
            EXPECT_NEAR(x, 1.0 / static_cast<double>(ts.order()), 1e-10) << g;
        }
    }
}

TEST(Protocol, EncodeMatchesDenseOracle) {
    Rng rng(6);
    for (const auto &[g, r] : kProtocolCases) {
        auto s = setup(g, r);
        TokenSet ts = make_token_set(s.rep, s.table);
        StateVector msg = random_message(rng, s.rep.dim(), 2);
        std::vector<oracle::Vec> toks;
        for (const auto &t : ts.tokens) {
            toks.push_back(t.amplitudes());
        }
        oracle::Vec expected = oracle::encode(toks, s.rep.matrices(), msg.amplitudes(), 2);
        EXPECT_LT((encode(ts, msg).amplitudes() - expected).norm(), 1e-12) << g;
    }
}

TEST(Protocol, CodeProjectorCommutesWithCollectiveAction) {
    // P_G = |G|^-1 sum_g U_g^(x)n, projector onto the invariant subspace, on r + 2 qudits.
    // An even message length keeps n a linear power for the projective K4 rep.
    for (const auto &[g, r] : kProtocolCases) {
        auto s = setup(g, r);
        TokenSet ts = make_token_set(s.rep, s.table);
        const std::size_t n = ts.r + 2;
        oracle::Mat p = oracle::Mat::Zero(static_cast<Eigen::Index>(ipow(s.rep.dim(), n)),
                                          static_cast<Eigen::Index>(ipow(s.rep.dim(), n)));
        for (const auto &u : s.rep.matrices()) {
            p += oracle::tensor_power(u, n);
        }
        p /= static_cast<double>(ts.order());
        EXPECT_LT(oracle::max_abs(p * p - p), 1e-10) << g;
        for (const auto &u : s.rep.matrices()) {
            oracle::Mat big = oracle::tensor_power(u, n);
            EXPECT_LT(oracle::max_abs(big * p - p * big), 1e-10) << g;
        }
        // every codeword lies in the invariant subspace
        Rng rng(17);
        StateVector chi = encode(ts, random_message(rng, s.rep.dim(), 2));
        EXPECT_LT((p * chi.amplitudes() - chi.amplitudes()).norm(), 1e-10) << g;
    }
}

TEST(Protocol, EveryForcedOutcomeRecoversMessage) {
    Rng rng(12);
    auto s = setup("k4", "pauli");
    TokenSet ts = make_token_set(s.rep, s.table);
    StateVector msg = random_message(rng, 2, 3);
    StateVector chi = encode(ts, msg);
    std::set<std::size_t> outcomes;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
        DecodeResult res = decode(ts, chi, seed);
        EXPECT_NEAR(fidelity(res.message, msg), 1.0, 1e-10);
        outcomes.insert(res.report.outcome);
    }
    EXPECT_EQ(outcomes.size(), 4U);
}

TEST(Protocol, MeasureAndRealign) {
    Rng rng(13);
    for (const std::string g : {"s3", "k4", "z4"}) {
        auto s = setup(g);
        TokenSet ts = make_token_set(s.rep, s.table);
        StateVector msg = random_message(rng, s.rep.dim(), 2);
        for (std::size_t i = 0; i < ts.order(); ++i) {
            for (std::size_t k = 0; k < ts.order(); ++k) {
                DecodeResult res = measure_and_realign(ts, msg, i, ChannelSpec::fixed(s.rep, k), 0, i * 7 + k);
                EXPECT_EQ(res.report.outcome, s.group->mul(k, i)) << g << " i=" << i << " k=" << k;
                EXPECT_NEAR(*res.report.fidelity, 1.0, 1e-10);
            }
        }
        EXPECT_EQ(kind_of([&] { measure_and_realign(ts, msg, ts.order(), ChannelSpec::uniform(s.rep), 0, 0); }),
                  ErrorKind::Configuration);
    }
}

TEST(Protocol, InvarianceCertificate) {
    for (const auto &[g, r] : kProtocolCases) {
        auto s = setup(g, r);
        TokenSet ts = make_token_set(s.rep, s.table);
        EXPECT_LT(invariance_certificate(ts, 2, 3, 1), 1e-10) << g;
    }
}

TEST(Protocol, RateArithmetic) {
    ProtocolReport r = make_report(5, 3);
    EXPECT_EQ(r.rate_numerator, 5U);
    EXPECT_EQ(r.rate_denominator, 8U);
    EXPECT_DOUBLE_EQ(r.rate, 0.625);
    auto s = setup("z8");
    TokenSet ts = make_token_set(s.rep, s.table);
    DecodeResult res = roundtrip(ts, ChannelSpec::fixed(s.rep, 3), StateVector::basis(2, 1, 1), 0, 0);
    EXPECT_EQ(res.report.rate_denominator, 8U);
    EXPECT_DOUBLE_EQ(res.report.rate, 1.0 / 8.0);
}

TEST(Protocol, Errors) {
    auto s = setup("z3");
    TokenSet ts = make_token_set(s.rep, s.table);
    EXPECT_EQ(kind_of([&] { encode(ts, StateVector(3, 1)); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([&] { decode(ts, StateVector(2, 2), 0); }), ErrorKind::DimensionMismatch);
    EXPECT_EQ(kind_of([&] { ChannelSpec::fixed(s.rep, 3); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([&] { ChannelSpec::with_distribution(s.rep, {0.5, 0.5}); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([&] { ChannelSpec::with_distribution(s.rep, {0.5, 0.7, -0.2}); }), ErrorKind::Configuration);
    EXPECT_EQ(kind_of([&] { transmit(ChannelSpec::uniform(s.rep), StateVector(3, 1), 0); }),
              ErrorKind::DimensionMismatch);
    // |10> on the ancilla is orthogonal to every token.
    StateVector bad = StateVector::basis(2, 2, 0b10).tensor(StateVector::basis(2, 1, 0));
    EXPECT_EQ(kind_of([&] { decode(ts, bad, 0); }), ErrorKind::PerpOutcome);
}

TEST(Protocol, UnencodedMessageIsCorrupted) {
    auto s = setup("z3");
    Vector plus = Vector::Ones(2) / std::sqrt(2.0);
    StateVector msg = StateVector::from_amplitudes(2, 1, plus);
    Transmission tx = transmit(ChannelSpec::fixed(s.rep, 1), msg, 0);
    EXPECT_LT(fidelity(tx.state, msg), 1.0 - 1e-3);
    EXPECT_NEAR(fidelity(tx.state, msg), 0.25, 1e-12);  // |1 + omega|^2 / 4
}

TEST(Protocol, TransmitIsSeeded) {
    auto s = setup("s3");
    StateVector msg = StateVector::basis(2, 1, 0);
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        EXPECT_EQ(transmit(ChannelSpec::uniform(s.rep), msg, seed).applied_element,
                  transmit(ChannelSpec::uniform(s.rep), msg, seed).applied_element);
    }
}

}  // namespace
}  // namespace dfscodec
