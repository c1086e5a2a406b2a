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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfscodec/isotypic.hpp"
#include "dfscodec/representation.hpp"
#include "dfscodec/rng.hpp"
#include "dfscodec/statevec.hpp"

namespace dfscodec {

/// psi = sum_lambda sqrt(d_lambda/|G|) sum_n |lambda, n, beta = n>.
inline StateVector build_fiducial(const IsotypicDecomposition &decomp) {
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(decomp.total_dim()));
    for (const auto &b : decomp.blocks) {
        if (b.multiplicity < b.carrier_dim) {
            fail(ErrorKind::RegularRepMissing, "irrep " + std::to_string(b.irrep) + " occurs " +
                                                   std::to_string(b.multiplicity) + " times, needs " +
                                                   std::to_string(b.carrier_dim));
        }
        const double w = std::sqrt(static_cast<double>(b.carrier_dim) / static_cast<double>(decomp.group_order));
        for (std::size_t n = 0; n < b.carrier_dim; ++n) {
            for (SparseVec::InnerIterator it(b.vectors[n][n]); it; ++it) {
                psi(it.index()) += w * it.value();
            }
        }
    }
    return StateVector::from_amplitudes(decomp.local_dim, decomp.power, psi / psi.norm());
}

struct TokenSet {
    UnitaryRep rep;
    std::size_t r = 0;
    StateVector fiducial;
    std::vector<StateVector> tokens;
    double gram_residue = 0.0;
    double closure_residue = 0.0;

    std::size_t order() const { return tokens.size(); }
    std::size_t local_dim() const { return rep.dim(); }
};

/// Tokens U_g^(x)r psi, certified against both token conditions.
inline TokenSet build_tokens(const UnitaryRep &rep, std::size_t r, const StateVector &fiducial,
                             const Tolerances &tol = {}) {
    if (fiducial.local_dim() != rep.dim() || fiducial.num_qudits() != r) {
        fail(ErrorKind::DimensionMismatch, "fiducial shape does not match the rep and r");
    }
    if (std::abs(fiducial.norm() - 1.0) > tol.normalization) {
        fail(ErrorKind::BadNormalization, "fiducial is not normalized");
    }
    const std::size_t order = rep.order();
    const std::size_t d = rep.dim();
    std::vector<StateVector> tokens;
    tokens.reserve(order);
    for (std::size_t g = 0; g < order; ++g) {
        StateVector t = fiducial;
        detail::apply_power(t.mutable_amplitudes(), d, r, rep.matrix(g), 0, r);
        tokens.push_back(std::move(t));
    }
    double gram = 0.0;
    for (std::size_t i = 0; i < order; ++i) {
        for (std::size_t k = i; k < order; ++k) {
            double dev = std::abs(inner(tokens[i], tokens[k]) - Complex(i == k ? 1.0 : 0.0));
            gram = std::max(gram, dev);
        }
    }
    if (gram > tol.token_gram) {
        fail(ErrorKind::ConditionOneViolated, "token Gram residue " + std::to_string(gram));
    }
    double closure = 0.0;
    const FiniteGroup &grp = rep.group();
    for (std::size_t k = 0; k < order; ++k) {
        for (std::size_t i = 0; i < order; ++i) {
            StateVector moved = tokens[i];
            detail::apply_power(moved.mutable_amplitudes(), d, r, rep.matrix(k), 0, r);
            double dev = std::abs(inner(tokens[grp.mul(k, i)], moved) - Complex(1.0));
            if (dev > tol.token_closure) {
                fail(ErrorKind::ConditionTwoViolated, "U_" + std::to_string(k) + " maps token " + std::to_string(i) +
                                                          " away from token " + std::to_string(grp.mul(k, i)) +
                                                          " (deviation " + std::to_string(dev) + ")");
            }
            closure = std::max(closure, dev);
        }
    }
    return TokenSet{rep, r, fiducial, std::move(tokens), gram, closure};
}

/// min_r, isotypic decomposition, fiducial and tokens in one call. r = 0 means
/// the smallest admissible r.
inline TokenSet make_token_set(const UnitaryRep &rep, const CharacterTable &table, std::size_t r = 0,
                               std::size_t r_max = kDefaultRMax, const Tolerances &tol = {}) {
    if (r == 0) {
        r = min_r(rep, table, r_max, tol);
    } else {
        require_faithful(rep, tol);
    }
    auto decomp = isotypic_decompose(rep, r, table, tol);
    return build_tokens(rep, r, build_fiducial(decomp), tol);
}

/// chi_phi = |G|^(-1/2) sum_g psi(g) (x) U_g^(x)m phi.
inline StateVector encode(const TokenSet &tokens, const StateVector &message) {
    if (message.local_dim() != tokens.local_dim()) {
        fail(ErrorKind::DimensionMismatch, "message dimension " + std::to_string(message.local_dim()) +
                                               " differs from rep dimension " + std::to_string(tokens.local_dim()));
    }
    const std::size_t m = message.num_qudits();
    const std::size_t d = tokens.local_dim();
    StateVector out(d, tokens.r + m);
    if (out.size() > kMaxAmplitudes) {
        fail(ErrorKind::Configuration, "encoded state too large");
    }
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(out.size()));
    for (std::size_t g = 0; g < tokens.order(); ++g) {
        Vector moved = message.amplitudes();
        detail::apply_power(moved, d, m, tokens.rep.matrix(g), 0, m);
        acc += kron(tokens.tokens[g].amplitudes(), moved);
    }
    acc /= std::sqrt(static_cast<double>(tokens.order()));
    out.mutable_amplitudes() = acc;
    return out;
}

/// Collective noise: a distribution over group elements, or one fixed element.
struct ChannelSpec {
    UnitaryRep rep;
    std::vector<double> distribution;
    std::optional<std::size_t> fixed_element;

    static ChannelSpec uniform(const UnitaryRep &rep) {
        return ChannelSpec{rep, std::vector<double>(rep.order(), 1.0 / static_cast<double>(rep.order())), std::nullopt};
    }

    static ChannelSpec fixed(const UnitaryRep &rep, std::size_t element) {
        if (element >= rep.order()) {
            fail(ErrorKind::Configuration, "channel element out of range");
        }
        return ChannelSpec{rep, {}, element};
    }

    static ChannelSpec with_distribution(const UnitaryRep &rep, std::vector<double> p) {
        if (p.size() != rep.order()) {
            fail(ErrorKind::Configuration, "distribution needs one entry per group element");
        }
        double total = 0.0;
        for (double x : p) {
            if (!(x >= 0.0)) {
                fail(ErrorKind::Configuration, "probabilities must be non-negative");
            }
            total += x;
        }
        if (std::abs(total - 1.0) > 1e-12) {
            fail(ErrorKind::Configuration, "probabilities sum to " + std::to_string(total));
        }
        return ChannelSpec{rep, std::move(p), std::nullopt};
    }
};

struct Transmission {
    StateVector state;
    std::size_t applied_element = 0;
    std::uint64_t seed = 0;
};

inline Transmission transmit(const ChannelSpec &channel, StateVector state, std::uint64_t seed) {
    if (state.local_dim() != channel.rep.dim()) {
        fail(ErrorKind::DimensionMismatch, "state and channel dimensions differ");
    }
    std::size_t g = 0;
    if (channel.fixed_element) {
        g = *channel.fixed_element;
    } else {
        Rng rng(seed);
        g = sample_index(channel.distribution, rng.uniform());
    }
    detail::apply_power(state.mutable_amplitudes(), state.local_dim(), state.num_qudits(), channel.rep.matrix(g), 0,
                        state.num_qudits());
    return Transmission{std::move(state), g, seed};
}

struct ProtocolReport {
    std::size_t m = 0;
    std::size_t r = 0;
    std::size_t rate_numerator = 0;    // m
    std::size_t rate_denominator = 0;  // m + r
    double rate = 0.0;
    std::optional<double> fidelity;
    std::size_t outcome = 0;
    std::optional<std::size_t> channel_element;
    std::optional<std::uint64_t> channel_seed;
    std::uint64_t measurement_seed = 0;
    double perp_probability = 0.0;
    std::vector<double> outcome_probabilities;  // per token, remainder excluded
};

inline ProtocolReport make_report(std::size_t m, std::size_t r) {
    ProtocolReport rep;
    rep.m = m;
    rep.r = r;
    rep.rate_numerator = m;
    rep.rate_denominator = m + r;
    rep.rate = static_cast<double>(m) / static_cast<double>(m + r);
    return rep;
}

struct DecodeResult {
    StateVector message;
    ProtocolReport report;
};

/// Measures {|psi(g_i)><psi(g_i)|} + remainder on the first r qudits, then
/// undoes the noise with U_{g_i^-1} on each message qudit separately.
inline DecodeResult decode(const TokenSet &tokens, const StateVector &received, std::uint64_t seed,
                           const Tolerances &tol = {}) {
    if (received.local_dim() != tokens.local_dim() || received.num_qudits() <= tokens.r) {
        fail(ErrorKind::DimensionMismatch, "received state has the wrong shape");
    }
    if (std::abs(received.norm() - 1.0) > tol.normalization) {
        fail(ErrorKind::BadNormalization, "received state is not normalized");
    }
    const std::size_t r = tokens.r;
    const std::size_t m = received.num_qudits() - r;
    std::vector<Projector> projectors;
    for (const auto &t : tokens.tokens) {
        projectors.push_back(Projector::rank_one(t.amplitudes()));
    }
    std::vector<std::size_t> subset(r);
    for (std::size_t q = 0; q < r; ++q) {
        subset[q] = q;
    }
    MeasurementRecord rec = project_measure(received, subset, projectors, seed, tol.projector);
    ProtocolReport report = make_report(m, r);
    report.measurement_seed = seed;
    report.perp_probability = rec.probabilities.back();
    report.outcome_probabilities.assign(rec.probabilities.begin(), rec.probabilities.end() - 1);
    if (rec.remainder) {
        fail(ErrorKind::PerpOutcome, "measurement returned the remainder outcome (probability " +
                                         std::to_string(rec.probability) + ")");
    }
    report.outcome = rec.outcome;
    Vector msg = contract_leading(rec.post_state, r, tokens.tokens[rec.outcome].amplitudes());
    msg /= msg.norm();
    StateVector out = StateVector::from_amplitudes(received.local_dim(), m, msg, 1e-6);
    const Matrix &fix = tokens.rep.matrix(tokens.rep.group().inv(rec.outcome));
    for (std::size_t q = 0; q < m; ++q) {
        apply_local(out, fix, q);
    }
    return DecodeResult{std::move(out), std::move(report)};
}

/// encode, transmit, decode; the report carries the round-trip fidelity.
inline DecodeResult roundtrip(const TokenSet &tokens, const ChannelSpec &channel, const StateVector &message,
                              std::uint64_t channel_seed, std::uint64_t measurement_seed) {
    StateVector chi = encode(tokens, message);
    Transmission tx = transmit(channel, std::move(chi), channel_seed);
    DecodeResult res = decode(tokens, tx.state, measurement_seed);
    res.report.fidelity = fidelity(res.message, message);
    res.report.channel_element = tx.applied_element;
    res.report.channel_seed = channel.fixed_element ? std::nullopt : std::optional<std::uint64_t>(channel_seed);
    return res;
}

/// Alice sends psi(g_i) (x) U_{g_i}^(x)m phi; Bob learns g_k g_i and corrects.
inline DecodeResult measure_and_realign(const TokenSet &tokens, const StateVector &message, std::size_t alice_element,
                                        const ChannelSpec &channel, std::uint64_t channel_seed,
                                        std::uint64_t measurement_seed) {
    if (alice_element >= tokens.order()) {
        fail(ErrorKind::Configuration, "element index out of range");
    }
    if (message.local_dim() != tokens.local_dim()) {
        fail(ErrorKind::DimensionMismatch, "message dimension differs from rep dimension");
    }
    StateVector moved = message;
    detail::apply_power(moved.mutable_amplitudes(), moved.local_dim(), moved.num_qudits(),
                        tokens.rep.matrix(alice_element), 0, moved.num_qudits());
    StateVector sent = tokens.tokens[alice_element].tensor(moved);
    Transmission tx = transmit(channel, std::move(sent), channel_seed);
    DecodeResult res = decode(tokens, tx.state, measurement_seed);
    res.report.fidelity = fidelity(res.message, message);
    res.report.channel_element = tx.applied_element;
    return res;
}

/// max over trials and g of |1 - <chi|U_g^(x)(r+m)|chi>| for random messages.
inline double invariance_certificate(const TokenSet &tokens, std::size_t m, std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    const std::size_t d = tokens.local_dim();
    for (std::size_t trial = 0; trial < trials; ++trial) {
        StateVector msg = StateVector::from_amplitudes(d, m, random_state(rng, ipow(d, m)));
        StateVector chi = encode(tokens, msg);
        for (std::size_t g = 0; g < tokens.order(); ++g) {
            StateVector moved = chi;
            detail::apply_power(moved.mutable_amplitudes(), d, chi.num_qudits(), tokens.rep.matrix(g), 0,
                                chi.num_qudits());
            worst = std::max(worst, std::abs(Complex(1.0) - inner(chi, moved)));
        }
    }
    return worst;
}

/// Outcome probabilities of the decode measurement on U_g^(x)(r+m) chi, without sampling.
inline std::vector<double> outcome_distribution(const TokenSet &tokens, const StateVector &state) {
    std::vector<double> p;
    for (const auto &t : tokens.tokens) {
        p.push_back(contract_leading(state, tokens.r, t.amplitudes()).squaredNorm());
    }
    return p;
}

}  // namespace dfscodec
