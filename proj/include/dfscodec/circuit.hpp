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
#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dfscodec/codec.hpp"
#include "dfscodec/group.hpp"
#include "dfscodec/representation.hpp"
#include "dfscodec/statevec.hpp"

namespace dfscodec {

enum class GateKind {
    Single,        // U on one qubit
    Controlled,    // U on one qubit, conditioned on a control pattern
    Cnot,          // X on one qubit, one control
    FlipLayer,     // X on a subset of the label qubits, costed as one fused layer
    ToffoliChain,  // compute/uncompute of the multi-controlled condition; cost only
};

inline const char *to_string(GateKind k) {
    switch (k) {
        case GateKind::Single: return "single";
        case GateKind::Controlled: return "controlled";
        case GateKind::Cnot: return "cnot";
        case GateKind::FlipLayer: return "flip_layer";
        case GateKind::ToffoliChain: return "toffoli_chain";
    }
    return "unknown";
}

struct Gate {
    GateKind kind = GateKind::Single;
    std::vector<Control> controls;
    std::vector<std::size_t> targets;  // acted-on qubits (flipped qubits for a flip layer)
    std::vector<std::size_t> span;     // qubits occupied for layering; defaults to targets
    Matrix unitary;                    // 2x2 for single and controlled gates
    std::size_t cost = 1;

    std::vector<std::size_t> writes() const { return span.empty() ? targets : span; }

    std::vector<std::size_t> reads() const {
        std::vector<std::size_t> out;
        for (const auto &c : controls) {
            out.push_back(c.qudit);
        }
        return out;
    }
};

/// Qubit roles. control[b] is the qubit holding bit weight 2^b of an element label.
struct Layout {
    std::size_t num_qubits = 0;
    std::vector<std::size_t> control;
    std::vector<std::size_t> token;
    std::vector<std::size_t> message;
};

struct CircuitPlan {
    std::string name;
    Layout layout;
    std::vector<Gate> gates;
    std::size_t total_count = 0;
    std::size_t logical_depth = 0;
    /// Label (integer written on the control qubits) of every group element.
    std::vector<std::size_t> labels;
    /// Flip-layer bookkeeping of the general path.
    std::size_t physical_x_count = 0;
    std::size_t unfused_x_count = 0;
    bool formula_applicable = false;
};

namespace detail {

inline Matrix pauli_x() {
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    return x;
}

inline Matrix hadamard() {
    Matrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

inline Matrix phase_gate(double angle) {
    Matrix p = Matrix::Identity(2, 2);
    p(1, 1) = std::polar(1.0, angle);
    return p;
}

inline Gate controlled_gate(std::vector<Control> controls, std::size_t target, Matrix u) {
    Gate g;
    g.kind = controls.empty() ? GateKind::Single : GateKind::Controlled;
    g.controls = std::move(controls);
    g.targets = {target};
    g.unitary = std::move(u);
    return g;
}

inline Gate cnot(std::size_t control, std::size_t target) {
    Gate g;
    g.kind = GateKind::Cnot;
    g.controls = {{control, 1}};
    g.targets = {target};
    g.unitary = pauli_x();
    return g;
}

inline void require_qubits(const UnitaryRep &rep) {
    if (rep.dim() != 2) {
        fail(ErrorKind::UnsupportedDimension,
             "gate-level synthesis needs qubits (d = 2); d = " + std::to_string(rep.dim()) + " is counted symbolically");
    }
}

inline Layout default_w_layout(std::size_t bits, std::size_t m) {
    Layout l;
    l.num_qubits = bits + m;
    for (std::size_t b = 0; b < bits; ++b) {
        l.control.push_back(bits - 1 - b);
    }
    for (std::size_t k = 0; k < m; ++k) {
        l.message.push_back(bits + k);
    }
    return l;
}

inline void check_layout(const Layout &l, std::size_t bits, std::size_t m) {
    if (l.control.size() != bits || l.message.size() != m) {
        fail(ErrorKind::Configuration, "layout needs " + std::to_string(bits) + " control and " + std::to_string(m) +
                                           " message qubits");
    }
    std::vector<bool> seen(l.num_qubits, false);
    auto mark = [&](std::size_t q) {
        if (q >= l.num_qubits) {
            fail(ErrorKind::BadTarget, "layout qubit out of range");
        }
        if (seen[q]) {
            fail(ErrorKind::ControlTargetOverlap, "layout assigns qubit " + std::to_string(q) + " twice");
        }
        seen[q] = true;
    };
    for (std::size_t q : l.control) {
        mark(q);
    }
    for (std::size_t q : l.message) {
        mark(q);
    }
}

}  // namespace detail

/// Greedy layering: a gate starts once every qubit it writes is free of
/// earlier reads and writes and every qubit it reads is free of earlier
/// writes. Gates that only share control qubits overlap. Duration = cost.
inline std::size_t logical_depth(const CircuitPlan &plan) {
    std::map<std::size_t, std::size_t> last_write;
    std::map<std::size_t, std::size_t> last_read;
    std::size_t depth = 0;
    for (const auto &g : plan.gates) {
        std::size_t start = 0;
        for (std::size_t q : g.writes()) {
            start = std::max({start, last_write[q], last_read[q]});
        }
        for (std::size_t q : g.reads()) {
            start = std::max(start, last_write[q]);
        }
        std::size_t end = start + g.cost;
        for (std::size_t q : g.writes()) {
            last_write[q] = end;
        }
        for (std::size_t q : g.reads()) {
            last_read[q] = std::max(last_read[q], end);
        }
        depth = std::max(depth, end);
    }
    return depth;
}

inline void finalize(CircuitPlan &plan) {
    plan.total_count = 0;
    for (const auto &g : plan.gates) {
        if (g.cost < 1) {
            fail(ErrorKind::Configuration, "gate with zero cost in plan " + plan.name);
        }
        plan.total_count += g.cost;
    }
    plan.logical_depth = logical_depth(plan);
}

/// Runs the plan on a qubit state. Toffoli-chain markers carry no action: the
/// controlled gates they guard already hold the full control pattern.
inline void simulate(const CircuitPlan &plan, StateVector &state) {
    if (state.local_dim() != 2 || state.num_qudits() != plan.layout.num_qubits) {
        fail(ErrorKind::ShapeMismatch, "state does not match the plan layout");
    }
    const Matrix x = detail::pauli_x();
    for (const auto &g : plan.gates) {
        switch (g.kind) {
            case GateKind::Single: apply_local(state, g.unitary, g.targets.at(0)); break;
            case GateKind::Controlled:
            case GateKind::Cnot: apply_controlled(state, g.controls, g.unitary, g.targets); break;
            case GateKind::FlipLayer:
                for (std::size_t q : g.targets) {
                    apply_local(state, x, q);
                }
                break;
            case GateKind::ToffoliChain: break;
        }
    }
}

inline CircuitPlan inverse(const CircuitPlan &plan) {
    CircuitPlan out = plan;
    out.name = plan.name + "^-1";
    out.gates.assign(plan.gates.rbegin(), plan.gates.rend());
    for (auto &g : out.gates) {
        if (g.unitary.size() > 0) {
            g.unitary = g.unitary.adjoint().eval();
        }
    }
    finalize(out);
    return out;
}

/// Concatenation on a shared layout.
inline CircuitPlan append(const CircuitPlan &first, const CircuitPlan &second) {
    if (first.layout.num_qubits != second.layout.num_qubits) {
        fail(ErrorKind::ShapeMismatch, "plans act on different registers");
    }
    CircuitPlan out = first;
    out.name = first.name + "+" + second.name;
    out.gates.insert(out.gates.end(), second.gates.begin(), second.gates.end());
    finalize(out);
    return out;
}

/// W = sum_g |g><g| (x) U_g^(x)m with |G| blocks. Each block flips the label
/// qubits so that g reads as all ones (fused with the previous block's flips),
/// charges the Toffoli chain of an r'-controlled gate, and applies m
/// r'-controlled U_g gates, one per message qubit.
inline CircuitPlan synth_W_general(const UnitaryRep &rep, std::size_t m, std::optional<Layout> layout = std::nullopt) {
    detail::require_qubits(rep);
    const std::size_t order = rep.order();
    const std::size_t rp = ceil_log2(order);
    CircuitPlan plan;
    plan.name = "W_general";
    plan.layout = layout ? *layout : detail::default_w_layout(rp, m);
    detail::check_layout(plan.layout, rp, m);
    const auto &ctrl = plan.layout.control;
    const std::size_t all_ones = (std::size_t{1} << rp) - 1;
    std::size_t flipped = 0;  // bits currently inverted
    for (std::size_t g = 0; g < order; ++g) {
        plan.labels.push_back(g);
        const std::size_t want = ~g & all_ones;
        const std::size_t change = flipped ^ want;
        if (rp > 0) {
            Gate layer;
            layer.kind = GateKind::FlipLayer;
            for (std::size_t b = 0; b < rp; ++b) {
                if ((change >> b) & 1U) {
                    layer.targets.push_back(ctrl[b]);
                }
            }
            layer.span = ctrl;
            layer.cost = rp;
            plan.physical_x_count += layer.targets.size();
            plan.gates.push_back(std::move(layer));
            flipped = want;
        }
        if (rp >= 3) {
            Gate chain;
            chain.kind = GateKind::ToffoliChain;
            chain.span = ctrl;
            chain.cost = 40 * (rp - 2);
            plan.gates.push_back(std::move(chain));
        }
        std::vector<Control> controls;
        for (std::size_t q : ctrl) {
            controls.push_back({q, 1});
        }
        for (std::size_t t : plan.layout.message) {
            plan.gates.push_back(detail::controlled_gate(controls, t, rep.matrix(g)));
        }
        plan.unfused_x_count += 2 * static_cast<std::size_t>(std::popcount(want));
    }
    if (flipped != 0) {
        Gate layer;
        layer.kind = GateKind::FlipLayer;
        for (std::size_t b = 0; b < rp; ++b) {
            if ((flipped >> b) & 1U) {
                layer.targets.push_back(ctrl[b]);
            }
        }
        layer.span = ctrl;
        layer.cost = rp;
        plan.physical_x_count += layer.targets.size();
        plan.gates.push_back(std::move(layer));
    }
    plan.formula_applicable = order == (std::size_t{1} << rp) && rp >= 2;
    finalize(plan);
    return plan;
}

/// |G|(41 r' - 80 + m); negative values are returned as such.
inline long long general_count_formula(std::size_t order, std::size_t m) {
    auto rp = static_cast<long long>(ceil_log2(order));
    return static_cast<long long>(order) * (41 * rp - 80 + static_cast<long long>(m));
}

inline long long general_depth_formula(std::size_t order) {
    auto rp = static_cast<long long>(ceil_log2(order));
    return static_cast<long long>(order) * (41 * rp - 80 + 1);
}

/// Bits of the label field of each generator, most significant generator first.
inline std::vector<std::size_t> abelian_label_bits(const AbelianDecomposition &dec) {
    std::vector<std::size_t> bits;
    for (std::size_t L : dec.orders) {
        bits.push_back(std::max<std::size_t>(1, ceil_log2(L)));
    }
    return bits;
}

/// W for an abelian group written as prod_j <g_j>: the label is the
/// concatenated binary exponents (first generator most significant) and each
/// generator contributes one singly-controlled U_{g_j}^(2^b) per label bit and
/// message qubit.
inline CircuitPlan synth_W_abelian(const UnitaryRep &rep, const AbelianDecomposition &dec, std::size_t m,
                                   std::optional<Layout> layout = std::nullopt, const Tolerances &tol = {}) {
    detail::require_qubits(rep);
    const FiniteGroup &g = rep.group();
    auto coords = abelian_coordinates(g, dec);
    const auto bits = abelian_label_bits(dec);
    std::size_t total_bits = 0;
    for (std::size_t b : bits) {
        total_bits += b;
    }
    std::vector<std::size_t> offset(bits.size(), 0);
    for (std::size_t j = bits.size(); j-- > 0;) {
        offset[j] = (j + 1 < bits.size()) ? offset[j + 1] + bits[j + 1] : 0;
    }
    for (std::size_t x = 0; x < g.order; ++x) {
        Matrix prod = Matrix::Identity(2, 2);
        for (std::size_t j = 0; j < bits.size(); ++j) {
            prod = prod * matrix_power(rep.matrix(dec.generators[j]), coords[x][j]);
        }
        if (max_abs(prod - rep.matrix(x)) > tol.homomorphism) {
            fail(ErrorKind::InvalidDecomposition, "product of generator matrices differs from U_" + std::to_string(x) +
                                                      " (a projective phase); reorder the generators");
        }
    }
    CircuitPlan plan;
    plan.name = "W_abelian";
    plan.layout = layout ? *layout : detail::default_w_layout(total_bits, m);
    detail::check_layout(plan.layout, total_bits, m);
    for (std::size_t x = 0; x < g.order; ++x) {
        std::size_t label = 0;
        for (std::size_t j = 0; j < bits.size(); ++j) {
            label += coords[x][j] << offset[j];
        }
        plan.labels.push_back(label);
    }
    // The last generator acts first so the operator is U_{g_1}^l1 ... U_{g_k}^lk.
    for (std::size_t j = bits.size(); j-- > 0;) {
        for (std::size_t b = 0; b < bits[j]; ++b) {
            Matrix u = matrix_power(rep.matrix(dec.generators[j]), std::size_t{1} << b);
            std::size_t cq = plan.layout.control[offset[j] + b];
            for (std::size_t t : plan.layout.message) {
                plan.gates.push_back(detail::controlled_gate({{cq, 1}}, t, u));
            }
        }
    }
    finalize(plan);
    return plan;
}

/// Bound sum_j L_j (40 (log2 L_j - 2) + m). The raw bound goes negative for
/// L_j < 4; the clamped variant replaces the Toffoli term by max(0, .).
struct AbelianBound {
    long long raw = 0;
    long long clamped = 0;
};

inline AbelianBound abelian_count_bound(const AbelianDecomposition &dec, std::size_t m) {
    AbelianBound b;
    const auto bits = abelian_label_bits(dec);
    for (std::size_t j = 0; j < dec.orders.size(); ++j) {
        auto L = static_cast<long long>(dec.orders[j]);
        long long toffoli = 40 * (static_cast<long long>(bits[j]) - 2);
        b.raw += L * (toffoli + static_cast<long long>(m));
        b.clamped += L * (std::max(0LL, toffoli) + static_cast<long long>(m));
    }
    return b;
}

/// Whether element 1 generates the group with g = 1^g.
inline bool is_residue_cyclic(const FiniteGroup &g) {
    for (std::size_t a = 0; a < g.order; ++a) {
        for (std::size_t b = 0; b < g.order; ++b) {
            if (g.mul(a, b) != (a + b) % g.order) {
                return false;
            }
        }
    }
    return true;
}

/// W for Z_N: control bit b applies U^(2^b) to every message qubit.
inline CircuitPlan synth_W_cyclic(const UnitaryRep &rep, std::size_t m, std::optional<Layout> layout = std::nullopt,
                                  const Tolerances &tol = {}) {
    detail::require_qubits(rep);
    const FiniteGroup &g = rep.group();
    if (!is_residue_cyclic(g) || g.order < 2) {
        fail(ErrorKind::Configuration, "cyclic synthesis needs Z_N (N >= 2) labeled by residues");
    }
    const Matrix &u = rep.matrix(1);
    for (std::size_t j = 0; j < g.order; ++j) {
        if (max_abs(matrix_power(u, j) - rep.matrix(j)) > tol.homomorphism) {
            fail(ErrorKind::InvalidDecomposition, "U_" + std::to_string(j) + " differs from U_1^" + std::to_string(j));
        }
    }
    const std::size_t rp = ceil_log2(g.order);
    CircuitPlan plan;
    plan.name = "W_cyclic";
    plan.layout = layout ? *layout : detail::default_w_layout(rp, m);
    detail::check_layout(plan.layout, rp, m);
    for (std::size_t x = 0; x < g.order; ++x) {
        plan.labels.push_back(x);
    }
    for (std::size_t b = 0; b < rp; ++b) {
        Matrix ub = matrix_power(u, std::size_t{1} << b);
        for (std::size_t t : plan.layout.message) {
            plan.gates.push_back(detail::controlled_gate({{plan.layout.control[b], 1}}, t, ub));
        }
    }
    finalize(plan);
    return plan;
}

/// Layout of the cyclic encoder: [control r'][token N-1][message m]. The
/// control register holds the label little-endian (first qubit = bit 0).
inline Layout cyclic_encoder_layout(std::size_t n, std::size_t m) {
    const std::size_t rp = ceil_log2(n);
    Layout l;
    l.num_qubits = rp + (n - 1) + m;
    for (std::size_t b = 0; b < rp; ++b) {
        l.control.push_back(b);
    }
    for (std::size_t k = 0; k < n - 1; ++k) {
        l.token.push_back(rp + k);
    }
    for (std::size_t k = 0; k < m; ++k) {
        l.message.push_back(rp + n - 1 + k);
    }
    return l;
}

/// Fourier stage of the cyclic T: the textbook QFT circuit without swaps, run
/// on the control qubits in reverse order. Input g is read little-endian and
/// the output j is left big-endian (first control qubit = most significant).
inline CircuitPlan synth_fourier_stage(const Layout &layout) {
    CircuitPlan plan;
    plan.name = "fourier";
    plan.layout = layout;
    const std::size_t n = layout.control.size();
    std::vector<std::size_t> q(n);
    for (std::size_t k = 0; k < n; ++k) {
        q[k] = layout.control[n - 1 - k];
    }
    for (std::size_t k = 0; k < n; ++k) {
        plan.gates.push_back(detail::controlled_gate({}, q[k], detail::hadamard()));
        for (std::size_t l = k + 1; l < n; ++l) {
            double angle = 2.0 * kPi / static_cast<double>(std::size_t{1} << (l - k + 1));
            plan.gates.push_back(detail::controlled_gate({{q[l], 1}}, q[k], detail::phase_gate(angle)));
        }
    }
    finalize(plan);
    return plan;
}

/// CNOT network: control qubit c_{r'-m} (holding j_m) fans out to the 2^(m-1)
/// token qubits of group A_m, then one qubit of A_m resets c_{r'-m}. Groups are
/// laid out A_{r'} first, A_1 last.
inline CircuitPlan synth_register_network(const Layout &layout) {
    const std::size_t rp = layout.control.size();
    const std::size_t r = (std::size_t{1} << rp) - 1;
    if (layout.token.size() != r) {
        fail(ErrorKind::Configuration, "register network needs 2^r' - 1 token qubits");
    }
    CircuitPlan plan;
    plan.name = "register_network";
    plan.layout = layout;
    std::vector<std::vector<std::size_t>> groups(rp + 1);
    std::size_t pos = 0;
    for (std::size_t mm = rp; mm >= 1; --mm) {
        for (std::size_t k = 0; k < (std::size_t{1} << (mm - 1)); ++k) {
            groups[mm].push_back(layout.token[pos++]);
        }
    }
    for (std::size_t mm = rp; mm >= 1; --mm) {
        for (std::size_t t : groups[mm]) {
            plan.gates.push_back(detail::cnot(layout.control[rp - mm], t));
        }
    }
    for (std::size_t mm = rp; mm >= 1; --mm) {
        plan.gates.push_back(detail::cnot(groups[mm].front(), layout.control[rp - mm]));
    }
    finalize(plan);
    return plan;
}

struct CyclicTPlan {
    CircuitPlan plan;
    std::size_t fourier_gates = 0;
    std::size_t cnot_count = 0;
};

/// T for Z_N, N = 2^r': |g> (x) |0^r> -> |0^r'> (x) N^(-1/2) sum_j omega^(g j) |rep_j>
/// where rep_j has the groups A_m set to j_m.
inline CyclicTPlan synth_T_cyclic(std::size_t n, std::size_t m = 0) {
    if (n < 2 || !is_power_of_two(n)) {
        fail(ErrorKind::Configuration, "cyclic T needs N a power of two, N >= 2");
    }
    Layout layout = cyclic_encoder_layout(n, m);
    CircuitPlan fourier = synth_fourier_stage(layout);
    CircuitPlan network = synth_register_network(layout);
    CyclicTPlan out;
    out.fourier_gates = fourier.total_count;
    out.cnot_count = network.total_count;
    out.plan = append(fourier, network);
    out.plan.name = "T_cyclic";
    for (std::size_t x = 0; x < n; ++x) {
        out.plan.labels.push_back(x);
    }
    return out;
}

/// N^(-1/2) sum_j |rep_j> on N-1 qubits: the fiducial whose tokens the cyclic T produces.
inline StateVector cyclic_network_fiducial(std::size_t n) {
    if (n < 2 || !is_power_of_two(n)) {
        fail(ErrorKind::Configuration, "network fiducial needs N a power of two, N >= 2");
    }
    const std::size_t rp = ceil_log2(n);
    const std::size_t r = n - 1;
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << r));
    for (std::size_t j = 0; j < n; ++j) {
        std::size_t idx = 0;
        for (std::size_t mm = rp; mm >= 1; --mm) {
            std::size_t bit = (j >> (mm - 1)) & 1U;
            for (std::size_t k = 0; k < (std::size_t{1} << (mm - 1)); ++k) {
                idx = (idx << 1U) | bit;
            }
        }
        psi(static_cast<Eigen::Index>(idx)) = 1.0 / std::sqrt(static_cast<double>(n));
    }
    return StateVector::from_amplitudes(2, r, psi);
}

namespace detail {

/// X <- f(X) where X has rows indexed by the contiguous qudits [first, first + count).
template <typename F>
void apply_register_operator(StateVector &s, std::size_t first, std::size_t count, F &&f) {
    const std::size_t d = s.local_dim();
    const std::size_t rows = ipow(d, count);
    const std::size_t post = ipow(d, s.num_qudits() - first - count);
    const std::size_t pre = s.size() / (rows * post);
    Matrix x(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(pre * post));
    auto &a = s.mutable_amplitudes();
    for (std::size_t p = 0; p < pre; ++p) {
        for (std::size_t row = 0; row < rows; ++row) {
            for (std::size_t q = 0; q < post; ++q) {
                x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(p * post + q)) =
                    a(static_cast<Eigen::Index>((p * rows + row) * post + q));
            }
        }
    }
    f(x);
    for (std::size_t p = 0; p < pre; ++p) {
        for (std::size_t row = 0; row < rows; ++row) {
            for (std::size_t q = 0; q < post; ++q) {
                a(static_cast<Eigen::Index>((p * rows + row) * post + q)) =
                    x(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(p * post + q));
            }
        }
    }
}

/// Orthonormal completion: returns a k x k unitary whose first columns are `cols`.
inline Matrix complete_unitary(const Matrix &cols, double tol) {
    const Eigen::Index k = cols.rows();
    Matrix out(k, k);
    Eigen::Index filled = 0;
    for (Eigen::Index c = 0; c < cols.cols(); ++c) {
        out.col(filled++) = cols.col(c);
    }
    for (Eigen::Index e = 0; e < k && filled < k; ++e) {
        Vector v = Vector::Zero(k);
        v(e) = 1.0;
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index j = 0; j < filled; ++j) {
                v -= out.col(j) * out.col(j).dot(v);
            }
        }
        double nrm = v.norm();
        if (nrm > tol) {
            out.col(filled++) = v / nrm;
        }
    }
    if (filled != k) {
        fail(ErrorKind::NumericalDegeneracy, "unitary completion failed");
    }
    return out;
}

}  // namespace detail

/// T on the token register as an operator: |0...0, label(g)> -> psi(g), extended
/// to a unitary that acts as the identity outside the span of labels and tokens.
class TokenMap {
  public:
    static TokenMap build(const TokenSet &tokens, std::vector<std::size_t> labels = {}) {
        const std::size_t order = tokens.order();
        const std::size_t dim = ipow(tokens.local_dim(), tokens.r);
        if (labels.empty()) {
            for (std::size_t g = 0; g < order; ++g) {
                labels.push_back(g);
            }
        }
        if (labels.size() != order) {
            fail(ErrorKind::Configuration, "need one label per group element");
        }
        for (std::size_t g = 0; g < order; ++g) {
            if (labels[g] >= dim) {
                fail(ErrorKind::Configuration, "label does not fit in the token register");
            }
            for (std::size_t h = g + 1; h < order; ++h) {
                if (labels[g] == labels[h]) {
                    fail(ErrorKind::Configuration, "labels are not distinct");
                }
            }
        }
        const double tol = 1e-10;
        std::vector<Vector> q;
        auto add = [&](Vector v) {
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto &b : q) {
                    v -= b * b.dot(v);
                }
            }
            double nrm = v.norm();
            if (nrm > tol) {
                q.push_back(v / nrm);
            }
        };
        for (std::size_t g = 0; g < order; ++g) {
            Vector e = Vector::Zero(static_cast<Eigen::Index>(dim));
            e(static_cast<Eigen::Index>(labels[g])) = 1.0;
            add(e);
        }
        for (std::size_t g = 0; g < order; ++g) {
            add(tokens.tokens[g].amplitudes());
        }
        const auto k = static_cast<Eigen::Index>(q.size());
        TokenMap t;
        t.d_ = tokens.local_dim();
        t.r_ = tokens.r;
        t.labels_ = labels;
        t.basis_ = Matrix(static_cast<Eigen::Index>(dim), k);
        for (Eigen::Index c = 0; c < k; ++c) {
            t.basis_.col(c) = q[static_cast<std::size_t>(c)];
        }
        Matrix a(k, static_cast<Eigen::Index>(order));
        Matrix b(k, static_cast<Eigen::Index>(order));
        for (std::size_t g = 0; g < order; ++g) {
            Vector e = Vector::Zero(static_cast<Eigen::Index>(dim));
            e(static_cast<Eigen::Index>(labels[g])) = 1.0;
            a.col(static_cast<Eigen::Index>(g)) = t.basis_.adjoint() * e;
            b.col(static_cast<Eigen::Index>(g)) = t.basis_.adjoint() * tokens.tokens[g].amplitudes();
        }
        Matrix a_full = detail::complete_unitary(a, 1e-8);
        Matrix b_full = detail::complete_unitary(b, 1e-8);
        t.small_ = b_full * a_full.adjoint();
        return t;
    }

    std::size_t register_size() const { return r_; }
    const std::vector<std::size_t> &labels() const { return labels_; }
    /// Symbolic cost bound d^r.
    std::size_t cost_bound() const { return ipow(d_, r_); }

    void apply(StateVector &s, std::size_t first) const { apply_impl(s, first, small_); }
    void apply_inverse(StateVector &s, std::size_t first) const { apply_impl(s, first, small_.adjoint()); }

    Matrix dense() const {
        const auto dim = basis_.rows();
        Matrix id = Matrix::Identity(dim, dim);
        return id + basis_ * (small_ - Matrix::Identity(small_.rows(), small_.cols())) * basis_.adjoint();
    }

  private:
    void apply_impl(StateVector &s, std::size_t first, const Matrix &m) const {
        if (s.local_dim() != d_ || first + r_ > s.num_qudits()) {
            fail(ErrorKind::ShapeMismatch, "token map does not fit the state");
        }
        Matrix delta = m - Matrix::Identity(m.rows(), m.cols());
        detail::apply_register_operator(s, first, r_, [&](Matrix &x) {
            Matrix coords = basis_.adjoint() * x;
            x += basis_ * (delta * coords);
        });
    }

    std::size_t d_ = 2;
    std::size_t r_ = 0;
    std::vector<std::size_t> labels_;
    Matrix basis_;
    Matrix small_;
};

/// Basis index of the full register with `label` written on the control
/// qubits, `message_index` on the message qubits (first most significant),
/// and every other qubit 0.
inline std::size_t compose_index(const Layout &l, std::size_t label, std::size_t message_index) {
    std::vector<std::size_t> bit(l.num_qubits, 0);
    for (std::size_t b = 0; b < l.control.size(); ++b) {
        bit[l.control[b]] = (label >> b) & 1U;
    }
    for (std::size_t k = 0; k < l.message.size(); ++k) {
        bit[l.message[k]] = (message_index >> (l.message.size() - 1 - k)) & 1U;
    }
    std::size_t idx = 0;
    for (std::size_t q = 0; q < l.num_qubits; ++q) {
        idx = (idx << 1U) | bit[q];
    }
    return idx;
}

/// |G|^(-1/2) sum_g |label(g)> on the control qubits, message on the message
/// qubits, zeros elsewhere. Prepared directly rather than synthesized.
inline StateVector prepare_encoder_input(const Layout &l, const std::vector<std::size_t> &labels,
                                         const StateVector &message) {
    if (message.local_dim() != 2 || message.num_qudits() != l.message.size()) {
        fail(ErrorKind::ShapeMismatch, "message does not match the layout");
    }
    StateVector s(2, l.num_qubits);
    Vector a = Vector::Zero(static_cast<Eigen::Index>(s.size()));
    const double w = 1.0 / std::sqrt(static_cast<double>(labels.size()));
    for (std::size_t lab : labels) {
        for (std::size_t mi = 0; mi < message.size(); ++mi) {
            a(static_cast<Eigen::Index>(compose_index(l, lab, mi))) += w * message.amp(mi);
        }
    }
    s.mutable_amplitudes() = a;
    return s;
}

/// The encoder variants that can be simulated end to end.
enum class EncoderPath { GeneralDirectT, AbelianDirectT, CyclicDirectT, CyclicNetworkT };

inline const char *to_string(EncoderPath p) {
    switch (p) {
        case EncoderPath::GeneralDirectT: return "general";
        case EncoderPath::AbelianDirectT: return "abelian";
        case EncoderPath::CyclicDirectT: return "cyclic-direct";
        case EncoderPath::CyclicNetworkT: return "cyclic";
    }
    return "unknown";
}

/// A W plan plus a T stage acting on [token r][message m] (direct T, control =
/// last bits of the token register) or [control r'][token r][message m]
/// (cyclic network T).
struct EncoderCircuit {
    EncoderPath path;
    TokenSet tokens;
    CircuitPlan w;
    std::optional<TokenMap> t_direct;
    std::optional<CyclicTPlan> t_cyclic;
    std::size_t token_offset = 0;  // first qubit of the token register

    const Layout &layout() const { return w.layout; }

    /// Runs W then T on the prepared input and returns the token+message register.
    StateVector run(const StateVector &message) const {
        StateVector s = prepare_encoder_input(w.layout, w.labels, message);
        simulate(w, s);
        if (t_direct) {
            t_direct->apply(s, token_offset);
            return s;
        }
        simulate(t_cyclic->plan, s);
        Vector e0 = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << token_offset));
        e0(0) = 1.0;
        Vector rest = contract_leading(s, token_offset, e0);
        StateVector out(2, s.num_qudits() - token_offset);
        out.mutable_amplitudes() = rest;
        return out;
    }

    /// Inverse T followed by a computational-basis measurement of the label.
    /// Returns the measurement record; outcome g is the element whose label was
    /// found (|G| means none).
    MeasurementRecord measure_label(const StateVector &received, std::uint64_t seed) const {
        const std::size_t m = w.layout.message.size();
        const std::size_t r = tokens.r;
        std::vector<Projector> projectors;
        std::vector<std::size_t> subset;
        StateVector s(2, 1);
        if (t_direct) {
            s = received;
            t_direct->apply_inverse(s, 0);
            for (std::size_t q = 0; q < r; ++q) {
                subset.push_back(q);
            }
            for (std::size_t lab : w.labels) {
                Vector e = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << r));
                e(static_cast<Eigen::Index>(lab)) = 1.0;
                projectors.push_back(Projector::rank_one(std::move(e)));
            }
        } else {
            const std::size_t rp = token_offset;
            StateVector zero_ctrl(2, rp);
            s = zero_ctrl.tensor(received);
            simulate(inverse(t_cyclic->plan), s);
            for (std::size_t q = 0; q < rp + r; ++q) {
                subset.push_back(q);
            }
            for (std::size_t lab : w.labels) {
                // control qubits hold the label little-endian, token register zero
                std::size_t idx = 0;
                for (std::size_t b = 0; b < rp; ++b) {
                    idx = (idx << 1U) | ((lab >> b) & 1U);
                }
                idx <<= r;
                Vector e = Vector::Zero(static_cast<Eigen::Index>(std::size_t{1} << (rp + r)));
                e(static_cast<Eigen::Index>(idx)) = 1.0;
                projectors.push_back(Projector::rank_one(std::move(e)));
            }
        }
        (void)m;
        return project_measure(s, subset, projectors, seed);
    }
};

/// Builds the encoder for the chosen path. Direct-T paths reuse `tokens`; the
/// cyclic network path builds its own tokens from the network fiducial.
inline EncoderCircuit build_encoder(const TokenSet &tokens, std::size_t m, EncoderPath path,
                                    const std::optional<AbelianDecomposition> &dec = std::nullopt) {
    const UnitaryRep &rep = tokens.rep;
    detail::require_qubits(rep);
    const std::size_t order = rep.order();
    if (path == EncoderPath::CyclicNetworkT) {
        StateVector fid = cyclic_network_fiducial(order);
        TokenSet net = build_tokens(rep, order - 1, fid);
        Layout l = cyclic_encoder_layout(order, m);
        CircuitPlan w = synth_W_cyclic(rep, m, l);
        CyclicTPlan t = synth_T_cyclic(order, m);
        return EncoderCircuit{path, std::move(net), std::move(w), std::nullopt, std::move(t), ceil_log2(order)};
    }
    const std::size_t r = tokens.r;
    std::size_t bits = ceil_log2(order);
    if (path == EncoderPath::AbelianDirectT) {
        if (!dec) {
            fail(ErrorKind::Configuration, "abelian path needs a generator decomposition");
        }
        bits = 0;
        for (std::size_t b : abelian_label_bits(*dec)) {
            bits += b;
        }
    }
    if (bits > r) {
        fail(ErrorKind::Configuration, "label does not fit into the token register");
    }
    Layout l;
    l.num_qubits = r + m;
    for (std::size_t b = 0; b < bits; ++b) {
        l.control.push_back(r - 1 - b);
    }
    for (std::size_t q = 0; q < r; ++q) {
        l.token.push_back(q);
    }
    for (std::size_t k = 0; k < m; ++k) {
        l.message.push_back(r + k);
    }
    CircuitPlan w;
    switch (path) {
        case EncoderPath::GeneralDirectT: w = synth_W_general(rep, m, l); break;
        case EncoderPath::AbelianDirectT: w = synth_W_abelian(rep, *dec, m, l); break;
        default: w = synth_W_cyclic(rep, m, l); break;
    }
    TokenMap t = TokenMap::build(tokens, w.labels);
    return EncoderCircuit{path, tokens, std::move(w), std::move(t), std::nullopt, 0};
}

struct GateCountReport {
    std::string group;
    std::size_t group_order = 0;
    std::size_t d = 0;
    std::size_t m = 0;
    std::size_t r_prime = 0;
    std::optional<std::size_t> r;
    std::string path;

    std::optional<std::size_t> general_count;
    std::optional<std::size_t> general_depth;
    long long general_formula = 0;
    long long depth_formula = 0;
    bool general_formula_applicable = false;
    std::optional<std::size_t> physical_x_count;
    std::optional<std::size_t> unfused_x_count;

    std::optional<std::size_t> abelian_count;
    std::optional<long long> abelian_bound_raw;
    std::optional<long long> abelian_bound;

    std::optional<std::size_t> cyclic_count;
    std::optional<std::size_t> t_cyclic_cnots;
    std::optional<std::size_t> t_cyclic_fourier;
    std::optional<std::size_t> t_direct_bound;  // d^r

    std::optional<std::size_t> rate_numerator;
    std::optional<std::size_t> rate_denominator;
    std::optional<double> rate;
    std::string scaling = "O(m, |G| log|G|, d^r)";
};

/// Counts for every path that applies to the group. `r` is the token register
/// size if known (used for the T bound and the rate).
inline GateCountReport gate_count_report(const UnitaryRep &rep, std::size_t m, const std::string &path,
                                         std::optional<std::size_t> r,
                                         const std::optional<AbelianDecomposition> &dec = std::nullopt) {
    GateCountReport out;
    const FiniteGroup &g = rep.group();
    out.group = g.name;
    out.group_order = g.order;
    out.d = rep.dim();
    out.m = m;
    out.r_prime = ceil_log2(g.order);
    out.r = r;
    out.path = path;
    out.general_formula = general_count_formula(g.order, m);
    out.depth_formula = general_depth_formula(g.order);
    out.general_formula_applicable = g.order == (std::size_t{1} << out.r_prime) && out.r_prime >= 2;
    const bool qubits = rep.dim() == 2;
    if (qubits) {
        CircuitPlan w = synth_W_general(rep, m);
        out.general_count = w.total_count;
        out.general_depth = w.logical_depth;
        out.physical_x_count = w.physical_x_count;
        out.unfused_x_count = w.unfused_x_count;
    }
    if (dec && g.is_abelian()) {
        AbelianBound b = abelian_count_bound(*dec, m);
        out.abelian_bound_raw = b.raw;
        out.abelian_bound = b.clamped;
        if (qubits) {
            out.abelian_count = synth_W_abelian(rep, *dec, m).total_count;
        }
    }
    if (is_residue_cyclic(g) && g.order >= 2) {
        if (qubits) {
            out.cyclic_count = synth_W_cyclic(rep, m).total_count;
        }
        if (is_power_of_two(g.order)) {
            CyclicTPlan t = synth_T_cyclic(g.order);
            out.t_cyclic_cnots = t.cnot_count;
            out.t_cyclic_fourier = t.fourier_gates;
        }
    }
    if (r) {
        out.t_direct_bound = ipow(rep.dim(), *r);
        out.rate_numerator = m;
        out.rate_denominator = m + *r;
        out.rate = static_cast<double>(m) / static_cast<double>(m + *r);
    }
    return out;
}

}  // namespace dfscodec
