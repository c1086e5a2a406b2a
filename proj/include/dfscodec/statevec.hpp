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
#include <span>
#include <string>
#include <vector>

#include "dfscodec/core.hpp"
#include "dfscodec/rng.hpp"

namespace dfscodec {

inline constexpr std::size_t kMaxAmplitudes = std::size_t{1} << 24U;

/// Dense state of n qudits of dimension d. Qudit 0 is the most significant
/// digit of the basis index.
class StateVector {
  public:
    StateVector(std::size_t d, std::size_t n) : d_(d), n_(n) {
        check_shape(d, n);
        amps_ = Vector::Zero(static_cast<Eigen::Index>(ipow(d, n)));
        amps_(0) = 1.0;
    }

    static StateVector basis(std::size_t d, std::size_t n, std::size_t index) {
        StateVector s(d, n);
        if (index >= s.size()) {
            fail(ErrorKind::ShapeMismatch, "basis index out of range");
        }
        s.amps_(0) = 0.0;
        s.amps_(static_cast<Eigen::Index>(index)) = 1.0;
        return s;
    }

    /// Wraps amplitudes; they must already be normalized.
    static StateVector from_amplitudes(std::size_t d, std::size_t n, Vector amps, double tol = 1e-9) {
        StateVector s(d, n);
        if (static_cast<std::size_t>(amps.size()) != s.size()) {
            fail(ErrorKind::ShapeMismatch, "expected " + std::to_string(s.size()) + " amplitudes, got " +
                                               std::to_string(amps.size()));
        }
        if (std::abs(amps.norm() - 1.0) > tol) {
            fail(ErrorKind::BadNormalization, "state norm is " + std::to_string(amps.norm()));
        }
        s.amps_ = std::move(amps);
        return s;
    }

    std::size_t local_dim() const { return d_; }
    std::size_t num_qudits() const { return n_; }
    std::size_t size() const { return static_cast<std::size_t>(amps_.size()); }
    const Vector &amplitudes() const { return amps_; }
    Vector &mutable_amplitudes() { return amps_; }
    Complex amp(std::size_t i) const { return amps_(static_cast<Eigen::Index>(i)); }
    double norm() const { return amps_.norm(); }

    std::size_t stride(std::size_t qudit) const { return ipow(d_, n_ - 1 - qudit); }
    std::size_t digit(std::size_t index, std::size_t qudit) const { return (index / stride(qudit)) % d_; }

    /// this (x) other, with this occupying the leading qudits.
    StateVector tensor(const StateVector &other) const {
        if (other.d_ != d_) {
            fail(ErrorKind::DimensionMismatch, "local dimensions differ");
        }
        StateVector s(d_, n_ + other.n_);
        s.amps_ = kron(amps_, other.amps_);
        return s;
    }

  private:
    static void check_shape(std::size_t d, std::size_t n) {
        if (d < 2) {
            fail(ErrorKind::ShapeMismatch, "local dimension must be at least 2");
        }
        if (n < 1) {
            fail(ErrorKind::ShapeMismatch, "need at least one qudit");
        }
        std::size_t total = 1;
        for (std::size_t k = 0; k < n; ++k) {
            total *= d;
            if (total > kMaxAmplitudes) {
                fail(ErrorKind::Configuration, "d^n exceeds the 2^24 amplitude limit");
            }
        }
    }

    std::size_t d_;
    std::size_t n_;
    Vector amps_;
};

struct Control {
    std::size_t qudit;
    std::size_t value;
};

namespace detail {

inline void check_targets(const StateVector &s, std::span<const std::size_t> targets) {
    for (std::size_t i = 0; i < targets.size(); ++i) {
        if (targets[i] >= s.num_qudits()) {
            fail(ErrorKind::BadTarget, "qudit " + std::to_string(targets[i]) + " out of range");
        }
        for (std::size_t k = i + 1; k < targets.size(); ++k) {
            if (targets[i] == targets[k]) {
                fail(ErrorKind::DuplicateTargets, "qudit " + std::to_string(targets[i]) + " listed twice");
            }
        }
    }
}

/// Applies u (d^k x d^k, k = targets.size(), first target most significant)
/// to every amplitude block whose control digits match. No validation.
inline void apply_block(Vector &amps, std::size_t d, std::size_t n, std::span<const Control> controls,
                        const Matrix &u, std::span<const std::size_t> targets) {
    const std::size_t k = targets.size();
    const std::size_t block = ipow(d, k);
    std::vector<std::size_t> tstride(k);
    for (std::size_t t = 0; t < k; ++t) {
        tstride[t] = ipow(d, n - 1 - targets[t]);
    }
    std::vector<std::size_t> offsets(block, 0);
    for (std::size_t b = 0; b < block; ++b) {
        std::size_t rest = b;
        std::size_t off = 0;
        for (std::size_t t = k; t-- > 0;) {
            off += (rest % d) * tstride[t];
            rest /= d;
        }
        offsets[b] = off;
    }
    std::vector<std::pair<std::size_t, std::size_t>> cstride;
    for (const auto &c : controls) {
        cstride.emplace_back(ipow(d, n - 1 - c.qudit), c.value);
    }
    const std::size_t total = static_cast<std::size_t>(amps.size());
    Vector in(static_cast<Eigen::Index>(block));
    Vector out(static_cast<Eigen::Index>(block));
    for (std::size_t base = 0; base < total; ++base) {
        bool is_base = true;
        for (std::size_t t = 0; t < k && is_base; ++t) {
            is_base = (base / tstride[t]) % d == 0;
        }
        if (!is_base) {
            continue;
        }
        bool match = true;
        for (const auto &[st, v] : cstride) {
            if ((base / st) % d != v) {
                match = false;
                break;
            }
        }
        if (!match) {
            continue;
        }
        for (std::size_t b = 0; b < block; ++b) {
            in(static_cast<Eigen::Index>(b)) = amps(static_cast<Eigen::Index>(base + offsets[b]));
        }
        out.noalias() = u * in;
        for (std::size_t b = 0; b < block; ++b) {
            amps(static_cast<Eigen::Index>(base + offsets[b])) = out(static_cast<Eigen::Index>(b));
        }
    }
}

/// Single-qudit u on every qudit in [first, first + count). No validation.
inline void apply_power(Vector &amps, std::size_t d, std::size_t n, const Matrix &u, std::size_t first,
                        std::size_t count) {
    for (std::size_t q = first; q < first + count; ++q) {
        std::size_t t = q;
        apply_block(amps, d, n, {}, u, std::span<const std::size_t>(&t, 1));
    }
}

inline void check_unitary(const Matrix &u, std::size_t expected_dim, double tol) {
    if (static_cast<std::size_t>(u.rows()) != expected_dim || static_cast<std::size_t>(u.cols()) != expected_dim) {
        fail(ErrorKind::ShapeMismatch, "operator must be " + std::to_string(expected_dim) + " x " +
                                           std::to_string(expected_dim));
    }
    if (unitarity_defect(u) > tol) {
        fail(ErrorKind::InvalidRepresentation, "operator is not unitary");
    }
}

}  // namespace detail

inline void apply_local(StateVector &s, const Matrix &u, std::size_t target, double tol = 1e-9) {
    std::size_t t = target;
    detail::check_targets(s, std::span<const std::size_t>(&t, 1));
    detail::check_unitary(u, s.local_dim(), tol);
    detail::apply_block(s.mutable_amplitudes(), s.local_dim(), s.num_qudits(), {}, u,
                        std::span<const std::size_t>(&t, 1));
}

/// u on each listed qudit.
inline void apply_collective(StateVector &s, const Matrix &u, std::span<const std::size_t> targets,
                             double tol = 1e-9) {
    detail::check_targets(s, targets);
    detail::check_unitary(u, s.local_dim(), tol);
    for (std::size_t t : targets) {
        detail::apply_block(s.mutable_amplitudes(), s.local_dim(), s.num_qudits(), {}, u,
                            std::span<const std::size_t>(&t, 1));
    }
}

/// u on qudits [first, first + count).
inline void apply_collective_range(StateVector &s, const Matrix &u, std::size_t first, std::size_t count,
                                   double tol = 1e-9) {
    std::vector<std::size_t> targets(count);
    for (std::size_t k = 0; k < count; ++k) {
        targets[k] = first + k;
    }
    apply_collective(s, u, targets, tol);
}

/// u on the target block (first target most significant), only where every
/// control qudit holds its required value. Other amplitudes are not touched.
inline void apply_controlled(StateVector &s, std::span<const Control> controls, const Matrix &u,
                             std::span<const std::size_t> targets, double tol = 1e-9) {
    detail::check_targets(s, targets);
    for (std::size_t i = 0; i < controls.size(); ++i) {
        const auto &c = controls[i];
        if (c.qudit >= s.num_qudits() || c.value >= s.local_dim()) {
            fail(ErrorKind::BadTarget, "bad control qudit or value");
        }
        if (std::find(targets.begin(), targets.end(), c.qudit) != targets.end()) {
            fail(ErrorKind::ControlTargetOverlap, "qudit " + std::to_string(c.qudit) + " is both control and target");
        }
        for (std::size_t k = i + 1; k < controls.size(); ++k) {
            if (controls[k].qudit == c.qudit) {
                fail(ErrorKind::DuplicateTargets, "control qudit listed twice");
            }
        }
    }
    detail::check_unitary(u, ipow(s.local_dim(), targets.size()), tol);
    detail::apply_block(s.mutable_amplitudes(), s.local_dim(), s.num_qudits(), controls, u, targets);
}

inline Complex inner(const StateVector &a, const StateVector &b) {
    if (a.local_dim() != b.local_dim() || a.num_qudits() != b.num_qudits()) {
        fail(ErrorKind::ShapeMismatch, "states have different shapes");
    }
    return a.amplitudes().dot(b.amplitudes());
}

/// |<a|b>|^2
inline double fidelity(const StateVector &a, const StateVector &b) { return std::norm(inner(a, b)); }

/// Orthogonal projector given by an orthonormal basis of its range.
struct Projector {
    std::vector<Vector> basis;

    static Projector rank_one(Vector v) { return Projector{{std::move(v)}}; }
};

struct MeasurementRecord {
    std::size_t outcome = 0;  // index into the projector list; == size() for the remainder
    double probability = 0.0;
    std::vector<double> probabilities;  // per offered projector, remainder last
    StateVector post_state{2, 1};
    std::uint64_t seed = 0;
    bool remainder = false;
};

namespace detail {

/// Amplitudes as a matrix: row = digits of subset (first listed most
/// significant), column = digits of the other qudits in increasing order.
struct SubsetView {
    std::vector<std::size_t> row_of;
    std::vector<std::size_t> col_of;
    std::size_t rows = 0;
    std::size_t cols = 0;
};

inline SubsetView subset_view(const StateVector &s, std::span<const std::size_t> subset) {
    SubsetView v;
    const std::size_t n = s.num_qudits();
    const std::size_t d = s.local_dim();
    std::vector<bool> in_subset(n, false);
    for (std::size_t q : subset) {
        in_subset[q] = true;
    }
    std::vector<std::size_t> rest;
    for (std::size_t q = 0; q < n; ++q) {
        if (!in_subset[q]) {
            rest.push_back(q);
        }
    }
    v.rows = ipow(d, subset.size());
    v.cols = ipow(d, rest.size());
    v.row_of.resize(s.size());
    v.col_of.resize(s.size());
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        std::size_t r = 0;
        for (std::size_t q : subset) {
            r = r * d + s.digit(idx, q);
        }
        std::size_t c = 0;
        for (std::size_t q : rest) {
            c = c * d + s.digit(idx, q);
        }
        v.row_of[idx] = r;
        v.col_of[idx] = c;
    }
    return v;
}

}  // namespace detail

/// Projective measurement {A_i} + remainder on a qudit subset. The outcome is
/// the first index whose cumulative probability exceeds one uniform draw from
/// Rng(seed).
inline MeasurementRecord project_measure(const StateVector &s, std::span<const std::size_t> subset,
                                         std::span<const Projector> projectors, std::uint64_t seed,
                                         double tol = 1e-9) {
    detail::check_targets(s, subset);
    if (subset.empty()) {
        fail(ErrorKind::BadTarget, "empty measurement subset");
    }
    const auto view = detail::subset_view(s, subset);
    std::vector<const Vector *> vecs;
    std::vector<std::size_t> owner;
    for (std::size_t p = 0; p < projectors.size(); ++p) {
        for (const auto &v : projectors[p].basis) {
            if (static_cast<std::size_t>(v.size()) != view.rows) {
                fail(ErrorKind::ShapeMismatch, "projector vector has the wrong dimension");
            }
            vecs.push_back(&v);
            owner.push_back(p);
        }
    }
    for (std::size_t a = 0; a < vecs.size(); ++a) {
        for (std::size_t b = a; b < vecs.size(); ++b) {
            Complex ip = vecs[a]->dot(*vecs[b]);
            double expect = a == b ? 1.0 : 0.0;
            if (std::abs(ip - expect) > tol) {
                fail(ErrorKind::NonOrthogonalProjectors,
                     a == b ? "projector vector is not normalized" : "projectors are not mutually orthogonal");
            }
        }
    }

    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(view.rows), static_cast<Eigen::Index>(view.cols));
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        m(static_cast<Eigen::Index>(view.row_of[idx]), static_cast<Eigen::Index>(view.col_of[idx])) = s.amp(idx);
    }
    std::vector<Matrix> components(projectors.size());
    std::vector<double> probs(projectors.size() + 1, 0.0);
    Matrix covered = Matrix::Zero(m.rows(), m.cols());
    for (std::size_t a = 0; a < vecs.size(); ++a) {
        Eigen::RowVectorXcd coeff = vecs[a]->adjoint() * m;
        Matrix part = *vecs[a] * coeff;
        std::size_t p = owner[a];
        if (components[p].size() == 0) {
            components[p] = Matrix::Zero(m.rows(), m.cols());
        }
        components[p] += part;
        covered += part;
        probs[p] += coeff.squaredNorm();
    }
    Matrix remainder = m - covered;
    probs.back() = remainder.squaredNorm();

    Rng rng(seed);
    std::size_t outcome = sample_index(probs, rng.uniform());
    const Matrix &chosen = outcome < projectors.size() ? components[outcome] : remainder;

    MeasurementRecord rec;
    rec.outcome = outcome;
    rec.probability = probs[outcome];
    rec.probabilities = probs;
    rec.seed = seed;
    rec.remainder = outcome == projectors.size();
    Vector out(static_cast<Eigen::Index>(s.size()));
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        out(static_cast<Eigen::Index>(idx)) =
            chosen(static_cast<Eigen::Index>(view.row_of[idx]), static_cast<Eigen::Index>(view.col_of[idx]));
    }
    double nrm = out.norm();
    if (nrm > 0.0) {
        out /= nrm;
    }
    StateVector post(s.local_dim(), s.num_qudits());
    post.mutable_amplitudes() = out;
    rec.post_state = std::move(post);
    return rec;
}

/// Computational-basis projectors |k><k| on a subset of `count` qudits of dimension d.
inline std::vector<Projector> computational_projectors(std::size_t d, std::size_t count) {
    std::vector<Projector> out;
    const std::size_t dim = ipow(d, count);
    for (std::size_t k = 0; k < dim; ++k) {
        Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
        v(static_cast<Eigen::Index>(k)) = 1.0;
        out.push_back(Projector::rank_one(std::move(v)));
    }
    return out;
}

/// Reduced amplitudes when the leading `count` qudits are projected onto <v|:
/// returns (<v| (x) I) s without normalization.
inline Vector contract_leading(const StateVector &s, std::size_t count, const Vector &v) {
    const std::size_t rows = ipow(s.local_dim(), count);
    const std::size_t cols = s.size() / rows;
    if (static_cast<std::size_t>(v.size()) != rows) {
        fail(ErrorKind::ShapeMismatch, "contraction vector has the wrong dimension");
    }
    using RowMajor = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    Eigen::Map<const RowMajor> m(s.amplitudes().data(), static_cast<Eigen::Index>(rows),
                                 static_cast<Eigen::Index>(cols));
    return m.transpose() * v.conjugate();
}

}  // namespace dfscodec
