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

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "dfscodec/core.hpp"
#include "dfscodec/rng.hpp"

namespace dfscodec::su2 {

/// Euler-angle spin-1/2 rotation e^{-i theta Jz} e^{-i phi Jy} e^{-i psi Jz}.
inline Matrix euler_matrix(double theta, double phi, double psi) {
    const Complex i(0.0, 1.0);
    Matrix u(2, 2);
    u(0, 0) = std::exp(-i * 0.5 * (theta + psi)) * std::cos(phi / 2);
    u(0, 1) = -std::exp(-i * 0.5 * (theta - psi)) * std::sin(phi / 2);
    u(1, 0) = std::exp(i * 0.5 * (theta - psi)) * std::sin(phi / 2);
    u(1, 1) = std::exp(i * 0.5 * (theta + psi)) * std::cos(phi / 2);
    return u;
}

struct EulerAngles {
    double theta = 0;
    double phi = 0;
    double psi = 0;
};

/// Uniform angles: theta, psi in [0, 4 pi), phi in [0, pi].
inline EulerAngles random_angles(std::uint64_t seed) {
    Rng rng(seed);
    EulerAngles a;
    a.theta = 4 * kPi * rng.uniform();
    a.phi = kPi * rng.uniform();
    a.psi = 4 * kPi * rng.uniform();
    return a;
}

inline Matrix random_su2(std::uint64_t seed) {
    EulerAngles a = random_angles(seed);
    return euler_matrix(a.theta, a.phi, a.psi);
}

/// Labels of the basis columns, in order.
struct BasisLabel {
    double j;
    double m;
    int beta;  // -1 for the J = 3/2 quadruplet
};

inline const std::array<BasisLabel, 8> &basis_labels() {
    static const std::array<BasisLabel, 8> labels{{{1.5, 1.5, -1},
                                                  {1.5, 0.5, -1},
                                                  {1.5, -0.5, -1},
                                                  {1.5, -1.5, -1},
                                                  {0.5, 0.5, 0},
                                                  {0.5, -0.5, 0},
                                                  {0.5, 0.5, 1},
                                                  {0.5, -0.5, 1}}};
    return labels;
}

/// Coupled three-qubit basis as the columns of an 8x8 matrix; |0> is spin up.
/// Columns: quadruplet M = 3/2..-3/2, then the beta = 0 doublet, then beta = 1.
inline Matrix coupled_basis() {
    const double s3 = 1.0 / std::sqrt(3.0);
    const double s2 = 1.0 / std::sqrt(2.0);
    const double s23 = std::sqrt(2.0 / 3.0);
    const double s6 = 1.0 / std::sqrt(6.0);
    // basis index = 4 q0 + 2 q1 + q2
    Matrix b = Matrix::Zero(8, 8);
    b(0b000, 0) = 1;
    b(0b001, 1) = s3;
    b(0b010, 1) = s3;
    b(0b100, 1) = s3;
    b(0b110, 2) = s3;
    b(0b101, 2) = s3;
    b(0b011, 2) = s3;
    b(0b111, 3) = 1;
    b(0b100, 4) = s2;
    b(0b010, 4) = -s2;
    b(0b011, 5) = s2;
    b(0b101, 5) = -s2;
    b(0b001, 6) = s23;
    b(0b010, 6) = -s6;
    b(0b100, 6) = -s6;
    b(0b110, 7) = s23;
    b(0b101, 7) = -s6;
    b(0b011, 7) = -s6;
    return b;
}

inline Matrix three_fold(const Matrix &u) { return kron(kron(u, u), u); }

/// B^dagger U^(x)3 B.
inline Matrix coupled_form(const Matrix &u) {
    static const Matrix b = coupled_basis();
    return b.adjoint() * three_fold(u) * b;
}

/// Largest entry that breaks the sector structure: coupling between the
/// J sectors, coupling between the two doublets, and any difference between
/// the two doublet blocks.
inline double block_violation(const Matrix &u) {
    Matrix m = coupled_form(u);
    double v = 0;
    v = std::max(v, m.block(0, 4, 4, 4).cwiseAbs().maxCoeff());
    v = std::max(v, m.block(4, 0, 4, 4).cwiseAbs().maxCoeff());
    v = std::max(v, m.block(4, 6, 2, 2).cwiseAbs().maxCoeff());
    v = std::max(v, m.block(6, 4, 2, 2).cwiseAbs().maxCoeff());
    v = std::max(v, (m.block(4, 4, 2, 2) - m.block(6, 6, 2, 2)).cwiseAbs().maxCoeff());
    return v;
}

struct BlockCertificate {
    std::size_t trials = 0;
    double max_violation = 0;
    std::vector<std::uint64_t> seeds;
};

inline BlockCertificate block_structure_certificate(const std::vector<std::uint64_t> &seeds) {
    BlockCertificate c;
    c.trials = seeds.size();
    c.seeds = seeds;
    for (std::uint64_t s : seeds) {
        c.max_violation = std::max(c.max_violation, block_violation(random_su2(s)));
    }
    return c;
}

inline std::vector<std::uint64_t> trial_seeds(std::uint64_t seed, std::size_t trials) {
    std::vector<std::uint64_t> out;
    for (std::size_t t = 0; t < trials; ++t) {
        out.push_back(derive_seed(seed, "su2/" + std::to_string(t)));
    }
    return out;
}

inline BlockCertificate block_structure_certificate(std::size_t trials, std::uint64_t seed) {
    return block_structure_certificate(trial_seeds(seed, trials));
}

/// Wigner small-d entries d^{3/2}_{3/2,m}(phi) for m = 3/2, 1/2, -1/2, -3/2,
/// and d^{3/2}_{1/2,1/2}, d^{3/2}_{1/2,-1/2}.
struct WignerRow {
    double d33;
    double d31;
    double d3m1;
    double d3m3;
    double d11;
    double d1m1;
};

inline WignerRow wigner_closed_form(double phi) {
    const double c = std::cos(phi);
    const double ch = std::cos(phi / 2);
    const double sh = std::sin(phi / 2);
    return {(1 + c) / 2 * ch,          -std::sqrt(3.0) * (1 + c) / 2 * sh, std::sqrt(3.0) * (1 - c) / 2 * ch,
            -(1 - c) / 2 * sh,         (3 * c - 1) / 2 * ch,                -(3 * c + 1) / 2 * sh};
}

/// Same entries read off the quadruplet block of a phi-only rotation.
inline WignerRow wigner_from_block(double phi) {
    Matrix m = coupled_form(euler_matrix(0, phi, 0));
    return {m(0, 0).real(), m(0, 1).real(), m(0, 2).real(), m(0, 3).real(), m(1, 1).real(), m(1, 2).real()};
}

/// Logical qubit a|0_L> + b|1_L> with |0_L> = c1|1/2,1/2,0> + c2|1/2,-1/2,0>
/// and |1_L> = d1|1/2,1/2,1> + d2|1/2,-1/2,1>.
struct LogicalCode {
    Complex c1{1, 0};
    Complex c2{0, 0};
    Complex d1{1, 0};
    Complex d2{0, 0};
};

inline void check_code(const LogicalCode &code, double tol = 1e-9) {
    if (std::abs(std::norm(code.c1) + std::norm(code.c2) - 1.0) > tol ||
        std::abs(std::norm(code.d1) + std::norm(code.d2) - 1.0) > tol) {
        fail(ErrorKind::BadNormalization, "logical code coefficients are not normalized");
    }
}

inline Vector encode_logical(const LogicalCode &code, Complex a, Complex b, double tol = 1e-9) {
    check_code(code, tol);
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > tol) {
        fail(ErrorKind::BadNormalization, "logical state is not normalized");
    }
    Vector coords = Vector::Zero(8);
    coords(4) = a * code.c1;
    coords(5) = a * code.c2;
    coords(6) = b * code.d1;
    coords(7) = b * code.d2;
    return coupled_basis() * coords;
}

/// Reduced state of the beta register (doublet index) of an 8-dim state.
inline Matrix beta_reduced_state(const Vector &state) {
    Vector x = coupled_basis().adjoint() * state;
    Matrix rho = Matrix::Zero(2, 2);
    for (int b = 0; b < 2; ++b) {
        for (int bp = 0; bp < 2; ++bp) {
            for (int m = 0; m < 2; ++m) {
                rho(b, bp) += x(4 + 2 * b + m) * std::conj(x(4 + 2 * bp + m));
            }
        }
    }
    return rho;
}

/// Uhlmann fidelity (tr sqrt(sqrt(rho) sigma sqrt(rho)))^2 of 2x2 density matrices.
inline double state_fidelity(const Matrix &rho, const Matrix &sigma) {
    auto msqrt = [](const Matrix &a) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(a);
        Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        return Matrix(es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint());
    };
    Matrix sr = msqrt(rho);
    Matrix inner = sr * sigma * sr;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (inner + inner.adjoint()));
    double t = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
    return t * t;
}

/// Encodes a|0_L> + b|1_L>, applies U^(x)3 and compares the beta-register
/// reduced state with the one before the channel. For c = d the reduced
/// input is the pure state (a, b).
inline double logical_qubit_roundtrip(const LogicalCode &code, const Matrix &u, Complex a, Complex b) {
    Vector in = encode_logical(code, a, b);
    Vector out = three_fold(u) * in;
    return state_fidelity(beta_reduced_state(in), beta_reduced_state(out));
}

/// Logical qubits per physical qubit.
inline constexpr double kRate = 1.0 / 3.0;

}  // namespace dfscodec::su2
