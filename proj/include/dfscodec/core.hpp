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

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dfscodec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;

enum class ErrorKind {
    Parse,
    Configuration,
    NotAGroup,
    InvalidCharacterTable,
    InvalidRepresentation,
    NotFaithful,
    NonIntegerMultiplicity,
    RMaxExceeded,
    MissingIrrepMatrices,
    NumericalDegeneracy,
    BadTarget,
    DuplicateTargets,
    ControlTargetOverlap,
    NonOrthogonalProjectors,
    ShapeMismatch,
    DimensionMismatch,
    BadNormalization,
    RegularRepMissing,
    ConditionOneViolated,
    ConditionTwoViolated,
    PerpOutcome,
    UnsupportedDimension,
    NotAbelian,
    InvalidDecomposition,
};

inline const char *to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Parse: return "Parse";
        case ErrorKind::Configuration: return "Configuration";
        case ErrorKind::NotAGroup: return "NotAGroup";
        case ErrorKind::InvalidCharacterTable: return "InvalidCharacterTable";
        case ErrorKind::InvalidRepresentation: return "InvalidRepresentation";
        case ErrorKind::NotFaithful: return "NotFaithful";
        case ErrorKind::NonIntegerMultiplicity: return "NonIntegerMultiplicity";
        case ErrorKind::RMaxExceeded: return "RMaxExceeded";
        case ErrorKind::MissingIrrepMatrices: return "MissingIrrepMatrices";
        case ErrorKind::NumericalDegeneracy: return "NumericalDegeneracy";
        case ErrorKind::BadTarget: return "BadTarget";
        case ErrorKind::DuplicateTargets: return "DuplicateTargets";
        case ErrorKind::ControlTargetOverlap: return "ControlTargetOverlap";
        case ErrorKind::NonOrthogonalProjectors: return "NonOrthogonalProjectors";
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::BadNormalization: return "BadNormalization";
        case ErrorKind::RegularRepMissing: return "RegularRepMissing";
        case ErrorKind::ConditionOneViolated: return "ConditionOneViolated";
        case ErrorKind::ConditionTwoViolated: return "ConditionTwoViolated";
        case ErrorKind::PerpOutcome: return "PerpOutcome";
        case ErrorKind::UnsupportedDimension: return "UnsupportedDimension";
        case ErrorKind::NotAbelian: return "NotAbelian";
        case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string &message)
        : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

/// Numerical thresholds shared by the library. The defaults are the values the
/// test suites are written against; callers may tighten them.
struct Tolerances {
    double unitarity = 1e-9;
    double homomorphism = 1e-9;
    double faithful = 1e-9;
    double multiplicity = 1e-6;
    double orthogonality = 1e-10;
    double gram_schmidt = 1e-7;
    double token_gram = 1e-8;
    double token_closure = 1e-9;
    double projector = 1e-9;
    double normalization = 1e-9;
};

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

inline Vector kron(const Vector &a, const Vector &b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        out.segment(i * b.size(), b.size()) = a(i) * b;
    }
    return out;
}

inline double max_abs(const Matrix &m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// max |(U^dagger U - I)_{ij}|
inline double unitarity_defect(const Matrix &u) {
    if (u.rows() != u.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    return max_abs(u.adjoint() * u - Matrix::Identity(u.rows(), u.cols()));
}

inline Matrix matrix_power(const Matrix &u, std::size_t exponent) {
    Matrix result = Matrix::Identity(u.rows(), u.cols());
    Matrix base = u;
    while (exponent > 0) {
        if (exponent & 1U) {
            result = result * base;
        }
        base = base * base;
        exponent >>= 1U;
    }
    return result;
}

inline std::size_t ipow(std::size_t base, std::size_t exponent) {
    std::size_t out = 1;
    for (std::size_t k = 0; k < exponent; ++k) {
        out *= base;
    }
    return out;
}

/// Smallest c with 2^c >= n, for n >= 1.
inline std::size_t ceil_log2(std::size_t n) {
    std::size_t c = 0;
    while ((std::size_t{1} << c) < n) {
        ++c;
    }
    return c;
}

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/// exp(2 pi i k / n), snapped to the exact value on the four axis points.
inline Complex root_of_unity(std::size_t n, long long k) {
    long long kk = k % static_cast<long long>(n);
    if (kk < 0) {
        kk += static_cast<long long>(n);
    }
    auto uk = static_cast<std::size_t>(kk);
    if ((4 * uk) % n == 0) {
        switch ((4 * uk) / n) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, 1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, -1.0};
        }
    }
    double angle = 2.0 * kPi * static_cast<double>(uk) / static_cast<double>(n);
    return {std::cos(angle), std::sin(angle)};
}

}  // namespace dfscodec
