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
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "dfscodec/core.hpp"

namespace dfscodec {

/// Seeded source of randomness. The engine is std::mt19937_64, whose output
/// sequence is fixed by the standard; the floating point conversions below are
/// done by hand because the std distributions are implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11U) * 0x1.0p-53; }

    /// Standard normal via Box-Muller.
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        double u2 = uniform();
        double radius = std::sqrt(-2.0 * std::log(u1));
        spare_ = radius * std::sin(2.0 * kPi * u2);
        has_spare_ = true;
        return radius * std::cos(2.0 * kPi * u2);
    }

    Complex complex_normal() {
        double re = normal();
        double im = normal();
        return {re, im};
    }

    std::size_t index(std::size_t n) {
        auto k = static_cast<std::size_t>(uniform() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

  private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// splitmix64 finalizer; used to derive independent sub-seeds from one seed.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27U)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31U);
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(std::string_view bytes, std::uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream) {
    return mix_seed(seed ^ fnv1a(stream));
}

/// Haar-random unit vector of the given dimension.
inline Vector random_state(Rng &rng, std::size_t dim) {
    Vector v(static_cast<Eigen::Index>(dim));
    for (auto &a : v) {
        a = rng.complex_normal();
    }
    return v / v.norm();
}

/// Haar-random unitary: QR of a Ginibre matrix with the phases of R removed.
inline Matrix random_unitary(Rng &rng, std::size_t dim) {
    auto n = static_cast<Eigen::Index>(dim);
    Matrix z(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            z(i, j) = rng.complex_normal();
        }
    }
    Eigen::HouseholderQR<Matrix> qr(z);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < n; ++j) {
        Complex d = r(j, j);
        double a = std::abs(d);
        if (a > 0.0) {
            q.col(j) *= d / a;
        }
    }
    return q;
}

/// Random probability vector (normalized exponentials of uniforms).
inline std::vector<double> random_distribution(Rng &rng, std::size_t n) {
    std::vector<double> p(n);
    double total = 0.0;
    for (auto &x : p) {
        double u = 0.0;
        do {
            u = rng.uniform();
        } while (u <= 0.0);
        x = -std::log(u);
        total += x;
    }
    for (auto &x : p) {
        x /= total;
    }
    return p;
}

/// Index of the first cumulative bin that exceeds u. Zero-weight bins are never
/// selected, including when rounding leaves u above the final partial sum.
inline std::size_t sample_index(const std::vector<double> &weights, double u) {
    double total = 0.0;
    for (double w : weights) {
        total += w;
    }
    double target = u * total;
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
        if (weights[k] <= 0.0) {
            continue;
        }
        last_nonzero = k;
        acc += weights[k];
        if (target < acc) {
            return k;
        }
    }
    return last_nonzero;
}

}  // namespace dfscodec
