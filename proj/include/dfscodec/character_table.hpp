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
#include <string>
#include <vector>

#include "dfscodec/core.hpp"
#include "dfscodec/group.hpp"

namespace dfscodec {

/// Characters of the irreducible representations. chars(lambda, c) is the
/// character of irrep lambda on class c (canonical class order). Explicit irrep
/// matrices are optional; one-dimensional irreps never need them.
struct CharacterTable {
    ConjugacyClasses classes;
    std::size_t group_order = 0;
    std::vector<std::size_t> dims;
    Matrix chars;
    std::vector<std::vector<Matrix>> irrep_matrices;  // [lambda][g], or empty

    std::size_t num_irreps() const { return dims.size(); }
    bool has_irrep_matrices() const { return !irrep_matrices.empty(); }

    Complex character(std::size_t lambda, std::size_t g) const {
        return chars(static_cast<Eigen::Index>(lambda), static_cast<Eigen::Index>(classes.class_of[g]));
    }

    bool can_build_matrices(std::size_t lambda) const { return dims[lambda] == 1 || has_irrep_matrices(); }

    /// d_lambda x d_lambda matrix of irrep lambda at element g.
    Matrix irrep_matrix(std::size_t lambda, std::size_t g) const {
        if (has_irrep_matrices()) {
            return irrep_matrices[lambda][g];
        }
        if (dims[lambda] != 1) {
            fail(ErrorKind::MissingIrrepMatrices,
                 "irrep " + std::to_string(lambda) + " has dimension " + std::to_string(dims[lambda]) +
                     " and the table carries no explicit matrices");
        }
        Matrix m(1, 1);
        m(0, 0) = character(lambda, g);
        return m;
    }
};

/// max over (lambda, lambda') of |(1/|G|) sum_i |[g_i]| chi_i chi'_i^* - delta|.
inline double orthogonality_defect(const CharacterTable &t) {
    double worst = 0.0;
    auto s = static_cast<Eigen::Index>(t.num_irreps());
    for (Eigen::Index a = 0; a < s; ++a) {
        for (Eigen::Index b = 0; b < s; ++b) {
            Complex acc = 0.0;
            for (Eigen::Index c = 0; c < s; ++c) {
                acc += static_cast<double>(t.classes.class_sizes[static_cast<std::size_t>(c)]) * t.chars(a, c) *
                       std::conj(t.chars(b, c));
            }
            acc /= static_cast<double>(t.group_order);
            worst = std::max(worst, std::abs(acc - Complex(a == b ? 1.0 : 0.0)));
        }
    }
    return worst;
}

/// Validates and assembles a character table for g.
inline CharacterTable make_character_table(const FiniteGroup &g, std::vector<std::size_t> dims, Matrix chars,
                                           std::vector<std::vector<Matrix>> irrep_matrices = {},
                                           const Tolerances &tol = {}) {
    CharacterTable t;
    t.classes = conjugacy_classes(g);
    t.group_order = g.order;
    const std::size_t s = t.classes.count();
    auto bad = [](const std::string &msg) { fail(ErrorKind::InvalidCharacterTable, msg); };
    if (dims.size() != s) {
        bad("expected " + std::to_string(s) + " irreps (one per conjugacy class), got " +
            std::to_string(dims.size()));
    }
    if (static_cast<std::size_t>(chars.rows()) != s || static_cast<std::size_t>(chars.cols()) != s) {
        bad("character matrix must be " + std::to_string(s) + " x " + std::to_string(s));
    }
    std::size_t sum_sq = 0;
    for (std::size_t l = 0; l < s; ++l) {
        if (dims[l] == 0) {
            bad("irrep dimensions must be positive");
        }
        sum_sq += dims[l] * dims[l];
        if (std::abs(chars(static_cast<Eigen::Index>(l), 0) - Complex(static_cast<double>(dims[l]))) > tol.orthogonality) {
            bad("character of irrep " + std::to_string(l) + " at the identity differs from its dimension");
        }
    }
    if (sum_sq != g.order) {
        bad("sum of squared irrep dimensions is " + std::to_string(sum_sq) + ", expected " + std::to_string(g.order));
    }
    for (std::size_t c = 0; c < s; ++c) {
        if (std::abs(chars(0, static_cast<Eigen::Index>(c)) - Complex(1.0)) > tol.orthogonality) {
            bad("row 0 must be the trivial irrep");
        }
    }
    t.dims = std::move(dims);
    t.chars = std::move(chars);
    double defect = orthogonality_defect(t);
    if (defect > tol.orthogonality) {
        bad("orthogonality relation violated by " + std::to_string(defect));
    }
    if (!irrep_matrices.empty()) {
        if (irrep_matrices.size() != s) {
            bad("irrep matrix list must have one entry per irrep");
        }
        for (std::size_t l = 0; l < s; ++l) {
            const auto &ms = irrep_matrices[l];
            const auto dl = static_cast<Eigen::Index>(t.dims[l]);
            if (ms.size() != g.order) {
                bad("irrep " + std::to_string(l) + " needs one matrix per group element");
            }
            for (std::size_t a = 0; a < g.order; ++a) {
                if (ms[a].rows() != dl || ms[a].cols() != dl) {
                    bad("irrep " + std::to_string(l) + " matrix " + std::to_string(a) + " has the wrong shape");
                }
                if (unitarity_defect(ms[a]) > tol.unitarity) {
                    bad("irrep " + std::to_string(l) + " matrix " + std::to_string(a) + " is not unitary");
                }
                if (std::abs(ms[a].trace() - t.character(l, a)) > tol.homomorphism) {
                    bad("irrep " + std::to_string(l) + " matrix " + std::to_string(a) +
                        " trace disagrees with the character");
                }
                for (std::size_t b = 0; b < g.order; ++b) {
                    if (max_abs(ms[a] * ms[b] - ms[g.mul(a, b)]) > tol.homomorphism) {
                        bad("irrep " + std::to_string(l) + " is not a homomorphism at (" + std::to_string(a) +
                            ", " + std::to_string(b) + ")");
                    }
                }
            }
        }
        t.irrep_matrices = std::move(irrep_matrices);
    }
    return t;
}

/// chi^(lambda)(g) = omega^(lambda g) for Z_N labeled by residues.
inline CharacterTable cyclic_character_table(const FiniteGroup &g) {
    const std::size_t n = g.order;
    Matrix chars(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t l = 0; l < n; ++l) {
        for (std::size_t k = 0; k < n; ++k) {
            chars(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) =
                root_of_unity(n, static_cast<long long>(l * k));
        }
    }
    return make_character_table(g, std::vector<std::size_t>(n, 1), chars);
}

inline CharacterTable klein_character_table(const FiniteGroup &g) {
    Matrix chars(4, 4);
    chars << 1, 1, 1, 1,
             1, 1, -1, -1,
             1, -1, 1, -1,
             1, -1, -1, 1;
    return make_character_table(g, {1, 1, 1, 1}, chars);
}

namespace detail {

/// The two-dimensional S3 irrep on the six elements in built-in order.
inline std::vector<Matrix> s3_two_dim_matrices(const FiniteGroup &g) {
    const double h = std::sqrt(3.0) / 2.0;
    Matrix c(2, 2);
    c << -0.5, -h, h, -0.5;
    Matrix s(2, 2);
    s << 1, 0, 0, -1;
    std::vector<Matrix> out(6);
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
            std::size_t x = 0;
            for (std::size_t k = 0; k < a; ++k) {
                x = g.mul(x, 3);
            }
            for (std::size_t k = 0; k < b; ++k) {
                x = g.mul(x, 1);
            }
            out[x] = matrix_power(s, a) * matrix_power(c, b);
        }
    }
    return out;
}

}  // namespace detail

inline CharacterTable s3_character_table(const FiniteGroup &g) {
    Matrix chars(3, 3);
    chars << 1, 1, 1,
             1, 1, -1,
             2, -1, 0;
    std::vector<std::vector<Matrix>> irreps(3);
    for (std::size_t a = 0; a < 6; ++a) {
        Matrix one(1, 1);
        one(0, 0) = 1.0;
        irreps[0].push_back(one);
        Matrix sign(1, 1);
        sign(0, 0) = a < 3 ? 1.0 : -1.0;
        irreps[1].push_back(sign);
    }
    irreps[2] = detail::s3_two_dim_matrices(g);
    return make_character_table(g, {1, 1, 2}, chars, irreps);
}

/// Table of a direct product from the tables of its factors. Irrep (la, lb) has
/// index la * s_b + lb; explicit matrices are Kronecker products.
inline CharacterTable product_character_table(const CharacterTable &ta, const FiniteGroup &b, const CharacterTable &tb,
                                              const FiniteGroup &ab) {
    auto classes = conjugacy_classes(ab);
    const std::size_t sa = ta.num_irreps();
    const std::size_t sb = tb.num_irreps();
    const std::size_t s = sa * sb;
    if (classes.count() != s) {
        fail(ErrorKind::InvalidCharacterTable, "class count of the product does not match");
    }
    Matrix chars(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(s));
    std::vector<std::size_t> dims(s);
    for (std::size_t la = 0; la < sa; ++la) {
        for (std::size_t lb = 0; lb < sb; ++lb) {
            std::size_t l = la * sb + lb;
            dims[l] = ta.dims[la] * tb.dims[lb];
            for (std::size_t c = 0; c < s; ++c) {
                std::size_t rep = classes.classes[c][0];
                chars(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(c)) =
                    ta.character(la, rep / b.order) * tb.character(lb, rep % b.order);
            }
        }
    }
    std::vector<std::vector<Matrix>> irreps;
    if (ta.has_irrep_matrices() || tb.has_irrep_matrices()) {
        irreps.resize(s);
        for (std::size_t la = 0; la < sa; ++la) {
            for (std::size_t lb = 0; lb < sb; ++lb) {
                for (std::size_t x = 0; x < ab.order; ++x) {
                    irreps[la * sb + lb].push_back(
                        kron(ta.irrep_matrix(la, x / b.order), tb.irrep_matrix(lb, x % b.order)));
                }
            }
        }
    }
    return make_character_table(ab, std::move(dims), std::move(chars), std::move(irreps));
}

inline CharacterTable factor_character_table(const GroupFactor &f, const FiniteGroup &g) {
    switch (f.kind) {
        case GroupFactor::Kind::Klein: return klein_character_table(g);
        case GroupFactor::Kind::S3: return s3_character_table(g);
        case GroupFactor::Kind::Cyclic: break;
    }
    return cyclic_character_table(g);
}

/// Character table for a built-in group name (see builtin_group).
inline CharacterTable builtin_character_table(const std::string &name) {
    auto factors = parse_group_name(name);
    FiniteGroup g = factor_group(factors[0]);
    CharacterTable t = factor_character_table(factors[0], g);
    for (std::size_t i = 1; i < factors.size(); ++i) {
        FiniteGroup h = factor_group(factors[i]);
        CharacterTable th = factor_character_table(factors[i], h);
        FiniteGroup gh = direct_product(g, h);
        t = product_character_table(t, h, th, gh);
        g = std::move(gh);
    }
    return t;
}

}  // namespace dfscodec
