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

#include <Eigen/SparseCore>
#include <string>
#include <vector>

#include "dfscodec/character_table.hpp"
#include "dfscodec/representation.hpp"
#include "dfscodec/statevec.hpp"

namespace dfscodec {

using SparseVec = Eigen::SparseVector<Complex>;

/// Largest d^r handled by the projector construction for non-diagonal reps.
inline constexpr std::size_t kMaxDenseIsotypicDim = std::size_t{1} << 14U;

struct IsotypicBlock {
    std::size_t irrep = 0;
    std::size_t carrier_dim = 0;
    std::size_t multiplicity = 0;
    /// vectors[beta][m] = |lambda, m, beta>; for fixed beta the d_lambda vectors
    /// transform under U_g^(x)r exactly like the columns of the irrep matrix.
    std::vector<std::vector<SparseVec>> vectors;
};

struct IsotypicDecomposition {
    std::size_t local_dim = 0;
    std::size_t power = 0;
    std::size_t group_order = 0;
    bool diagonal_path = false;
    std::vector<IsotypicBlock> blocks;  // one per irrep, in irrep order

    std::size_t total_dim() const { return ipow(local_dim, power); }

    /// Dense basis-change matrix. Columns run over irreps, then m, then beta,
    /// so V^dagger U_g^(x)r V = (+)_lambda U^(lambda)_g (x) I_alpha.
    Matrix basis_matrix() const {
        const std::size_t dim = total_dim();
        if (dim > kMaxDenseIsotypicDim) {
            fail(ErrorKind::Configuration, "basis matrix too large to materialize");
        }
        Matrix v = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        Eigen::Index col = 0;
        for (const auto &b : blocks) {
            for (std::size_t m = 0; m < b.carrier_dim; ++m) {
                for (std::size_t beta = 0; beta < b.multiplicity; ++beta) {
                    for (SparseVec::InnerIterator it(b.vectors[beta][m]); it; ++it) {
                        v(it.index(), col) = it.value();
                    }
                    ++col;
                }
            }
        }
        return v;
    }
};

inline Vector to_dense(const SparseVec &v) {
    Vector out = Vector::Zero(v.size());
    for (SparseVec::InnerIterator it(v); it; ++it) {
        out(it.index()) = it.value();
    }
    return out;
}

inline SparseVec to_sparse(const Vector &v) {
    SparseVec out(v.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (v(i) != Complex(0.0)) {
            out.insert(i) = v(i);
        }
    }
    return out;
}

/// True for Z_N labeled by residues with U_g = diag(omega^(n g)).
inline bool is_cyclic_diagonal_form(const UnitaryRep &u) {
    const FiniteGroup &g = u.group();
    const std::size_t n = g.order;
    if (!u.is_diagonal()) {
        return false;
    }
    for (std::size_t a = 0; a < n; ++a) {
        if (g.mul(1 % n, a) != (a + 1) % n) {
            return false;
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t k = 0; k < u.dim(); ++k) {
            auto kk = static_cast<Eigen::Index>(k);
            if (std::abs(u.matrix(a)(kk, kk) - root_of_unity(n, static_cast<long long>(k * a))) > 1e-12) {
                return false;
            }
        }
    }
    return true;
}

namespace detail {

inline IsotypicDecomposition decompose_diagonal(const UnitaryRep &u, std::size_t r, const CharacterTable &t,
                                                const MultiplicityVector &mv, const Tolerances &tol) {
    const std::size_t d = u.dim();
    const std::size_t dim = ipow(d, r);
    const std::size_t order = u.order();
    const std::size_t s = t.num_irreps();
    IsotypicDecomposition out;
    out.local_dim = d;
    out.power = r;
    out.group_order = order;
    out.diagonal_path = true;

    std::vector<std::vector<Complex>> diag(order, std::vector<Complex>(d));
    for (std::size_t g = 0; g < order; ++g) {
        for (std::size_t k = 0; k < d; ++k) {
            diag[g][k] = u.matrix(g)(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        }
    }
    std::vector<std::vector<std::size_t>> members(s);
    std::vector<Complex> eig(order);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        for (std::size_t g = 0; g < order; ++g) {
            Complex p = 1.0;
            std::size_t rest = idx;
            for (std::size_t q = 0; q < r; ++q) {
                p *= diag[g][rest % d];
                rest /= d;
            }
            eig[g] = p;
        }
        std::size_t found = s;
        for (std::size_t l = 0; l < s && found == s; ++l) {
            if (t.dims[l] != 1) {
                continue;
            }
            bool ok = true;
            for (std::size_t g = 0; g < order && ok; ++g) {
                ok = std::abs(eig[g] - t.character(l, g)) <= tol.homomorphism;
            }
            if (ok) {
                found = l;
            }
        }
        if (found == s) {
            fail(ErrorKind::InvalidCharacterTable,
                 "basis state " + std::to_string(idx) + " carries no character of the table");
        }
        members[found].push_back(idx);
    }

    const bool staircase = is_cyclic_diagonal_form(u);
    for (std::size_t l = 0; l < s; ++l) {
        auto &list = members[l];
        if (list.size() != mv.gammas[l]) {
            fail(ErrorKind::NumericalDegeneracy, "irrep " + std::to_string(l) + " has " + std::to_string(list.size()) +
                                                     " eigenvectors, expected " + std::to_string(mv.gammas[l]));
        }
        if (staircase && l >= 1 && l <= r) {
            // Last l qudits in |1>, the rest in |0>.
            std::size_t stair = (ipow(d, l) - 1) / (d - 1);
            auto it = std::find(list.begin(), list.end(), stair);
            if (it != list.end()) {
                list.erase(it);
                list.insert(list.begin(), stair);
            }
        }
        IsotypicBlock block;
        block.irrep = l;
        block.carrier_dim = 1;
        block.multiplicity = list.size();
        for (std::size_t idx : list) {
            SparseVec v(static_cast<Eigen::Index>(dim));
            v.insert(static_cast<Eigen::Index>(idx)) = 1.0;
            block.vectors.push_back({std::move(v)});
        }
        out.blocks.push_back(std::move(block));
    }
    return out;
}

/// sum_g c_g U_g^(x)r |e_idx>, built from products of matrix columns.
inline Vector weighted_orbit_of_basis(const UnitaryRep &u, std::size_t r, std::size_t idx,
                                      const std::vector<Complex> &coeff) {
    const std::size_t d = u.dim();
    std::vector<std::size_t> digits(r);
    std::size_t rest = idx;
    for (std::size_t q = r; q-- > 0;) {
        digits[q] = rest % d;
        rest /= d;
    }
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(ipow(d, r)));
    for (std::size_t g = 0; g < u.order(); ++g) {
        if (coeff[g] == Complex(0.0)) {
            continue;
        }
        Vector v = u.matrix(g).col(static_cast<Eigen::Index>(digits[0]));
        for (std::size_t q = 1; q < r; ++q) {
            v = kron(v, Vector(u.matrix(g).col(static_cast<Eigen::Index>(digits[q]))));
        }
        acc += coeff[g] * v;
    }
    return acc;
}

/// sum_g c_g U_g^(x)r |w>.
inline Vector weighted_orbit(const UnitaryRep &u, std::size_t r, const Vector &w, const std::vector<Complex> &coeff) {
    const std::size_t d = u.dim();
    Vector acc = Vector::Zero(w.size());
    for (std::size_t g = 0; g < u.order(); ++g) {
        if (coeff[g] == Complex(0.0)) {
            continue;
        }
        Vector v = w;
        apply_power(v, d, r, u.matrix(g), 0, r);
        acc += coeff[g] * v;
    }
    return acc;
}

inline IsotypicDecomposition decompose_projectors(const UnitaryRep &u, std::size_t r, const CharacterTable &t,
                                                  const MultiplicityVector &mv, const Tolerances &tol) {
    const std::size_t d = u.dim();
    const std::size_t dim = ipow(d, r);
    if (dim > kMaxDenseIsotypicDim) {
        fail(ErrorKind::Configuration, "d^r = " + std::to_string(dim) + " is too large for the projector construction");
    }
    const std::size_t order = u.order();
    IsotypicDecomposition out;
    out.local_dim = d;
    out.power = r;
    out.group_order = order;
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        IsotypicBlock block;
        block.irrep = l;
        block.carrier_dim = t.dims[l];
        block.multiplicity = mv.gammas[l];
        if (block.multiplicity == 0) {
            out.blocks.push_back(std::move(block));
            continue;
        }
        if (!t.can_build_matrices(l)) {
            fail(ErrorKind::MissingIrrepMatrices, "irrep " + std::to_string(l) + " of dimension " +
                                                      std::to_string(t.dims[l]) +
                                                      " occurs but the table has no explicit matrices");
        }
        const std::size_t dl = t.dims[l];
        const double scale = static_cast<double>(dl) / static_cast<double>(order);
        // coeff[m][g] = (d_l/|G|) conj(u_{m0}(g)) for P_{m0}.
        std::vector<std::vector<Complex>> coeff(dl, std::vector<Complex>(order));
        for (std::size_t g = 0; g < order; ++g) {
            Matrix ug = t.irrep_matrix(l, g);
            for (std::size_t m = 0; m < dl; ++m) {
                coeff[m][g] = scale * std::conj(ug(static_cast<Eigen::Index>(m), 0));
            }
        }
        std::vector<Vector> heads;
        for (std::size_t idx = 0; idx < dim && heads.size() < block.multiplicity; ++idx) {
            Vector w = weighted_orbit_of_basis(u, r, idx, coeff[0]);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto &h : heads) {
                    w -= h * h.dot(w);
                }
            }
            double nrm = w.norm();
            if (nrm > tol.gram_schmidt) {
                heads.push_back(w / nrm);
            }
        }
        if (heads.size() < block.multiplicity) {
            fail(ErrorKind::NumericalDegeneracy, "irrep " + std::to_string(l) + ": Gram-Schmidt found " +
                                                     std::to_string(heads.size()) + " of " +
                                                     std::to_string(block.multiplicity) + " copies");
        }
        for (const auto &h : heads) {
            std::vector<SparseVec> copy;
            copy.push_back(to_sparse(h));
            for (std::size_t m = 1; m < dl; ++m) {
                copy.push_back(to_sparse(weighted_orbit(u, r, h, coeff[m])));
            }
            block.vectors.push_back(std::move(copy));
        }
        out.blocks.push_back(std::move(block));
    }
    return out;
}

}  // namespace detail

/// Basis {|lambda, m, beta>} of (C^d)^(x)r adapted to U^(x)r. Diagonal reps of
/// abelian groups group computational basis states by character (lexicographic
/// order within a block; for the cyclic diagonal rep the staircase state with
/// the last lambda qudits set comes first). Otherwise matrix-element projectors
/// are applied to computational basis states in lexicographic order and the
/// images are Gram-Schmidt orthonormalized.
inline IsotypicDecomposition isotypic_decompose(const UnitaryRep &u, std::size_t r, const CharacterTable &t,
                                                const Tolerances &tol = {}) {
    if (r < 1) {
        fail(ErrorKind::Configuration, "tensor power must be at least 1");
    }
    if (!u.power_is_linear(r)) {
        fail(ErrorKind::InvalidRepresentation, "tensor power " + std::to_string(r) +
                                                   " of a projective rep is not a linear representation");
    }
    if (ipow(u.dim(), r) > kMaxAmplitudes) {
        fail(ErrorKind::Configuration, "d^r exceeds the 2^24 amplitude limit");
    }
    MultiplicityVector mv = multiplicities(u, t, r, tol);
    bool abelian = t.num_irreps() == t.group_order;
    if (abelian && u.is_diagonal()) {
        return detail::decompose_diagonal(u, r, t, mv, tol);
    }
    return detail::decompose_projectors(u, r, t, mv, tol);
}

}  // namespace dfscodec
