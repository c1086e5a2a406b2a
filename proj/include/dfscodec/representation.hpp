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
#include <limits>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "dfscodec/character_table.hpp"
#include "dfscodec/core.hpp"
#include "dfscodec/group.hpp"

namespace dfscodec {

struct RepOptions {
    /// Accept U_a U_b = c(a,b) U_ab with scalar c of finite order. The Pauli
    /// operators {I, X, iY, Z} are such a rep of K4.
    bool allow_projective = false;
    Tolerances tol{};
};

/// Map from group elements to d x d unitaries. Immutable once created.
class UnitaryRep {
  public:
    static UnitaryRep create(std::shared_ptr<const FiniteGroup> group, std::vector<Matrix> matrices,
                             std::string name = "custom", const RepOptions &opts = {}) {
        if (!group) {
            fail(ErrorKind::InvalidRepresentation, "null group");
        }
        const FiniteGroup &g = *group;
        if (matrices.size() != g.order) {
            fail(ErrorKind::InvalidRepresentation, "expected " + std::to_string(g.order) + " matrices, got " +
                                                       std::to_string(matrices.size()));
        }
        const Eigen::Index d = matrices[0].rows();
        if (d < 1) {
            fail(ErrorKind::InvalidRepresentation, "empty matrix");
        }
        for (std::size_t a = 0; a < g.order; ++a) {
            if (matrices[a].rows() != d || matrices[a].cols() != d) {
                fail(ErrorKind::InvalidRepresentation, "matrix " + std::to_string(a) + " is not " +
                                                           std::to_string(d) + " x " + std::to_string(d));
            }
            double defect = unitarity_defect(matrices[a]);
            if (defect > opts.tol.unitarity) {
                fail(ErrorKind::InvalidRepresentation,
                     "matrix " + std::to_string(a) + " is not unitary (defect " + std::to_string(defect) + ")");
            }
        }
        if (max_abs(matrices[0] - Matrix::Identity(d, d)) > opts.tol.homomorphism) {
            fail(ErrorKind::InvalidRepresentation, "identity element is not represented by the identity matrix");
        }
        matrices[0] = Matrix::Identity(d, d);

        UnitaryRep rep;
        rep.group_ = std::move(group);
        rep.matrices_ = std::move(matrices);
        rep.name_ = std::move(name);
        rep.multipliers_.assign(g.order, std::vector<Complex>(g.order, Complex(1.0)));
        bool projective = false;
        for (std::size_t a = 0; a < g.order; ++a) {
            for (std::size_t b = 0; b < g.order; ++b) {
                Matrix m = rep.matrices_[a] * rep.matrices_[b] * rep.matrices_[g.mul(a, b)].adjoint();
                Complex c = m(0, 0);
                double off = max_abs(m - c * Matrix::Identity(d, d));
                if (off > opts.tol.homomorphism || std::abs(std::abs(c) - 1.0) > opts.tol.homomorphism) {
                    fail(ErrorKind::InvalidRepresentation, "homomorphism violated at (" + std::to_string(a) +
                                                               ", " + std::to_string(b) + ")");
                }
                if (std::abs(c - 1.0) > opts.tol.homomorphism) {
                    if (!opts.allow_projective) {
                        fail(ErrorKind::InvalidRepresentation,
                             "homomorphism violated at (" + std::to_string(a) + ", " + std::to_string(b) +
                                 "): product differs from U_ab by a phase");
                    }
                    projective = true;
                }
                rep.multipliers_[a][b] = c;
            }
        }
        rep.cocycle_order_ = 1;
        if (projective) {
            rep.cocycle_order_ = 0;
            for (std::size_t n = 2; n <= 64 && rep.cocycle_order_ == 0; ++n) {
                bool ok = true;
                for (std::size_t a = 0; a < g.order && ok; ++a) {
                    for (std::size_t b = 0; b < g.order && ok; ++b) {
                        ok = std::abs(std::pow(rep.multipliers_[a][b], static_cast<double>(n)) - 1.0) <=
                             opts.tol.homomorphism * static_cast<double>(n);
                    }
                }
                if (ok) {
                    rep.cocycle_order_ = n;
                }
            }
            if (rep.cocycle_order_ == 0) {
                fail(ErrorKind::InvalidRepresentation, "projective phases are not roots of unity of order <= 64");
            }
        }
        rep.diagonal_ = true;
        for (const auto &m : rep.matrices_) {
            Matrix off = m;
            off.diagonal().setZero();
            if (max_abs(off) > 0.0) {
                rep.diagonal_ = false;
                break;
            }
        }
        return rep;
    }

    const FiniteGroup &group() const { return *group_; }
    std::shared_ptr<const FiniteGroup> group_ptr() const { return group_; }
    std::size_t dim() const { return static_cast<std::size_t>(matrices_[0].rows()); }
    std::size_t order() const { return group_->order; }
    const Matrix &matrix(std::size_t g) const { return matrices_[g]; }
    const std::vector<Matrix> &matrices() const { return matrices_; }
    const std::string &name() const { return name_; }

    /// c(a, b) with U_a U_b = c(a, b) U_ab.
    Complex multiplier(std::size_t a, std::size_t b) const { return multipliers_[a][b]; }
    bool is_projective() const { return cocycle_order_ != 1; }
    /// Smallest n with c(a, b)^n = 1 for all a, b; 1 for linear reps.
    std::size_t cocycle_order() const { return cocycle_order_; }
    /// Whether the n-fold tensor power is a linear representation.
    bool power_is_linear(std::size_t n) const { return n % cocycle_order_ == 0; }
    /// Exactly diagonal in the computational basis.
    bool is_diagonal() const { return diagonal_; }

  private:
    UnitaryRep() = default;

    std::shared_ptr<const FiniteGroup> group_;
    std::vector<Matrix> matrices_;
    std::string name_;
    std::vector<std::vector<Complex>> multipliers_;
    std::size_t cocycle_order_ = 1;
    bool diagonal_ = false;
};

/// Throws NotFaithful unless all matrices are pairwise distinct.
inline void require_faithful(const UnitaryRep &u, const Tolerances &tol = {}) {
    for (std::size_t a = 0; a < u.order(); ++a) {
        for (std::size_t b = a + 1; b < u.order(); ++b) {
            if (max_abs(u.matrix(a) - u.matrix(b)) <= tol.faithful) {
                fail(ErrorKind::NotFaithful, "elements " + std::to_string(a) + " and " + std::to_string(b) +
                                                 " have the same matrix");
            }
        }
    }
}

inline bool is_faithful(const UnitaryRep &u, const Tolerances &tol = {}) {
    try {
        require_faithful(u, tol);
    } catch (const Error &) {
        return false;
    }
    return true;
}

/// R_k |i> = |k i>.
inline UnitaryRep regular_rep(std::shared_ptr<const FiniteGroup> group) {
    const std::size_t n = group->order;
    std::vector<Matrix> ms(n, Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)));
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            ms[k](static_cast<Eigen::Index>(group->mul(k, i)), static_cast<Eigen::Index>(i)) = 1.0;
        }
    }
    return UnitaryRep::create(std::move(group), std::move(ms), "regular");
}

/// U_g = sum_n omega^(n g) |n><n|, n < d, for Z_N labeled by residues.
inline UnitaryRep cyclic_diagonal_rep(std::shared_ptr<const FiniteGroup> group, std::size_t d) {
    const std::size_t n = group->order;
    if (d < 1) {
        fail(ErrorKind::Configuration, "dimension must be positive");
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (group->mul(a, b) != (a + b) % n) {
                fail(ErrorKind::Configuration, "diagonal cyclic rep needs Z_N labeled by residues");
            }
        }
    }
    std::vector<Matrix> ms;
    for (std::size_t g = 0; g < n; ++g) {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
        for (std::size_t k = 0; k < d; ++k) {
            m(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) =
                root_of_unity(n, static_cast<long long>(k * g));
        }
        ms.push_back(m);
    }
    return UnitaryRep::create(std::move(group), std::move(ms), "diag:" + std::to_string(d));
}

/// {I, X, iY, Z} on e, x, y, z. Projective: X Z = -iY.
inline UnitaryRep pauli_rep(std::shared_ptr<const FiniteGroup> group) {
    if (group->order != 4 || !group->is_abelian()) {
        fail(ErrorKind::Configuration, "the Pauli rep is defined on the built-in K4");
    }
    Matrix id = Matrix::Identity(2, 2);
    Matrix x(2, 2);
    x << 0, 1, 1, 0;
    Matrix iy(2, 2);
    iy << 0, 1, -1, 0;
    Matrix z(2, 2);
    z << 1, 0, 0, -1;
    RepOptions opts;
    opts.allow_projective = true;
    return UnitaryRep::create(std::move(group), {id, x, iy, z}, "pauli", opts);
}

/// Irrep lambda of a table with explicit matrices, viewed as a rep.
inline UnitaryRep irrep_rep(std::shared_ptr<const FiniteGroup> group, const CharacterTable &t, std::size_t lambda) {
    std::vector<Matrix> ms;
    for (std::size_t g = 0; g < group->order; ++g) {
        ms.push_back(t.irrep_matrix(lambda, g));
    }
    return UnitaryRep::create(std::move(group), std::move(ms), "irrep:" + std::to_string(lambda));
}

/// Diagonal rep diag(omega_{N_1}^{i_1}, ..., omega_{N_k}^{i_k}) of a product of cyclic groups.
inline UnitaryRep product_diagonal_rep(std::shared_ptr<const FiniteGroup> group,
                                       const std::vector<std::size_t> &factor_orders) {
    const std::size_t k = factor_orders.size();
    std::vector<Matrix> ms;
    for (std::size_t x = 0; x < group->order; ++x) {
        Matrix m = Matrix::Zero(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        std::size_t rest = x;
        for (std::size_t j = k; j-- > 0;) {
            std::size_t coord = rest % factor_orders[j];
            rest /= factor_orders[j];
            m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) =
                root_of_unity(factor_orders[j], static_cast<long long>(coord));
        }
        ms.push_back(m);
    }
    return UnitaryRep::create(std::move(group), std::move(ms), "diag");
}

/// Built-in reps by name:
///   "builtin"        default rep of the group (Z_N: diag:2, K4: pauli, S3: builtin-2d,
///                    products of cyclic groups: diag)
///   "diag:<d>"       diagonal rep of Z_N in dimension d
///   "pauli"          K4 Pauli rep
///   "builtin-2d"     two-dimensional S3 irrep
///   "irrep:<l>"      irrep l of the built-in table
///   "regular"        regular rep
///   "diag"           product-of-cyclic diagonal rep
inline UnitaryRep builtin_rep(const std::string &group_name, std::shared_ptr<const FiniteGroup> group,
                              const std::string &rep_name) {
    auto factors = parse_group_name(group_name);
    bool all_cyclic = true;
    for (const auto &f : factors) {
        all_cyclic = all_cyclic && f.kind == GroupFactor::Kind::Cyclic;
    }
    auto unknown = [&]() -> void {
        fail(ErrorKind::Configuration, "unknown rep '" + rep_name + "' for group '" + group_name + "'");
    };
    std::string name = rep_name;
    if (name == "builtin") {
        if (factors.size() == 1) {
            switch (factors[0].kind) {
                case GroupFactor::Kind::Cyclic: name = "diag:2"; break;
                case GroupFactor::Kind::Klein: name = "pauli"; break;
                case GroupFactor::Kind::S3: name = "builtin-2d"; break;
            }
        } else if (all_cyclic) {
            name = "diag";
        } else {
            unknown();
        }
    }
    if (name == "regular") {
        return regular_rep(std::move(group));
    }
    if (name.rfind("diag:", 0) == 0) {
        if (factors.size() != 1 || factors[0].kind != GroupFactor::Kind::Cyclic) {
            unknown();
        }
        std::size_t d = std::stoul(name.substr(5));
        return cyclic_diagonal_rep(std::move(group), d);
    }
    if (name == "diag" && all_cyclic) {
        std::vector<std::size_t> orders;
        for (const auto &f : factors) {
            orders.push_back(f.n);
        }
        return product_diagonal_rep(std::move(group), orders);
    }
    if (name == "pauli" && factors.size() == 1 && factors[0].kind == GroupFactor::Kind::Klein) {
        return pauli_rep(std::move(group));
    }
    if (name == "builtin-2d" && factors.size() == 1 && factors[0].kind == GroupFactor::Kind::S3) {
        return irrep_rep(group, s3_character_table(*group), 2);
    }
    if (name.rfind("irrep:", 0) == 0) {
        std::size_t l = std::stoul(name.substr(6));
        CharacterTable t = builtin_character_table(group_name);
        if (l >= t.num_irreps()) {
            unknown();
        }
        return irrep_rep(std::move(group), t, l);
    }
    fail(ErrorKind::Configuration, "unknown rep '" + rep_name + "' for group '" + group_name + "'");
}

/// chi_c = tr(U_g)^power for any g in class c. Representative independence is
/// checked relative to the magnitude of the values.
inline Vector compound_character(const UnitaryRep &u, const ConjugacyClasses &classes, std::size_t power = 1,
                                 const Tolerances &tol = {}) {
    Vector chi(static_cast<Eigen::Index>(classes.count()));
    for (std::size_t c = 0; c < classes.count(); ++c) {
        Complex first = 0.0;
        for (std::size_t idx = 0; idx < classes.classes[c].size(); ++idx) {
            Complex t = u.matrix(classes.classes[c][idx]).trace();
            Complex v = power == 1 ? t : std::pow(t, static_cast<double>(power));
            if (idx == 0) {
                first = v;
            } else if (std::abs(v - first) > tol.homomorphism * std::max(1.0, std::abs(first))) {
                fail(ErrorKind::InvalidRepresentation,
                     "trace is not constant on conjugacy class " + std::to_string(c));
            }
        }
        chi(static_cast<Eigen::Index>(c)) = first;
    }
    return chi;
}

struct MultiplicityVector {
    std::size_t n = 0;
    std::vector<std::size_t> gammas;
    double max_residue = 0.0;
};

/// gamma_lambda = (1/|G|) sum_c |[c]| conj(chi^lambda_c) chi_c^n, rounded. The
/// residue bound is tol.multiplicity plus the rounding error that n-th powers of
/// double-precision traces can carry.
inline MultiplicityVector multiplicities(const UnitaryRep &u, const CharacterTable &t, std::size_t n,
                                         const Tolerances &tol = {}) {
    if (n < 1) {
        fail(ErrorKind::Configuration, "tensor power must be at least 1");
    }
    if (t.group_order != u.order()) {
        fail(ErrorKind::InvalidCharacterTable, "character table belongs to a different group");
    }
    if (!u.power_is_linear(n)) {
        fail(ErrorKind::InvalidRepresentation, "power " + std::to_string(n) + " of projective rep '" + u.name() +
                                                   "' is not a linear representation");
    }
    Vector base = compound_character(u, t.classes, 1, tol);
    const double dn = std::pow(static_cast<double>(u.dim()), static_cast<double>(n));
    const double fp_bound = 64.0 * static_cast<double>(n) * std::numeric_limits<double>::epsilon() * dn;
    if (fp_bound > 0.1) {
        fail(ErrorKind::NumericalDegeneracy,
             "d^n = " + std::to_string(dn) + " is too large for double precision character arithmetic");
    }
    const double threshold = tol.multiplicity + fp_bound;
    MultiplicityVector mv;
    mv.n = n;
    double total = 0.0;
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < t.classes.count(); ++c) {
            auto ci = static_cast<Eigen::Index>(c);
            acc += static_cast<double>(t.classes.class_sizes[c]) *
                   std::conj(t.chars(static_cast<Eigen::Index>(l), ci)) *
                   std::pow(base(ci), static_cast<double>(n));
        }
        acc /= static_cast<double>(t.group_order);
        double rounded = std::round(acc.real());
        double residue = std::max(std::abs(acc.real() - rounded), std::abs(acc.imag()));
        mv.max_residue = std::max(mv.max_residue, residue);
        if (residue > threshold || rounded < 0.0) {
            fail(ErrorKind::NonIntegerMultiplicity, "irrep " + std::to_string(l) + " at power " + std::to_string(n) +
                                                        " has multiplicity " + std::to_string(acc.real()) + " + " +
                                                        std::to_string(acc.imag()) + "i");
        }
        mv.gammas.push_back(static_cast<std::size_t>(rounded));
        total += rounded * static_cast<double>(t.dims[l]);
    }
    if (total != dn) {
        fail(ErrorKind::NonIntegerMultiplicity, "dimension accounting failed at power " + std::to_string(n));
    }
    return mv;
}

inline bool contains_regular(const MultiplicityVector &mv, const CharacterTable &t) {
    for (std::size_t l = 0; l < t.num_irreps(); ++l) {
        if (mv.gammas[l] < t.dims[l]) {
            return false;
        }
    }
    return true;
}

inline constexpr std::size_t kDefaultRMax = 32;

/// Smallest r <= r_max whose tensor power contains the regular rep. For
/// projective reps only linear powers are considered.
inline std::size_t min_r(const UnitaryRep &u, const CharacterTable &t, std::size_t r_max = kDefaultRMax,
                         const Tolerances &tol = {}) {
    require_faithful(u, tol);
    for (std::size_t r = 1; r <= r_max; ++r) {
        if (!u.power_is_linear(r)) {
            continue;
        }
        if (contains_regular(multiplicities(u, t, r, tol), t)) {
            return r;
        }
    }
    fail(ErrorKind::RMaxExceeded, "no tensor power up to " + std::to_string(r_max) +
                                      " contains the regular representation");
}

}  // namespace dfscodec
