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
#include <array>
#include <cctype>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dfscodec/core.hpp"

namespace dfscodec {

inline constexpr std::size_t kMaxGroupOrder = 64;

/// A finite group given by its Cayley table. The identity is always index 0.
struct FiniteGroup {
    std::string name;
    std::size_t order = 0;
    std::vector<std::vector<std::size_t>> cayley;
    std::vector<std::size_t> inverse;
    std::vector<std::string> labels;
    std::vector<std::size_t> generators;

    std::size_t identity() const { return 0; }
    std::size_t mul(std::size_t a, std::size_t b) const { return cayley[a][b]; }
    std::size_t inv(std::size_t a) const { return inverse[a]; }

    bool is_abelian() const {
        for (std::size_t i = 0; i < order; ++i) {
            for (std::size_t k = i + 1; k < order; ++k) {
                if (cayley[i][k] != cayley[k][i]) {
                    return false;
                }
            }
        }
        return true;
    }

    std::string label(std::size_t g) const {
        return g < labels.size() ? labels[g] : std::to_string(g);
    }
};

struct ConjugacyClasses {
    std::vector<std::vector<std::size_t>> classes;
    std::vector<std::size_t> class_of;
    std::vector<std::size_t> class_sizes;

    std::size_t count() const { return classes.size(); }
};

namespace detail {

inline std::string triple(std::size_t i, std::size_t j, std::size_t k) {
    return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

}  // namespace detail

/// Checks raw Cayley data and builds a FiniteGroup. If the identity is not at
/// index 0 the elements are relabeled by swapping it with element 0.
inline FiniteGroup validate_group(const std::vector<std::vector<long long>> &raw,
                                  std::vector<std::string> labels = {}, std::string name = "custom") {
    const std::size_t n = raw.size();
    if (n == 0) {
        fail(ErrorKind::NotAGroup, "empty Cayley table");
    }
    if (n > kMaxGroupOrder) {
        fail(ErrorKind::Configuration,
             "group order " + std::to_string(n) + " exceeds the supported maximum of " +
                 std::to_string(kMaxGroupOrder));
    }
    if (!labels.empty() && labels.size() != n) {
        fail(ErrorKind::NotAGroup, "label count does not match the table size");
    }
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) {
        if (raw[i].size() != n) {
            fail(ErrorKind::NotAGroup, "row " + std::to_string(i) + " has length " +
                                           std::to_string(raw[i].size()) + ", expected " +
                                           std::to_string(n));
        }
        for (std::size_t k = 0; k < n; ++k) {
            long long v = raw[i][k];
            if (v < 0 || static_cast<std::size_t>(v) >= n) {
                fail(ErrorKind::NotAGroup, "closure fails: entry [" + std::to_string(i) + "][" +
                                               std::to_string(k) + "] = " + std::to_string(v) +
                                               " is out of range");
            }
            t[i][k] = static_cast<std::size_t>(v);
        }
    }

    std::optional<std::size_t> e;
    for (std::size_t c = 0; c < n && !e; ++c) {
        bool ok = true;
        for (std::size_t k = 0; k < n && ok; ++k) {
            ok = t[c][k] == k && t[k][c] == k;
        }
        if (ok) {
            e = c;
        }
    }
    if (!e) {
        fail(ErrorKind::NotAGroup, "no two-sided identity element");
    }

    if (*e != 0) {
        // Swap element indices 0 and e everywhere.
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i) {
            perm[i] = i;
        }
        std::swap(perm[0], perm[*e]);
        std::vector<std::vector<std::size_t>> s(n, std::vector<std::size_t>(n));
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                s[perm[i]][perm[k]] = perm[t[i][k]];
            }
        }
        t = std::move(s);
        if (!labels.empty()) {
            std::swap(labels[0], labels[*e]);
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (t[t[i][j]][k] != t[i][t[j][k]]) {
                    fail(ErrorKind::NotAGroup, "associativity fails for triple " + detail::triple(i, j, k));
                }
            }
        }
    }

    std::vector<std::size_t> inverse(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (t[i][k] == 0) {
                if (t[k][i] != 0) {
                    fail(ErrorKind::NotAGroup, "element " + std::to_string(k) +
                                                   " is a right but not a left inverse of " +
                                                   std::to_string(i));
                }
                inverse[i] = k;
                break;
            }
        }
        if (inverse[i] == n) {
            fail(ErrorKind::NotAGroup, "element " + std::to_string(i) + " has no inverse");
        }
    }
    // With identity, inverses and associativity every row and column is a
    // permutation; the scan below guards against inconsistent input anyway.
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<bool> row(n, false);
        std::vector<bool> col(n, false);
        for (std::size_t k = 0; k < n; ++k) {
            if (row[t[i][k]] || col[t[k][i]]) {
                fail(ErrorKind::NotAGroup, "row or column " + std::to_string(i) + " is not a permutation");
            }
            row[t[i][k]] = true;
            col[t[k][i]] = true;
        }
    }

    FiniteGroup g;
    g.name = std::move(name);
    g.order = n;
    g.cayley = std::move(t);
    g.inverse = std::move(inverse);
    g.labels = std::move(labels);
    return g;
}

inline std::vector<std::vector<long long>> raw_table(const FiniteGroup &g) {
    std::vector<std::vector<long long>> out(g.order, std::vector<long long>(g.order));
    for (std::size_t i = 0; i < g.order; ++i) {
        for (std::size_t k = 0; k < g.order; ++k) {
            out[i][k] = static_cast<long long>(g.cayley[i][k]);
        }
    }
    return out;
}

/// Conjugacy classes sorted by their minimal element, so the identity class is first.
inline ConjugacyClasses conjugacy_classes(const FiniteGroup &g) {
    ConjugacyClasses out;
    out.class_of.assign(g.order, g.order);
    for (std::size_t i = 0; i < g.order; ++i) {
        if (out.class_of[i] != g.order) {
            continue;
        }
        std::size_t id = out.classes.size();
        std::vector<std::size_t> members;
        for (std::size_t l = 0; l < g.order; ++l) {
            std::size_t c = g.mul(g.mul(l, i), g.inv(l));
            if (out.class_of[c] == g.order) {
                out.class_of[c] = id;
                members.push_back(c);
            }
        }
        std::sort(members.begin(), members.end());
        out.class_sizes.push_back(members.size());
        out.classes.push_back(std::move(members));
    }
    return out;
}

/// Elements of the subgroup generated by gens, in increasing index order.
inline std::vector<std::size_t> generated_subgroup(const FiniteGroup &g, const std::vector<std::size_t> &gens) {
    std::vector<bool> seen(g.order, false);
    std::vector<std::size_t> frontier{0};
    seen[0] = true;
    while (!frontier.empty()) {
        std::size_t a = frontier.back();
        frontier.pop_back();
        for (std::size_t s : gens) {
            std::size_t b = g.mul(a, s);
            if (!seen[b]) {
                seen[b] = true;
                frontier.push_back(b);
            }
        }
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < g.order; ++i) {
        if (seen[i]) {
            out.push_back(i);
        }
    }
    return out;
}

inline std::size_t element_order(const FiniteGroup &g, std::size_t a) {
    std::size_t k = 1;
    for (std::size_t x = a; x != 0; x = g.mul(x, a)) {
        ++k;
    }
    return k;
}

inline FiniteGroup cyclic_group(std::size_t n) {
    if (n == 0) {
        fail(ErrorKind::Configuration, "cyclic group order must be at least 1");
    }
    std::vector<std::vector<long long>> t(n, std::vector<long long>(n));
    std::vector<std::string> labels(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels[i] = std::to_string(i);
        for (std::size_t k = 0; k < n; ++k) {
            t[i][k] = static_cast<long long>((i + k) % n);
        }
    }
    FiniteGroup g = validate_group(t, labels, "z" + std::to_string(n));
    if (n > 1) {
        g.generators = {1};
    }
    return g;
}

/// Klein four-group as XOR on two bits: e = 0, x = 1, y = 2, z = 3.
inline FiniteGroup klein_group() {
    std::vector<std::vector<long long>> t(4, std::vector<long long>(4));
    for (long long i = 0; i < 4; ++i) {
        for (long long k = 0; k < 4; ++k) {
            t[i][k] = i ^ k;
        }
    }
    FiniteGroup g = validate_group(t, {"e", "x", "y", "z"}, "k4");
    g.generators = {1, 2};
    return g;
}

namespace detail {

// Permutations of {0,1,2} as images p[i]; composition (a*b)(i) = a(b(i)).
inline const std::vector<std::array<int, 3>> &s3_perms() {
    static const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2},  // (1)(2)(3)
        {1, 2, 0},  // (123)
        {2, 0, 1},  // (132)
        {1, 0, 2},  // (12)(3)
        {2, 1, 0},  // (13)(2)
        {0, 2, 1},  // (23)(1)
    };
    return perms;
}

}  // namespace detail

/// Symmetric group on three symbols in cycle notation. The product a*b applies b first.
inline FiniteGroup symmetric_group_s3() {
    const auto &p = detail::s3_perms();
    std::vector<std::vector<long long>> t(6, std::vector<long long>(6));
    for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<int, 3> c{};
            for (int i = 0; i < 3; ++i) {
                c[static_cast<std::size_t>(i)] = p[a][static_cast<std::size_t>(p[b][static_cast<std::size_t>(i)])];
            }
            auto it = std::find(p.begin(), p.end(), c);
            t[a][b] = it - p.begin();
        }
    }
    FiniteGroup g = validate_group(t, {"(1)(2)(3)", "(123)", "(132)", "(12)(3)", "(13)(2)", "(23)(1)"}, "s3");
    g.generators = {1, 3};
    return g;
}

/// Direct product; element (i, j) has index i * |b| + j.
inline FiniteGroup direct_product(const FiniteGroup &a, const FiniteGroup &b) {
    std::size_t n = a.order * b.order;
    if (n > kMaxGroupOrder) {
        fail(ErrorKind::Configuration, "direct product order " + std::to_string(n) +
                                           " exceeds the supported maximum of " +
                                           std::to_string(kMaxGroupOrder));
    }
    std::vector<std::vector<long long>> t(n, std::vector<long long>(n));
    std::vector<std::string> labels(n);
    for (std::size_t i1 = 0; i1 < a.order; ++i1) {
        for (std::size_t j1 = 0; j1 < b.order; ++j1) {
            std::size_t x = i1 * b.order + j1;
            labels[x] = "(" + a.label(i1) + "," + b.label(j1) + ")";
            for (std::size_t i2 = 0; i2 < a.order; ++i2) {
                for (std::size_t j2 = 0; j2 < b.order; ++j2) {
                    std::size_t y = i2 * b.order + j2;
                    t[x][y] = static_cast<long long>(a.mul(i1, i2) * b.order + b.mul(j1, j2));
                }
            }
        }
    }
    FiniteGroup g = validate_group(t, labels, a.name + "x" + b.name);
    for (std::size_t s : a.generators) {
        g.generators.push_back(s * b.order);
    }
    for (std::size_t s : b.generators) {
        g.generators.push_back(s);
    }
    return g;
}

/// One factor of a built-in group name.
struct GroupFactor {
    enum class Kind { Cyclic, Klein, S3 } kind;
    std::size_t n = 0;
};

/// Parses names such as "z8", "k4", "s3" and products "z4xz2".
inline std::vector<GroupFactor> parse_group_name(const std::string &name) {
    std::string s;
    for (char c : name) {
        if (c != '_' && c != ' ') {
            s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        }
    }
    std::vector<GroupFactor> out;
    std::size_t pos = 0;
    auto bad = [&]() { fail(ErrorKind::Configuration, "unknown built-in group '" + name + "'"); };
    while (pos < s.size()) {
        if (s.compare(pos, 2, "k4") == 0) {
            out.push_back({GroupFactor::Kind::Klein, 4});
            pos += 2;
        } else if (s.compare(pos, 2, "s3") == 0) {
            out.push_back({GroupFactor::Kind::S3, 6});
            pos += 2;
        } else if (s[pos] == 'z') {
            std::size_t end = pos + 1;
            while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) {
                ++end;
            }
            if (end == pos + 1 || end - pos > 4) {
                bad();
            }
            std::size_t n = std::stoul(s.substr(pos + 1, end - pos - 1));
            if (n == 0) {
                bad();
            }
            out.push_back({GroupFactor::Kind::Cyclic, n});
            pos = end;
        } else {
            bad();
        }
        if (pos < s.size()) {
            if (s[pos] != 'x') {
                bad();
            }
            ++pos;
            if (pos == s.size()) {
                bad();
            }
        }
    }
    if (out.empty()) {
        bad();
    }
    return out;
}

inline FiniteGroup factor_group(const GroupFactor &f) {
    switch (f.kind) {
        case GroupFactor::Kind::Klein: return klein_group();
        case GroupFactor::Kind::S3: return symmetric_group_s3();
        case GroupFactor::Kind::Cyclic: break;
    }
    if (f.n > kMaxGroupOrder) {
        fail(ErrorKind::Configuration, "group order " + std::to_string(f.n) +
                                           " exceeds the supported maximum of " +
                                           std::to_string(kMaxGroupOrder));
    }
    return cyclic_group(f.n);
}

inline FiniteGroup builtin_group(const std::string &name) {
    auto factors = parse_group_name(name);
    FiniteGroup g = factor_group(factors[0]);
    for (std::size_t i = 1; i < factors.size(); ++i) {
        g = direct_product(g, factor_group(factors[i]));
    }
    return g;
}

/// Abelian group written as a product of cyclic subgroups: every element is
/// prod_j generators[j]^{l_j} for a unique l with 0 <= l_j < orders[j].
struct AbelianDecomposition {
    std::vector<std::size_t> generators;
    std::vector<std::size_t> orders;
};

/// Exponent vector of every element; fails unless the decomposition is a bijection.
inline std::vector<std::vector<std::size_t>> abelian_coordinates(const FiniteGroup &g,
                                                                 const AbelianDecomposition &dec) {
    if (!g.is_abelian()) {
        fail(ErrorKind::NotAbelian, "group '" + g.name + "' is not abelian");
    }
    if (dec.generators.size() != dec.orders.size() || dec.generators.empty()) {
        fail(ErrorKind::InvalidDecomposition, "generator and order lists must be nonempty and of equal length");
    }
    std::size_t total = 1;
    for (std::size_t j = 0; j < dec.generators.size(); ++j) {
        if (dec.generators[j] >= g.order || dec.orders[j] == 0) {
            fail(ErrorKind::InvalidDecomposition, "bad generator entry " + std::to_string(j));
        }
        if (element_order(g, dec.generators[j]) != dec.orders[j]) {
            fail(ErrorKind::InvalidDecomposition, "generator " + std::to_string(dec.generators[j]) +
                                                      " does not have order " + std::to_string(dec.orders[j]));
        }
        total *= dec.orders[j];
    }
    if (total != g.order) {
        fail(ErrorKind::InvalidDecomposition, "product of generator orders differs from |G|");
    }
    std::vector<std::vector<std::size_t>> coords(g.order);
    std::vector<std::size_t> l(dec.orders.size(), 0);
    for (std::size_t count = 0; count < total; ++count) {
        std::size_t x = 0;
        for (std::size_t j = 0; j < l.size(); ++j) {
            for (std::size_t k = 0; k < l[j]; ++k) {
                x = g.mul(x, dec.generators[j]);
            }
        }
        if (!coords[x].empty()) {
            fail(ErrorKind::InvalidDecomposition, "two exponent vectors give element " + std::to_string(x));
        }
        coords[x] = l;
        for (std::size_t j = l.size(); j-- > 0;) {
            if (++l[j] < dec.orders[j]) {
                break;
            }
            l[j] = 0;
        }
    }
    return coords;
}

/// Decomposition for built-in abelian groups. For K4 the generators are (y, x)
/// so that the binary label of every element equals its index.
inline std::optional<AbelianDecomposition> builtin_abelian_decomposition(const std::string &name) {
    auto factors = parse_group_name(name);
    std::vector<std::size_t> sizes;
    for (const auto &f : factors) {
        sizes.push_back(f.n);
    }
    AbelianDecomposition dec;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::size_t stride = 1;
        for (std::size_t k = i + 1; k < factors.size(); ++k) {
            stride *= sizes[k];
        }
        switch (factors[i].kind) {
            case GroupFactor::Kind::S3: return std::nullopt;
            case GroupFactor::Kind::Klein:
                dec.generators.push_back(2 * stride);
                dec.orders.push_back(2);
                dec.generators.push_back(1 * stride);
                dec.orders.push_back(2);
                break;
            case GroupFactor::Kind::Cyclic:
                if (factors[i].n > 1) {
                    dec.generators.push_back(1 * stride);
                    dec.orders.push_back(factors[i].n);
                }
                break;
        }
    }
    if (dec.generators.empty()) {
        return std::nullopt;
    }
    return dec;
}

}  // namespace dfscodec
