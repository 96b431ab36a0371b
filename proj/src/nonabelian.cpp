// Copyright 2026 The stabtherm Authors
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


#include "stabtherm/nonabelian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <functional>
#include <random>

#include "stabtherm/errors.hpp"

namespace stabtherm {

namespace {

std::vector<std::size_t> powers(std::size_t base, std::size_t count) {
    std::vector<std::size_t> p(count + 1, 1);
    for (std::size_t k = 1; k <= count; ++k) p[k] = p[k - 1] * base;
    return p;
}

std::size_t digit(std::size_t index, std::size_t link, const std::vector<std::size_t>& pw, std::size_t d) {
    return (index / pw[link]) % d;
}

std::size_t act(const FiniteGroup& g, std::size_t x, std::size_t h, Orientation o) {
    return o == Orientation::Plus ? g.mul(h, x) : g.mul(x, g.inverse(h));
}

void check_pattern(const std::vector<Orientation>& pattern, const char* what) {
    if (pattern.size() != 4) throw ValidationError(std::string(what) + ": pattern must list exactly four links");
}

Vector random_vector(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> n;
    Vector v(static_cast<Eigen::Index>(dim));
    for (Eigen::Index k = 0; k < v.size(); ++k) v(k) = cplx(n(rng), n(rng));
    return v / v.norm();
}

std::size_t shared_links(const Star& s, const Loop& l) {
    std::size_t n = 0;
    for (const auto& a : s) {
        for (const auto& b : l) n += a.link == b.link;
    }
    return n;
}

Matrix dense_from(const std::function<Vector(const Vector&)>& f, std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    Matrix m(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        Vector e = Vector::Zero(n);
        e(k) = 1.0;
        m.col(k) = f(e);
    }
    return m;
}

}  // namespace

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
    if (n == 0 || n > kMaxGroupOrder) throw ValidationError("cyclic group order must lie in 1..24");
    std::vector<std::vector<std::size_t>> t(n, std::vector<std::size_t>(n));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < n; ++a) {
        names.push_back(std::to_string(a));
        for (std::size_t b = 0; b < n; ++b) t[a][b] = (a + b) % n;
    }
    return from_table(std::move(t), std::move(names), "Z" + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric(std::size_t n) {
    if (n == 0 || n > 4) throw ValidationError("symmetric group degree must lie in 1..4");
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
        perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    const std::size_t order = perms.size();
    std::vector<std::vector<std::size_t>> t(order, std::vector<std::size_t>(order));
    std::vector<std::string> names;
    for (std::size_t a = 0; a < order; ++a) {
        std::string name = "[";
        for (std::size_t k = 0; k < n; ++k) name += (k ? "," : "") + std::to_string(perms[a][k]);
        names.push_back(name + "]");
        for (std::size_t b = 0; b < order; ++b) {
            std::vector<std::size_t> c(n);
            for (std::size_t x = 0; x < n; ++x) c[x] = perms[a][perms[b][x]];
            t[a][b] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
        }
    }
    return from_table(std::move(t), std::move(names), "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<std::size_t>> table, std::vector<std::string> names,
                                    std::string label) {
    const std::size_t n = table.size();
    if (n == 0 || n > kMaxGroupOrder) throw ValidationError("group order must lie in 1..24");
    for (const auto& row : table) {
        if (row.size() != n) throw ValidationError("multiplication table is not square");
        for (auto v : row) {
            if (v >= n) throw ValidationError("multiplication table entry out of range");
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        std::vector<bool> row_seen(n, false), col_seen(n, false);
        for (std::size_t b = 0; b < n; ++b) {
            if (row_seen[table[a][b]] || col_seen[table[b][a]]) {
                throw ValidationError("multiplication table is not a Latin square");
            }
            row_seen[table[a][b]] = true;
            col_seen[table[b][a]] = true;
        }
    }
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                if (table[table[a][b]][c] != table[a][table[b][c]]) {
                    throw ValidationError("multiplication table is not associative");
                }
            }
        }
    }
    FiniteGroup g;
    g.label_ = std::move(label);
    bool found = false;
    for (std::size_t e = 0; e < n && !found; ++e) {
        bool ok = true;
        for (std::size_t a = 0; a < n && ok; ++a) ok = table[e][a] == a && table[a][e] == a;
        if (ok) {
            g.identity_ = e;
            found = true;
        }
    }
    if (!found) throw ValidationError("multiplication table has no identity");
    g.table_ = std::move(table);
    if (names.empty()) {
        for (std::size_t a = 0; a < n; ++a) names.push_back(std::to_string(a));
    }
    if (names.size() != n) throw ValidationError("element name count does not match the group order");
    g.names_ = std::move(names);
    g.inverse_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            if (g.table_[a][b] == g.identity_) g.inverse_[a] = b;
        }
    }
    std::vector<bool> done(n, false);
    for (std::size_t a = 0; a < n; ++a) {
        if (done[a]) continue;
        std::vector<std::size_t> cls;
        for (std::size_t x = 0; x < n; ++x) {
            const std::size_t c = g.mul(g.mul(x, a), g.inverse_[x]);
            if (!done[c]) {
                done[c] = true;
                cls.push_back(c);
            }
        }
        std::sort(cls.begin(), cls.end());
        std::vector<std::size_t> cent;
        for (std::size_t x = 0; x < n; ++x) {
            if (g.mul(x, a) == g.mul(a, x)) cent.push_back(x);
        }
        g.classes_.push_back(std::move(cls));
        g.centralizers_.push_back(std::move(cent));
    }
    if (g.classes_[g.class_of(g.identity_)].size() != 1) throw ValidationError("identity class is not a singleton");
    return g;
}

bool FiniteGroup::is_abelian() const {
    return std::all_of(classes_.begin(), classes_.end(), [](const auto& c) { return c.size() == 1; });
}

std::size_t FiniteGroup::class_of(std::size_t a) const {
    for (std::size_t k = 0; k < classes_.size(); ++k) {
        if (std::binary_search(classes_[k].begin(), classes_[k].end(), a)) return k;
    }
    throw ValidationError("element index out of range");
}

char orientation_symbol(Orientation o) { return o == Orientation::Plus ? '+' : '-'; }

Orientation parse_orientation(char c) {
    if (c == '+') return Orientation::Plus;
    if (c == '-') return Orientation::Minus;
    throw ValidationError(std::string("orientation must be '+' or '-', got '") + c + "'");
}

Matrix left_multiplication(const FiniteGroup& g, std::size_t h) {
    const auto n = static_cast<Eigen::Index>(g.order());
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t x = 0; x < g.order(); ++x) m(static_cast<Eigen::Index>(g.mul(h, x)), static_cast<Eigen::Index>(x)) = 1.0;
    return m;
}

Matrix right_multiplication(const FiniteGroup& g, std::size_t h) {
    const auto n = static_cast<Eigen::Index>(g.order());
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t x = 0; x < g.order(); ++x) {
        m(static_cast<Eigen::Index>(g.mul(x, g.inverse(h))), static_cast<Eigen::Index>(x)) = 1.0;
    }
    return m;
}

Matrix element_projector(const FiniteGroup& g, std::size_t h, Orientation o) {
    const auto n = static_cast<Eigen::Index>(g.order());
    Matrix m = Matrix::Zero(n, n);
    const auto k = static_cast<Eigen::Index>(o == Orientation::Plus ? h : g.inverse(h));
    m(k, k) = 1.0;
    return m;
}

QuditOps qudit_ops(const FiniteGroup& g) {
    QuditOps ops;
    for (std::size_t h = 0; h < g.order(); ++h) {
        ops.left.push_back(left_multiplication(g, h));
        ops.right.push_back(right_multiplication(g, h));
        ops.proj_plus.push_back(element_projector(g, h, Orientation::Plus));
        ops.proj_minus.push_back(element_projector(g, h, Orientation::Minus));
    }
    return ops;
}

std::vector<Orientation> standard_vertex_pattern() {
    return {Orientation::Plus, Orientation::Plus, Orientation::Minus, Orientation::Minus};
}

std::vector<Orientation> standard_plaquette_pattern() {
    return {Orientation::Minus, Orientation::Minus, Orientation::Plus, Orientation::Plus};
}

std::size_t patch_dimension(const FiniteGroup& g, std::size_t num_links) {
    double dim = std::pow(static_cast<double>(g.order()), static_cast<double>(num_links));
    if (dim > 1e9) throw CapacityError("patch register is too large");
    return static_cast<std::size_t>(std::llround(dim));
}

QuditOperator vertex_op(const FiniteGroup& g, const std::vector<Orientation>& pattern) {
    check_pattern(pattern, "vertex_op");
    const std::size_t dim = patch_dimension(g, 4);
    if (dim > kDenseQuditDimLimit) throw CapacityError("vertex_op: dense operator exceeds the qudit limit");
    Star star;
    for (std::size_t k = 0; k < 4; ++k) star[k] = {k, pattern[k]};
    QuditOperator out{g.order(), {0, 1, 2, 3}, {}};
    out.matrix = dense_from([&](const Vector& v) { return apply_vertex(g, star, 4, v); }, dim);
    return out;
}

QuditOperator plaquette_op(const FiniteGroup& g, const std::vector<Orientation>& pattern) {
    check_pattern(pattern, "plaquette_op");
    const std::size_t dim = patch_dimension(g, 4);
    if (dim > kDenseQuditDimLimit) throw CapacityError("plaquette_op: dense operator exceeds the qudit limit");
    Loop loop;
    for (std::size_t k = 0; k < 4; ++k) loop[k] = {k, pattern[k]};
    QuditOperator out{g.order(), {0, 1, 2, 3}, Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim))};
    for (std::size_t c = 0; c < dim; ++c) {
        if (loop_is_flat(g, loop, 4, c)) out.matrix(static_cast<Eigen::Index>(c), static_cast<Eigen::Index>(c)) = 1.0;
    }
    return out;
}

Vector apply_vertex(const FiniteGroup& g, const Star& star, std::size_t num_links, const Vector& psi) {
    const std::size_t d = g.order();
    const auto pw = powers(d, num_links);
    if (static_cast<std::size_t>(psi.size()) != pw[num_links]) throw DimensionError("apply_vertex: vector size");
    for (const auto& a : star) {
        if (a.link >= num_links) throw DimensionError("apply_vertex: link out of range");
    }
    Vector out = Vector::Zero(psi.size());
    const double w = 1.0 / static_cast<double>(d);
    for (std::size_t h = 0; h < d; ++h) {
        for (std::size_t b = 0; b < pw[num_links]; ++b) {
            std::size_t image = b;
            for (const auto& a : star) {
                const std::size_t x = digit(b, a.link, pw, d);
                image = image - x * pw[a.link] + act(g, x, h, a.orientation) * pw[a.link];
            }
            out(static_cast<Eigen::Index>(image)) += w * psi(static_cast<Eigen::Index>(b));
        }
    }
    return out;
}

bool loop_is_flat(const FiniteGroup& g, const Loop& loop, std::size_t num_links, std::size_t config) {
    const auto pw = powers(g.order(), num_links);
    std::size_t prod = g.identity();
    for (const auto& a : loop) {
        const std::size_t x = digit(config, a.link, pw, g.order());
        prod = g.mul(prod, a.orientation == Orientation::Plus ? x : g.inverse(x));
    }
    return prod == g.identity();
}

Vector apply_plaquette(const FiniteGroup& g, const Loop& loop, std::size_t num_links, const Vector& psi) {
    const auto pw = powers(g.order(), num_links);
    if (static_cast<std::size_t>(psi.size()) != pw[num_links]) throw DimensionError("apply_plaquette: vector size");
    for (const auto& a : loop) {
        if (a.link >= num_links) throw DimensionError("apply_plaquette: link out of range");
    }
    Vector out = psi;
    for (std::size_t b = 0; b < pw[num_links]; ++b) {
        std::size_t prod = g.identity();
        for (const auto& a : loop) {
            const std::size_t x = digit(b, a.link, pw, g.order());
            prod = g.mul(prod, a.orientation == Orientation::Plus ? x : g.inverse(x));
        }
        if (prod != g.identity()) out(static_cast<Eigen::Index>(b)) = 0.0;
    }
    return out;
}

Vector apply_single(const Matrix& op, std::size_t link, std::size_t local_dim, std::size_t num_links,
                    const Vector& psi) {
    const auto pw = powers(local_dim, num_links);
    if (link >= num_links) throw DimensionError("apply_single: link out of range");
    if (static_cast<std::size_t>(op.rows()) != local_dim || op.cols() != op.rows()) {
        throw DimensionError("apply_single: operator shape");
    }
    if (static_cast<std::size_t>(psi.size()) != pw[num_links]) throw DimensionError("apply_single: vector size");
    Vector out = Vector::Zero(psi.size());
    for (std::size_t b = 0; b < pw[num_links]; ++b) {
        const std::size_t x = digit(b, link, pw, local_dim);
        const std::size_t base = b - x * pw[link];
        for (std::size_t y = 0; y < local_dim; ++y) {
            const cplx c = op(static_cast<Eigen::Index>(y), static_cast<Eigen::Index>(x));
            if (c != 0.0) out(static_cast<Eigen::Index>(base + y * pw[link])) += c * psi(static_cast<Eigen::Index>(b));
        }
    }
    return out;
}

namespace {

Loop standard_loop(std::size_t right, std::size_t bottom, std::size_t left, std::size_t top) {
    return {{{right, Orientation::Minus}, {bottom, Orientation::Minus}, {left, Orientation::Plus}, {top, Orientation::Plus}}};
}

Star standard_star(std::size_t up, std::size_t right, std::size_t down, std::size_t left) {
    return {{{up, Orientation::Plus}, {right, Orientation::Plus}, {down, Orientation::Minus}, {left, Orientation::Minus}}};
}

}  // namespace

Patch corner_patch(const std::string& corner) {
    Patch p;
    p.name = "corner-" + corner;
    p.num_links = 6;
    p.plaquettes = {standard_loop(0, 1, 2, 3)};
    if (corner == "TR") {
        p.vertices = {standard_star(4, 5, 0, 3)};
    } else if (corner == "TL") {
        p.vertices = {standard_star(4, 3, 2, 5)};
    } else if (corner == "BR") {
        p.vertices = {standard_star(0, 4, 5, 1)};
    } else if (corner == "BL") {
        p.vertices = {standard_star(2, 1, 4, 5)};
    } else {
        throw ValidationError("corner must be TL, TR, BR or BL");
    }
    return p;
}

Patch disjoint_patch() {
    Patch p;
    p.name = "disjoint";
    p.num_links = 8;
    p.plaquettes = {standard_loop(0, 1, 2, 3)};
    p.vertices = {standard_star(4, 5, 6, 7)};
    return p;
}

Patch two_plaquette_patch() {
    Patch p;
    p.name = "two-plaquette";
    p.num_links = 7;
    p.plaquettes = {standard_loop(0, 1, 2, 3), standard_loop(4, 5, 0, 6)};
    return p;
}

Patch two_vertex_patch() {
    Patch p;
    p.name = "two-vertex";
    p.num_links = 7;
    p.vertices = {standard_star(1, 0, 2, 3), standard_star(4, 5, 6, 0)};
    return p;
}

Patch torus_patch(const ToricLattice& lattice) {
    if (lattice.size < 2) throw ValidationError("torus_patch: size must be at least 2");
    Patch p;
    p.name = "torus-" + std::to_string(lattice.size);
    p.num_links = lattice.num_links();
    for (const auto& v : lattice.vertices) p.vertices.push_back(standard_star(v[0], v[1], v[2], v[3]));
    // ToricLattice plaquettes list bottom, right, top, left.
    for (const auto& q : lattice.plaquettes) p.plaquettes.push_back(standard_loop(q[1], q[0], q[3], q[2]));
    return p;
}

std::vector<Patch> standard_geometries() {
    return {corner_patch("TL"), corner_patch("TR"), corner_patch("BR"), corner_patch("BL"), disjoint_patch()};
}

double CommutationReport::max_norm() const {
    double m = 0.0;
    for (const auto& e : entries) m = std::max(m, e.commutator_norm);
    return m;
}

CommutationReport commutation_suite(const FiniteGroup& g, const std::vector<Patch>& patches,
                                    const CommutationOptions& options) {
    CommutationReport report;
    std::mt19937_64 rng(options.seed);
    for (const auto& patch : patches) {
        const double approx = std::pow(static_cast<double>(g.order()), static_cast<double>(patch.num_links));
        for (std::size_t vi = 0; vi < patch.vertices.size(); ++vi) {
            for (std::size_t pi = 0; pi < patch.plaquettes.size(); ++pi) {
                const Star& s = patch.vertices[vi];
                const Loop& l = patch.plaquettes[pi];
                CommutationEntry e;
                e.geometry = patch.name + " v" + std::to_string(vi) + " p" + std::to_string(pi);
                e.shared_links = shared_links(s, l);
                e.num_links = patch.num_links;
                const std::size_t n = patch.num_links;
                auto a = [&](const Vector& v) { return apply_vertex(g, s, n, v); };
                auto b = [&](const Vector& v) { return apply_plaquette(g, l, n, v); };
                if (approx <= static_cast<double>(options.dense_limit)) {
                    const std::size_t dim = patch_dimension(g, n);
                    const Matrix am = dense_from(a, dim);
                    const Matrix bm = dense_from(b, dim);
                    e.method = "dense";
                    e.commutator_norm = spectral_norm(am * bm - bm * am);
                } else if (e.shared_links == 0) {
                    e.method = "disjoint";
                    e.commutator_norm = 0.0;
                } else if (approx <= static_cast<double>(options.max_dim)) {
                    const std::size_t dim = patch_dimension(g, n);
                    e.method = "matrix-free";
                    for (std::size_t k = 0; k < options.num_vectors; ++k) {
                        const Vector v = random_vector(dim, rng);
                        e.commutator_norm = std::max(e.commutator_norm, (a(b(v)) - b(a(v))).norm());
                    }
                } else {
                    throw CapacityError("commutation_suite: patch '" + patch.name + "' needs " + std::to_string(static_cast<long long>(approx)) +
                                        " amplitudes, limit is " + std::to_string(static_cast<long long>(options.max_dim)));
                }
                report.entries.push_back(e);
            }
        }
    }
    return report;
}

Matrix flux_pair_creator(const FiniteGroup& g, std::size_t class_index) {
    if (class_index >= g.classes().size()) throw ValidationError("flux_pair_creator: no such conjugacy class");
    const auto& cls = g.classes()[class_index];
    Matrix out = Matrix::Zero(static_cast<Eigen::Index>(g.order()), static_cast<Eigen::Index>(g.order()));
    for (auto h : cls) out += right_multiplication(g, h);
    return out / std::sqrt(static_cast<double>(cls.size()));
}

Vector patch_ground_state(const FiniteGroup& g, const Patch& patch) {
    const std::size_t dim = patch_dimension(g, patch.num_links);
    if (dim > 20'000'000) throw CapacityError("patch_ground_state: register too large");
    Vector psi = Vector::Zero(static_cast<Eigen::Index>(dim));
    for (std::size_t c = 0; c < dim; ++c) {
        bool flat = true;
        for (const auto& l : patch.plaquettes) flat = flat && loop_is_flat(g, l, patch.num_links, c);
        if (flat) psi(static_cast<Eigen::Index>(c)) = 1.0;
    }
    for (const auto& s : patch.vertices) psi = apply_vertex(g, s, patch.num_links, psi);
    const double norm = psi.norm();
    if (norm < 1e-12) throw ModelError("patch_ground_state: joint +1 eigenspace is empty");
    return psi / norm;
}

}  // namespace stabtherm
