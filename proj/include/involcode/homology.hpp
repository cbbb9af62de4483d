#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "gf2.hpp"

namespace involcode {

// Finite regular Delta-complex: cells per dimension, each d-cell listing its
// d+1 codimension-one faces in vertex-omission order. face_signs carries the
// signed incidence (-1)^j adjusted by any identification twist; mod-2
// homology ignores it, orientation questions use it.
struct CellComplex {
    std::vector<std::size_t> counts;
    std::vector<std::vector<std::uint32_t>> faces;
    std::vector<std::vector<std::int8_t>> face_signs;

    int dim() const { return int(counts.size()) - 1; }

    std::size_t count(int d) const {
        return (d >= 0 && d <= dim()) ? counts[std::size_t(d)] : 0;
    }

    const std::uint32_t* cell_faces(int d, std::size_t i) const {
        return &faces[std::size_t(d)][i * std::size_t(d + 1)];
    }

    std::size_t total_cells() const {
        return std::accumulate(counts.begin(), counts.end(), std::size_t(0));
    }
};

struct HomologyBasis {
    int degree = 0;
    std::size_t betti = 0;
    Gf2Matrix cycle_reps;      // rows: canonical representatives, one per class
    Gf2Matrix boundary_basis;  // rows: canonical rref basis of the boundaries
};

struct SurfaceKind {
    enum class Tag { sphere, projective_plane, other };
    Tag tag = Tag::other;
    long long euler = 0;
    bool orientable = false;
};

namespace detail {

// Mod-2 boundary matrix (rows index (d-1)-cells). Entries are incidence
// parities, so doubled faces cancel.
inline Gf2Matrix boundary_dense(const CellComplex& cc, int d) {
    Gf2Matrix m(cc.count(d - 1), cc.count(d));
    for (std::size_t j = 0; j < cc.count(d); ++j) {
        const std::uint32_t* f = cc.cell_faces(d, j);
        for (int p = 0; p <= d; ++p)
            m.set(f[p], j, !m.get(f[p], j));
    }
    return m;
}

inline SparseGf2 boundary_sparse(const CellComplex& cc, int d) {
    SparseGf2 s;
    s.rows = cc.count(d - 1);
    s.cols = cc.count(d);
    s.col.resize(s.cols);
    std::vector<std::uint32_t> buf;
    for (std::size_t j = 0; j < s.cols; ++j) {
        const std::uint32_t* f = cc.cell_faces(d, j);
        buf.assign(f, f + d + 1);
        std::sort(buf.begin(), buf.end());
        auto& out = s.col[j];
        for (std::size_t p = 0; p < buf.size();) {
            std::size_t q = p;
            while (q < buf.size() && buf[q] == buf[p]) ++q;
            if ((q - p) & 1) out.push_back(buf[p]);
            p = q;
        }
    }
    return s;
}

inline std::size_t boundary_rank(const CellComplex& cc, int d) {
    if (d < 1 || d > cc.dim()) return 0;
    std::size_t entries = cc.count(d - 1) * cc.count(d);
    if (entries >= gf2_options().sparse_min_entries)
        return sparse_rank(boundary_sparse(cc, d));
    return rank(boundary_dense(cc, d));
}

} // namespace detail

inline std::vector<std::size_t> betti_numbers(const CellComplex& cc) {
    std::vector<std::size_t> b;
    if (cc.dim() < 0) return b;
    std::vector<std::size_t> ranks(std::size_t(cc.dim()) + 2, 0);
    for (int d = 1; d <= cc.dim(); ++d)
        ranks[std::size_t(d)] = detail::boundary_rank(cc, d);
    for (int d = 0; d <= cc.dim(); ++d)
        b.push_back(cc.count(d) - ranks[std::size_t(d)] -
                    ranks[std::size_t(d) + 1]);
    return b;
}

// Canonical homology basis in degree d: the boundary basis is the rref of
// im boundary_{d+1}; the representatives are the rows of the canonical
// cycle-space rref that extend it, in pivot order.
inline HomologyBasis homology_basis(const CellComplex& cc, int d) {
    if (d < 0 || d > cc.dim())
        throw PreconditionError("homology degree out of range");
    const std::size_t nd = cc.count(d);
    Gf2Matrix zbasis;
    if (d == 0) {
        zbasis = Gf2Matrix::identity(nd);
    } else {
        Gf2Matrix bd = detail::boundary_dense(cc, d);
        Gf2Matrix ns = nullspace_basis(bd);
        RrefResult r = rref(ns);
        Gf2Matrix z(r.pivots.size(), nd);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            z.set_row(i, r.mat.row(i));
        zbasis = std::move(z);
    }
    Gf2Matrix bnd(0, nd);
    if (d < cc.dim()) {
        Gf2Matrix bd1t = detail::boundary_dense(cc, d + 1).transpose();
        RrefResult r = rref(bd1t);
        Gf2Matrix b(r.pivots.size(), nd);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            b.set_row(i, r.mat.row(i));
        bnd = std::move(b);
    }
    detail::Eliminator elim(nd, 0);
    for (std::size_t i = 0; i < bnd.rows(); ++i) elim.insert(bnd.row(i), false);
    if (elim.rank() != bnd.rows())
        throw InternalError("homology_basis: boundary rows not independent");
    std::vector<std::size_t> chosen;
    for (std::size_t i = 0; i < zbasis.rows(); ++i)
        if (elim.insert(zbasis.row(i), false)) chosen.push_back(i);
    if (zbasis.rows() != bnd.rows() + chosen.size())
        throw InternalError("homology_basis: rank bookkeeping broke");
    Gf2Matrix reps(chosen.size(), nd);
    for (std::size_t i = 0; i < chosen.size(); ++i)
        reps.set_row(i, zbasis.row(chosen[i]));
    HomologyBasis h;
    h.degree = d;
    h.betti = chosen.size();
    h.cycle_reps = std::move(reps);
    h.boundary_basis = std::move(bnd);
    return h;
}

// Coordinates of the class of the cycle v with respect to h.cycle_reps.
inline Gf2Vector class_coordinates(const HomologyBasis& h, const Gf2Vector& v) {
    detail::Eliminator elim(v.size(), h.betti);
    for (std::size_t i = 0; i < h.boundary_basis.rows(); ++i)
        elim.insert(h.boundary_basis.row(i), false);
    for (std::size_t i = 0; i < h.cycle_reps.rows(); ++i)
        elim.insert(h.cycle_reps.row(i), true);
    Gf2Vector tag;
    if (!elim.express(v, tag))
        throw InternalError("class_coordinates: chain is not a cycle");
    Gf2Vector coords(h.betti);
    for (std::size_t i = 0; i < h.betti; ++i)
        if (tag.get(i)) coords.set(i, true);
    return coords;
}

// Greedy free-face collapse. Removes (cell, unique coface) pairs until none
// remain; marked cells and their pair partners are never removed. The result
// is a deformation retract carrying the same homology, with marked cells
// intact.
inline std::vector<std::vector<char>> collapse_mask(
    const CellComplex& cc, const std::vector<std::vector<char>>& marked) {
    const int dim = cc.dim();
    std::vector<std::vector<char>> alive(std::size_t(dim) + 1);
    for (int d = 0; d <= dim; ++d)
        alive[std::size_t(d)].assign(cc.count(d), 1);
    if (dim < 1) return alive;

    // coface lists in CSR form per dimension d (cofaces of d-cells)
    std::vector<std::vector<std::uint32_t>> coff(static_cast<std::size_t>(dim));
    std::vector<std::vector<std::uint32_t>> colist(static_cast<std::size_t>(dim));
    std::vector<std::vector<std::uint32_t>> cocount(static_cast<std::size_t>(dim));
    for (int d = 0; d < dim; ++d) {
        std::vector<std::uint32_t> cnt(cc.count(d), 0);
        const auto& fl = cc.faces[std::size_t(d) + 1];
        for (std::uint32_t f : fl) ++cnt[f];
        std::vector<std::uint32_t> off(cc.count(d) + 1, 0);
        for (std::size_t i = 0; i < cc.count(d); ++i) off[i + 1] = off[i] + cnt[i];
        std::vector<std::uint32_t> lst(fl.size());
        std::vector<std::uint32_t> cur(off.begin(), off.end() - 1);
        for (std::size_t j = 0; j < cc.count(d + 1); ++j) {
            const std::uint32_t* f = cc.cell_faces(d + 1, j);
            for (int p = 0; p <= d + 1; ++p)
                lst[cur[f[p]]++] = std::uint32_t(j);
        }
        coff[std::size_t(d)] = std::move(off);
        colist[std::size_t(d)] = std::move(lst);
        cocount[std::size_t(d)] = std::move(cnt);
    }

    auto is_marked = [&](int d, std::size_t i) {
        return !marked.empty() && !marked[std::size_t(d)].empty() &&
               marked[std::size_t(d)][i];
    };

    std::deque<std::pair<int, std::uint32_t>> queue;
    for (int d = 0; d < dim; ++d)
        for (std::size_t i = 0; i < cc.count(d); ++i)
            if (cocount[std::size_t(d)][i] == 1 && !is_marked(d, i))
                queue.emplace_back(d, std::uint32_t(i));

    auto on_cell_removed = [&](int d, std::uint32_t cell) {
        // faces of `cell` lose one coface each
        if (d == 0) return;
        const std::uint32_t* f = cc.cell_faces(d, cell);
        for (int p = 0; p <= d; ++p) {
            std::uint32_t g = f[p];
            if (!alive[std::size_t(d) - 1][g]) continue;
            std::uint32_t& c = cocount[std::size_t(d) - 1][g];
            if (c > 0) --c;
            if (c == 1 && !is_marked(d - 1, g))
                queue.emplace_back(d - 1, g);
        }
    };

    while (!queue.empty()) {
        auto [d, i] = queue.front();
        queue.pop_front();
        if (!alive[std::size_t(d)][i] || cocount[std::size_t(d)][i] != 1)
            continue;
        // find the unique live coface
        std::uint32_t tfound = 0;
        bool have = false;
        for (std::uint32_t k = coff[std::size_t(d)][i];
             k < coff[std::size_t(d)][i + 1]; ++k) {
            std::uint32_t t = colist[std::size_t(d)][k];
            if (alive[std::size_t(d) + 1][t]) { tfound = t; have = true; break; }
        }
        if (!have) continue;
        if (is_marked(d + 1, tfound)) continue;
        alive[std::size_t(d)][i] = 0;
        alive[std::size_t(d) + 1][tfound] = 0;
        on_cell_removed(d + 1, tfound);
        on_cell_removed(d, i);
    }
    return alive;
}

struct SubComplex {
    CellComplex cc;
    // local index -> index in the parent complex, per dimension
    std::vector<std::vector<std::uint32_t>> to_global;
    // parent index -> local index or -1
    std::vector<std::vector<std::int32_t>> to_local;
};

inline SubComplex subcomplex(const CellComplex& cc,
                             const std::vector<std::vector<char>>& alive) {
    const int dim = cc.dim();
    SubComplex sub;
    sub.to_global.resize(std::size_t(dim) + 1);
    sub.to_local.resize(std::size_t(dim) + 1);
    sub.cc.counts.assign(std::size_t(dim) + 1, 0);
    sub.cc.faces.resize(std::size_t(dim) + 1);
    sub.cc.face_signs.resize(std::size_t(dim) + 1);
    for (int d = 0; d <= dim; ++d) {
        auto& tg = sub.to_global[std::size_t(d)];
        auto& tl = sub.to_local[std::size_t(d)];
        tl.assign(cc.count(d), -1);
        for (std::size_t i = 0; i < cc.count(d); ++i)
            if (alive[std::size_t(d)][i]) {
                tl[i] = std::int32_t(tg.size());
                tg.push_back(std::uint32_t(i));
            }
        sub.cc.counts[std::size_t(d)] = tg.size();
    }
    for (int d = 1; d <= dim; ++d) {
        auto& fl = sub.cc.faces[std::size_t(d)];
        auto& sl = sub.cc.face_signs[std::size_t(d)];
        fl.reserve(sub.cc.counts[std::size_t(d)] * std::size_t(d + 1));
        for (std::uint32_t gi : sub.to_global[std::size_t(d)]) {
            const std::uint32_t* f = cc.cell_faces(d, gi);
            for (int p = 0; p <= d; ++p) {
                std::int32_t lf = sub.to_local[std::size_t(d) - 1][f[p]];
                if (lf < 0)
                    throw InternalError("subcomplex: face of a kept cell was dropped");
                fl.push_back(std::uint32_t(lf));
                sl.push_back(cc.face_signs[std::size_t(d)]
                                          [gi * std::size_t(d + 1) + std::size_t(p)]);
            }
        }
    }
    return sub;
}

// Signs for the top-dimensional cells making adjacent cells induce opposite
// orientations on every shared codimension-one face; empty when none exists.
// Codimension-one faces with more than two top incidences fail.
inline std::optional<std::vector<std::int8_t>> orient_top(const CellComplex& cc) {
    const int dim = cc.dim();
    if (dim < 1) {
        return std::vector<std::int8_t>(cc.count(0), 1);
    }
    const std::size_t nt = cc.count(dim);
    const std::size_t nf = cc.count(dim - 1);
    // gather (top cell, sign) incidences per face
    std::vector<std::vector<std::pair<std::uint32_t, std::int8_t>>> inc(nf);
    for (std::size_t j = 0; j < nt; ++j) {
        const std::uint32_t* f = cc.cell_faces(dim, j);
        for (int p = 0; p <= dim; ++p)
            inc[f[p]].push_back(
                {std::uint32_t(j),
                 cc.face_signs[std::size_t(dim)][j * std::size_t(dim + 1) +
                                                 std::size_t(p)]});
    }
    for (const auto& v : inc)
        if (v.size() > 2) return std::nullopt;
    std::vector<std::int8_t> sign(nt, 0);
    std::vector<std::uint32_t> stack;
    for (std::size_t root = 0; root < nt; ++root) {
        if (sign[root]) continue;
        sign[root] = 1;
        stack.push_back(std::uint32_t(root));
        while (!stack.empty()) {
            std::uint32_t j = stack.back();
            stack.pop_back();
            const std::uint32_t* f = cc.cell_faces(dim, j);
            for (int p = 0; p <= dim; ++p) {
                std::int8_t sj = cc.face_signs[std::size_t(dim)]
                                              [j * std::size_t(dim + 1) +
                                               std::size_t(p)];
                for (auto [k, sk] : inc[f[p]]) {
                    if (k == j) continue;
                    std::int8_t need = std::int8_t(-sign[j] * sj * sk);
                    if (sign[k] == 0) {
                        sign[k] = need;
                        stack.push_back(k);
                    } else if (sign[k] != need) {
                        return std::nullopt;
                    }
                }
                // a cell meeting the same face twice with equal signs is
                // one-sided
                if (inc[f[p]].size() == 2 && inc[f[p]][0].first == j &&
                    inc[f[p]][1].first == j &&
                    inc[f[p]][0].second == inc[f[p]][1].second)
                    return std::nullopt;
            }
        }
    }
    return sign;
}

namespace detail {

struct Dsu {
    std::vector<std::uint32_t> parent;
    explicit Dsu(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = std::uint32_t(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

} // namespace detail

// Classifies a closed connected surface given as a 2-dimensional complex.
// Rejects anything that is not one ("not a closed surface").
inline SurfaceKind classify_surface_cells(const CellComplex& cc) {
    if (cc.dim() != 2)
        throw PreconditionError("not a closed surface: dimension is not 2");
    const std::size_t nv = cc.count(0), ne = cc.count(1), nf = cc.count(2);
    if (nf == 0) throw PreconditionError("not a closed surface: no triangles");
    // every edge borne by exactly two triangle slots
    std::vector<std::uint32_t> edge_deg(ne, 0);
    for (std::uint32_t e : cc.faces[2]) ++edge_deg[e];
    for (std::size_t e = 0; e < ne; ++e)
        if (edge_deg[e] != 2)
            throw PreconditionError("not a closed surface: edge " +
                                    std::to_string(e) + " lies in " +
                                    std::to_string(edge_deg[e]) + " triangles");
    // vertex links: corner graph on edge-end slots must be connected per vertex
    detail::Dsu dsu(2 * ne);
    auto end_vertex = [&](std::uint32_t e, int slot) {
        return cc.cell_faces(1, e)[slot];
    };
    for (std::size_t t = 0; t < nf; ++t) {
        const std::uint32_t* te = cc.cell_faces(2, t);
        // each corner vertex of the triangle owns exactly one end slot on
        // each of two edges; glue those two slots. Matching by vertex cell
        // keeps this valid for quotient complexes, where an edge's endpoint
        // order need not agree with the triangle's vertex order.
        std::uint32_t vtx[6];
        for (int j = 0; j < 3; ++j)
            for (int s = 0; s < 2; ++s)
                vtx[2 * j + s] = end_vertex(te[j], s);
        for (int a = 0; a < 6; ++a) {
            int match = -1, matches = 0;
            for (int b = 0; b < 6; ++b) {
                if (b / 2 == a / 2) continue;
                if (vtx[b] == vtx[a]) {
                    match = b;
                    ++matches;
                }
            }
            if (matches != 1)
                throw InternalError("classify_surface: inconsistent corner");
            dsu.unite(std::uint32_t(2 * te[a / 2] + (a % 2)),
                      std::uint32_t(2 * te[match / 2] + (match % 2)));
        }
    }
    std::vector<std::int64_t> vertex_root(nv, -1);
    std::vector<char> vertex_seen(nv, 0);
    for (std::size_t e = 0; e < ne; ++e)
        for (int s = 0; s < 2; ++s) {
            std::uint32_t v = end_vertex(std::uint32_t(e), s);
            std::uint32_t root = dsu.find(std::uint32_t(2 * e + s));
            if (!vertex_seen[v]) {
                vertex_seen[v] = 1;
                vertex_root[v] = root;
            } else if (vertex_root[v] != root) {
                throw PreconditionError("not a closed surface: pinched vertex " +
                                        std::to_string(v));
            }
        }
    for (std::size_t v = 0; v < nv; ++v)
        if (!vertex_seen[v])
            throw PreconditionError("not a closed surface: isolated vertex " +
                                    std::to_string(v));
    // connectivity across triangles
    detail::Dsu comp(nv);
    for (std::size_t e = 0; e < ne; ++e)
        comp.unite(end_vertex(std::uint32_t(e), 0), end_vertex(std::uint32_t(e), 1));
    std::uint32_t root0 = comp.find(0);
    for (std::size_t v = 1; v < nv; ++v)
        if (comp.find(std::uint32_t(v)) != root0)
            throw PreconditionError("not a closed surface: disconnected");
    SurfaceKind k;
    k.euler = std::int64_t(nv) - std::int64_t(ne) + std::int64_t(nf);
    k.orientable = orient_top(cc).has_value();
    if (k.euler == 2 && k.orientable)
        k.tag = SurfaceKind::Tag::sphere;
    else if (k.euler == 1 && !k.orientable)
        k.tag = SurfaceKind::Tag::projective_plane;
    else
        k.tag = SurfaceKind::Tag::other;
    return k;
}

} // namespace involcode
