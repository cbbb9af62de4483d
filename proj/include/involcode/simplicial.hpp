#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gf2.hpp"
#include "homology.hpp"

namespace involcode {

namespace detail {

// lexicographic sort of fixed-arity tuples stored flat, optional dedup
inline void sort_tuples(std::vector<std::uint32_t>& flat, std::size_t arity,
                        bool dedup) {
    if (arity == 0 || flat.empty()) return;
    const std::size_t n = flat.size() / arity;
    std::vector<std::uint32_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = std::uint32_t(i);
    auto less = [&](std::uint32_t a, std::uint32_t b) {
        return std::lexicographical_compare(
            flat.begin() + a * arity, flat.begin() + (a + 1) * arity,
            flat.begin() + b * arity, flat.begin() + (b + 1) * arity);
    };
    std::sort(idx.begin(), idx.end(), less);
    std::vector<std::uint32_t> out;
    out.reserve(flat.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (dedup && i > 0 &&
            std::equal(flat.begin() + idx[i] * arity,
                       flat.begin() + (idx[i] + 1) * arity,
                       flat.begin() + idx[i - 1] * arity))
            continue;
        out.insert(out.end(), flat.begin() + idx[i] * arity,
                   flat.begin() + (idx[i] + 1) * arity);
    }
    flat = std::move(out);
}

inline std::string tuple_to_string(const std::uint32_t* t, std::size_t len) {
    std::string s = "{";
    for (std::size_t i = 0; i < len; ++i) {
        if (i) s += ", ";
        s += std::to_string(t[i]);
    }
    s += "}";
    return s;
}

} // namespace detail

// Abstract simplicial complex. cells[d] stores the d-simplices as flat
// strictly increasing (d+1)-tuples of vertex ids, sorted lexicographically;
// indices into that order are the canonical simplex indices.
struct SimplicialComplex {
    std::size_t num_vertices = 0;
    std::vector<std::vector<std::uint32_t>> cells;

    int dim() const { return int(cells.size()) - 1; }

    std::size_t count(int d) const {
        if (d < 0 || d > dim()) return 0;
        return cells[std::size_t(d)].size() / std::size_t(d + 1);
    }

    const std::uint32_t* tuple(int d, std::size_t i) const {
        return &cells[std::size_t(d)][i * std::size_t(d + 1)];
    }

    std::size_t total_cells() const {
        std::size_t t = 0;
        for (int d = 0; d <= dim(); ++d) t += count(d);
        return t;
    }

    // canonical index of the simplex with the given sorted vertex tuple,
    // -1 when absent
    std::int64_t find(int d, const std::uint32_t* t) const {
        if (d < 0 || d > dim()) return -1;
        const auto& flat = cells[std::size_t(d)];
        const std::size_t arity = std::size_t(d) + 1;
        std::size_t lo = 0, hi = flat.size() / arity;
        while (lo < hi) {
            std::size_t mid = lo + (hi - lo) / 2;
            if (std::lexicographical_compare(flat.begin() + mid * arity,
                                             flat.begin() + (mid + 1) * arity,
                                             t, t + arity))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo < flat.size() / arity &&
            std::equal(t, t + arity, flat.begin() + lo * arity))
            return std::int64_t(lo);
        return -1;
    }
};

// Builds the downward closure of the given facets. Facets may be listed in
// any vertex order but must have distinct vertices inside [0, num_vertices).
inline SimplicialComplex from_facets(
    std::size_t num_vertices,
    const std::vector<std::vector<std::uint32_t>>& facets) {
    SimplicialComplex c;
    c.num_vertices = num_vertices;
    int dim = -1;
    std::vector<std::vector<std::uint32_t>> flat;
    std::vector<std::uint32_t> sorted, sub;
    for (const auto& f : facets) {
        sorted = f;
        std::sort(sorted.begin(), sorted.end());
        bool ok = !sorted.empty() && sorted.size() <= 12 &&
                  sorted.back() < num_vertices;
        for (std::size_t i = 0; ok && i + 1 < sorted.size(); ++i)
            if (sorted[i] == sorted[i + 1]) ok = false;
        if (!ok)
            throw ParseError(
                "malformed facet: " +
                (f.empty() ? std::string("{}")
                           : detail::tuple_to_string(f.data(), f.size())));
        const int fd = int(sorted.size()) - 1;
        if (fd > dim) {
            dim = fd;
            flat.resize(std::size_t(dim) + 1);
        }
        const std::uint32_t full = (std::uint32_t(1) << sorted.size()) - 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            sub.clear();
            for (std::size_t i = 0; i < sorted.size(); ++i)
                if (mask & (std::uint32_t(1) << i)) sub.push_back(sorted[i]);
            flat[sub.size() - 1].insert(flat[sub.size() - 1].end(), sub.begin(),
                                        sub.end());
        }
    }
    for (int d = 0; d <= dim; ++d)
        detail::sort_tuples(flat[std::size_t(d)], std::size_t(d) + 1, true);
    c.cells = std::move(flat);
    return c;
}

// Position-indexed cell structure of the complex; face j of a simplex omits
// its j-th vertex and carries sign (-1)^j.
inline CellComplex to_cells(const SimplicialComplex& c) {
    CellComplex cc;
    const int dim = c.dim();
    if (dim < 0) return cc;
    cc.counts.resize(std::size_t(dim) + 1);
    cc.faces.resize(std::size_t(dim) + 1);
    cc.face_signs.resize(std::size_t(dim) + 1);
    for (int d = 0; d <= dim; ++d) cc.counts[std::size_t(d)] = c.count(d);
    std::vector<std::uint32_t> sub;
    for (int d = 1; d <= dim; ++d) {
        auto& fl = cc.faces[std::size_t(d)];
        auto& sl = cc.face_signs[std::size_t(d)];
        fl.reserve(c.count(d) * std::size_t(d + 1));
        sl.reserve(c.count(d) * std::size_t(d + 1));
        for (std::size_t i = 0; i < c.count(d); ++i) {
            const std::uint32_t* t = c.tuple(d, i);
            for (int j = 0; j <= d; ++j) {
                sub.clear();
                for (int p = 0; p <= d; ++p)
                    if (p != j) sub.push_back(t[p]);
                std::int64_t fi = c.find(d - 1, sub.data());
                if (fi < 0)
                    throw InternalError("to_cells: missing face " +
                                        detail::tuple_to_string(sub.data(),
                                                                sub.size()));
                fl.push_back(std::uint32_t(fi));
                sl.push_back((j % 2 == 0) ? std::int8_t(1) : std::int8_t(-1));
            }
        }
    }
    return cc;
}

inline Gf2Matrix boundary_matrix(const SimplicialComplex& c, int d) {
    if (d < 1 || d > c.dim()) return Gf2Matrix(c.count(d - 1), c.count(d));
    return detail::boundary_dense(to_cells(c), d);
}

inline std::vector<std::size_t> betti_numbers(const SimplicialComplex& c) {
    return betti_numbers(to_cells(c));
}

inline std::size_t total_mod2_dimension(const SimplicialComplex& c) {
    std::size_t t = 0;
    for (std::size_t b : betti_numbers(c)) t += b;
    return t;
}

inline HomologyBasis homology_basis(const SimplicialComplex& c, int d) {
    return homology_basis(to_cells(c), d);
}

inline SurfaceKind classify_surface(const SimplicialComplex& c) {
    if (c.dim() != 2)
        throw PreconditionError("not a closed surface: dimension is not 2");
    return classify_surface_cells(to_cells(c));
}

struct ValidationReport {
    bool pass = false;
    std::string failure;  // empty when pass
};

// Closed-3-manifold test: every triangle in exactly two tetrahedra, edge
// links single circles, vertex links 2-spheres, and the complex connected.
inline ValidationReport validate_closed_3manifold(const SimplicialComplex& c) {
    ValidationReport rep;
    auto fail = [&](std::string why) {
        rep.pass = false;
        rep.failure = std::move(why);
        return rep;
    };
    if (c.dim() != 3 || c.count(3) == 0)
        return fail("dimension is not 3");
    const std::size_t nv = c.count(0), ne = c.count(1), nt = c.count(2),
                      nk = c.count(3);

    // triangle -> tetrahedra incidence counts
    std::vector<std::uint32_t> tri_deg(nt, 0);
    std::vector<std::uint32_t> sub(3);
    for (std::size_t k = 0; k < nk; ++k) {
        const std::uint32_t* t = c.tuple(3, k);
        for (int j = 0; j < 4; ++j) {
            int p = 0;
            for (int q = 0; q < 4; ++q)
                if (q != j) sub[std::size_t(p++)] = t[q];
            std::int64_t fi = c.find(2, sub.data());
            if (fi < 0) return fail("closure is missing a triangle");
            ++tri_deg[std::size_t(fi)];
        }
    }
    for (std::size_t i = 0; i < nt; ++i)
        if (tri_deg[i] != 2)
            return fail("triangle " +
                        detail::tuple_to_string(c.tuple(2, i), 3) + " lies in " +
                        std::to_string(tri_deg[i]) + " tetrahedra");

    // edge links: nodes are (edge, opposite vertex) incidences from
    // triangles; tetrahedra connect the two opposite vertices of each of
    // their six edges. Single circle == connected and nonempty.
    std::vector<std::uint32_t> eoff(ne + 1, 0);
    {
        std::vector<std::uint32_t> cnt(ne, 0);
        std::vector<std::uint32_t> e(2);
        auto edge_of = [&](std::uint32_t a, std::uint32_t b) {
            e[0] = std::min(a, b);
            e[1] = std::max(a, b);
            std::int64_t fi = c.find(1, e.data());
            if (fi < 0) throw InternalError("closure is missing an edge");
            return std::uint32_t(fi);
        };
        for (std::size_t i = 0; i < nt; ++i) {
            const std::uint32_t* t = c.tuple(2, i);
            cnt[edge_of(t[0], t[1])]++;
            cnt[edge_of(t[0], t[2])]++;
            cnt[edge_of(t[1], t[2])]++;
        }
        for (std::size_t i = 0; i < ne; ++i) eoff[i + 1] = eoff[i] + cnt[i];
        std::vector<std::uint32_t> verts(eoff[ne]);
        std::vector<std::uint32_t> cur(eoff.begin(), eoff.end() - 1);
        for (std::size_t i = 0; i < nt; ++i) {
            const std::uint32_t* t = c.tuple(2, i);
            verts[cur[edge_of(t[0], t[1])]++] = t[2];
            verts[cur[edge_of(t[0], t[2])]++] = t[1];
            verts[cur[edge_of(t[1], t[2])]++] = t[0];
        }
        auto node_of = [&](std::uint32_t eidx, std::uint32_t w) {
            for (std::uint32_t k = eoff[eidx]; k < eoff[eidx + 1]; ++k)
                if (verts[k] == w) return k;
            throw InternalError("edge link bookkeeping broke");
        };
        detail::Dsu dsu(eoff[ne]);
        for (std::size_t k = 0; k < nk; ++k) {
            const std::uint32_t* t = c.tuple(3, k);
            for (int a = 0; a < 4; ++a)
                for (int b = a + 1; b < 4; ++b) {
                    int o[2], p = 0;
                    for (int q = 0; q < 4; ++q)
                        if (q != a && q != b) o[p++] = q;
                    std::uint32_t eidx = edge_of(t[a], t[b]);
                    dsu.unite(node_of(eidx, t[std::size_t(o[0])]),
                              node_of(eidx, t[std::size_t(o[1])]));
                }
        }
        for (std::size_t i = 0; i < ne; ++i) {
            if (eoff[i] == eoff[i + 1])
                return fail("edge " + detail::tuple_to_string(c.tuple(1, i), 2) +
                            " has empty link");
            std::uint32_t r = dsu.find(eoff[i]);
            for (std::uint32_t k = eoff[i] + 1; k < eoff[i + 1]; ++k)
                if (dsu.find(k) != r)
                    return fail("edge " +
                                detail::tuple_to_string(c.tuple(1, i), 2) +
                                " has disconnected link");
        }
    }

    // vertex links: euler characteristic deg - tris + tets must be 2, and
    // the link connected. Nodes are (vertex, neighbor) incidences from
    // edges; triangles connect the incidences at each of their corners.
    {
        std::vector<std::uint32_t> deg(nv, 0), vtris(nv, 0), vtets(nv, 0);
        for (std::size_t i = 0; i < ne; ++i) {
            const std::uint32_t* t = c.tuple(1, i);
            ++deg[t[0]];
            ++deg[t[1]];
        }
        for (std::size_t i = 0; i < nt; ++i)
            for (int j = 0; j < 3; ++j) ++vtris[c.tuple(2, i)[j]];
        for (std::size_t k = 0; k < nk; ++k)
            for (int j = 0; j < 4; ++j) ++vtets[c.tuple(3, k)[j]];
        std::vector<std::uint32_t> voff(nv + 1, 0);
        for (std::size_t v = 0; v < nv; ++v) voff[v + 1] = voff[v] + deg[v];
        std::vector<std::uint32_t> nbr(voff[nv]);
        std::vector<std::uint32_t> cur(voff.begin(), voff.end() - 1);
        for (std::size_t i = 0; i < ne; ++i) {
            const std::uint32_t* t = c.tuple(1, i);
            nbr[cur[t[0]]++] = t[1];
            nbr[cur[t[1]]++] = t[0];
        }
        for (std::size_t v = 0; v < nv; ++v)
            std::sort(nbr.begin() + voff[v], nbr.begin() + voff[v + 1]);
        auto node_of = [&](std::uint32_t v, std::uint32_t w) {
            auto b = nbr.begin() + voff[v], e2 = nbr.begin() + voff[v + 1];
            auto it = std::lower_bound(b, e2, w);
            if (it == e2 || *it != w)
                throw InternalError("vertex link bookkeeping broke");
            return std::uint32_t(voff[v] + std::uint32_t(it - b));
        };
        detail::Dsu dsu(voff[nv]);
        for (std::size_t i = 0; i < nt; ++i) {
            const std::uint32_t* t = c.tuple(2, i);
            dsu.unite(node_of(t[0], t[1]), node_of(t[0], t[2]));
            dsu.unite(node_of(t[1], t[0]), node_of(t[1], t[2]));
            dsu.unite(node_of(t[2], t[0]), node_of(t[2], t[1]));
        }
        for (std::size_t v = 0; v < nv; ++v) {
            std::int64_t chi = std::int64_t(deg[v]) - std::int64_t(vtris[v]) +
                               std::int64_t(vtets[v]);
            if (deg[v] == 0)
                return fail("vertex " + std::to_string(v) + " has empty link");
            if (chi != 2)
                return fail("vertex " + std::to_string(v) +
                            " has link with euler characteristic " +
                            std::to_string(chi));
            std::uint32_t r = dsu.find(voff[v]);
            for (std::uint32_t k = voff[v] + 1; k < voff[v + 1]; ++k)
                if (dsu.find(k) != r)
                    return fail("vertex " + std::to_string(v) +
                                " has disconnected link");
        }
    }

    // connectivity
    {
        detail::Dsu dsu(nv);
        for (std::size_t i = 0; i < ne; ++i)
            dsu.unite(c.tuple(1, i)[0], c.tuple(1, i)[1]);
        std::uint32_t r0 = dsu.find(0);
        for (std::size_t v = 1; v < nv; ++v)
            if (dsu.find(std::uint32_t(v)) != r0)
                return fail("complex is disconnected");
    }

    rep.pass = true;
    return rep;
}

// Deterministic orientation of a validated closed 3-manifold: the first
// tetrahedron of each component gets sign +1.
inline std::optional<std::vector<std::int8_t>> orientation(
    const SimplicialComplex& c) {
    ValidationReport vr = validate_closed_3manifold(c);
    if (!vr.pass) throw PreconditionError(vr.failure);
    return orient_top(to_cells(c));
}

// Barycentric subdivision. New vertex ids enumerate the simplices of the
// input by dimension blocks: the barycenter of the i-th d-simplex gets id
// offsets[d] + i, so old vertices keep their ids in block 0.
struct SubdivisionResult {
    SimplicialComplex complex;
    std::vector<std::size_t> offsets;
};

inline SubdivisionResult barycentric_subdivision(const SimplicialComplex& c) {
    SubdivisionResult res;
    const int dim = c.dim();
    if (dim < 0) return res;
    res.offsets.assign(std::size_t(dim) + 1, 0);
    for (int d = 1; d <= dim; ++d)
        res.offsets[std::size_t(d)] =
            res.offsets[std::size_t(d) - 1] + c.count(d - 1);
    const std::size_t total = c.total_cells();
    res.complex.num_vertices = total;

    // strict containments: for every simplex, the barycenters of the
    // simplices properly containing it, ascending
    std::vector<std::uint32_t> soff(total + 1, 0);
    {
        std::vector<std::uint32_t> cnt(total, 0);
        std::vector<std::uint32_t> sub;
        auto for_each_proper_subset = [&](int d, std::size_t i, auto&& fn) {
            const std::uint32_t* t = c.tuple(d, i);
            const std::uint32_t full = (std::uint32_t(1) << (d + 1)) - 1;
            for (std::uint32_t mask = 1; mask < full; ++mask) {
                sub.clear();
                for (int p = 0; p <= d; ++p)
                    if (mask & (std::uint32_t(1) << p)) sub.push_back(t[p]);
                std::int64_t fi = c.find(int(sub.size()) - 1, sub.data());
                if (fi < 0)
                    throw InternalError("subdivision: closure is missing a face");
                fn(res.offsets[sub.size() - 1] + std::size_t(fi));
            }
        };
        for (int d = 1; d <= dim; ++d)
            for (std::size_t i = 0; i < c.count(d); ++i)
                for_each_proper_subset(d, i,
                                       [&](std::size_t h) { ++cnt[h]; });
        for (std::size_t h = 0; h < total; ++h) soff[h + 1] = soff[h] + cnt[h];
        std::vector<std::uint32_t> lst(soff[total]);
        std::vector<std::uint32_t> cur(soff.begin(), soff.end() - 1);
        for (int d = 1; d <= dim; ++d)
            for (std::size_t i = 0; i < c.count(d); ++i) {
                std::uint32_t g =
                    std::uint32_t(res.offsets[std::size_t(d)] + i);
                for_each_proper_subset(d, i, [&](std::size_t h) {
                    lst[cur[h]++] = g;
                });
            }
        // fill order: per containing simplex g ascending within each
        // dimension, but across dimensions lower-dim blocks come first and
        // have smaller ids, so each list is ascending already
        res.complex.cells.assign(std::size_t(dim) + 1, {});
        auto& verts = res.complex.cells[0];
        verts.resize(total);
        for (std::size_t g = 0; g < total; ++g)
            verts[g] = std::uint32_t(g);
        std::vector<std::uint32_t> prev = verts;  // chains of length 1
        for (int len = 2; len <= dim + 1; ++len) {
            std::vector<std::uint32_t> next;
            const std::size_t stride = std::size_t(len) - 1;
            for (std::size_t i = 0; i * stride < prev.size(); ++i) {
                const std::uint32_t* ch = &prev[i * stride];
                std::uint32_t top = ch[stride - 1];
                for (std::uint32_t k = soff[top]; k < soff[top + 1]; ++k) {
                    next.insert(next.end(), ch, ch + stride);
                    next.push_back(lst[k]);
                }
            }
            res.complex.cells[std::size_t(len) - 1] = next;
            prev = std::move(next);
        }
    }
    return res;
}

// Matrix of the map induced on first homology by a vertex embedding of sub
// into amb; row i gives the coordinates of the image of sub's i-th
// generator in amb's canonical basis.
inline Gf2Matrix induced_H1_map(const SimplicialComplex& sub,
                                const SimplicialComplex& amb,
                                const std::vector<std::uint32_t>& vertex_map) {
    if (vertex_map.size() != sub.num_vertices)
        throw PreconditionError("vertex map does not embed the subcomplex: "
                                "wrong length");
    std::vector<std::uint32_t> img;
    for (int d = 0; d <= sub.dim(); ++d)
        for (std::size_t i = 0; i < sub.count(d); ++i) {
            const std::uint32_t* t = sub.tuple(d, i);
            img.assign(t, t + d + 1);
            for (auto& v : img) {
                if (v >= vertex_map.size() ||
                    vertex_map[v] >= amb.num_vertices)
                    throw PreconditionError(
                        "vertex map does not embed the subcomplex: vertex out "
                        "of range");
                v = vertex_map[v];
            }
            std::sort(img.begin(), img.end());
            bool distinct = true;
            for (std::size_t p = 0; p + 1 < img.size(); ++p)
                if (img[p] == img[p + 1]) distinct = false;
            if (!distinct || amb.find(d, img.data()) < 0)
                throw PreconditionError(
                    "vertex map does not embed the subcomplex: image of " +
                    detail::tuple_to_string(t, std::size_t(d) + 1) +
                    " is not a simplex");
        }
    HomologyBasis hs = homology_basis(sub, 1);
    HomologyBasis ha = homology_basis(amb, 1);
    Gf2Matrix m(hs.betti, ha.betti);
    for (std::size_t r = 0; r < hs.betti; ++r) {
        Gf2Vector src = hs.cycle_reps.row(r);
        Gf2Vector dst(amb.count(1));
        for (std::size_t e = 0; e < sub.count(1); ++e) {
            if (!src.get(e)) continue;
            const std::uint32_t* t = sub.tuple(1, e);
            std::uint32_t a = vertex_map[t[0]], b = vertex_map[t[1]];
            img = {std::min(a, b), std::max(a, b)};
            std::int64_t fi = amb.find(1, img.data());
            dst.set(std::size_t(fi), !dst.get(std::size_t(fi)));
        }
        m.set_row(r, class_coordinates(ha, dst));
    }
    return m;
}

} // namespace involcode
