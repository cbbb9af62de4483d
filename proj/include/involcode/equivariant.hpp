#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "codes.hpp"
#include "errors.hpp"
#include "gf2.hpp"
#include "homology.hpp"
#include "simplicial.hpp"

namespace involcode {

struct Involution {
    std::vector<std::uint32_t> vertex_perm;
};

inline Involution validate_involution(const SimplicialComplex& c,
                                      const std::vector<std::uint32_t>& perm) {
    if (perm.size() != c.num_vertices)
        throw PreconditionError(
            "not an involution: permutation length " +
            std::to_string(perm.size()) + " does not match " +
            std::to_string(c.num_vertices) + " vertices");
    for (std::size_t v = 0; v < perm.size(); ++v)
        if (perm[v] >= perm.size())
            throw PreconditionError("not an involution: image " +
                                    std::to_string(perm[v]) + " out of range");
    for (std::size_t v = 0; v < perm.size(); ++v)
        if (perm[perm[v]] != v)
            throw PreconditionError(
                "not an involution: square moves vertex " + std::to_string(v));
    std::vector<std::uint32_t> img;
    for (int d = 0; d <= c.dim(); ++d)
        for (std::size_t i = 0; i < c.count(d); ++i) {
            const std::uint32_t* t = c.tuple(d, i);
            img.assign(t, t + d + 1);
            for (auto& v : img) v = perm[v];
            std::sort(img.begin(), img.end());
            if (c.find(d, img.data()) < 0)
                throw PreconditionError(
                    "not simplicial: image of " +
                    detail::tuple_to_string(t, std::size_t(d) + 1) +
                    " is not a simplex");
        }
    return Involution{perm};
}

// transport of an involution through barycentric subdivision: the barycenter
// of sigma maps to the barycenter of tau(sigma)
inline Involution subdivide_involution(const SimplicialComplex& c,
                                       const Involution& tau,
                                       const SubdivisionResult& sd) {
    Involution out;
    out.vertex_perm.resize(sd.complex.num_vertices);
    std::vector<std::uint32_t> img;
    for (int d = 0; d <= c.dim(); ++d)
        for (std::size_t i = 0; i < c.count(d); ++i) {
            const std::uint32_t* t = c.tuple(d, i);
            img.assign(t, t + d + 1);
            for (auto& v : img) v = tau.vertex_perm[v];
            std::sort(img.begin(), img.end());
            std::int64_t j = c.find(d, img.data());
            if (j < 0)
                throw InternalError("involution transport: image simplex missing");
            out.vertex_perm[sd.offsets[std::size_t(d)] + i] =
                std::uint32_t(sd.offsets[std::size_t(d)] + std::size_t(j));
        }
    return out;
}

struct EquivariantSubdivision {
    SimplicialComplex complex;
    std::vector<std::size_t> offsets;
    Involution tau;
};

inline EquivariantSubdivision subdivide_equivariant(const SimplicialComplex& c,
                                                    const Involution& tau) {
    SubdivisionResult sd = barycentric_subdivision(c);
    Involution t2 = subdivide_involution(c, tau, sd);
    EquivariantSubdivision out;
    out.complex = std::move(sd.complex);
    out.offsets = std::move(sd.offsets);
    out.tau = std::move(t2);
    return out;
}

struct EquivariantManifold {
    SimplicialComplex m;
    Involution tau;
    std::vector<std::uint32_t> fixed_vertices;
    bool regularized = false;
    std::size_t subdivisions = 0;
};

namespace detail {

inline bool has_pointwise_fixed_edge(const SimplicialComplex& c,
                                     const std::vector<std::uint32_t>& perm) {
    for (std::size_t i = 0; i < c.count(1); ++i) {
        const std::uint32_t* t = c.tuple(1, i);
        if (perm[t[0]] == t[0] && perm[t[1]] == t[1]) return true;
    }
    return false;
}

// regularity: no setwise-fixed simplex of positive dimension, no simplex
// meeting a tau-orbit twice, and closed stars of fixed vertices pairwise
// disjoint
inline bool equivariant_regular(const SimplicialComplex& c,
                                const std::vector<std::uint32_t>& perm) {
    std::vector<std::uint32_t> img;
    for (int d = 1; d <= c.dim(); ++d)
        for (std::size_t i = 0; i < c.count(d); ++i) {
            const std::uint32_t* t = c.tuple(d, i);
            img.assign(t, t + d + 1);
            for (auto& v : img) v = perm[v];
            std::sort(img.begin(), img.end());
            if (std::equal(img.begin(), img.end(), t)) return false;
            for (int p = 0; p <= d; ++p) {
                const std::uint32_t u = t[p];
                if (perm[u] == u) continue;
                for (int q = 0; q <= d; ++q)
                    if (t[q] == perm[u]) return false;
            }
        }
    std::vector<std::uint32_t> fixed;
    for (std::uint32_t v = 0; v < c.num_vertices; ++v)
        if (perm[v] == v) fixed.push_back(v);
    if (fixed.size() > 1) {
        // closed stars are disjoint iff no vertex is adjacent-or-equal to two
        // fixed vertices
        std::vector<std::vector<std::uint32_t>> nbhd(fixed.size());
        for (std::size_t fi = 0; fi < fixed.size(); ++fi)
            nbhd[fi].push_back(fixed[fi]);
        for (std::size_t i = 0; i < c.count(1); ++i) {
            const std::uint32_t* t = c.tuple(1, i);
            for (std::size_t fi = 0; fi < fixed.size(); ++fi) {
                if (t[0] == fixed[fi]) nbhd[fi].push_back(t[1]);
                if (t[1] == fixed[fi]) nbhd[fi].push_back(t[0]);
            }
        }
        for (auto& v : nbhd) std::sort(v.begin(), v.end());
        for (std::size_t a = 0; a < fixed.size(); ++a)
            for (std::size_t b = a + 1; b < fixed.size(); ++b) {
                std::vector<std::uint32_t> common;
                std::set_intersection(nbhd[a].begin(), nbhd[a].end(),
                                      nbhd[b].begin(), nbhd[b].end(),
                                      std::back_inserter(common));
                if (!common.empty()) return false;
            }
    }
    return true;
}

inline int sort_parity(std::vector<std::uint32_t>& v) {
    int sign = 1;
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = i + 1; j < v.size(); ++j)
            if (v[i] > v[j]) {
                std::swap(v[i], v[j]);
                sign = -sign;
            }
    return sign;
}

} // namespace detail

// Subdivides until the equivariant regularity invariants hold, then checks
// that tau reverses orientation and records the fixed vertices in ascending
// id order.
inline EquivariantManifold regularize(const SimplicialComplex& c0,
                                      const Involution& tau0,
                                      std::size_t max_subdiv = 3) {
    ValidationReport vr = validate_closed_3manifold(c0);
    if (!vr.pass) throw PreconditionError(vr.failure);
    Involution tau = validate_involution(c0, tau0.vertex_perm);
    SimplicialComplex cur = c0;
    std::size_t rounds = 0;
    for (;;) {
        if (detail::has_pointwise_fixed_edge(cur, tau.vertex_perm))
            throw PreconditionError("fixed-point set not isolated");
        if (detail::equivariant_regular(cur, tau.vertex_perm)) break;
        if (rounds == max_subdiv)
            throw PreconditionError("regularization failed after " +
                                    std::to_string(rounds) + " subdivisions");
        SubdivisionResult sd = barycentric_subdivision(cur);
        tau = subdivide_involution(cur, tau, sd);
        cur = std::move(sd.complex);
        ++rounds;
    }
    auto orient = orient_top(to_cells(cur));
    if (!orient) throw PreconditionError("complex is not orientable");
    const auto& eps = *orient;
    {
        std::vector<std::uint32_t> img;
        int expected = 0;
        for (std::size_t i = 0; i < cur.count(3); ++i) {
            const std::uint32_t* t = cur.tuple(3, i);
            img.assign(t, t + 4);
            for (auto& v : img) v = tau.vertex_perm[v];
            const int par = detail::sort_parity(img);
            std::int64_t j = cur.find(3, img.data());
            if (j < 0)
                throw InternalError("orientation check: image simplex missing");
            const int rel = int(eps[i]) * par * int(eps[std::size_t(j)]);
            if (i == 0) {
                if (rel == 1)
                    throw PreconditionError("orientation-preserving involution");
                expected = rel;
            } else if (rel != expected) {
                throw InternalError("orientation sign of the involution is not constant");
            }
        }
    }
    EquivariantManifold em;
    em.m = std::move(cur);
    em.tau = std::move(tau);
    for (std::uint32_t v = 0; v < em.m.num_vertices; ++v)
        if (em.tau.vertex_perm[v] == v) em.fixed_vertices.push_back(v);
    if (em.fixed_vertices.size() % 2 != 0)
        throw InternalError("odd number of fixed points");
    em.regularized = true;
    em.subdivisions = rounds;
    return em;
}

namespace detail {

struct OrbitStructure {
    CellComplex cc;
    // per dimension: simplex index -> orbit cell ordinal, -1 when not alive
    std::vector<std::vector<std::int32_t>> orbit_of;
    // per dimension: orbit cell ordinal -> representative simplex index
    std::vector<std::vector<std::uint32_t>> rep_of;
};

// Quotient cell structure of the subcomplex selected by `alive` under a
// simplicial involution acting freely on it. The representative of each
// orbit is the smaller simplex index; faces pick up a sign twist from the
// sorting permutation when they are glued through the involution.
inline OrbitStructure orbit_complex(const SimplicialComplex& c,
                                    const std::vector<std::uint32_t>& perm,
                                    const std::vector<std::vector<char>>& alive) {
    const int dim = c.dim();
    OrbitStructure os;
    os.orbit_of.resize(std::size_t(dim) + 1);
    os.rep_of.resize(std::size_t(dim) + 1);
    os.cc.counts.assign(std::size_t(dim) + 1, 0);
    os.cc.faces.resize(std::size_t(dim) + 1);
    os.cc.face_signs.resize(std::size_t(dim) + 1);

    std::vector<std::vector<std::int64_t>> tidx(std::size_t(dim) + 1);
    std::vector<std::uint32_t> img;
    for (int d = 0; d <= dim; ++d) {
        tidx[std::size_t(d)].assign(c.count(d), -1);
        for (std::size_t i = 0; i < c.count(d); ++i) {
            if (!alive[std::size_t(d)][i]) continue;
            const std::uint32_t* t = c.tuple(d, i);
            img.assign(t, t + d + 1);
            for (auto& v : img) v = perm[v];
            std::sort(img.begin(), img.end());
            std::int64_t j = c.find(d, img.data());
            if (j < 0 || !alive[std::size_t(d)][std::size_t(j)])
                throw InternalError(
                    "orbit quotient: involution does not preserve the "
                    "subcomplex");
            if (j == std::int64_t(i))
                throw InternalError(
                    "orbit quotient: involution is not free on simplices");
            tidx[std::size_t(d)][i] = j;
        }
        auto& oo = os.orbit_of[std::size_t(d)];
        oo.assign(c.count(d), -1);
        for (std::size_t i = 0; i < c.count(d); ++i) {
            if (tidx[std::size_t(d)][i] <= std::int64_t(i)) continue;
            const std::int32_t ord = std::int32_t(os.rep_of[std::size_t(d)].size());
            oo[i] = ord;
            oo[std::size_t(tidx[std::size_t(d)][i])] = ord;
            os.rep_of[std::size_t(d)].push_back(std::uint32_t(i));
        }
        os.cc.counts[std::size_t(d)] = os.rep_of[std::size_t(d)].size();
    }

    std::vector<std::uint32_t> sub;
    for (int d = 1; d <= dim; ++d) {
        auto& fl = os.cc.faces[std::size_t(d)];
        auto& sl = os.cc.face_signs[std::size_t(d)];
        for (std::uint32_t gi : os.rep_of[std::size_t(d)]) {
            const std::uint32_t* t = c.tuple(d, gi);
            for (int j = 0; j <= d; ++j) {
                sub.clear();
                for (int p = 0; p <= d; ++p)
                    if (p != j) sub.push_back(t[p]);
                std::int64_t f = c.find(d - 1, sub.data());
                if (f < 0 || os.orbit_of[std::size_t(d) - 1][std::size_t(f)] < 0)
                    throw InternalError("orbit quotient: face not in subcomplex");
                fl.push_back(std::uint32_t(
                    os.orbit_of[std::size_t(d) - 1][std::size_t(f)]));
                int s = (j % 2 == 0) ? 1 : -1;
                const std::int64_t fr = tidx[std::size_t(d) - 1][std::size_t(f)];
                if (fr >= 0 && fr < f) {
                    // the orbit cell is parametrized by the partner simplex;
                    // gluing through the involution twists by the sort parity
                    const std::uint32_t* rt =
                        c.tuple(d - 1, std::size_t(fr));
                    img.assign(rt, rt + d);
                    for (auto& v : img) v = perm[v];
                    s *= sort_parity(img);
                }
                sl.push_back(std::int8_t(s));
            }
        }
    }
    return os;
}

} // namespace detail

struct BoundaryComponent {
    std::uint32_t fixed_vertex = 0;
    SubComplex cells;  // 2-complex; to_global indexes cells of w
};

struct OrbitComplexW {
    CellComplex w;
    // per dimension of em.m: simplex -> cell of w, -1 for removed stars
    std::vector<std::vector<std::int32_t>> orbit_map;
    std::vector<BoundaryComponent> components;
};

// W = (M minus the open stars of the fixed vertices) / tau, as orbit cells.
// Boundary component i is link(x_i)/tau and must be a projective plane.
inline OrbitComplexW build_W(const EquivariantManifold& em) {
    if (!em.regularized)
        throw PreconditionError("manifold is not regularized");
    const SimplicialComplex& c = em.m;
    const auto& perm = em.tau.vertex_perm;
    const int dim = c.dim();

    std::vector<char> fixed(c.num_vertices, 0);
    std::vector<std::int32_t> fixed_ord(c.num_vertices, -1);
    for (std::size_t i = 0; i < em.fixed_vertices.size(); ++i) {
        fixed[em.fixed_vertices[i]] = 1;
        fixed_ord[em.fixed_vertices[i]] = std::int32_t(i);
    }
    std::vector<std::vector<char>> alive(std::size_t(dim) + 1);
    for (int d = 0; d <= dim; ++d) {
        alive[std::size_t(d)].assign(c.count(d), 1);
        for (std::size_t i = 0; i < c.count(d); ++i) {
            const std::uint32_t* t = c.tuple(d, i);
            for (int p = 0; p <= d; ++p)
                if (fixed[t[p]]) {
                    alive[std::size_t(d)][i] = 0;
                    break;
                }
        }
    }
    detail::OrbitStructure os = detail::orbit_complex(c, perm, alive);

    OrbitComplexW out;
    out.w = std::move(os.cc);
    out.orbit_map = std::move(os.orbit_of);

    // per-component masks over cells of w (dimensions 0..2)
    const std::size_t k = em.fixed_vertices.size();
    std::vector<std::vector<std::vector<char>>> masks(
        k, std::vector<std::vector<char>>(std::size_t(dim) + 1));
    for (std::size_t ci = 0; ci < k; ++ci)
        for (int d = 0; d <= dim; ++d)
            masks[ci][std::size_t(d)].assign(out.w.count(d), 0);
    std::vector<std::uint32_t> sub;
    for (int d = 1; d <= dim; ++d)
        for (std::size_t i = 0; i < c.count(d); ++i) {
            const std::uint32_t* t = c.tuple(d, i);
            for (int p = 0; p <= d; ++p) {
                if (!fixed[t[p]]) continue;
                sub.clear();
                for (int q = 0; q <= d; ++q)
                    if (q != p) sub.push_back(t[q]);
                for (std::uint32_t v : sub)
                    if (fixed[v])
                        throw InternalError(
                            "orbit boundary: a simplex meets two fixed stars");
                std::int64_t f = c.find(d - 1, sub.data());
                if (f < 0)
                    throw InternalError("orbit boundary: link face missing");
                std::int32_t cell = out.orbit_map[std::size_t(d) - 1]
                                                 [std::size_t(f)];
                if (cell < 0)
                    throw InternalError("orbit boundary: link face missing");
                masks[std::size_t(fixed_ord[t[p]])][std::size_t(d) - 1]
                     [std::size_t(cell)] = 1;
                break;
            }
        }

    std::vector<char> boundary2(out.w.count(2), 0);
    for (std::size_t ci = 0; ci < k; ++ci) {
        SubComplex sc = subcomplex(out.w, masks[ci]);
        if (sc.cc.count(3) != 0)
            throw InternalError("orbit boundary: link contains a tetrahedron");
        sc.cc.counts.resize(3);
        sc.cc.faces.resize(3);
        sc.cc.face_signs.resize(3);
        sc.to_global.resize(3);
        sc.to_local.resize(3);
        SurfaceKind kind = classify_surface_cells(sc.cc);
        if (kind.tag != SurfaceKind::Tag::projective_plane)
            throw PreconditionError(
                "boundary anomaly: component at vertex " +
                std::to_string(em.fixed_vertices[ci]) +
                " has euler characteristic " + std::to_string(kind.euler) +
                (kind.orientable ? " (orientable)" : " (non-orientable)"));
        for (std::uint32_t g : sc.to_global[2]) boundary2[g] = 1;
        BoundaryComponent bc;
        bc.fixed_vertex = em.fixed_vertices[ci];
        bc.cells = std::move(sc);
        out.components.push_back(std::move(bc));
    }

    // interior 2-cells carry two tetrahedra, boundary 2-cells one
    {
        std::vector<std::uint32_t> cnt(out.w.count(2), 0);
        for (std::uint32_t f : out.w.faces[3]) ++cnt[f];
        for (std::size_t i = 0; i < out.w.count(2); ++i) {
            const std::uint32_t want = boundary2[i] ? 1 : 2;
            if (cnt[i] != want)
                throw InternalError(
                    "orbit boundary: triangle " + std::to_string(i) +
                    " lies in " + std::to_string(cnt[i]) +
                    " tetrahedra, expected " + std::to_string(want));
        }
    }
    return out;
}

namespace detail {

struct InducedMap {
    Gf2Matrix b;        // k x b1(W): row i is the class of component i's generator
    std::size_t b1_w = 0;
    std::size_t cells_before = 0;
    std::size_t cells_after = 0;
};

// Classes of the boundary generators in H1(W), computed on a copy of W
// collapsed away from the marked generator cycles.
inline InducedMap induced_boundary_map(const OrbitComplexW& w) {
    const std::size_t k = w.components.size();
    std::vector<Gf2Vector> gens;
    for (const BoundaryComponent& bc : w.components) {
        HomologyBasis hb = homology_basis(bc.cells.cc, 1);
        if (hb.betti != 1)
            throw InternalError("boundary component with unexpected homology");
        Gf2Vector local = hb.cycle_reps.row(0);
        Gf2Vector global(w.w.count(1));
        for (std::size_t e = 0; e < local.size(); ++e)
            if (local.get(e)) global.set(bc.cells.to_global[1][e], true);
        gens.push_back(std::move(global));
    }

    std::vector<std::vector<char>> marked(std::size_t(w.w.dim()) + 1);
    marked[0].assign(w.w.count(0), 0);
    marked[1].assign(w.w.count(1), 0);
    for (const Gf2Vector& g : gens)
        for (std::size_t e = 0; e < g.size(); ++e)
            if (g.get(e)) {
                marked[1][e] = 1;
                marked[0][w.w.cell_faces(1, e)[0]] = 1;
                marked[0][w.w.cell_faces(1, e)[1]] = 1;
            }
    std::vector<std::vector<char>> alive = collapse_mask(w.w, marked);
    SubComplex sub = subcomplex(w.w, alive);

    HomologyBasis h1 = homology_basis(sub.cc, 1);
    InducedMap im;
    im.b1_w = h1.betti;
    im.cells_before = w.w.total_cells();
    im.cells_after = sub.cc.total_cells();
    im.b = Gf2Matrix(k, h1.betti);
    for (std::size_t i = 0; i < k; ++i) {
        Gf2Vector local(sub.cc.count(1));
        for (std::size_t e = 0; e < gens[i].size(); ++e) {
            if (!gens[i].get(e)) continue;
            std::int32_t le = sub.to_local[1][e];
            if (le < 0)
                throw InternalError("collapse removed a marked generator edge");
            local.set(std::size_t(le), true);
        }
        im.b.set_row(i, class_coordinates(h1, local));
    }
    return im;
}

} // namespace detail

// Ker(H1(boundary W) -> H1(W)) in the coordinates given by the boundary
// components, as a canonical BinaryCode. Self-duality is asserted.
inline BinaryCode extract_code(const EquivariantManifold& em) {
    OrbitComplexW w = build_W(em);
    detail::InducedMap im = detail::induced_boundary_map(w);
    BinaryCode code =
        BinaryCode::from_generators(nullspace_basis(im.b.transpose()));
    if (!is_self_dual(code)) throw InternalError("self-duality violation");
    return code;
}

struct MaximalityReport {
    bool maximal = false;
    std::size_t k = 0;
    std::size_t homology_dimension_sum = 0;
    std::size_t induced_rank = 0;
    std::size_t w_b1 = 0;
};

namespace detail {

inline MaximalityReport maximality_from(const EquivariantManifold& em,
                                        const InducedMap& im) {
    MaximalityReport rep;
    rep.k = em.fixed_vertices.size();
    rep.homology_dimension_sum = total_mod2_dimension(em.m);
    rep.induced_rank = rank(im.b);
    rep.w_b1 = im.b1_w;
    rep.maximal = (rep.k == rep.homology_dimension_sum);
    const bool surjective = (rep.induced_rank == rep.w_b1);
    if (rep.maximal != surjective)
        throw InternalError("maximality criteria disagree: k " +
                            std::to_string(rep.k) + " vs homology sum " +
                            std::to_string(rep.homology_dimension_sum) +
                            ", induced rank " +
                            std::to_string(rep.induced_rank) + " vs b1(W) " +
                            std::to_string(rep.w_b1));
    return rep;
}

} // namespace detail

// Maximality of the fixed-point count: k = dim H_*(M), cross-checked against
// surjectivity of H1(boundary W) -> H1(W).
inline MaximalityReport check_maximal(const EquivariantManifold& em) {
    if (!em.regularized)
        throw PreconditionError("manifold is not regularized");
    OrbitComplexW w = build_W(em);
    detail::InducedMap im = detail::induced_boundary_map(w);
    return detail::maximality_from(em, im);
}

} // namespace involcode
