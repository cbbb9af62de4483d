#pragma once

// Shared test fixtures: small named complexes, staircase products, and a
// seeded random-complex generator.

#include <cstdint>
#include <random>
#include <vector>

#include <involcode/simplicial.hpp>

namespace fixtures {

using involcode::SimplicialComplex;
using involcode::from_facets;

// minimal 6-vertex triangulation of the projective plane (antipodal
// quotient of the icosahedron); every one of the 15 edges lies in exactly
// two of the 10 triangles
inline SimplicialComplex rp2_6() {
    std::vector<std::vector<std::uint32_t>> f = {
        {0, 1, 2}, {0, 1, 3}, {0, 2, 4}, {0, 3, 5}, {0, 4, 5},
        {1, 2, 5}, {1, 3, 4}, {1, 4, 5}, {2, 3, 4}, {2, 3, 5}};
    return from_facets(6, f);
}

// Moebius-Kantor style 7-vertex torus
inline SimplicialComplex torus_7() {
    std::vector<std::vector<std::uint32_t>> f;
    for (std::uint32_t i = 0; i < 7; ++i) {
        f.push_back({i, (i + 1) % 7, (i + 3) % 7});
        f.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return from_facets(7, f);
}

// octahedron as the antipodal pairs (0,1), (2,3), (4,5)
inline SimplicialComplex octahedron() {
    std::vector<std::vector<std::uint32_t>> f;
    for (std::uint32_t a = 0; a < 2; ++a)
        for (std::uint32_t b = 2; b < 4; ++b)
            for (std::uint32_t c = 4; c < 6; ++c) f.push_back({a, b, c});
    return from_facets(6, f);
}

inline std::vector<std::uint32_t> octahedron_antipodal() {
    return {1, 0, 3, 2, 5, 4};
}

// 4-cycle; embeds in the octahedron as an equatorial circle
inline SimplicialComplex circle_4() {
    return from_facets(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

inline std::vector<std::uint32_t> equator_map() { return {2, 4, 3, 5}; }

inline SimplicialComplex boundary_4simplex() {
    std::vector<std::vector<std::uint32_t>> f;
    for (std::uint32_t omit = 0; omit < 5; ++omit) {
        std::vector<std::uint32_t> t;
        for (std::uint32_t v = 0; v < 5; ++v)
            if (v != omit) t.push_back(v);
        f.push_back(t);
    }
    return from_facets(5, f);
}

// Staircase triangulation of |K| x interval with `segments` segments.
// Vertex (v, t) gets id v * (segments + 1) + t.
inline SimplicialComplex product_with_path(const SimplicialComplex& k,
                                           std::uint32_t segments) {
    const std::uint32_t layers = segments + 1;
    std::vector<std::vector<std::uint32_t>> facets;
    const int d = k.dim();
    for (std::size_t i = 0; i < k.count(d); ++i) {
        const std::uint32_t* s = k.tuple(d, i);
        for (std::uint32_t t = 0; t < segments; ++t) {
            for (int j = 0; j <= d; ++j) {
                std::vector<std::uint32_t> cell;
                for (int p = 0; p <= j; ++p)
                    cell.push_back(s[p] * layers + t);
                for (int p = j; p <= d; ++p)
                    cell.push_back(s[p] * layers + t + 1);
                facets.push_back(cell);
            }
        }
    }
    return from_facets(k.num_vertices * layers, facets);
}

// Staircase triangulation of |K| x circle with m >= 3 layers, using the
// oriented edges t -> t+1 (mod m) so that layer shifts act simplicially.
// Vertex (v, t) gets id v * m + t.
inline SimplicialComplex product_with_cycle(const SimplicialComplex& k,
                                            std::uint32_t m) {
    std::vector<std::vector<std::uint32_t>> facets;
    const int d = k.dim();
    for (std::size_t i = 0; i < k.count(d); ++i) {
        const std::uint32_t* s = k.tuple(d, i);
        for (std::uint32_t t = 0; t < m; ++t) {
            const std::uint32_t t1 = (t + 1) % m;
            for (int j = 0; j <= d; ++j) {
                std::vector<std::uint32_t> cell;
                for (int p = 0; p <= j; ++p)
                    cell.push_back(s[p] * m + t);
                for (int p = j; p <= d; ++p)
                    cell.push_back(s[p] * m + t1);
                facets.push_back(cell);
            }
        }
    }
    return from_facets(k.num_vertices * m, facets);
}

// S^1 x S^2 with the free orientation-reversing involution
// (v, t) -> (r(v), t + 2), r the reflection swapping the octahedron's last
// antipodal pair.
struct InvolutionFixture {
    SimplicialComplex complex;
    std::vector<std::uint32_t> tau;
};

inline InvolutionFixture s1_x_s2() {
    InvolutionFixture fx;
    SimplicialComplex octa = octahedron();
    const std::uint32_t m = 4;
    fx.complex = product_with_cycle(octa, m);
    std::vector<std::uint32_t> r = {0, 1, 2, 3, 5, 4};
    fx.tau.resize(fx.complex.num_vertices);
    for (std::uint32_t v = 0; v < octa.num_vertices; ++v)
        for (std::uint32_t t = 0; t < m; ++t)
            fx.tau[v * m + t] = r[v] * m + (t + 2) % m;
    return fx;
}

inline SimplicialComplex rp2_x_s1() { return product_with_cycle(rp2_6(), 3); }

// random pure-dimension-agnostic facet soup, at most a few hundred simplices
inline SimplicialComplex random_complex(std::mt19937& rng) {
    std::uniform_int_distribution<std::uint32_t> dv(4, 12);
    const std::uint32_t nv = dv(rng);
    std::uniform_int_distribution<std::uint32_t> df(1, 8);
    const std::uint32_t nf = df(rng);
    std::uniform_int_distribution<std::uint32_t> dsz(1, 4);
    std::uniform_int_distribution<std::uint32_t> dvert(0, nv - 1);
    std::vector<std::vector<std::uint32_t>> facets;
    for (std::uint32_t i = 0; i < nf; ++i) {
        const std::uint32_t sz = dsz(rng);
        std::vector<std::uint32_t> f;
        while (f.size() < sz) {
            std::uint32_t v = dvert(rng);
            bool seen = false;
            for (std::uint32_t w : f)
                if (w == v) seen = true;
            if (!seen) f.push_back(v);
        }
        facets.push_back(f);
    }
    return from_facets(nv, facets);
}

} // namespace fixtures
