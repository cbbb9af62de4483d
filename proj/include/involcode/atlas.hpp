#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "equivariant.hpp"
#include "errors.hpp"
#include "simplicial.hpp"

namespace involcode {

struct AtlasInput {
    SimplicialComplex complex;
    Involution tau;
};

// Boundary of the 4-dimensional cross-polytope: vertices 2(i-1) and 2i-1
// stand for +e_i and -e_i, tetrahedra are all sign choices, and no facet
// contains an antipodal pair. The involution negates the first three axes
// and fixes the two poles 6 and 7.
inline AtlasInput sphere_suspension() {
    std::vector<std::vector<std::uint32_t>> tets;
    for (std::uint32_t a = 0; a < 2; ++a)
        for (std::uint32_t b = 2; b < 4; ++b)
            for (std::uint32_t c = 4; c < 6; ++c)
                for (std::uint32_t d = 6; d < 8; ++d)
                    tets.push_back({a, b, c, d});
    AtlasInput out;
    out.complex = from_facets(8, tets);
    out.tau.vertex_perm = {1, 0, 3, 2, 5, 4, 6, 7};
    return out;
}

// Kuhn triangulation of the m x m x m grid torus: each cube splits into 6
// tetrahedra along coordinate chains, one per axis order. Vertex ids are
// x*m^2 + y*m + z. Coordinate negation reverses every chain, so it maps
// Kuhn simplices to Kuhn simplices; its fixed vertices have coordinates in
// {0, m/2}.
inline AtlasInput torus_conjugation(std::size_t m = 4) {
    if (m % 2 != 0 || m < 4)
        throw PreconditionError("odd or too-small m: " + std::to_string(m));
    const std::uint32_t um = std::uint32_t(m);
    auto vid = [um](std::uint32_t x, std::uint32_t y, std::uint32_t z) {
        return (x % um) * um * um + (y % um) * um + (z % um);
    };
    static const int axes[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                   {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    std::vector<std::vector<std::uint32_t>> tets;
    tets.reserve(6 * m * m * m);
    for (std::uint32_t x = 0; x < um; ++x)
        for (std::uint32_t y = 0; y < um; ++y)
            for (std::uint32_t z = 0; z < um; ++z)
                for (const auto& ax : axes) {
                    std::uint32_t c[3] = {x, y, z};
                    std::vector<std::uint32_t> t;
                    t.push_back(vid(c[0], c[1], c[2]));
                    for (int step = 0; step < 3; ++step) {
                        c[ax[step]] += 1;
                        t.push_back(vid(c[0], c[1], c[2]));
                    }
                    tets.push_back(std::move(t));
                }
    AtlasInput out;
    out.complex = from_facets(um * um * um, tets);
    out.tau.vertex_perm.resize(m * m * m);
    for (std::uint32_t x = 0; x < um; ++x)
        for (std::uint32_t y = 0; y < um; ++y)
            for (std::uint32_t z = 0; z < um; ++z)
                out.tau.vertex_perm[vid(x, y, z)] =
                    vid((um - x) % um, (um - y) % um, (um - z) % um);
    return out;
}

struct AtlasEntry {
    std::string name;
    std::string description;
    std::size_t expected_k = 0;
    bool expected_maximal = false;
    std::string expected_code;  // known_code name the extracted code matches
    bool expected_doubly_even = false;
    AtlasInput (*build)() = nullptr;
};

inline const std::vector<AtlasEntry>& atlas() {
    static const std::vector<AtlasEntry> entries = {
        {"sphere_suspension",
         "boundary of the 4-dim cross-polytope, antipodal on three axes",
         2, true, "repetition2", false, +[] { return sphere_suspension(); }},
        {"torus_conjugation",
         "Kuhn 4x4x4 grid torus with coordinate negation",
         8, true, "extended_hamming8", true, +[] { return torus_conjugation(4); }},
    };
    return entries;
}

inline const AtlasEntry* atlas_find(const std::string& name) {
    for (const AtlasEntry& e : atlas())
        if (e.name == name) return &e;
    return nullptr;
}

} // namespace involcode
