#pragma once

// Reference homology oracle for the tests. Deliberately naive and fully
// separate from the library's linear algebra: simplices are indexed through
// ordered maps, boundary matrices are plain int grids, and ranks come from
// textbook Gaussian elimination over GF(2).

#include <cstdint>
#include <map>
#include <vector>

#include <involcode/simplicial.hpp>

namespace naive {

using Tuple = std::vector<std::uint32_t>;

inline std::size_t rank_mod2(std::vector<std::vector<int>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] % 2 == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] % 2 == 0) continue;
            for (std::size_t k = 0; k < cols; ++k)
                m[r][k] = (m[r][k] + m[rank][k]) % 2;
        }
        ++rank;
    }
    return rank;
}

struct Complex {
    std::vector<std::map<Tuple, int>> index;  // per dimension

    std::size_t count(int d) const {
        return (d >= 0 && d < int(index.size())) ? index[std::size_t(d)].size()
                                                 : 0;
    }
};

inline Complex read_complex(const involcode::SimplicialComplex& c) {
    Complex out;
    out.index.resize(std::size_t(c.dim() < 0 ? 0 : c.dim() + 1));
    for (int d = 0; d <= c.dim(); ++d) {
        auto& m = out.index[std::size_t(d)];
        for (std::size_t i = 0; i < c.count(d); ++i) {
            const std::uint32_t* t = c.tuple(d, i);
            m[Tuple(t, t + d + 1)] = 0;
        }
        int k = 0;
        for (auto& kv : m) kv.second = k++;
    }
    return out;
}

inline std::vector<std::vector<int>> boundary(const Complex& c, int d) {
    std::vector<std::vector<int>> m(
        c.count(d - 1), std::vector<int>(c.count(d), 0));
    if (d < 1 || d >= int(c.index.size())) return m;
    for (const auto& kv : c.index[std::size_t(d)]) {
        const Tuple& t = kv.first;
        for (std::size_t j = 0; j < t.size(); ++j) {
            Tuple face;
            for (std::size_t p = 0; p < t.size(); ++p)
                if (p != j) face.push_back(t[p]);
            auto it = c.index[std::size_t(d) - 1].find(face);
            if (it == c.index[std::size_t(d) - 1].end())
                throw std::runtime_error("oracle: face missing from closure");
            m[std::size_t(it->second)][std::size_t(kv.second)] ^= 1;
        }
    }
    return m;
}

inline std::vector<std::size_t> betti_numbers(
    const involcode::SimplicialComplex& sc) {
    Complex c = read_complex(sc);
    const int dim = int(c.index.size()) - 1;
    std::vector<std::size_t> line;
    std::vector<std::size_t> ranks(std::size_t(dim) + 2, 0);
    for (int d = 1; d <= dim; ++d)
        ranks[std::size_t(d)] = rank_mod2(boundary(c, d));
    for (int d = 0; d <= dim; ++d)
        line.push_back(c.count(d) - ranks[std::size_t(d)] -
                       ranks[std::size_t(d) + 1]);
    return line;
}

// Quotient of a complex by a free simplicial involution, valid when simplex
// orbits are determined by vertex orbits (true after two barycentric
// subdivisions). Vertices map to min(v, tau(v)); the result must again be
// simplicial with one simplex per orbit, which the caller should have
// arranged. Returns betti numbers of the quotient.
inline std::vector<std::size_t> quotient_betti(
    const involcode::SimplicialComplex& sc,
    const std::vector<std::uint32_t>& tau) {
    Complex q;
    q.index.resize(std::size_t(sc.dim() < 0 ? 0 : sc.dim() + 1));
    for (int d = 0; d <= sc.dim(); ++d) {
        auto& m = q.index[std::size_t(d)];
        std::size_t orbits = 0;
        for (std::size_t i = 0; i < sc.count(d); ++i) {
            const std::uint32_t* t = sc.tuple(d, i);
            Tuple img;
            for (int p = 0; p <= d; ++p)
                img.push_back(std::min(t[std::size_t(p)],
                                       tau[t[std::size_t(p)]]));
            std::sort(img.begin(), img.end());
            for (std::size_t p = 0; p + 1 < img.size(); ++p)
                if (img[p] == img[p + 1])
                    throw std::runtime_error(
                        "oracle: involution not free on simplices");
            m[img] = 0;
        }
        orbits = sc.count(d) / 2;
        if (m.size() != orbits)
            throw std::runtime_error(
                "oracle: quotient identified distinct orbits");
        int k = 0;
        for (auto& kv : m) kv.second = k++;
    }
    const int dim = int(q.index.size()) - 1;
    std::vector<std::size_t> line;
    std::vector<std::size_t> ranks(std::size_t(dim) + 2, 0);
    for (int d = 1; d <= dim; ++d)
        ranks[std::size_t(d)] = rank_mod2(boundary(q, d));
    for (int d = 0; d <= dim; ++d)
        line.push_back(q.count(d) - ranks[std::size_t(d)] -
                       ranks[std::size_t(d) + 1]);
    return line;
}

} // namespace naive
