#pragma once

#include <cerrno>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "atlas.hpp"
#include "errors.hpp"
#include "simplicial.hpp"

namespace involcode {

inline constexpr const char* triangulation_format = "involcode-triangulation/1";

// Strict reader for the external triangulation format: a single JSON object
// with exactly the fields format, num_vertices, tetrahedra, involution.
// Tetrahedra must be strictly increasing 4-tuples in lexicographic order.
inline AtlasInput load_triangulation(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ParseError("cannot open " + path + ": " + std::strerror(errno));
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const std::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    if (!j.is_object())
        throw ParseError(path + ": top-level value is not an object");
    static const char* required[] = {"format", "num_vertices", "tetrahedra",
                                     "involution"};
    for (const auto& el : j.items()) {
        bool known = false;
        for (const char* r : required) known = known || el.key() == r;
        if (!known) throw ParseError(path + ": unknown field '" + el.key() + "'");
    }
    for (const char* r : required)
        if (!j.contains(r))
            throw ParseError(path + ": missing field '" + std::string(r) + "'");

    if (!j["format"].is_string() ||
        j["format"].get<std::string>() != triangulation_format)
        throw ParseError(path + ": field 'format' must be \"" +
                         std::string(triangulation_format) + "\"");
    if (!j["num_vertices"].is_number_unsigned())
        throw ParseError(path +
                         ": field 'num_vertices' must be an unsigned integer");
    const std::size_t n = j["num_vertices"].get<std::size_t>();

    if (!j["tetrahedra"].is_array())
        throw ParseError(path + ": field 'tetrahedra' must be an array");
    std::vector<std::vector<std::uint32_t>> tets;
    std::vector<std::uint32_t> prev;
    for (std::size_t i = 0; i < j["tetrahedra"].size(); ++i) {
        const auto& row = j["tetrahedra"][i];
        if (!row.is_array() || row.size() != 4)
            throw ParseError(path + ": tetrahedron " + std::to_string(i) +
                             " is not a 4-element array");
        std::vector<std::uint32_t> t;
        for (const auto& v : row) {
            if (!v.is_number_unsigned())
                throw ParseError(path + ": tetrahedron " + std::to_string(i) +
                                 " has a non-integer vertex");
            t.push_back(v.get<std::uint32_t>());
        }
        for (int p = 0; p < 3; ++p)
            if (t[p] >= t[p + 1])
                throw ParseError("malformed facet: " +
                                 detail::tuple_to_string(t.data(), 4) +
                                 " is not strictly increasing");
        if (!prev.empty() && !(prev < t))
            throw ParseError(path + ": tetrahedra are not sorted at index " +
                             std::to_string(i));
        prev = t;
        tets.push_back(std::move(t));
    }

    if (!j["involution"].is_array() || j["involution"].size() != n)
        throw ParseError(path + ": field 'involution' must list " +
                         std::to_string(n) + " vertex images");
    std::vector<std::uint32_t> perm;
    for (const auto& v : j["involution"]) {
        if (!v.is_number_unsigned())
            throw ParseError(path + ": field 'involution' has a non-integer entry");
        perm.push_back(v.get<std::uint32_t>());
    }

    AtlasInput out;
    out.complex = from_facets(n, tets);
    out.tau = validate_involution(out.complex, perm);
    return out;
}

inline std::string triangulation_to_json(const SimplicialComplex& c,
                                         const Involution& tau) {
    nlohmann::ordered_json j;
    j["format"] = triangulation_format;
    j["num_vertices"] = c.num_vertices;
    auto tets = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < c.count(3); ++i) {
        const std::uint32_t* t = c.tuple(3, i);
        tets.push_back({t[0], t[1], t[2], t[3]});
    }
    j["tetrahedra"] = std::move(tets);
    j["involution"] = tau.vertex_perm;
    return j.dump(2) + "\n";
}

inline void save_triangulation(const SimplicialComplex& c,
                               const Involution& tau,
                               const std::string& path) {
    const std::string body = triangulation_to_json(c, tau);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw ParseError("cannot write " + path + ": " + std::strerror(errno));
    out << body;
    out.flush();
    if (!out)
        throw ParseError("cannot write " + path + ": " + std::strerror(errno));
}

} // namespace involcode
