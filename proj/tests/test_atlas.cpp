#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <involcode/atlas.hpp>
#include <involcode/io.hpp>
#include <involcode/pipeline.hpp>

using namespace involcode;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::MessageMatches;

namespace {

std::filesystem::path temp_file(const std::string& stem) {
    return std::filesystem::temp_directory_path() / (stem + ".json");
}

std::string write_file(const std::string& stem, const std::string& body) {
    const std::filesystem::path p = temp_file(stem);
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << body;
    out.close();
    return p.string();
}

}  // namespace

TEST_CASE("atlas registry") {
    const std::vector<AtlasEntry>& entries = atlas();
    REQUIRE(entries.size() == 2);

    const AtlasEntry* sphere = atlas_find("sphere_suspension");
    REQUIRE(sphere != nullptr);
    CHECK(sphere->expected_k == 2);
    CHECK(sphere->expected_maximal);
    CHECK(sphere->expected_code == "repetition2");
    CHECK_FALSE(sphere->expected_doubly_even);
    CHECK_FALSE(sphere->description.empty());

    const AtlasEntry* torus = atlas_find("torus_conjugation");
    REQUIRE(torus != nullptr);
    CHECK(torus->expected_k == 8);
    CHECK(torus->expected_maximal);
    CHECK(torus->expected_code == "extended_hamming8");
    CHECK(torus->expected_doubly_even);

    CHECK(atlas_find("lens_space") == nullptr);
}

TEST_CASE("sphere suspension builder") {
    AtlasInput in = sphere_suspension();
    CHECK(in.complex.num_vertices == 8);
    CHECK(in.complex.count(3) == 16);
    CHECK(in.complex.count(0) == 8);
    CHECK(validate_closed_3manifold(in.complex).pass);
    validate_involution(in.complex, in.tau.vertex_perm);
    std::vector<std::uint32_t> fixed;
    for (std::uint32_t v = 0; v < 8; ++v)
        if (in.tau.vertex_perm[v] == v) fixed.push_back(v);
    CHECK(fixed == std::vector<std::uint32_t>{6, 7});
}

TEST_CASE("torus conjugation builder") {
    SECTION("default resolution") {
        AtlasInput in = torus_conjugation();
        CHECK(in.complex.num_vertices == 64);
        CHECK(in.complex.count(3) == 384);
        CHECK(validate_closed_3manifold(in.complex).pass);
        validate_involution(in.complex, in.tau.vertex_perm);
        std::size_t fixed = 0;
        for (std::uint32_t v = 0; v < 64; ++v)
            if (in.tau.vertex_perm[v] == v) ++fixed;
        CHECK(fixed == 8);
    }
    SECTION("resolution six") {
        AtlasInput in = torus_conjugation(6);
        CHECK(in.complex.num_vertices == 216);
        CHECK(in.complex.count(3) == 6 * 216);
        CHECK(validate_closed_3manifold(in.complex).pass);
        std::size_t fixed = 0;
        for (std::uint32_t v = 0; v < 216; ++v)
            if (in.tau.vertex_perm[v] == v) ++fixed;
        CHECK(fixed == 8);
    }
    SECTION("odd or too-small resolutions are rejected") {
        CHECK_THROWS_MATCHES(torus_conjugation(3), PreconditionError,
                             MessageMatches(
                                 ContainsSubstring("odd or too-small m")));
        CHECK_THROWS_MATCHES(torus_conjugation(2), PreconditionError,
                             MessageMatches(
                                 ContainsSubstring("odd or too-small m")));
    }
}

TEST_CASE("every atlas entry matches its advertised extraction") {
    for (const AtlasEntry& entry : atlas()) {
        INFO(entry.name);
        AtlasInput in = entry.build();
        REQUIRE(validate_closed_3manifold(in.complex).pass);
        EquivariantManifold em = regularize(in.complex, in.tau);
        CHECK(em.fixed_vertices.size() == entry.expected_k);

        BinaryCode code = extract_code(em);
        CHECK(is_self_dual(code));
        CHECK(is_doubly_even(code) == entry.expected_doubly_even);
        CHECK(are_equivalent(code, known_code(entry.expected_code)).has_value());
        CHECK(check_maximal(em).maximal == entry.expected_maximal);
    }
}

TEST_CASE("grid resolution does not change the torus code") {
    EquivariantManifold em4 = [] {
        AtlasInput in = torus_conjugation(4);
        return regularize(in.complex, in.tau);
    }();
    EquivariantManifold em6 = [] {
        AtlasInput in = torus_conjugation(6);
        return regularize(in.complex, in.tau);
    }();
    CHECK(extract_code(em4) == extract_code(em6));
}

TEST_CASE("triangulation files round-trip") {
    for (const AtlasEntry& entry : atlas()) {
        INFO(entry.name);
        AtlasInput in = entry.build();
        const std::string body = triangulation_to_json(in.complex, in.tau);
        const std::string path = write_file("roundtrip_" + entry.name, body);

        AtlasInput back = load_triangulation(path);
        CHECK(back.complex.num_vertices == in.complex.num_vertices);
        CHECK(back.tau.vertex_perm == in.tau.vertex_perm);
        CHECK(triangulation_to_json(back.complex, back.tau) == body);
    }
    SECTION("save_triangulation writes the same bytes") {
        AtlasInput in = sphere_suspension();
        const std::string path = temp_file("saved_sphere").string();
        save_triangulation(in.complex, in.tau, path);
        std::ifstream f(path, std::ios::binary);
        std::string body((std::istreambuf_iterator<char>(f)),
                         std::istreambuf_iterator<char>());
        CHECK(body == triangulation_to_json(in.complex, in.tau));
    }
    SECTION("unwritable path is reported") {
        AtlasInput in = sphere_suspension();
        CHECK_THROWS_MATCHES(
            save_triangulation(in.complex, in.tau,
                               "/nonexistent-dir/out.json"),
            ParseError, MessageMatches(ContainsSubstring("cannot write")));
    }
}

TEST_CASE("triangulation loader rejects malformed input") {
    const std::string good = triangulation_to_json(
        sphere_suspension().complex, sphere_suspension().tau);

    SECTION("missing file") {
        CHECK_THROWS_MATCHES(
            load_triangulation("/nonexistent-dir/in.json"), ParseError,
            MessageMatches(ContainsSubstring("cannot open")));
    }
    SECTION("truncated document") {
        const std::string path =
            write_file("truncated", good.substr(0, good.size() / 2));
        CHECK_THROWS_AS(load_triangulation(path), ParseError);
    }
    SECTION("top-level value is not an object") {
        const std::string path = write_file("toplevel", "[1, 2, 3]\n");
        CHECK_THROWS_MATCHES(
            load_triangulation(path), ParseError,
            MessageMatches(ContainsSubstring("not an object")));
    }
    SECTION("unknown fields are rejected") {
        std::string body = good;
        body.insert(body.find("\"format\""), "\"comment\": \"hi\",\n  ");
        const std::string path = write_file("unknown_field", body);
        CHECK_THROWS_MATCHES(
            load_triangulation(path), ParseError,
            MessageMatches(ContainsSubstring("unknown field 'comment'")));
    }
    SECTION("missing fields are rejected") {
        const std::string path = write_file(
            "missing_field",
            "{\"format\": \"involcode-triangulation/1\", \"num_vertices\": 4,"
            " \"tetrahedra\": [[0,1,2,3]]}\n");
        CHECK_THROWS_MATCHES(
            load_triangulation(path), ParseError,
            MessageMatches(ContainsSubstring("missing field 'involution'")));
    }
    SECTION("format string must match") {
        const std::string path = write_file(
            "bad_format",
            "{\"format\": \"involcode-triangulation/2\", \"num_vertices\": 4,"
            " \"tetrahedra\": [[0,1,2,3]], \"involution\": [0,1,2,3]}\n");
        CHECK_THROWS_MATCHES(
            load_triangulation(path), ParseError,
            MessageMatches(ContainsSubstring("field 'format'")));
    }
    SECTION("tetrahedra must be strictly increasing") {
        const std::string path = write_file(
            "repeated_vertex",
            "{\"format\": \"involcode-triangulation/1\", \"num_vertices\": 4,"
            " \"tetrahedra\": [[0,1,2,2]], \"involution\": [0,1,2,3]}\n");
        CHECK_THROWS_MATCHES(
            load_triangulation(path), ParseError,
            MessageMatches(ContainsSubstring("malformed facet")));
    }
    SECTION("tetrahedra must be sorted") {
        const std::string path = write_file(
            "unsorted",
            "{\"format\": \"involcode-triangulation/1\", \"num_vertices\": 5,"
            " \"tetrahedra\": [[1,2,3,4], [0,1,2,3]],"
            " \"involution\": [0,1,2,3,4]}\n");
        CHECK_THROWS_MATCHES(
            load_triangulation(path), ParseError,
            MessageMatches(ContainsSubstring("not sorted")));
    }
    SECTION("involution length must match num_vertices") {
        const std::string path = write_file(
            "short_involution",
            "{\"format\": \"involcode-triangulation/1\", \"num_vertices\": 4,"
            " \"tetrahedra\": [[0,1,2,3]], \"involution\": [0,1,2]}\n");
        CHECK_THROWS_MATCHES(
            load_triangulation(path), ParseError,
            MessageMatches(ContainsSubstring("field 'involution'")));
    }
    SECTION("non-involutive permutations are rejected") {
        const std::string path = write_file(
            "not_involutive",
            "{\"format\": \"involcode-triangulation/1\", \"num_vertices\": 4,"
            " \"tetrahedra\": [[0,1,2,3]], \"involution\": [1,2,0,3]}\n");
        CHECK_THROWS_MATCHES(
            load_triangulation(path), PreconditionError,
            MessageMatches(ContainsSubstring("not an involution")));
    }
}
