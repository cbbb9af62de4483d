#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "json.hpp"

#include <involcode/atlas.hpp>
#include <involcode/io.hpp>

using namespace involcode;
using Catch::Matchers::ContainsSubstring;

namespace {

struct RunResult {
    int exit_code = -1;
    std::string out;
};

// Runs the installed binary with stderr discarded and stdout captured.
RunResult run_cli(const std::string& args) {
    const std::string cmd =
        std::string(INVOLCODE_CLI_PATH) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    RunResult r;
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string temp_path(const std::string& stem) {
    return (std::filesystem::temp_directory_path() / (stem + ".json"))
        .string();
}

}  // namespace

TEST_CASE("cli: validate") {
    SECTION("builtin atlas entry passes") {
        RunResult r = run_cli("validate sphere_suspension");
        CHECK(r.exit_code == 0);
        CHECK_THAT(r.out, ContainsSubstring("manifold: ok"));
        CHECK_THAT(r.out, ContainsSubstring("2 isolated"));
    }
    SECTION("truncated file exits 1") {
        AtlasInput in = sphere_suspension();
        const std::string body = triangulation_to_json(in.complex, in.tau);
        const std::string path = temp_path("cli_truncated");
        std::ofstream(path) << body.substr(0, body.size() / 3);
        CHECK(run_cli("validate " + path).exit_code == 1);
    }
    SECTION("non-isolated fixed points exit 2") {
        AtlasInput in = sphere_suspension();
        Involution identity;
        identity.vertex_perm.resize(in.complex.num_vertices);
        for (std::uint32_t v = 0; v < in.complex.num_vertices; ++v)
            identity.vertex_perm[v] = v;
        const std::string path = temp_path("cli_nonisolated");
        save_triangulation(in.complex, identity, path);
        RunResult r = run_cli("validate " + path);
        CHECK(r.exit_code == 2);
        CHECK_THAT(r.out, ContainsSubstring("not isolated"));
    }
    SECTION("missing file exits 1") {
        CHECK(run_cli("validate /nonexistent-dir/in.json").exit_code == 1);
    }
}

TEST_CASE("cli: extract") {
    SECTION("human-readable report") {
        RunResult r = run_cli("extract sphere_suspension");
        CHECK(r.exit_code == 0);
        CHECK_THAT(r.out, ContainsSubstring("k                  2"));
        CHECK_THAT(r.out, ContainsSubstring("maximal            true"));
        CHECK_THAT(r.out, ContainsSubstring("matched            repetition2"));
        CHECK_THAT(r.out, ContainsSubstring("11"));
    }
    SECTION("json report is deterministic and parses") {
        RunResult r1 = run_cli("extract sphere_suspension --json");
        RunResult r2 = run_cli("extract sphere_suspension --json");
        REQUIRE(r1.exit_code == 0);
        CHECK(r1.out == r2.out);

        nlohmann::json j = nlohmann::json::parse(r1.out);
        CHECK(j["format"] == "involcode-report/1");
        CHECK(j["k"] == 2);
        CHECK(j["maximal"] == true);
        CHECK(j["self_dual"] == true);
        CHECK(j["code"]["generators"] ==
              nlohmann::json::array({"11"}));
    }
    SECTION("exhausted subdivision budget exits 2") {
        CHECK(run_cli("extract sphere_suspension --max-subdiv 0").exit_code ==
              2);
    }
}

TEST_CASE("cli: code toolkit") {
    SECTION("equiv distinguishes inequivalent codes") {
        RunResult r = run_cli("code equiv extended_hamming8 i2^4");
        CHECK(r.exit_code == 0);
        CHECK(r.out == "not equivalent\n");
    }
    SECTION("equiv reports a permutation when one exists") {
        RunResult ok = run_cli("code equiv 101,011 110,011");
        CHECK(ok.exit_code == 0);
        CHECK_THAT(ok.out, ContainsSubstring("equivalent:"));
    }
    SECTION("enumerator matches the pinned string") {
        RunResult r = run_cli("code enumerator extended_hamming8");
        CHECK(r.exit_code == 0);
        CHECK(r.out == "1 + 14z^4 + z^8\n");
    }
    SECTION("dual of the zero code is the full space") {
        RunResult r = run_cli("code dual 0000");
        CHECK(r.exit_code == 0);
        CHECK(r.out == "1000\n0100\n0010\n0001\n");
    }
    SECTION("self-dual and doubly-even verdicts") {
        CHECK(run_cli("code self-dual repetition2").out == "self-dual\n");
        CHECK(run_cli("code self-dual 1000").out == "not self-dual\n");
        CHECK(run_cli("code doubly-even extended_hamming8").out ==
              "doubly even\n");
        CHECK(run_cli("code doubly-even i2^4").out == "not doubly even\n");
    }
    SECTION("enumerate counts self-dual codes") {
        RunResult r = run_cli("code enumerate 6");
        CHECK(r.exit_code == 0);
        CHECK_THAT(r.out, ContainsSubstring("total: 15"));
        RunResult c = run_cli("code enumerate 8 --classes");
        CHECK_THAT(c.out, ContainsSubstring("total: 2"));
    }
    SECTION("malformed bitstrings exit 1") {
        CHECK(run_cli("code dual 01x").exit_code == 1);
        CHECK(run_cli("code dual 01,011").exit_code == 1);
        CHECK(run_cli("code equiv 1100 110000").exit_code == 2);
    }
}

TEST_CASE("cli: atlas") {
    SECTION("list names every entry") {
        RunResult r = run_cli("atlas list");
        CHECK(r.exit_code == 0);
        CHECK_THAT(r.out, ContainsSubstring("sphere_suspension"));
        CHECK_THAT(r.out, ContainsSubstring("torus_conjugation"));
    }
    SECTION("emitted files validate") {
        const std::string path = temp_path("cli_emit");
        CHECK(run_cli("atlas emit sphere_suspension " + path).exit_code == 0);
        CHECK(run_cli("validate " + path).exit_code == 0);
    }
    SECTION("unknown entry exits 1") {
        CHECK(run_cli("atlas emit lens_space /tmp/x.json").exit_code == 1);
    }
    SECTION("unwritable path exits 1") {
        CHECK(run_cli("atlas emit sphere_suspension "
                      "/nonexistent-dir/out.json")
                  .exit_code == 1);
    }
}

TEST_CASE("cli: argument errors exit 1") {
    CHECK(run_cli("frobnicate").exit_code == 1);
    CHECK(run_cli("").exit_code == 1);
    CHECK(run_cli("extract").exit_code == 1);
}
