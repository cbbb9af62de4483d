// involcode: binary self-dual codes from orientation-reversing involutions
// with isolated fixed points on closed triangulated 3-manifolds.
//
// Exit codes: 0 success, 1 input/parse error, 2 mathematical-precondition
// failure, 3 internal consistency error.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include <involcode/atlas.hpp>
#include <involcode/io.hpp>
#include <involcode/pipeline.hpp>

using namespace involcode;

namespace {

// Inputs are either names of built-in atlas entries or paths to
// triangulation files.
AtlasInput resolve_input(const std::string& name_or_path) {
    if (const AtlasEntry* e = atlas_find(name_or_path)) return e->build();
    return load_triangulation(name_or_path);
}

// Code arguments are known-code names or comma-separated generator rows.
BinaryCode parse_code(const std::string& arg) {
    if (!arg.empty() && arg.find_first_not_of("01,") == std::string::npos) {
        std::vector<std::string> rows;
        std::string cur;
        for (char ch : arg) {
            if (ch == ',') {
                rows.push_back(cur);
                cur.clear();
            } else {
                cur += ch;
            }
        }
        rows.push_back(cur);
        return BinaryCode::from_strings(rows);
    }
    try {
        return known_code(arg);
    } catch (const PreconditionError& e) {
        // at the command line an unrecognized name is an input error
        throw ParseError(e.what());
    }
}

std::string join(const std::vector<std::uint32_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ' ';
        s += std::to_string(v[i]);
    }
    return s;
}

int cmd_validate(const std::string& name_or_path) {
    AtlasInput in = resolve_input(name_or_path);
    ValidationReport vr = validate_closed_3manifold(in.complex);
    if (!vr.pass) {
        std::cout << "manifold: " << vr.failure << "\n";
        return 2;
    }
    std::cout << "manifold: ok\n";
    std::cout << "involution: ok\n";
    if (detail::has_pointwise_fixed_edge(in.complex, in.tau.vertex_perm)) {
        std::cout << "fixed points: not isolated\n";
        return 2;
    }
    std::size_t k = 0;
    for (std::uint32_t v = 0; v < in.complex.num_vertices; ++v)
        if (in.tau.vertex_perm[v] == v) ++k;
    std::cout << "fixed points: " << k << " isolated\n";
    return 0;
}

void print_row(const std::string& label, const std::string& value) {
    std::printf("%-18s %s\n", label.c_str(), value.c_str());
}

int cmd_extract(const std::string& name_or_path, bool as_json,
                std::size_t max_subdiv) {
    AtlasInput in = resolve_input(name_or_path);
    ExtractionOutcome out = run_extraction(in.complex, in.tau, max_subdiv);
    for (const StageTiming& t : out.timings)
        std::fprintf(stderr, "%-12s %8.3fs\n", t.stage.c_str(), t.seconds);

    std::vector<std::string> rows;
    for (std::size_t i = 0; i < out.code.dim(); ++i)
        rows.push_back(out.code.generator().row(i).to_string());

    if (as_json) {
        nlohmann::ordered_json j;
        j["format"] = "involcode-report/1";
        j["input"] = name_or_path;
        j["subdivisions"] = out.em.subdivisions;
        j["k"] = out.maximality.k;
        j["maximal"] = out.maximality.maximal;
        j["homology_dimension_sum"] = out.maximality.homology_dimension_sum;
        j["induced_rank"] = out.maximality.induced_rank;
        j["w_b1"] = out.maximality.w_b1;
        j["code"] = {{"length", out.code.length()},
                     {"dim", out.code.dim()},
                     {"generators", rows}};
        j["self_dual"] = true;
        j["doubly_even"] = out.doubly_even;
        j["weight_enumerator"] = out.weight_enumerator;
        if (out.matched) {
            j["matched"] = out.matched_name;
            j["matched_permutation"] = out.matched_permutation;
        } else {
            j["matched"] = nullptr;
            j["matched_permutation"] = nullptr;
        }
        std::cout << j.dump(2) << "\n";
        return 0;
    }

    print_row("input", name_or_path);
    print_row("subdivisions", std::to_string(out.em.subdivisions));
    print_row("k", std::to_string(out.maximality.k));
    print_row("maximal",
              std::string(out.maximality.maximal ? "true" : "false") +
                  " (k = " + std::to_string(out.maximality.k) +
                  ", sum dim H^i = " +
                  std::to_string(out.maximality.homology_dimension_sum) + ")");
    print_row("code", "[" + std::to_string(out.code.length()) + "," +
                          std::to_string(out.code.dim()) + "]");
    print_row("self_dual", "true");
    print_row("doubly_even", out.doubly_even ? "true" : "false");
    print_row("weight_enumerator", out.weight_enumerator);
    print_row("matched", out.matched ? out.matched_name : "(none)");
    if (out.matched) print_row("permutation", join(out.matched_permutation));
    for (std::size_t i = 0; i < rows.size(); ++i)
        print_row(i == 0 ? "generators" : "", rows[i]);
    return 0;
}

void print_code_rows(const BinaryCode& c) {
    for (std::size_t i = 0; i < c.dim(); ++i)
        std::cout << c.generator().row(i).to_string() << "\n";
}

std::string code_line(const BinaryCode& c) {
    std::string s;
    for (std::size_t i = 0; i < c.dim(); ++i) {
        if (i) s += ',';
        s += c.generator().row(i).to_string();
    }
    if (s.empty()) s = "(zero code of length " + std::to_string(c.length()) + ")";
    return s;
}

int cmd_atlas_list() {
    for (const AtlasEntry& e : atlas())
        std::printf("%-20s k=%zu  code=%-18s %s\n", e.name.c_str(),
                    e.expected_k, e.expected_code.c_str(),
                    e.description.c_str());
    return 0;
}

int cmd_atlas_emit(const std::string& name, const std::string& path) {
    const AtlasEntry* e = atlas_find(name);
    if (!e) throw ParseError("unknown atlas entry: " + name);
    AtlasInput in = e->build();
    save_triangulation(in.complex, in.tau, path);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"self-dual codes from involutions on triangulated "
                 "3-manifolds"};
    app.require_subcommand(1);

    double sparse_threshold = gf2_options().sparse_density_threshold;
    app.add_option("--sparse-threshold", sparse_threshold,
                   "density below which boundary ranks use sparse "
                   "elimination")
        ->capture_default_str();

    std::string input;
    std::size_t max_subdiv = 3;
    bool as_json = false;

    CLI::App* validate =
        app.add_subcommand("validate", "check an input triangulation");
    validate->add_option("input", input, "atlas entry name or file path")
        ->required();

    CLI::App* extract =
        app.add_subcommand("extract", "run the code-extraction pipeline");
    extract->add_option("input", input, "atlas entry name or file path")
        ->required();
    extract->add_flag("--json", as_json, "machine-readable report");
    extract
        ->add_option("--max-subdiv", max_subdiv,
                     "barycentric subdivision budget for regularization")
        ->capture_default_str();

    CLI::App* code = app.add_subcommand("code", "binary-code toolkit");
    code->require_subcommand(1);
    std::string code_a, code_b, out_path;
    std::size_t enum_n = 0;
    bool classes = false;

    CLI::App* c_dual = code->add_subcommand("dual", "print the dual code");
    c_dual->add_option("code", code_a, "code")->required();
    CLI::App* c_sd =
        code->add_subcommand("self-dual", "test whether C equals its dual");
    c_sd->add_option("code", code_a, "code")->required();
    CLI::App* c_de = code->add_subcommand(
        "doubly-even", "test whether all weights are divisible by 4");
    c_de->add_option("code", code_a, "code")->required();
    CLI::App* c_we =
        code->add_subcommand("enumerator", "print the weight enumerator");
    c_we->add_option("code", code_a, "code")->required();
    CLI::App* c_eq = code->add_subcommand(
        "equiv", "search for a coordinate permutation carrying one code "
                 "onto another");
    c_eq->add_option("a", code_a, "code")->required();
    c_eq->add_option("b", code_b, "code")->required();
    CLI::App* c_en = code->add_subcommand(
        "enumerate", "list all self-dual codes of a given length");
    c_en->add_option("n", enum_n, "code length")->required();
    c_en->add_flag("--classes", classes, "reduce to equivalence classes");

    CLI::App* atlas_cmd =
        app.add_subcommand("atlas", "built-in example triangulations");
    atlas_cmd->require_subcommand(1);
    CLI::App* a_list = atlas_cmd->add_subcommand("list", "list entries");
    CLI::App* a_emit = atlas_cmd->add_subcommand(
        "emit", "write an entry to a triangulation file");
    std::string emit_name;
    a_emit->add_option("name", emit_name, "atlas entry name")->required();
    a_emit->add_option("path", out_path, "output file")->required();

    try {
        app.parse(argc, argv);
        gf2_options().sparse_density_threshold = sparse_threshold;

        if (validate->parsed()) return cmd_validate(input);
        if (extract->parsed()) return cmd_extract(input, as_json, max_subdiv);
        if (code->parsed()) {
            if (c_dual->parsed()) {
                print_code_rows(dual(parse_code(code_a)));
            } else if (c_sd->parsed()) {
                std::cout << (is_self_dual(parse_code(code_a))
                                  ? "self-dual"
                                  : "not self-dual")
                          << "\n";
            } else if (c_de->parsed()) {
                std::cout << (is_doubly_even(parse_code(code_a))
                                  ? "doubly even"
                                  : "not doubly even")
                          << "\n";
            } else if (c_we->parsed()) {
                std::cout << weight_enumerator(parse_code(code_a)).to_string()
                          << "\n";
            } else if (c_eq->parsed()) {
                auto perm =
                    are_equivalent(parse_code(code_a), parse_code(code_b));
                if (perm)
                    std::cout << "equivalent: " << join(*perm) << "\n";
                else
                    std::cout << "not equivalent\n";
            } else if (c_en->parsed()) {
                std::vector<BinaryCode> found =
                    classes ? enumerate_self_dual_classes(enum_n)
                            : enumerate_self_dual_codes(enum_n);
                std::sort(found.begin(), found.end());
                for (const BinaryCode& c : found)
                    std::cout << code_line(c) << "\n";
                std::cout << "total: " << found.size() << "\n";
            }
            return 0;
        }
        if (atlas_cmd->parsed()) {
            if (a_list->parsed()) return cmd_atlas_list();
            if (a_emit->parsed()) return cmd_atlas_emit(emit_name, out_path);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::parse: return 1;
            case ErrorKind::precondition: return 2;
            case ErrorKind::internal: return 3;
        }
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
