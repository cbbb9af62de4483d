#pragma once

#include <chrono>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "codes.hpp"
#include "equivariant.hpp"
#include "errors.hpp"
#include "simplicial.hpp"

namespace involcode {

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct ExtractionOutcome {
    EquivariantManifold em;
    MaximalityReport maximality;
    BinaryCode code;
    bool doubly_even = false;
    std::string weight_enumerator;  // empty when the dimension is too large
    bool matched = false;
    std::string matched_name;
    std::vector<std::uint32_t> matched_permutation;
    std::vector<StageTiming> timings;
};

namespace detail {

template <class F>
auto run_stage(std::vector<StageTiming>& ts, const char* name, F&& f)
    -> decltype(f()) {
    const auto t0 = std::chrono::steady_clock::now();
    auto done = [&] {
        const auto t1 = std::chrono::steady_clock::now();
        ts.push_back({name, std::chrono::duration<double>(t1 - t0).count()});
    };
    try {
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            done();
        } else {
            auto r = f();
            done();
            return r;
        }
    } catch (const PreconditionError& e) {
        throw PreconditionError(std::string(name) + ": " + e.what());
    } catch (const InternalError& e) {
        throw InternalError(std::string(name) + ": " + e.what());
    }
}

} // namespace detail

// Full pipeline: regularize, build the orbit complex, compute the induced
// H1 map and maximality verdict, then derive and analyze the code. Stage
// names prefix any error thrown from within that stage.
inline ExtractionOutcome run_extraction(const SimplicialComplex& c,
                                        const Involution& tau,
                                        std::size_t max_subdiv = 3) {
    ExtractionOutcome out;
    out.em = detail::run_stage(out.timings, "regularize",
                               [&] { return regularize(c, tau, max_subdiv); });
    OrbitComplexW w = detail::run_stage(out.timings, "orbit",
                                        [&] { return build_W(out.em); });
    detail::InducedMap im = detail::run_stage(
        out.timings, "homology", [&] { return detail::induced_boundary_map(w); });
    out.maximality =
        detail::run_stage(out.timings, "maximality",
                          [&] { return detail::maximality_from(out.em, im); });
    detail::run_stage(out.timings, "code", [&] {
        out.code = BinaryCode::from_generators(nullspace_basis(im.b.transpose()));
        if (!is_self_dual(out.code))
            throw InternalError("self-duality violation");
        out.doubly_even = is_doubly_even(out.code);
        if (out.code.dim() <= 28)
            out.weight_enumerator = weight_enumerator(out.code).to_string();
        const std::size_t n = out.code.length();
        std::vector<std::string> candidates;
        if (n == 2) {
            candidates = {"repetition2"};
        } else if (n == 8) {
            candidates = {"extended_hamming8", "i2^4"};
        } else if (n >= 4 && n % 2 == 0 && n / 2 <= 64) {
            candidates = {"i2^" + std::to_string(n / 2)};
        }
        for (const std::string& name : candidates) {
            auto perm = are_equivalent(known_code(name), out.code);
            if (perm) {
                out.matched = true;
                out.matched_name = name;
                out.matched_permutation = *perm;
                break;
            }
        }
    });
    return out;
}

} // namespace involcode
