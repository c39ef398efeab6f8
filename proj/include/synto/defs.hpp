#ifndef SYNTO_DEFS_HPP
#define SYNTO_DEFS_HPP

#include <optional>
#include <string>

#include "synto/engine.hpp"

namespace synto::defs {

// A user-supplied spectral sequence plus an optional default window, loaded
// from a JSON definition file.
struct Definition {
    eng::SpectralSequence sequence;
    std::optional<alg::WindowSpec> window;
};

// Schema:
//   {
//     "p": <prime>,
//     "shift": {"degree": int, "weight": int,
//               "weight_times_page"?: bool, "filtration_is_page"?: bool},
//     "initial_page"?: int,
//     "filtration_gen"?: "<generator name>",
//     "generators": [{"name": str, "kind": "exterior"|"polynomial"|"laurent",
//                     "degree": int, "adams_weight": int, "truncation"?: int,
//                     "family"?: str, "family_exponent"?: int}, ...],
//     "rules": [{"page": int, "gen": "<name>", "step": int,
//                "image": [{"coeff": int, "exponents": {"<name>": int, ...}}]}],
//     "window"?: {"deg_lo": int, "deg_hi": int, "wt_lo"?: int, "wt_hi"?: int,
//                 "exp_bounds"?: {"<name>": [lo, hi]}}
//   }
// Throws PARSE_ERROR naming the offending field; rule validation errors
// (BIDEGREE_MISMATCH etc.) surface from the engine unchanged.
Definition load(const std::string& text);
Definition load_file(const std::string& path);

}  // namespace synto::defs

#endif
