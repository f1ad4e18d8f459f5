#pragma once

// JSON state documents.
//
//   { "kind": "circulant" | "bell" | "werner" | "isotropic" | "orthogonal"
//             | "commuting" | "dense",
//     "d": int,
//     "a":      d matrices d x d of [re, im]     (circulant)
//     "p":      d x d reals                       (bell)
//     "lambda": real                              (werner, isotropic)
//     "abc":    [a, b, c]                         (orthogonal)
//     "a0":     d x d of [re, im], "dmat": d x d  (commuting)
//     "rho":    d^2 x d^2 of [re, im]             (dense) }
//
// A field that the kind does not use is rejected like an unknown one.

#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "discordant/state_factory.hpp"

namespace discordant {

using Json = nlohmann::json;

struct StateDocument {
    std::string kind;
    int d = 0;
    DensityMatrix rho = DensityMatrix::maximally_mixed(1);
    // Present whenever rho itself is circulant (dense input is projected).
    std::optional<CirculantSpec> circulant;
    std::optional<BellWeights> bell;
    Json source;
};

StateDocument parse_state(const Json& j);
StateDocument parse_state_text(std::string_view text);

Json complex_matrix_to_json(const ComplexMatrix& m);
ComplexMatrix complex_matrix_from_json(const Json& j, const char* field);
Json real_matrix_to_json(const RealMatrix& m);
RealMatrix real_matrix_from_json(const Json& j, const char* field);

Json circulant_to_json(const CirculantSpec& spec);
Json dense_to_json(const DensityMatrix& rho, int d);
Json bell_to_json(const BellWeights& w);

}  // namespace discordant
