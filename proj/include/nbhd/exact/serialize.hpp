#pragma once

#include "nbhd/exact/laurent.hpp"
#include "nbhd/exact/poly_matrix.hpp"

#include <json.hpp>

#include <string>

namespace nbhd::exact {

using Json = nlohmann::ordered_json;

[[nodiscard]] Json to_json(const Rational& r);
/// Sorted term list: [[[e0, e1, ...], "p/q"], ...]
[[nodiscard]] Json to_json(const LaurentPoly& p);
[[nodiscard]] Json to_json(const PolyMatrix& m);

/// `where` names the field for diagnostics ("charts[1].transition.t[0]").
[[nodiscard]] Rational rational_from_json(const Json& j, const std::string& where);
[[nodiscard]] LaurentPoly poly_from_json(const Json& j, std::size_t nvars, const std::string& where);
[[nodiscard]] PolyMatrix matrix_from_json(const Json& j, std::size_t nvars, const std::string& where);

}  // namespace nbhd::exact
