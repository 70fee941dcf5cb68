#pragma once

#include "sft/linalg.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace sft {

// Text format: first line "rows cols", then `rows` lines of `cols`
// whitespace-separated entries. Integer entries for IntMatrix, polynomial
// entries "c0+c1*t+c2*t^2" (no spaces) for PolyMatrix. Blank lines and
// lines starting with '#' are skipped. Errors carry 1-based line/column.

IntMatrix parse_int_matrix(std::string_view text);
PolyMatrix parse_poly_matrix(std::string_view text);
std::string format_matrix(const IntMatrix &m);
std::string format_matrix(const PolyMatrix &m);

/// Reads a file; ".json" files use the JSON mirror, anything else the text
/// format. Polynomial reading accepts integer files too.
IntMatrix read_int_matrix(const std::string &path);
PolyMatrix read_poly_matrix(const std::string &path);
std::string read_file(const std::string &path);

// JSON mirror {"rows":n,"cols":m,"entries":[[...],...]}; polynomial entries
// are strings, integer entries may be numbers or decimal strings.
nlohmann::json to_json(const IntMatrix &m);
nlohmann::json to_json(const PolyMatrix &m);
IntMatrix int_matrix_from_json(const nlohmann::json &j);
PolyMatrix poly_matrix_from_json(const nlohmann::json &j);
/// Accepts the full mirror or a bare list of rows.
IntMatrix int_matrix_from_json_any(const nlohmann::json &j);
/// JSON text; syntax errors become ParseError with line and column.
nlohmann::json parse_json_text(const std::string &text);

nlohmann::json to_json(const Integer &z);
nlohmann::json to_json(const Rational &q);
nlohmann::json to_json(const FGAbelianGroup &g);

} // namespace sft
