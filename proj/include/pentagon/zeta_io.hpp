#pragma once

#include <string>

#include <json.hpp>

#include "pentagon/directsum.hpp"

namespace pentagon {

// JSON conventions: complex scalars as [re, im] (a bare number is accepted on
// input), matrices as row-major nested arrays. Doubles survive a round trip
// bitwise (shortest-representation printing).

nlohmann::json complex_json(Complex z);
Complex json_complex(const nlohmann::json& j, const std::string& where);

nlohmann::json matrix_json(const CMatrix& m);
CMatrix json_matrix(const nlohmann::json& j, const std::string& where);

// File schema: {"n": <int>, "zeta1": <matrix>, ..., "zeta5": <matrix>}. A
// compact {"zeta": [<matrix> x5]} array is also accepted on input. For n = 1
// the entries may be complex scalars; they load as 1 x 1 matrices and save in
// scalar form.
ZetaFamily load_zeta_family(const std::string& path, bool require_symmetric = true);
ZetaFamily zeta_family_from_json(const nlohmann::json& j, bool require_symmetric = true);

nlohmann::json zeta_family_json(const ZetaFamily& zf);
void save_zeta_family(const std::string& path, const ZetaFamily& zf);

std::string read_text_file(const std::string& path);   // IoError on failure
void write_text_file(const std::string& path, const std::string& text);

}  // namespace pentagon
