#include "pentagon/zeta_io.hpp"

#include <fstream>
#include <sstream>

namespace pentagon {

using nlohmann::json;

nlohmann::json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex json_complex(const json& j, const std::string& where) {
  if (j.is_number()) return Complex(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return Complex(j[0].get<double>(), j[1].get<double>());
  throw ParseError(where + ": expected a number or [re, im]");
}

nlohmann::json matrix_json(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix json_matrix(const json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ParseError(where + ": expected a nonempty array");
  // Scalar form: a number or an [re, im] pair of numbers.
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    CMatrix m(1, 1);
    m(0, 0) = json_complex(j, where);
    return m;
  }
  if (j[0].is_number()) throw ParseError(where + ": expected a matrix of rows");
  std::size_t nrows = j.size();
  std::size_t ncols = j[0].is_array() ? j[0].size() : 0;
  if (ncols == 0) throw ParseError(where + "[0]: expected a nonempty row");
  CMatrix m(static_cast<Eigen::Index>(nrows), static_cast<Eigen::Index>(ncols));
  for (std::size_t r = 0; r < nrows; ++r) {
    const json& row = j[r];
    std::string rw = where + "[" + std::to_string(r) + "]";
    if (!row.is_array() || row.size() != ncols)
      throw ParseError(rw + ": expected a row of " + std::to_string(ncols) + " entries");
    for (std::size_t c = 0; c < ncols; ++c)
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          json_complex(row[c], rw + "[" + std::to_string(c) + "]");
  }
  return m;
}

ZetaFamily zeta_family_from_json(const json& j, bool require_symmetric) {
  if (!j.is_object()) throw ParseError("zeta file: expected a JSON object");
  std::array<CMatrix, 5> mats;
  if (j.contains("zeta")) {
    // Compact form: one array of five entries.
    const json& zs = j["zeta"];
    if (!zs.is_array() || zs.size() != 5)
      throw ParseError("\"zeta\": expected exactly 5 entries");
    for (std::size_t v = 0; v < 5; ++v)
      mats[v] = json_matrix(zs[v], "\"zeta\"[" + std::to_string(v) + "]");
  } else {
    // Canonical form: named entries zeta1..zeta5.
    for (std::size_t v = 0; v < 5; ++v) {
      std::string key = "zeta" + std::to_string(v + 1);
      if (!j.contains(key))
        throw ParseError("zeta file: missing field \"" + key + "\"");
      mats[v] = json_matrix(j[key], "\"" + key + "\"");
    }
  }
  if (j.contains("n")) {
    if (!j["n"].is_number_integer()) throw ParseError("\"n\": expected an integer");
    auto n = j["n"].get<Eigen::Index>();
    if (mats[0].rows() != n)
      throw ParseError("\"n\" = " + std::to_string(n) + " does not match the zeta entries");
  }
  try {
    return make_zeta_family(std::move(mats), require_symmetric);
  } catch (const Error& e) {
    throw ParseError(std::string("zeta file: ") + e.what());
  }
}

ZetaFamily load_zeta_family(const std::string& path, bool require_symmetric) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return zeta_family_from_json(j, require_symmetric);
}

nlohmann::json zeta_family_json(const ZetaFamily& zf) {
  json out{{"n", zf.n}};
  for (std::size_t v = 0; v < 5; ++v) {
    const CMatrix& m = zf.zeta[v];
    out["zeta" + std::to_string(v + 1)] = zf.n == 1 ? complex_json(m(0, 0)) : matrix_json(m);
  }
  return out;
}

void save_zeta_family(const std::string& path, const ZetaFamily& zf) {
  write_text_file(path, zeta_family_json(zf).dump(2) + "\n");
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("read failed on " + path);
  return std::move(ss).str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("write failed on " + path);
}

}  // namespace pentagon
