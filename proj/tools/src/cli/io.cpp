#include "cli/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>

namespace pairdecomp::cli {
namespace {

double as_double(const Json& j, const char* what) {
  if (!j.is_number()) throw CliError(kExitParse, std::string(what) + ": expected a number");
  return j.get<double>();
}

complex parse_complex(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw CliError(kExitParse, "entries must be [re, im] pairs");
  return {as_double(j[0], "re"), as_double(j[1], "im")};
}

Vector parse_vector(const Json& j, std::size_t dim) {
  if (!j.is_array() || j.size() != dim) throw CliError(kExitParse, "vector length does not match dim");
  Vector v;
  v.reserve(dim);
  for (const Json& z : j) v.push_back(parse_complex(z));
  return v;
}

std::size_t parse_count(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned())
    throw CliError(kExitParse, std::string("missing or invalid '") + key + "'");
  return j[key].get<std::size_t>();
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

Matrix parse_matrix(const Json& j) {
  if (!j.is_object()) throw CliError(kExitParse, "matrix file must hold a JSON object");
  const std::size_t dim = parse_count(j, "dim");
  if (dim == 0) throw CliError(kExitParse, "dim must be positive");
  if (!j.contains("entries") || !j["entries"].is_array())
    throw CliError(kExitParse, "missing 'entries' array");
  const Json& e = j["entries"];
  if (e.size() != dim * dim) throw CliError(kExitParse, "entries must hold dim*dim pairs");
  Matrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = parse_complex(e[r * dim + c]);
  return m;
}

LoadedMatrix load_matrix_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError(kExitParse, "cannot open " + path.string());
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw CliError(kExitParse, path.string() + ": " + e.what());
  }
  LoadedMatrix out;
  out.path = path.string();
  out.sha256 = sha256_hex(bytes);
  out.matrix = parse_matrix(j);
  if (j.contains("label")) {
    if (!j["label"].is_string()) throw CliError(kExitParse, "label must be text");
    out.label = j["label"].get<std::string>();
  }
  return out;
}

StateOperator as_state(const LoadedMatrix& m) {
  try {
    return StateOperator(m.matrix);
  } catch (const Error& e) {
    throw CliError(kExitValidation, m.path + ": " + e.what());
  }
}

Json complex_to_json(complex z) { return Json::array({z.real(), z.imag()}); }

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const complex& z : v) out.push_back(complex_to_json(z));
  return out;
}

Json matrix_to_json(const Matrix& m, const std::string& label) {
  Json entries = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) entries.push_back(complex_to_json(m(r, c)));
  Json out{{"dim", m.rows()}, {"entries", entries}};
  if (m.rows() != m.cols()) {
    out["rows"] = m.rows();
    out["cols"] = m.cols();
  }
  if (!label.empty()) out["label"] = label;
  return out;
}

Json decomposition_to_json(const Decomposition& d) {
  Json vectors = Json::array();
  for (const Vector& v : d.vectors()) vectors.push_back(vector_to_json(v));
  return {{"dim", d.dim()}, {"length", d.length()}, {"vectors", vectors}};
}

Decomposition decomposition_from_json(const Json& j) {
  if (!j.is_object()) throw CliError(kExitParse, "decomposition must be a JSON object");
  const std::size_t dim = parse_count(j, "dim");
  if (!j.contains("vectors") || !j["vectors"].is_array())
    throw CliError(kExitParse, "missing 'vectors' array");
  std::vector<Vector> vs;
  for (const Json& v : j["vectors"]) vs.push_back(parse_vector(v, dim));
  if (j.contains("length") && parse_count(j, "length") != vs.size())
    throw CliError(kExitParse, "length does not match the vector count");
  return Decomposition(dim, std::move(vs));
}

Json input_entry(const LoadedMatrix& m) {
  Json out{{"path", m.path}, {"sha256", m.sha256}};
  if (!m.label.empty()) out["label"] = m.label;
  return out;
}

std::string render(const Json& report) { return report.dump(2) + "\n"; }

}  // namespace pairdecomp::cli
