#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "pairdecomp/pairdecomp.hpp"

namespace pairdecomp::cli {

using Json = nlohmann::json;

enum ExitCode : int {
  kExitOk = 0,
  kExitParse = 2,
  kExitValidation = 3,
  kExitViolation = 4,
  kExitNotMajorized = 5,
};

/// Failure carrying the process exit code it maps to.
class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& what) : std::runtime_error(what), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

struct LoadedMatrix {
  std::string path;
  std::string sha256;
  std::string label;
  Matrix matrix;
};

std::string sha256_hex(const std::string& bytes);

/// Reads a matrix file {dim, entries: [[re, im], ...] row-major, label?}.
/// Malformed content throws CliError(kExitParse).
LoadedMatrix load_matrix_file(const std::filesystem::path& path);
Matrix parse_matrix(const Json& j);

/// Hermiticity and PSD checks; failures throw CliError(kExitValidation).
StateOperator as_state(const LoadedMatrix& m);

Json complex_to_json(complex z);
Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m, const std::string& label = {});
Json decomposition_to_json(const Decomposition& d);
Decomposition decomposition_from_json(const Json& j);

Json input_entry(const LoadedMatrix& m);

/// Sorted keys, two-space indent, shortest round-trip doubles, trailing newline.
std::string render(const Json& report);

}  // namespace pairdecomp::cli
