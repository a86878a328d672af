#pragma once

#include "rsane/types.hpp"

#include <iosfwd>
#include <string>

namespace rsane {

/// Parse failure with the 1-based line number where it was detected.
class MatrixMarketError : public std::runtime_error {
public:
  MatrixMarketError(const std::string& message, int line)
      : std::runtime_error("matrix market: " + message + " (line " + std::to_string(line) + ")"),
        line_(line) {}

  int line() const { return line_; }

private:
  int line_;
};

/// Reads a real square matrix in Matrix Market coordinate or array format and
/// returns it as a symmetric sparse matrix. Symmetric-flagged files have the
/// stored triangle expanded; general files are symmetrized and rejected when
/// the relative asymmetry exceeds 1e-12.
SparseMatrix read_matrix_market(std::istream& in);

/// read_matrix_market on a file path.
SparseMatrix load_matrix_market(const std::string& path);

}  // namespace rsane
