#include "rsane/matrix_market.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <vector>

namespace rsane {

namespace {

struct LineReader {
  std::istream& in;
  int line_no = 0;

  // Next non-comment, non-blank line; false at end of input.
  bool next(std::string& out) {
    std::string raw;
    while (std::getline(in, raw)) {
      ++line_no;
      const auto first = raw.find_first_not_of(" \t\r\n");
      if (first == std::string::npos) continue;
      if (raw[first] == '%') continue;
      out = raw;
      return true;
    }
    return false;
  }
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

SparseMatrix finish_general(Matrix dense, int size_line) {
  const double scale = dense.norm();
  const double asym = (dense - dense.transpose()).norm();
  if (asym > 1e-12 * std::max(1.0, scale)) {
    throw MatrixMarketError("general matrix is not symmetric (relative asymmetry " +
                                std::to_string(asym / std::max(1.0, scale)) + ")",
                            size_line);
  }
  dense = 0.5 * (dense + dense.transpose()).eval();
  SparseMatrix out = dense.sparseView();
  out.makeCompressed();
  return out;
}

}  // namespace

SparseMatrix read_matrix_market(std::istream& in) {
  std::string banner;
  if (!std::getline(in, banner)) throw MatrixMarketError("empty input", 0);

  std::istringstream head(banner);
  std::string tag, object, format, field, symmetry;
  head >> tag >> object >> format >> field >> symmetry;
  if (lower(tag) != "%%matrixmarket" || lower(object) != "matrix") {
    throw MatrixMarketError("malformed header, expected '%%MatrixMarket matrix ...'", 1);
  }
  format = lower(format);
  field = lower(field);
  symmetry = lower(symmetry);
  if (format != "coordinate" && format != "array") {
    throw MatrixMarketError("unsupported format '" + format + "'", 1);
  }
  if (field != "real") {
    throw MatrixMarketError("unsupported field '" + field + "', only real is accepted", 1);
  }
  if (symmetry != "general" && symmetry != "symmetric") {
    throw MatrixMarketError("unsupported symmetry '" + symmetry + "'", 1);
  }
  const bool symmetric = symmetry == "symmetric";

  LineReader reader{in, 1};
  std::string line;
  if (!reader.next(line)) throw MatrixMarketError("missing size line", reader.line_no);
  const int size_line = reader.line_no;

  std::istringstream sizes(line);
  long nrows = -1, ncols = -1, nnz = -1;
  if (format == "coordinate") {
    if (!(sizes >> nrows >> ncols >> nnz) || nrows < 1 || ncols < 1 || nnz < 0) {
      throw MatrixMarketError("bad coordinate size line", size_line);
    }
  } else {
    if (!(sizes >> nrows >> ncols) || nrows < 1 || ncols < 1) {
      throw MatrixMarketError("bad array size line", size_line);
    }
  }
  if (nrows != ncols) {
    throw MatrixMarketError("dimension mismatch: matrix must be square, got " +
                                std::to_string(nrows) + "x" + std::to_string(ncols),
                            size_line);
  }
  const Index n = static_cast<Index>(nrows);

  if (format == "coordinate") {
    std::vector<Eigen::Triplet<double>> entries;
    entries.reserve(static_cast<std::size_t>(symmetric ? 2 * nnz : nnz));
    for (long e = 0; e < nnz; ++e) {
      if (!reader.next(line)) {
        throw MatrixMarketError("unexpected end of file, expected " + std::to_string(nnz) +
                                    " entries",
                                reader.line_no);
      }
      std::istringstream entry(line);
      long i = 0, j = 0;
      double value = 0.0;
      if (!(entry >> i >> j >> value)) {
        throw MatrixMarketError("bad coordinate entry", reader.line_no);
      }
      if (i < 1 || i > nrows || j < 1 || j > ncols) {
        throw MatrixMarketError("index out of range: (" + std::to_string(i) + ", " +
                                    std::to_string(j) + ")",
                                reader.line_no);
      }
      entries.emplace_back(i - 1, j - 1, value);
      if (symmetric && i != j) entries.emplace_back(j - 1, i - 1, value);
    }
    if (symmetric) {
      SparseMatrix out(n, n);
      out.setFromTriplets(entries.begin(), entries.end());
      out.makeCompressed();
      return out;
    }
    Matrix dense = Matrix::Zero(n, n);
    for (const auto& t : entries) dense(t.row(), t.col()) += t.value();
    return finish_general(std::move(dense), size_line);
  }

  // Array format: column-major values, lower triangle only when symmetric.
  Matrix dense = Matrix::Zero(n, n);
  std::istringstream values;
  auto next_value = [&](double& v) {
    while (!(values >> v)) {
      if (!reader.next(line)) return false;
      values.clear();
      values.str(line);
    }
    return true;
  };
  for (Index j = 0; j < n; ++j) {
    for (Index i = symmetric ? j : 0; i < n; ++i) {
      double v = 0.0;
      if (!next_value(v)) {
        throw MatrixMarketError("unexpected end of file in array data", reader.line_no);
      }
      dense(i, j) = v;
      if (symmetric) dense(j, i) = v;
    }
  }
  if (symmetric) {
    SparseMatrix out = dense.sparseView();
    out.makeCompressed();
    return out;
  }
  return finish_general(std::move(dense), size_line);
}

SparseMatrix load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MatrixMarketError("cannot open '" + path + "'", 0);
  return read_matrix_market(in);
}

}  // namespace rsane
