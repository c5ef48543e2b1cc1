#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace direm {

using index_t = std::int64_t;
using Vector = std::vector<double>;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Input matrix fails the symmetry tolerance of a symmetric-only routine.
class SymmetryViolation : public Error {
public:
  using Error::Error;
};

/// Iterative eigenvalue computation exceeded its iteration budget.
class ConvergenceFailure : public Error {
public:
  using Error::Error;
};

/// A degree (row sum) that must be strictly positive is zero or negative.
class DegenerateDegree : public Error {
public:
  DegenerateDegree(const std::string& what, index_t row) : Error(what), row_(row) {}
  index_t row() const { return row_; }

private:
  index_t row_;
};

/// The graph underlying a matrix is not connected.
class Disconnected : public Error {
public:
  Disconnected(const std::string& what, std::vector<index_t> component_sizes)
      : Error(what), component_sizes_(std::move(component_sizes)) {}
  const std::vector<index_t>& component_sizes() const { return component_sizes_; }

private:
  std::vector<index_t> component_sizes_;
};

/// A field comparison where every row was skipped.
class EmptyComparison : public Error {
public:
  using Error::Error;
};

/// Malformed input file.
class ParseError : public Error {
public:
  ParseError(const std::string& what, index_t line) : Error(what), line_(line) {}
  index_t line() const { return line_; }

private:
  index_t line_;
};

// ---------------------------------------------------------------------------
// DenseMatrix
// ---------------------------------------------------------------------------

/// Row-major dense matrix of doubles. The only storage type used by the
/// library; all kernels and operators are dense by construction.
class DenseMatrix {
public:
  DenseMatrix() = default;
  DenseMatrix(index_t rows, index_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows * cols), fill) {
    if (rows <= 0 || cols <= 0) throw Error("DenseMatrix: dimensions must be positive");
  }

  static DenseMatrix identity(index_t n) {
    DenseMatrix m(n, n, 0.0);
    for (index_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }

  double& operator()(index_t i, index_t j) {
    return a_[static_cast<std::size_t>(i * cols_ + j)];
  }
  double operator()(index_t i, index_t j) const {
    return a_[static_cast<std::size_t>(i * cols_ + j)];
  }

  std::span<double> row(index_t i) {
    return {a_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }
  std::span<const double> row(index_t i) const {
    return {a_.data() + i * cols_, static_cast<std::size_t>(cols_)};
  }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  bool all_finite() const;

private:
  index_t rows_ = 0, cols_ = 0;
  std::vector<double> a_;
};

/// Eigendecomposition result. Values sorted in decreasing order; column j of
/// `vectors` is the unit-norm eigenvector of values[j]. Sign convention: the
/// entry of largest absolute value in each column is positive, ties broken by
/// lowest index.
struct EigenPairs {
  Vector values;
  DenseMatrix vectors;
};

}  // namespace direm
