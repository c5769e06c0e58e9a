#pragma once

// Dense matrices over the scalar field, with exact elimination routines.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qgc/scalars.hpp"

namespace qgc {

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const;
  bool is_diagonal() const;
  Matrix transpose() const;
  Scalar trace() const;
  std::vector<Scalar> apply(const std::vector<Scalar>& x) const;

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(const Matrix& a, const Matrix& b);
  friend Matrix operator*(const Scalar& c, Matrix a);
  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  nlohmann::json to_json() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

/// Reduced row echelon form; `pivots[k]` is the pivot column of row k.
struct Echelon {
  Matrix rref;
  std::vector<std::size_t> pivots;
  std::size_t rank() const { return pivots.size(); }
};

Echelon row_reduce(Matrix m);
std::size_t rank(const Matrix& m);

/// Fraction-free (Bareiss) determinant.
Scalar determinant(const Matrix& m);
/// Fraction-free Gauss-Jordan inverse; nullopt when singular.
std::optional<Matrix> inverse(const Matrix& m);

/// Sparse linear system over Scalar built one equation at a time.  Each new
/// equation is reduced against the current pivot rows, so redundant
/// equations cost one reduction and are then dropped.
class LinearSystem {
 public:
  explicit LinearSystem(std::size_t unknowns) : n_(unknowns) {}

  using Row = std::map<std::size_t, Scalar>;
  /// Adds sum_k coeffs[k] x_k = rhs.  Returns false if the equation is
  /// inconsistent with the ones already added.
  bool add(Row coeffs, Scalar rhs);

  bool consistent() const noexcept { return consistent_; }
  std::size_t rank() const noexcept { return rows_.size(); }
  std::size_t unknowns() const noexcept { return n_; }
  /// Unique solution when rank equals the number of unknowns.
  std::optional<std::vector<Scalar>> unique_solution() const;

  struct PivotRow {
    std::size_t pivot;
    Row coeffs;  // normalized: coeffs[pivot] == 1
    Scalar rhs;
  };
  /// Fully reduced rows keyed by pivot column.
  const std::map<std::size_t, PivotRow>& pivot_rows() const noexcept { return rows_; }

 private:
  void reduce(Row& row, Scalar& rhs) const;

  std::size_t n_;
  std::map<std::size_t, PivotRow> rows_;  // keyed by pivot column
  bool consistent_ = true;
};

/// Exact quotient of Laurent polynomials; throws if inexact.
LaurentBi laurent_divexact(const LaurentBi& p, const LaurentBi& g);

}  // namespace qgc
