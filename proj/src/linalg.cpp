#include "qgc/linalg.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "qgc/errors.hpp"

namespace qgc {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool Matrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const Scalar& x) { return x.is_zero(); });
}

bool Matrix::is_diagonal() const {
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      if (i != j && !(*this)(i, j).is_zero()) return false;
    }
  }
  return true;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  }
  return t;
}

Scalar Matrix::trace() const {
  Scalar t;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

std::vector<Scalar> Matrix::apply(const std::vector<Scalar>& x) const {
  if (x.size() != cols_) throw RankMismatch("matrix-vector size mismatch");
  std::vector<Scalar> y(rows_);
  for (std::size_t j = 0; j < cols_; ++j) {
    if (x[j].is_zero()) continue;
    for (std::size_t i = 0; i < rows_; ++i) {
      const Scalar& a = (*this)(i, j);
      if (!a.is_zero()) y[i] += a * x[j];
    }
  }
  return y;
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw RankMismatch("matrix size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (o.rows_ != rows_ || o.cols_ != cols_) throw RankMismatch("matrix size mismatch");
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols_ != b.rows_) throw RankMismatch("matrix product size mismatch");
  Matrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const Scalar& x = a(i, k);
      if (x.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) {
        const Scalar& y = b(k, j);
        if (!y.is_zero()) c(i, j) += x * y;
      }
    }
  }
  return c;
}

Matrix operator*(const Scalar& c, Matrix a) {
  for (auto& x : a.data_) {
    if (!x.is_zero()) x *= c;
  }
  return a;
}

nlohmann::json Matrix::to_json() const {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < rows_; ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < cols_; ++j) row.push_back((*this)(i, j).to_json());
    rows.push_back(std::move(row));
  }
  return rows;
}

Echelon row_reduce(Matrix m) {
  Echelon out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && m(p, col).is_zero()) ++p;
    if (p == m.rows()) continue;
    if (p != row) {
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    }
    const Scalar inv = m(row, col).inverse();
    for (std::size_t j = col; j < m.cols(); ++j) {
      if (!m(row, j).is_zero()) m(row, j) *= inv;
    }
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || m(i, col).is_zero()) continue;
      const Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        if (!m(row, j).is_zero()) m(i, j) -= f * m(row, j);
      }
    }
    out.pivots.push_back(col);
    ++row;
  }
  out.rref = std::move(m);
  return out;
}

std::size_t rank(const Matrix& m) { return row_reduce(m).rank(); }

LaurentBi laurent_divexact(const LaurentBi& p, const LaurentBi& g) {
  if (g.is_zero()) throw DivisionByZero("Laurent division by zero");
  if (p.is_zero()) return p;
  const int pa = p.min_a(), pb = p.min_b(), ga = g.min_a(), gb = g.min_b();
  LaurentBi q;
  if (!try_divide(p.shifted(-pa, -pb), g.shifted(-ga, -gb), q)) {
    throw std::logic_error("inexact Laurent division");
  }
  return q.shifted(pa - ga, pb - gb);
}

namespace {

LaurentBi poly_lcm(const LaurentBi& a, const LaurentBi& b) {
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return laurent_divexact(a * b, poly_gcd(a, b));
}

// Clears denominators row by row.  Returns the polynomial matrix together
// with the row multipliers.
std::vector<std::vector<LaurentBi>> clear_rows(const Matrix& m, std::vector<LaurentBi>& mult) {
  std::vector<std::vector<LaurentBi>> a(m.rows(), std::vector<LaurentBi>(m.cols()));
  mult.assign(m.rows(), LaurentBi(1));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    LaurentBi l(1);
    for (std::size_t j = 0; j < m.cols(); ++j) l = poly_lcm(l, m(i, j).den());
    mult[i] = l;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const Scalar& x = m(i, j);
      if (x.is_zero()) continue;
      a[i][j] = x.num() * laurent_divexact(l, x.den());
    }
  }
  return a;
}

}  // namespace

Scalar determinant(const Matrix& m) {
  if (m.rows() != m.cols()) throw RankMismatch("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  std::vector<LaurentBi> mult;
  auto a = clear_rows(m, mult);
  LaurentBi prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k].is_zero()) ++p;
    if (p == n) return Scalar();
    if (p != k) {
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = laurent_divexact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      }
      a[i][k] = LaurentBi();
    }
    prev = a[k][k];
  }
  LaurentBi den(1);
  for (const auto& x : mult) den *= x;
  return Scalar(sign * a[n - 1][n - 1], den);
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) throw RankMismatch("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  std::vector<LaurentBi> mult;
  auto a = clear_rows(m, mult);
  for (std::size_t i = 0; i < n; ++i) {
    a[i].resize(2 * n);
    a[i][n + i] = LaurentBi(1);
  }
  // Fraction-free Gauss-Jordan on [A | I].
  LaurentBi prev(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && a[p][k].is_zero()) ++p;
    if (p == n) return std::nullopt;
    if (p != k) std::swap(a[p], a[k]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < 2 * n; ++j) {
        if (j == k) continue;
        a[i][j] = laurent_divexact(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev);
      }
      a[i][k] = LaurentBi();
    }
    prev = a[k][k];
  }
  // Now [A | B] = [d I | d (D A)^{-1}] with d = prev, so A^{-1} = B D / d.
  Matrix inv(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!a[i][n + j].is_zero()) inv(i, j) = Scalar(a[i][n + j] * mult[j], prev);
    }
  }
  return inv;
}

void LinearSystem::reduce(Row& row, Scalar& rhs) const {
  for (const auto& [p, pr] : rows_) {
    auto it = row.find(p);
    if (it == row.end()) continue;
    const Scalar f = it->second;
    for (const auto& [j, c] : pr.coeffs) {
      Scalar& slot = row[j];
      slot -= f * c;
      if (slot.is_zero()) row.erase(j);
    }
    rhs -= f * pr.rhs;
  }
}

bool LinearSystem::add(Row coeffs, Scalar rhs) {
  for (auto it = coeffs.begin(); it != coeffs.end();) {
    if (it->first >= n_) throw IndexOutOfRange("unknown index out of range");
    it = it->second.is_zero() ? coeffs.erase(it) : std::next(it);
  }
  reduce(coeffs, rhs);
  if (coeffs.empty()) {
    if (!rhs.is_zero()) consistent_ = false;
    return rhs.is_zero();
  }
  const std::size_t p = coeffs.begin()->first;
  const Scalar inv = coeffs.begin()->second.inverse();
  for (auto& [j, c] : coeffs) c *= inv;
  rhs *= inv;
  // Keep the stored rows fully reduced.
  for (auto& [q, pr] : rows_) {
    auto it = pr.coeffs.find(p);
    if (it == pr.coeffs.end()) continue;
    const Scalar f = it->second;
    for (const auto& [j, c] : coeffs) {
      Scalar& slot = pr.coeffs[j];
      slot -= f * c;
      if (slot.is_zero()) pr.coeffs.erase(j);
    }
    pr.rhs -= f * rhs;
  }
  rows_.emplace(p, PivotRow{p, std::move(coeffs), std::move(rhs)});
  return true;
}

std::optional<std::vector<Scalar>> LinearSystem::unique_solution() const {
  if (!consistent_ || rows_.size() != n_) return std::nullopt;
  std::vector<Scalar> x(n_);
  for (const auto& [p, pr] : rows_) x[p] = pr.rhs;
  return x;
}

}  // namespace qgc
