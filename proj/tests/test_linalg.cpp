#include "test_util.hpp"

#include <random>

#include "qgc/linalg.hpp"

using namespace qgc;

namespace {

const Scalar r = Scalar::r();
const Scalar s = Scalar::s();

Scalar small_scalar(std::mt19937& gen) {
  std::uniform_int_distribution<int> e(-2, 2), c(-3, 3);
  Scalar num = Scalar(c(gen)) * r.pow(e(gen)) + Scalar(c(gen)) * s.pow(e(gen));
  Scalar den = r.pow(e(gen)) - Scalar(c(gen) == 0 ? 1 : 2) * s;
  return num / den;
}

}  // namespace

TEST_CASE("determinant and inverse of a 2x2") {
  Matrix m(2, 2);
  m(0, 0) = r;
  m(0, 1) = s;
  m(1, 0) = 1;
  m(1, 1) = r + s;
  CHECK(determinant(m) == r * (r + s) - s);
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK(*inv * m == Matrix::identity(2));
  CHECK(m * *inv == Matrix::identity(2));
}

TEST_CASE("singular matrices") {
  Matrix m(2, 2);
  m(0, 0) = r;
  m(0, 1) = s;
  m(1, 0) = r * r;
  m(1, 1) = r * s;
  CHECK(determinant(m).is_zero());
  CHECK_FALSE(inverse(m).has_value());
  CHECK(rank(m) == 1);
}

TEST_CASE("random inverses, determinants and echelon forms") {
  std::mt19937 gen(2024);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 2 + trial % 3;
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) m(i, j) = small_scalar(gen);
    }
    m(0, 0) = 0;  // forces a row swap
    const Scalar d = determinant(m);
    auto inv = inverse(m);
    if (d.is_zero()) {
      CHECK_FALSE(inv.has_value());
      continue;
    }
    REQUIRE(inv);
    CHECK(*inv * m == Matrix::identity(n));
    CHECK(determinant(*inv) == d.inverse());
    auto ech = row_reduce(m);
    CHECK(ech.rank() == n);
    CHECK(ech.rref == Matrix::identity(n));
  }
}

TEST_CASE("linear system") {
  LinearSystem sys(3);
  CHECK(sys.add({{0, 1}, {1, 1}}, r));
  CHECK(sys.add({{1, 1}, {2, 1}}, s));
  CHECK(sys.add({{0, 1}, {1, 2}, {2, 1}}, r + s));  // redundant
  CHECK(sys.rank() == 2);
  CHECK_FALSE(sys.unique_solution().has_value());
  CHECK(sys.add({{2, r}}, 1));
  auto x = sys.unique_solution();
  REQUIRE(x);
  CHECK((*x)[2] == r.inverse());
  CHECK((*x)[1] == s - r.inverse());
  CHECK((*x)[0] == r - s + r.inverse());
  CHECK_FALSE(sys.add({{0, 1}}, 0));
  CHECK_FALSE(sys.consistent());
}
