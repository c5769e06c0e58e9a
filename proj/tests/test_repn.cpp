#include <doctest.h>

#include "qgc/errors.hpp"
#include "qgc/repn.hpp"
#include "test_util.hpp"

using namespace qgc;

namespace {

Weight fund(const QGroup& g, std::vector<int> c) { return g.roots().from_fundamental(c); }

std::vector<Scalar> basis_vector(std::size_t d, std::size_t k) {
  std::vector<Scalar> v(d);
  v[k] = 1;
  return v;
}

}  // namespace

TEST_CASE("character pairs") {
  const QGroup& g = QGroup::get(2);
  const Scalar r = Scalar::r(), s = Scalar::s();
  const Weight w1 = fund(g, {1, 0}), w2 = fund(g, {0, 1}), zero = Weight::zero(2);
  // rho^{w1}(w_2) = <w'_{a1+a2}, w_{a2}> = r^{-1} s^{-1}
  CHECK(char_pair(g, w1, zero, Toral{{0, 0}, {0, 1}}) == (r * s).inverse());
  CHECK(char_pair(g, zero, w2, Toral{{1, 0}, {0, 1}}) == Scalar::rs_power(make_rational(1, 2), make_rational(-1, 2)));
  CHECK(char_pair(g, w1, w2, Toral::identity(2)) == Scalar(1));
  const Toral t{{1, -1}, {2, 0}};
  CHECK(char_pair(g, w1, w2, t) == char_pair(g, w1, zero, t) * char_pair(g, zero, w2, t));
}

TEST_CASE("Verma modules") {
  const QGroup& g = QGroup::get(2);
  const Weight lam = fund(g, {1, 0}), mu = fund(g, {0, 1});
  const WeightModule V = verma(g, lam, mu, 3);
  CHECK(V.dim() == 1 + 2 + 4 + 7);
  for (std::size_t k = 0; k < V.dim(); ++k) CHECK(V.weight(k) == lam - g.roots().to_weight(V.content(k)));
  for (int i = 1; i <= 2; ++i) CHECK(V.e_matrix(i).apply(basis_vector(V.dim(), V.top())) == std::vector<Scalar>(V.dim()));
  CHECK(V.toral_value(V.top(), Toral{{0, 0}, {0, 1}}) == char_pair(g, lam, mu, Toral{{0, 0}, {0, 1}}));
  CHECK(check_module_relations(V).empty());
  CHECK_THROWS_AS(act(g.f(1) * g.f(2) * g.f(1) * g.f(2), V), TruncationOverflow);
}

TEST_CASE("e_i f_i^k on the highest-weight vector and singular vectors") {
  const QGroup& g = QGroup::get(2);
  const std::vector<std::vector<int>> lams{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {0, 2}, {1, 1}, {2, 2}};
  const std::vector<std::vector<int>> mus{{0, 0}, {0, 1}, {1, -1}};
  for (const auto& l : lams)
    for (const auto& m : mus) {
      const WeightModule V = verma(g, fund(g, l), fund(g, m), 3);
      for (int i = 1; i <= 2; ++i) {
        for (int k = 1; k <= 3; ++k) CHECK(check_ef_power(V, i, k));
        CHECK(check_singular(V, i));
      }
    }
  const WeightModule V = verma(g, fund(g, {1, 0}), Weight::zero(2), 1);
  CHECK_THROWS_AS(check_ef_power(V, 1, 2), TruncationOverflow);
}

TEST_CASE("irreducible modules match Freudenthal") {
  const QGroup& g = QGroup::get(2);
  CHECK(irreducible(g, Weight::zero(2)).dim() == 1);
  for (const Weight& lam : {fund(g, {1, 0}), fund(g, {0, 1}), Weight::eps({1, 1}), fund(g, {0, 2}), fund(g, {1, 1})}) {
    const WeightModule& L = irreducible(g, lam);
    const auto mults = L.multiplicities();
    const auto expect = g.roots().freudenthal_mults(lam);
    REQUIRE(mults.size() == expect.size());
    for (const auto& [w, m] : expect) CHECK(mults.at(w) == m);
    CHECK(Integer(static_cast<long>(L.dim())) == g.roots().weyl_dim(lam));
    for (const auto& [w, m] : mults)
      for (int i = 1; i <= 2; ++i) CHECK(mults.at(g.roots().reflect(i, w)) == m);
    CHECK(check_module_relations(L).empty());
  }
  CHECK(irreducible(g, fund(g, {1, 0})).dim() == 5);
  CHECK(irreducible(g, Weight::eps({1, 1})).dim() == 10);
  CHECK(irreducible(QGroup::get(3), fund(QGroup::get(3), {1, 0, 0})).dim() == 7);
  CHECK(irreducible(QGroup::get(3), fund(QGroup::get(3), {0, 0, 1})).dim() == 8);
  CHECK_THROWS_AS(irreducible(g, Weight::eps({-1, 0})), NotDominant);
}

TEST_CASE("action is multiplicative on L(lambda)") {
  const QGroup& g = QGroup::get(2);
  const WeightModule& L = irreducible(g, Weight::eps({1, 1}));
  for (unsigned seed = 0; seed < 4; ++seed) {
    const Element x = g.random_element(seed + 40, 2, 2), y = g.random_element(seed + 80, 2, 2);
    CHECK(act(x * y, L) == act(x, L) * act(y, L));
  }
}

TEST_CASE("Theta") {
  const QGroup& g = QGroup::get(2);
  const Scalar q = Scalar::r() / Scalar::s();
  CHECK(theta(irreducible(g, Weight::zero(2))) == Matrix::identity(1));
  const WeightModule& L = irreducible(g, fund(g, {1, 0}));
  CHECK(theta(L)(L.top(), L.top()) == q.pow(-3));
  CHECK(check_theta_twist(L));
  CHECK(check_theta_twist(irreducible(g, Weight::eps({1, 1}))));
}

TEST_CASE("trace functions and matrix coefficients") {
  const QGroup& g = QGroup::get(2);
  const Scalar q = Scalar::r() / Scalar::s();
  const Weight w1 = fund(g, {1, 0});
  CHECK(trace_fn(g, Weight::zero(2), g.one()) == Scalar(1));
  CHECK(trace_fn(g, w1, g.one()) == q.pow(-3) + q.pow(3) + q.pow(-1) + q + 1);

  const Toral t{{1, 0}, {-1, 2}};
  Scalar expect;
  const RootSystemB& R = g.roots();
  for (const auto& [mu, m] : R.freudenthal_mults(w1)) {
    const Rational e = R.inner(R.rho(), mu) * -2;
    expect += Scalar(static_cast<long>(m)) * Scalar::rs_power(e, -e) * char_pair(g, mu, Weight::zero(2), t);
  }
  CHECK(trace_fn(g, w1, g.toral(t)) == expect);

  const WeightModule& L = irreducible(g, w1);
  const Matrix th = theta(L);
  for (unsigned seed = 0; seed < 3; ++seed) {
    const Element x = g.random_element(seed + 7, 2, 2);
    Scalar sum;
    for (std::size_t i = 0; i < L.dim(); ++i) sum += matrix_coeff(L, i, th.apply(basis_vector(L.dim(), i)), x);
    CHECK(sum == trace_fn(g, w1, x));
  }
  CHECK(matrix_coeff(L, 0, basis_vector(L.dim(), 0), g.one()) == Scalar(1));
}
