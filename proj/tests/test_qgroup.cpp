#include <doctest.h>

#include "qgc/errors.hpp"
#include "qgc/qgroup.hpp"
#include "test_util.hpp"

using namespace qgc;

namespace {

Toral w_only(int n, std::vector<int> phi) { return Toral{std::vector<int>(static_cast<std::size_t>(n)), std::move(phi)}; }
Toral wp_only(int n, std::vector<int> eta) { return Toral{std::move(eta), std::vector<int>(static_cast<std::size_t>(n))}; }

Tensor id_tensor_delta(const QGroup& g, const Tensor& t, std::size_t leg) {
  return t.map_leg(leg, 2, [&](const TermKey& k) {
    Element x(g);
    x.add_term(k, 1);
    return g.comultiply(x);
  });
}

}  // namespace

TEST_CASE("group-like pairing values") {
  const QGroup& g = QGroup::get(2);
  const Scalar r = Scalar::r(), s = Scalar::s();
  CHECK(g.gpair(std::vector<int>{0, 1}, std::vector<int>{0, 1}) == r / s);
  CHECK(g.gpair(std::vector<int>{1, 0}, std::vector<int>{1, 0}) == r * r / (s * s));
  CHECK(g.gpair(std::vector<int>{1, 1}, std::vector<int>{0, 1}) == (r * s).inverse());
  CHECK(g.gpair(std::vector<int>{1, 0}, std::vector<int>{0, 1}) == r.pow(-2));
  CHECK(g.gpair(std::vector<int>{0, 1}, std::vector<int>{1, 0}) == s * s);
  CHECK_THROWS_AS(g.gpair(std::vector<Rational>{0, 1}, std::vector<Rational>{make_rational(1, 2), 0}),
                  NonIntegralSecondArgument);
  CHECK_NOTHROW(g.gpair(std::vector<Rational>{make_rational(1, 2), 1}, std::vector<Rational>{0, 1}));
  CHECK(QGroup::get(1).gpair(std::vector<int>{1}, std::vector<int>{1}) == r / s);
}

TEST_CASE("quantum integers") {
  const QGroup& g = QGroup::get(2);
  const Scalar r = Scalar::r(), s = Scalar::s();
  CHECK(g.qint(0, 1).is_zero());
  CHECK(g.qint(1, 1) == Scalar(1));
  CHECK(g.qint(2, 1) == r * r + s * s);
  CHECK(g.qint(2, 2) == r + s);
  CHECK(g.qint(3, 2) * (r - s) == r.pow(3) - s.pow(3));
}

TEST_CASE("graded bases") {
  const QGroup& g = QGroup::get(2);
  CHECK(g.graded_basis(Side::E, RootVec({1, 0})).dim() == 1);
  CHECK(g.graded_basis(Side::E, RootVec({1, 1})).dim() == 2);
  const GradedBasis& b = g.graded_basis(Side::E, RootVec({2, 1}));
  CHECK(b.words.size() == 3);
  CHECK(b.dim() == 2);
  CHECK_THROWS_AS(g.graded_basis(Side::E, RootVec({-1, 1})), NotInPositiveCone);

  for (Side side : {Side::E, Side::F})
    for (int a = 0; a <= 5; ++a)
      for (int c = 0; a + c <= 5; ++c) {
        const RootVec nu({a, c});
        const GradedBasis& gb = g.graded_basis(side, nu);
        CHECK(Integer(static_cast<long>(gb.dim())) == g.roots().kostant_count(nu));
        for (std::size_t k = 0; k < gb.reps.size(); ++k) {
          const auto& red = gb.reduction.at(gb.reps[k]);
          REQUIRE(red.size() == 1);
          CHECK(red[0].first == k);
          CHECK(red[0].second == Scalar(1));
        }
      }

  const QGroup& g3 = QGroup::get(3);
  for (const RootVec& nu : {RootVec({1, 1, 1}), RootVec({1, 1, 2}), RootVec({1, 2, 2}), RootVec({2, 1, 1})})
    CHECK(Integer(static_cast<long>(g3.graded_basis(Side::E, nu).dim())) == g3.roots().kostant_count(nu));
}

TEST_CASE("defining relations hold") {
  for (int n = 1; n <= 3; ++n) {
    const QGroup& g = QGroup::get(n);
    for (const auto& [name, rel] : g.relations()) {
      INFO("n=" << n << " " << name << ": " << rel.to_string());
      CHECK(rel.is_zero());
    }
  }
}

TEST_CASE("product examples") {
  const QGroup& g = QGroup::get(2);
  const Scalar r = Scalar::r(), s = Scalar::s();
  Element lhs = g.e(1) * g.f(1);
  Element rhs = g.f(1) * g.e(1) + (g.omega(1) - g.omega_p(1)) * (r * r - s * s).inverse();
  CHECK(lhs == rhs);
  CHECK(lhs.size() == 3);
  CHECK(g.e(1) * g.f(2) == g.term({2}, Toral::identity(2), {1}));
  CHECK(g.omega(1) * g.e(2) == s * s * (g.e(2) * g.omega(1)));
  CHECK(g.omega(1).to_string() == "(1) W'[0,0] W[1,0]");
  CHECK(Element::from_json(g, lhs.to_json()) == lhs);
}

TEST_CASE("product is associative") {
  for (int n : {1, 2}) {
    const QGroup& g = QGroup::get(n);
    for (unsigned seed = 0; seed < 12; ++seed) {
      const Element a = g.random_element(seed * 3 + 1, 2, 2);
      const Element b = g.random_element(seed * 3 + 2, 2, 2);
      const Element c = g.random_element(seed * 3 + 3, 2, 2);
      CHECK((a * b) * c == a * (b * c));
    }
  }
}

TEST_CASE("Hopf structure on generators") {
  const QGroup& g = QGroup::get(2);
  const Element one = g.one();
  Tensor de = g.comultiply(g.e(1));
  Tensor want(g, 2);
  const Element e1 = g.e(1), w1 = g.omega(1), f1 = g.f(1), wp1 = g.omega_p(1);
  want.add_product({&e1, &one}, 1);
  want.add_product({&w1, &e1}, 1);
  CHECK(de == want);

  Tensor df = g.comultiply(f1);
  Tensor wantf(g, 2);
  wantf.add_product({&one, &f1}, 1);
  wantf.add_product({&f1, &wp1}, 1);
  CHECK(df == wantf);

  // e1 e2
  const Element e2 = g.e(2), w2 = g.omega(2);
  Tensor d12 = g.comultiply(g.e(1) * g.e(2));
  Tensor want12(g, 2);
  const Element e12 = e1 * e2, e1w2 = e1 * w2, w1e2 = w1 * e2, w12 = w1 * w2;
  want12.add_product({&e12, &one}, 1);
  want12.add_product({&e1w2, &e2}, 1);
  want12.add_product({&w1e2, &e1}, 1);
  want12.add_product({&w12, &e12}, 1);
  CHECK(d12 == want12);

  CHECK(g.antipode(e1) == -(g.omega(1, -1) * e1));
  CHECK(g.antipode(f1) == -(f1 * g.omega_p(1, -1)));
  CHECK(g.antipode(g.toral({1, -1}, {0, 2})) == g.toral({-1, 1}, {0, -2}));
  CHECK(g.counit(g.omega(1, -1)) == Scalar(1));
  CHECK(g.counit(e1).is_zero());

  const Scalar r = Scalar::r(), s = Scalar::s();
  CHECK(g.ad(e1, f1) == (1 - s * s / (r * r)) * (f1 * e1) + (g.omega(1) - g.omega_p(1)) * (g.r_i(1) - g.s_i(1)).inverse());
  CHECK(g.ad(e1, one).is_zero());
  const Element z = g.random_element(5, 2, 2);
  CHECK(g.ad(w1, z) == w1 * z * g.omega(1, -1));
  CHECK(g.ad(e1, z) == e1 * z - w1 * z * g.omega(1, -1) * e1);
  CHECK(g.ad(f1, z) == (f1 * z - z * f1) * g.omega_p(1, -1));
}

TEST_CASE("Hopf axioms on random elements") {
  const QGroup& g = QGroup::get(2);
  for (unsigned seed = 100; seed < 108; ++seed) {
    const Element x = g.random_element(seed, 3, 1);
    INFO(x.to_string());
    const Tensor d = g.comultiply(x);
    CHECK(id_tensor_delta(g, d, 0) == id_tensor_delta(g, d, 1));

    auto ident = [](const Element& y) { return y; };
    auto anti = [&](const Element& y) { return g.antipode(y); };
    const Element eps = g.scalar(g.counit(x));
    CHECK(g.multiply_legs(d, anti, ident) == eps);
    CHECK(g.multiply_legs(d, ident, anti) == eps);
    auto eps_map = [&](const Element& y) { return g.scalar(g.counit(y)); };
    CHECK(g.multiply_legs(d, eps_map, ident) == x);
    CHECK(g.multiply_legs(d, ident, eps_map) == x);
  }
}

TEST_CASE("comultiplication and antipode are (anti)multiplicative") {
  const QGroup& g = QGroup::get(2);
  for (unsigned seed = 200; seed < 206; ++seed) {
    const Element a = g.random_element(seed, 2, 1), b = g.random_element(seed + 50, 2, 1);
    CHECK(g.antipode(a * b) == g.antipode(b) * g.antipode(a));
    const Tensor da = g.comultiply(a), db = g.comultiply(b);
    Tensor prod(g, 2);
    for (const auto& [ka, ca] : da.terms())
      for (const auto& [kb, cb] : db.terms()) {
        Element l1(g), l2(g), r1(g), r2(g);
        l1.add_term(ka[0], 1);
        r1.add_term(ka[1], 1);
        l2.add_term(kb[0], 1);
        r2.add_term(kb[1], 1);
        const Element l = l1 * l2, r = r1 * r2;
        prod.add_product({&l, &r}, ca * cb);
      }
    CHECK(g.comultiply(a * b) == prod);
  }
}

TEST_CASE("adjoint action is an algebra action") {
  const QGroup& g = QGroup::get(2);
  for (unsigned seed = 300; seed < 304; ++seed) {
    const Element x = g.random_element(seed, 1, 1), y = g.random_element(seed + 7, 1, 1);
    const Element z = g.random_element(seed + 13, 2, 1);
    CHECK(g.ad(x * y, z) == g.ad(x, g.ad(y, z)));
  }
}

TEST_CASE("toral commutation uses the characters") {
  const QGroup& g = QGroup::get(3);
  const Toral t{{1, -1, 2}, {0, 1, -1}};
  for (int i = 1; i <= 3; ++i) {
    std::vector<int> ai(3, 0);
    ai[static_cast<std::size_t>(i - 1)] = 1;
    const Scalar c = g.rho_char(ai, t);
    CHECK(g.toral(t) * g.e(i) == c * (g.e(i) * g.toral(t)));
    CHECK(g.toral(t) * g.f(i) == c.inverse() * (g.f(i) * g.toral(t)));
  }
  CHECK(w_only(3, {1, 0, 0}) != wp_only(3, {1, 0, 0}));
  CHECK_THROWS_AS(g.e(4), IndexOutOfRange);
}
