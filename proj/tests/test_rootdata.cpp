#include "test_util.hpp"

#include "qgc/errors.hpp"
#include "qgc/rootdata.hpp"

using namespace qgc;

TEST_CASE("inner products and coroot pairings") {
  RootSystemB b(2);
  const Weight a1 = b.simple_root(1), a2 = b.simple_root(2);
  CHECK(b.inner(a1, a1) == 2);
  CHECK(b.inner(a2, a2) == 1);
  CHECK(b.inner(a1, a2) == -1);
  for (int n = 1; n <= 4; ++n) {
    RootSystemB rs(n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) CHECK(rs.coroot_pair(rs.fundamental_weight(i), j) == (i == j ? 1 : 0));
      CHECK(rs.coroot_pair(rs.rho(), i) == 1);
    }
  }
  CHECK(b.coroot_pair(b.fundamental_weight(1), 1) == 1);
  CHECK(b.coroot_pair(b.fundamental_weight(1), 2) == 0);
  CHECK(b.coroot_pair(Weight::eps({1, 1}), 2) == 2);
  CHECK_THROWS_AS(b.coroot_pair(a1, 3), IndexOutOfRange);
  CHECK_THROWS_AS(b.inner(a1, RootSystemB(3).simple_root(1)), RankMismatch);
}

TEST_CASE("cartan integers of type B") {
  for (int n = 2; n <= 5; ++n) {
    RootSystemB b(n);
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        int expect = 0;
        if (i == j) expect = 2;
        else if (std::abs(i - j) == 1) expect = (i == n - 1 && j == n) ? -2 : -1;
        CHECK(b.coroot_pair(b.simple_root(i), j) == expect);
      }
    }
  }
}

TEST_CASE("rho is the half sum of positive roots") {
  CHECK(RootSystemB(2).rho().to_string() == "(3/2,1/2)");
  CHECK(RootSystemB(4).rho().to_string() == "(7/2,5/2,3/2,1/2)");
  for (int n = 1; n <= 5; ++n) {
    RootSystemB b(n);
    Weight sum = Weight::zero(n);
    for (const auto& a : b.positive_roots()) sum += a;
    CHECK(sum == 2 * b.rho());
    CHECK(static_cast<int>(b.positive_roots().size()) == n * n);
  }
}

TEST_CASE("reflections and orbits") {
  RootSystemB b(2);
  CHECK(b.reflect(2, Weight::eps({0, 1})) == Weight::eps({0, -1}));
  const Weight w1 = b.fundamental_weight(1);
  CHECK(b.reflect(1, w1) == w1 - b.simple_root(1));
  auto orbit = b.weyl_orbit(Weight::eps({1, 0}));
  CHECK(orbit.size() == 4);
  CHECK(orbit.count(Weight::eps({0, -1})) == 1);

  for (int n = 1; n <= 4; ++n) {
    RootSystemB rs(n);
    CHECK(rs.weyl_group().size() == (std::size_t{1} << n) * (n == 1 ? 1 : n == 2 ? 2 : n == 3 ? 6 : 24));
    const Weight lam = rs.rho() + rs.fundamental_weight(1);
    for (int i = 1; i <= n; ++i) CHECK(rs.reflect(i, rs.reflect(i, lam)) == lam);
    int dominant = 0;
    for (const auto& w : rs.weyl_orbit(rs.fundamental_weight(n))) dominant += rs.is_dominant(w);
    CHECK(dominant == 1);
  }
}

TEST_CASE("weyl group axioms") {
  RootSystemB b(3);
  const auto& g = b.weyl_group();
  const Weight probe = Weight({5, 3, 1});
  for (std::size_t i = 0; i < g.size(); i += 7) {
    const auto& x = g[i];
    CHECK(x.compose(x.inverse()) == WeylElement::identity(3));
    for (std::size_t j = 0; j < g.size(); j += 11) {
      CHECK(x.compose(g[j]).apply(probe) == x.apply(g[j].apply(probe)));
    }
  }
  // simple reflections act as reflect()
  for (int i = 1; i <= 3; ++i) CHECK(WeylElement::simple_reflection(3, i).apply(probe) == b.reflect(i, probe));
}

TEST_CASE("freudenthal multiplicities") {
  RootSystemB b(2);
  auto m = b.freudenthal_mults(b.fundamental_weight(1));
  CHECK(m.size() == 5);
  for (const auto& [w, k] : m) CHECK(k == 1);
  CHECK(m.count(Weight::zero(2)) == 1);

  auto z = b.freudenthal_mults(Weight::zero(2));
  CHECK(z.size() == 1);
  CHECK(z.begin()->second == 1);

  auto adj = b.freudenthal_mults(Weight::eps({1, 1}));
  std::int64_t total = 0;
  for (const auto& [w, k] : adj) total += k;
  CHECK(adj.at(Weight::zero(2)) == 2);
  CHECK(total == 10);

  CHECK(b.weyl_dim(b.fundamental_weight(1)) == 5);
  CHECK(b.weyl_dim(Weight::zero(2)) == 1);
  CHECK(b.weyl_dim(Weight::eps({1, 1})) == 10);
  CHECK(b.weyl_dim(b.fundamental_weight(2)) == 4);
  CHECK_THROWS_AS(b.freudenthal_mults(Weight::eps({0, 1})), NotDominant);
  CHECK_THROWS_AS(b.weyl_dim(Weight::eps({-1, 0})), NotDominant);
}

TEST_CASE("freudenthal totals and W-invariance") {
  for (int n = 1; n <= 4; ++n) {
    RootSystemB b(n);
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    // walk small dominant weights in fundamental coordinates
    for (int trial = 0; trial < 12; ++trial) {
      const Weight lam = b.from_fundamental(c);
      const Integer dim = b.weyl_dim(lam);
      if (dim <= 200) {
        auto m = b.freudenthal_mults(lam);
        Integer total = 0;
        for (const auto& [w, k] : m) {
          total += k;
          for (int i = 1; i <= n; ++i) {
            auto it = m.find(b.reflect(i, w));
            REQUIRE(it != m.end());
            CHECK(it->second == k);
          }
        }
        CHECK(total == dim);
      }
      c[static_cast<std::size_t>(trial % n)] += 1;
    }
  }
}

TEST_CASE("alpha coordinates") {
  RootSystemB b(2);
  CHECK(b.alpha_coords(b.fundamental_weight(1)) == std::vector<Rational>{1, 1});
  CHECK(b.alpha_coords(b.fundamental_weight(2)) == std::vector<Rational>{Rational(1, 2), 1});
  for (int n = 1; n <= 4; ++n) {
    RootSystemB rs(n);
    for (int i = 1; i <= n; ++i) {
      auto c = rs.alpha_coords(rs.simple_root(i));
      for (int j = 1; j <= n; ++j) CHECK(c[static_cast<std::size_t>(j - 1)] == (i == j ? 1 : 0));
    }
    const Weight lam = rs.rho() + rs.fundamental_weight(1);
    auto c = rs.alpha_coords(lam);
    CHECK(rs.from_alpha(c) == lam);
    for (int i = 1; i <= n; ++i) {
      Rational acc = 0;
      for (int j = 1; j <= n; ++j) acc += c[static_cast<std::size_t>(j - 1)] * rs.inner(rs.simple_root(j), rs.simple_root(i));
      CHECK(acc == rs.inner(lam, rs.simple_root(i)));
    }
  }
  CHECK_THROWS_AS(b.to_rootvec(b.fundamental_weight(2)), NotInLattice);
  CHECK(b.to_rootvec(b.fundamental_weight(1)) == RootVec({1, 1}));
}

TEST_CASE("dominance and lattices") {
  RootSystemB b(2);
  CHECK(b.dominated_by(Weight::zero(2), b.fundamental_weight(1)));
  CHECK_FALSE(b.dominated_by(b.fundamental_weight(1), Weight::zero(2)));
  CHECK_FALSE(b.dominated_by(b.fundamental_weight(2), b.fundamental_weight(1)));
  CHECK(Weight({1, 1}).in_weight_lattice());
  CHECK_FALSE(Weight({1, 2}).in_weight_lattice());
  CHECK_FALSE(Weight({1, 1}).in_root_lattice());
  CHECK(b.dominant_conjugate(Weight::eps({0, -1})) == Weight::eps({1, 0}));
}

TEST_CASE("kostant partition counts") {
  RootSystemB b(2);
  CHECK(b.kostant_count(RootVec({1, 1})) == 2);
  CHECK(b.kostant_count(RootVec({2, 1})) == 2);
  CHECK(b.kostant_count(RootVec({1, 2})) == 3);
  CHECK(b.kostant_count(RootVec({1, 3})) == 3);
  CHECK(b.kostant_count(RootVec({2, 2})) == 4);
  CHECK(b.kostant_count(RootVec({0, 0})) == 1);
  CHECK(b.kostant_count(RootVec({-1, 0})) == 0);
}
