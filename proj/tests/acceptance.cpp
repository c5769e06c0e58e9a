// Acceptance report: one line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "qgc/center.hpp"
#include "qgc/errors.hpp"
#include "qgc/pairing.hpp"
#include "qgc/repn.hpp"

using namespace qgc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Tally {
 public:
  void expect(bool cond, const std::string& what) {
    ++checks_;
    if (!cond && first_failure_.empty()) first_failure_ = what;
    ok_ = ok_ && cond;
  }
  Outcome done(const std::string& summary) const {
    std::ostringstream os;
    os << checks_ << " checks";
    if (!summary.empty()) os << ", " << summary;
    if (!ok_) os << ", first failure: " << first_failure_;
    return {ok_, os.str()};
  }

 private:
  bool ok_ = true;
  long checks_ = 0;
  std::string first_failure_;
};

std::vector<RootVec> degrees(int n, int max_height) {
  std::vector<RootVec> out;
  std::vector<int> c(static_cast<std::size_t>(n), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      out.emplace_back(c);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      c[static_cast<std::size_t>(i)] = k;
      self(self, i + 1, left - k);
    }
  };
  rec(rec, 0, max_height);
  return out;
}

int height(const RootVec& v) {
  int h = 0;
  for (int c : v.coeffs()) h += c;
  return h;
}

Element random_borel(const QGroup& g, std::mt19937& rng, Side side, int h) {
  std::uniform_int_distribution<int> letter(1, g.rank()), coin(0, 2);
  Element x = g.one();
  for (int k = 0; k < h; ++k) {
    const int i = letter(rng);
    Element gen = side == Side::F ? g.f(i) : g.e(i);
    if (coin(rng) == 0) gen = side == Side::F ? g.omega_p(i, rng() & 1 ? 1 : -1) : g.omega(i, rng() & 1 ? 1 : -1);
    x = x * gen;
  }
  return x;
}

std::vector<Element> generators(const QGroup& g) {
  std::vector<Element> out;
  for (int i = 1; i <= g.rank(); ++i) {
    out.push_back(g.e(i));
    out.push_back(g.f(i));
    out.push_back(g.omega(i));
    out.push_back(g.omega_p(i));
    out.push_back(g.omega(i, -1));
    out.push_back(g.omega_p(i, -1));
  }
  return out;
}

Weight fund(const QGroup& g, std::vector<int> c) { return g.roots().from_fundamental(c); }

Toral balanced(std::vector<int> eta) {
  std::vector<int> phi = eta;
  for (int& x : phi) x = -x;
  return Toral{std::move(eta), std::move(phi)};
}

ToralPart weight_sum(const QGroup& g, const Weight& lambda) {
  ToralPart out;
  for (const auto& [mu, m] : g.roots().freudenthal_mults(lambda))
    out.add_term(balanced(g.roots().to_rootvec(mu).coeffs()), Scalar(static_cast<long>(m)));
  return out;
}

// ------------------------------------------------------------------ criteria

Outcome relations() {
  Tally t;
  for (int n = 1; n <= 3; ++n)
    for (const auto& [name, rel] : QGroup::get(n).relations())
      t.expect(rel.is_zero(), "n=" + std::to_string(n) + " " + name);
  return t.done("n = 1..3");
}

Outcome hopf_axioms() {
  const QGroup& g = QGroup::get(2);
  Tally t;
  std::vector<Element> xs = generators(g);
  for (unsigned seed = 0; seed < 20; ++seed) xs.push_back(g.random_element(7000 + seed, 3, 1));
  auto ident = [](const Element& y) { return y; };
  auto anti = [&](const Element& y) { return g.antipode(y); };
  auto eps = [&](const Element& y) { return g.scalar(g.counit(y)); };
  auto lift = [&](const Tensor& d, std::size_t leg) {
    return d.map_leg(leg, 2, [&](const TermKey& k) {
      Element x(g);
      x.add_term(k, 1);
      return g.comultiply(x);
    });
  };
  for (const Element& x : xs) {
    const Tensor d = g.comultiply(x);
    const std::string s = x.to_string();
    t.expect(lift(d, 0) == lift(d, 1), "coassociativity " + s);
    t.expect(g.multiply_legs(d, eps, ident) == x && g.multiply_legs(d, ident, eps) == x, "counit " + s);
    const Element e = g.scalar(g.counit(x));
    t.expect(g.multiply_legs(d, anti, ident) == e && g.multiply_legs(d, ident, anti) == e, "antipode " + s);
  }
  return t.done(std::to_string(xs.size()) + " elements, n=2");
}

Outcome pairing_values() {
  const SkewPairing& p = SkewPairing::get(2);
  const QGroup& g = p.group();
  Tally t;
  for (int i = 1; i <= 2; ++i)
    for (int j = 1; j <= 2; ++j) {
      const std::string ij = std::to_string(i) + "," + std::to_string(j);
      t.expect(p.skew_pair(g.f(i), g.e(j)) == (i == j ? (g.s_i(i) - g.r_i(i)).inverse() : Scalar()), "<f,e> " + ij);
      std::vector<int> ei(2, 0), ej(2, 0);
      ei[static_cast<std::size_t>(i - 1)] = 1;
      ej[static_cast<std::size_t>(j - 1)] = 1;
      t.expect(p.skew_pair(g.omega_p(i), g.omega(j)) == g.gpair(ei, ej), "<w',w> " + ij);
      t.expect(p.skew_pair(g.omega_p(i, -1), g.omega(j)) == g.gpair(ei, ej).inverse(), "<w'^-1,w> " + ij);
      t.expect(p.skew_pair(g.omega_p(i), g.e(j)).is_zero(), "<w',e> " + ij);
      t.expect(p.skew_pair(g.f(i), g.omega(j)).is_zero(), "<f,w> " + ij);
    }
  t.expect(p.skew_pair(g.one(), g.one()) == Scalar(1), "<1,1>");
  std::mt19937 rng(2024);
  for (int k = 0; k < 20; ++k) {
    const int h = 1 + k % 3;
    const Element a = random_borel(g, rng, Side::F, h), b = random_borel(g, rng, Side::E, h);
    t.expect(p.skew_pair(g.antipode(a), g.antipode(b)) == p.skew_pair(a, b), "antipode pair " + a.to_string());
  }
  return t.done("20 antipode pairs");
}

Outcome gram_matrices() {
  Tally t;
  int blocks = 0;
  for (const auto& [n, h] : {std::pair{2, 4}, std::pair{3, 3}}) {
    const SkewPairing& p = SkewPairing::get(n);
    for (const RootVec& nu : degrees(n, h)) {
      const Matrix& m = p.gram(nu);
      const std::string tag = "n=" + std::to_string(n) + " nu=" + nu.to_string();
      t.expect(Integer(static_cast<long>(m.rows())) == p.group().roots().kostant_count(nu), "dimension " + tag);
      t.expect(rank(m) == m.rows(), "nonsingular " + tag);
      ++blocks;
    }
  }
  return t.done(std::to_string(blocks) + " degrees");
}

Outcome rosso_properties() {
  const SkewPairing& p = SkewPairing::get(2);
  const QGroup& g = p.group();
  Tally t;
  unsigned seed = 9000;
  for (const Element& a : generators(g))
    for (int k = 0; k < 10; ++k) {
      const Element b = g.random_element(seed++, 2, 2), c = g.random_element(seed++, 2, 2);
      t.expect(p.check_ad_invariance(a, b, c), "ad " + a.to_string() + " | " + b.to_string() + " | " + c.to_string());
    }

  const Toral t0{{1, 0}, {0, -1}}, t1{{0, 2}, {1, 1}};
  long mismatched = 0;
  const auto blocks = degrees(2, 3);
  for (const RootVec& nu : blocks)
    for (const RootVec& mu : blocks) {
      if (height(nu) + height(mu) > 3) continue;
      for (const RootVec& nu1 : blocks)
        for (const RootVec& mu1 : blocks) {
          if (height(nu1) + height(mu1) > 3 || (nu1 == mu && mu1 == nu)) continue;
          ++mismatched;
          for (const Word& fa : g.graded_basis(Side::F, nu).reps)
            for (const Word& eb : g.graded_basis(Side::E, mu).reps)
              for (const Word& fc : g.graded_basis(Side::F, nu1).reps)
                for (const Word& ed : g.graded_basis(Side::E, mu1).reps)
                  t.expect(p.rosso(g.term(fa, t0, eb), g.term(fc, t1, ed)).is_zero(), "block " + nu.to_string());
        }
    }

  const RootSystemB& R = g.roots();
  for (const RootVec& nu : degrees(2, 4)) {
    const Rational e = R.inner(R.rho(), R.to_weight(nu)) * 2;
    t.expect(p.s2_factor(nu) == Scalar::rs_power(e, -e), "s2 factor " + nu.to_string());
    for (const Word& w : g.graded_basis(Side::F, nu).reps) {
      const Element y = g.f_word(w);
      t.expect(g.antipode(g.antipode(y)) == p.s2_factor(nu) * y, "S^2 f " + nu.to_string());
    }
    for (const Word& w : g.graded_basis(Side::E, nu).reps) {
      const Element x = g.e_word(w);
      t.expect(g.antipode(g.antipode(x)) == p.s2_factor(nu).inverse() * x, "S^2 e " + nu.to_string());
    }
  }
  return t.done(std::to_string(mismatched) + " mismatched block pairs");
}

Outcome irreducibles() {
  const QGroup& g = QGroup::get(2);
  Tally t;
  std::string dims;
  for (const auto& [lam, want] : {std::pair{fund(g, {1, 0}), 5ul}, std::pair{Weight::eps({1, 1}), 10ul}}) {
    const WeightModule& L = irreducible(g, lam);
    const auto mults = L.multiplicities();
    const auto expect = g.roots().freudenthal_mults(lam);
    t.expect(L.dim() == want, "dimension");
    t.expect(mults.size() == expect.size(), "weight count");
    for (const auto& [w, m] : expect) t.expect(mults.count(w) && mults.at(w) == m, "multiplicity");
    for (const auto& [w, m] : mults)
      for (int i = 1; i <= 2; ++i) {
        const Weight sw = g.roots().reflect(i, w);
        t.expect(mults.count(sw) && mults.at(sw) == m, "W-symmetry");
      }
    t.expect(check_module_relations(L).empty(), "relations on L");
    dims += (dims.empty() ? "dims " : ", ") + std::to_string(L.dim());
  }
  return t.done(dims);
}

Outcome ef_power() {
  const QGroup& g = QGroup::get(2);
  Tally t;
  const std::vector<std::vector<int>> mus{{0, 0}, {0, 1}, {1, -1}};
  int modules = 0;
  for (int a = 0; a <= 2; ++a)
    for (int b = 0; b <= 2; ++b)
      for (const auto& m : mus) {
        const WeightModule V = verma(g, fund(g, {a, b}), fund(g, m), 3);
        ++modules;
        for (int i = 1; i <= 2; ++i) {
          for (int k = 1; k <= 3; ++k) t.expect(check_ef_power(V, i, k), "ef power");
          t.expect(check_singular(V, i), "singular vector");
        }
      }
  return t.done(std::to_string(modules) + " truncated Vermas");
}

Outcome theta_twist() {
  const QGroup& g = QGroup::get(2);
  Tally t;
  const WeightModule& L = irreducible(g, fund(g, {1, 0}));
  const Matrix th = theta(L);
  for (const Element& u : generators(g)) t.expect(th * act(u, L) == act(g.antipode(g.antipode(u)), L) * th, u.to_string());
  return t.done("L(w1)");
}

Outcome central_trace() {
  const QGroup& g = QGroup::get(2);
  Tally t;
  const CentralCandidate z = central_from_trace(g, fund(g, {1, 0}));
  t.expect(is_central(g, z.z), "ad-centrality");
  ToralPart want;
  for (const auto& eps : std::vector<std::vector<int>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {0, 0}})
    want.add_term(balanced(g.roots().to_rootvec(Weight::eps(eps)).coeffs()), Scalar(1));
  t.expect(hc_xi(g, z.z) == want, "hc image");
  const CentralCandidate s = central_by_solve(g, fund(g, {1, 0}));
  t.expect(s.z == z.z, "solve agrees with trace");
  return t.done(std::to_string(z.z.terms().size()) + " terms");
}

Outcome verma_scalar() {
  const QGroup& g = QGroup::get(2);
  const RootSystemB& R = g.roots();
  Tally t;
  const Element z = central_from_trace(g, fund(g, {1, 0})).z;
  const ToralPart xi = hc_xi(g, z);
  const std::vector<std::pair<Weight, Weight>> samples{{Weight::zero(2), Weight::zero(2)},
                                                       {fund(g, {1, 0}), fund(g, {0, 1})},
                                                       {fund(g, {0, 1}), Weight::eps({1, -1})},
                                                       {fund(g, {1, 2}), fund(g, {-1, 1})}};
  for (const auto& [lam, mu] : samples) {
    const WeightModule V = verma(g, lam, mu, 2);
    const Weight shifted = lam + R.rho();
    const Scalar c = char_eval(g, shifted, mu, xi);
    t.expect(act(z, V) == c * Matrix::identity(V.dim()), "scalar action");
    for (int i = 1; i <= 2; ++i) t.expect(char_eval(g, R.reflect(i, shifted), mu, xi) == c, "reflection invariance");
  }
  return t.done("4 (lambda, mu) samples");
}

Outcome parity() {
  Tally t;
  for (int n = 1; n <= 4; ++n) {
    const auto k = parity_kernel(n, 3, KernelMode::LambdaOnly);
    const bool want_empty = n % 2 == 0;
    t.expect(k.empty() == want_empty, "lambda-only n=" + std::to_string(n));
    if (n == 1)
      t.expect(std::find(k.begin(), k.end(), std::make_pair(std::vector<int>{1}, std::vector<int>{1})) != k.end(),
               "(alpha1, alpha1) at n=1");
    t.expect(parity_kernel(n, 3, KernelMode::Full).empty(), "full n=" + std::to_string(n));
  }
  return t.done("n = 1..4, bound 3");
}

Outcome triangularity() {
  const QGroup& g = QGroup::get(2);
  Tally t;
  const std::vector<Weight> lams{Weight::zero(2), fund(g, {1, 0}), Weight::eps({1, 1})};
  std::vector<std::map<Weight, Scalar>> ex;
  for (const Weight& lam : lams) {
    const ToralPart xi = hc_xi(g, central_from_trace(g, lam).z);
    t.expect(xi.in_ub0() && weyl_invariant(g, xi), "Weyl invariant");
    t.expect(xi == weight_sum(g, lam), "image matches weight sum");
    const auto e = av_expansion(g, xi);
    t.expect(e.has_value(), "av expansion exists");
    if (!e) continue;
    t.expect(dominance_triangular(g, *e, lam), "dominance triangular");
    ex.push_back(*e);
  }
  std::set<Weight> support;
  for (const auto& e : ex)
    for (const auto& [w, c] : e) support.insert(w);
  Matrix m(ex.size(), support.size());
  std::size_t j = 0;
  for (const Weight& w : support) {
    for (std::size_t i = 0; i < ex.size(); ++i)
      if (auto it = ex[i].find(w); it != ex[i].end()) m(i, j) = it->second;
    ++j;
  }
  t.expect(ex.size() == lams.size() && rank(m) == lams.size(), "linear independence");
  return t.done("lambda in {0, w1, e1+e2}");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"relations", relations},
      {"Hopf axioms", hopf_axioms},
      {"generator pairing and antipode invariance", pairing_values},
      {"Gram matrices and Kostant dimensions", gram_matrices},
      {"ad-invariance, block orthogonality, S^2 twist", rosso_properties},
      {"irreducible L(w1) and L(e1+e2)", irreducibles},
      {"e_i f_i^k identity in truncated Vermas", ef_power},
      {"Theta twist on L(w1)", theta_twist},
      {"central element from trace", central_trace},
      {"Verma scalar and reflection invariance", verma_scalar},
      {"parity kernel", parity},
      {"dominance triangularity", triangularity},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %2zu %s: %s (%.2f s)\n", o.ok ? "PASS" : "FAIL", k + 1, criteria[k].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    if (!o.ok) ++failed;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed ? 1 : 0;
}
