#include "qgc/center.hpp"

#include <numeric>
#include <set>

#include "qgc/errors.hpp"
#include "qgc/linalg.hpp"
#include "qgc/pairing.hpp"

namespace qgc {

// ---------------------------------------------------------------- ToralPart

ToralPart::ToralPart(Map terms) {
  for (auto& [t, c] : terms)
    if (!c.is_zero()) terms_.emplace(t, std::move(c));
}

void ToralPart::add_term(const Toral& t, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(t, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

bool ToralPart::in_ub0() const {
  for (const auto& [t, c] : terms_)
    if (!t.balanced()) return false;
  return true;
}

Scalar ToralPart::coeff(const Toral& t) const {
  auto it = terms_.find(t);
  return it == terms_.end() ? Scalar() : it->second;
}

ToralPart& ToralPart::operator+=(const ToralPart& o) {
  for (const auto& [t, c] : o.terms_) add_term(t, c);
  return *this;
}

ToralPart operator*(const Scalar& c, ToralPart t) {
  if (c.is_zero()) return ToralPart();
  for (auto& [k, v] : t.terms_) v *= c;
  return t;
}

std::string ToralPart::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [t, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ") W'" + word_to_string(t.eta) + " W" + word_to_string(t.phi);
  }
  return out;
}

nlohmann::json ToralPart::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [t, c] : terms_) arr.push_back({{"eta", t.eta}, {"phi", t.phi}, {"coeff", c.to_json()}});
  return arr;
}

// ---------------------------------------------------------------- characters

namespace {

std::vector<int> negated(std::vector<int> v) {
  for (int& x : v) x = -x;
  return v;
}

Toral balanced_of(const RootSystemB& R, const Weight& w) {
  const RootVec v = R.to_rootvec(w);
  return Toral{v.coeffs(), negated(v.coeffs())};
}

Scalar theta_value(const RootSystemB& R, const Weight& w) {
  const Rational e = R.inner(R.rho(), w) * -2;
  return Scalar::rs_power(e, -e);
}

}  // namespace

ToralPart hc_xi(const QGroup& g, const Element& x) {
  const RootSystemB& R = g.roots();
  std::vector<Rational> neg_rho = R.alpha_coords(R.rho());
  for (auto& c : neg_rho) c = -c;
  ToralPart out;
  for (const auto& [k, c] : x.terms())
    if (k.f.empty() && k.e.empty()) out.add_term(k.t, c * g.rho_char(neg_rho, k.t));
  return out;
}

Scalar char_eval(const QGroup& g, const Weight& lambda, const Weight& mu, const ToralPart& t) {
  Scalar out;
  for (const auto& [k, c] : t.terms()) out += c * char_pair(g, lambda, mu, k);
  return out;
}

ToralPart weyl_act(const QGroup& g, const WeylElement& sigma, const ToralPart& t) {
  if (!t.in_ub0()) throw NotInUb0("weyl_act: toral part has an unbalanced term");
  const RootSystemB& R = g.roots();
  ToralPart out;
  for (const auto& [k, c] : t.terms())
    out.add_term(balanced_of(R, sigma.apply(R.to_weight(RootVec(k.eta)))), c);
  return out;
}

ToralPart av(const QGroup& g, const Weight& lambda) {
  const RootSystemB& R = g.roots();
  if (!lambda.in_root_lattice()) throw NotInRootLattice("av: weight must lie in the root lattice");
  if (!R.is_dominant(lambda)) throw NotDominant("av: weight must be dominant");
  const auto& W = R.weyl_group();
  const Scalar inv = Scalar(static_cast<long>(W.size())).inverse();
  ToralPart out;
  for (const WeylElement& w : W) out.add_term(balanced_of(R, w.apply(lambda)), inv);
  return out;
}

bool weyl_invariant(const QGroup& g, const ToralPart& t) {
  if (!t.in_ub0()) return false;
  for (int i = 1; i <= g.rank(); ++i)
    if (weyl_act(g, WeylElement::simple_reflection(g.rank(), i), t) != t) return false;
  return true;
}

std::optional<std::map<Weight, Scalar>> av_expansion(const QGroup& g, const ToralPart& t) {
  if (!t.in_ub0()) throw NotInUb0("av_expansion: toral part has an unbalanced term");
  const RootSystemB& R = g.roots();
  std::map<Weight, Scalar> out;
  for (const auto& [k, c] : t.terms()) {
    const Weight w = R.to_weight(RootVec(k.eta));
    if (!R.is_dominant(w)) continue;
    out[w] = c * Scalar(static_cast<long>(R.weyl_orbit(w).size()));
  }
  ToralPart rebuilt;
  for (const auto& [w, c] : out) rebuilt += c * av(g, w);
  if (rebuilt != t) return std::nullopt;
  return out;
}

bool dominance_triangular(const QGroup& g, const std::map<Weight, Scalar>& expansion, const Weight& lambda) {
  const RootSystemB& R = g.roots();
  auto it = expansion.find(lambda);
  if (it == expansion.end()) return false;
  const Scalar& lead = it->second;
  if (!lead.is_polynomial() || !lead.num().is_constant()) return false;
  const Rational v = lead.eval(1, 1);
  if (v <= 0 || v.get_den() != 1) return false;
  for (const auto& [w, c] : expansion) {
    if (w == lambda) continue;
    if (!R.is_dominant(w) || !R.dominated_by(w, lambda)) return false;
  }
  return true;
}

bool is_central(const QGroup& g, const Element& z) {
  for (int i = 1; i <= g.rank(); ++i) {
    if (!g.ad(g.e(i), z).is_zero() || !g.ad(g.f(i), z).is_zero()) return false;
    if (g.ad(g.omega(i), z) != z || g.ad(g.omega_p(i), z) != z) return false;
  }
  return true;
}

nlohmann::json CentralCandidate::to_json() const {
  return {{"lambda", lambda.doubled()}, {"method", method}, {"terms", z.size()}, {"element", z.to_json()}};
}

// ---------------------------------------------------------------- central elements

namespace {

// A weight lambda' of L(lambda) together with a degree nu such that
// lambda' + nu is again a weight.
struct Block {
  Weight low;       // lambda'
  RootVec content;  // lambda - lambda'
  RootVec nu;
};

std::vector<Block> blocks_of(const QGroup& g, const WeightModule& L) {
  std::set<RootVec> contents;
  for (std::size_t k = 0; k < L.dim(); ++k) contents.insert(L.content(k));
  std::vector<Block> out;
  const int n = g.rank();
  for (const RootVec& k1 : contents)
    for (const RootVec& k2 : contents) {
      bool below = true;
      for (int j = 0; j < n; ++j) below = below && k2[j] <= k1[j];
      if (!below) continue;
      out.push_back(Block{L.highest() - g.roots().to_weight(k1), k1, k1 - k2});
    }
  return out;
}

Toral block_toral(const QGroup& g, const Block& b) {
  const RootSystemB& R = g.roots();
  const RootVec low = R.to_rootvec(b.low);
  return Toral{low.coeffs(), negated((low + b.nu).coeffs())};
}

const WeightModule& checked_module(const QGroup& g, const Weight& lambda) {
  if (lambda.rank() != g.rank()) throw RankMismatch("central element: rank mismatch");
  if (!lambda.in_root_lattice()) throw NotInRootLattice("central element: weight must lie in the root lattice");
  return irreducible(g, lambda);
}

}  // namespace

CentralCandidate central_from_trace(const QGroup& g, const Weight& lambda) {
  const WeightModule& L = checked_module(g, lambda);
  const SkewPairing& P = SkewPairing::get(g.rank());
  const RootSystemB& R = g.roots();
  std::map<Word, Matrix> fm, em;
  auto act_f = [&](const Word& w) -> const Matrix& {
    auto it = fm.find(w);
    return it != fm.end() ? it->second : fm.emplace(w, act(g.f_word(w), L)).first->second;
  };
  auto act_e = [&](const Word& w) -> const Matrix& {
    auto it = em.find(w);
    return it != em.end() ? it->second : em.emplace(w, act(g.e_word(w), L)).first->second;
  };

  Element z = g.zero();
  for (const Block& b : blocks_of(g, L)) {
    std::vector<std::size_t> slot;
    for (std::size_t k = 0; k < L.dim(); ++k)
      if (L.content(k) == b.content) slot.push_back(k);
    const GradedBasis& fb = g.graded_basis(Side::F, b.nu);
    const GradedBasis& eb = g.graded_basis(Side::E, b.nu);
    const Matrix& inv = P.dual_basis(b.nu).inv;
    const std::size_t d = fb.dim();
    // tr(c, k) = trace over L_{lambda'} of f_{rep c} e_{rep k}
    Matrix tr(d, d);
    for (std::size_t c = 0; c < d; ++c)
      for (std::size_t k = 0; k < d; ++k) {
        const Matrix& F = act_f(fb.reps[c]);
        const Matrix& E = act_e(eb.reps[k]);
        Scalar sum;
        for (std::size_t a : slot)
          for (std::size_t m = 0; m < L.dim(); ++m)
            if (!F(a, m).is_zero() && !E(m, a).is_zero()) sum += F(a, m) * E(m, a);
        tr(c, k) = sum;
      }
    if (tr.is_zero()) continue;
    const Weight high = b.low + R.to_weight(b.nu);
    const Scalar K = theta_value(R, b.low) * g.gpair(b.nu.coeffs(), R.to_rootvec(high).coeffs()) *
                     P.s2_factor(b.nu).inverse();
    const Matrix coef = inv.transpose() * tr.transpose() * inv.transpose();
    const Toral t = block_toral(g, b);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t j = 0; j < d; ++j)
        if (!coef(a, j).is_zero()) z.add_term(TermKey{fb.reps[a], t, eb.reps[j]}, K * coef(a, j));
  }
  if (!is_central(g, z)) throw CentralityCheckFailed("central_from_trace: result is not central");
  return CentralCandidate{z, lambda, "trace"};
}

CentralAnsatz central_ansatz(const QGroup& g, const Weight& lambda) {
  const WeightModule& L = checked_module(g, lambda);
  const RootSystemB& R = g.roots();
  const auto mults = L.multiplicities();
  CentralAnsatz out;
  for (const Block& b : blocks_of(g, L)) {
    const Toral t = block_toral(g, b);
    const auto& fr = g.graded_basis(Side::F, b.nu).reps;
    const auto& er = g.graded_basis(Side::E, b.nu).reps;
    for (const Word& a : fr)
      for (const Word& e : er) out.monomials.push_back(TermKey{a, t, e});
    if (b.nu.is_zero())
      out.normalization[TermKey{{}, t, {}}] = theta_value(R, b.low) * Scalar(static_cast<long>(mults.at(b.low)));
  }
  return out;
}

Element solve_central(const QGroup& g, const CentralAnsatz& ansatz) {
  const std::size_t N = ansatz.monomials.size();
  if (N == 0) throw NoSolution("solve_central: empty ansatz");
  std::map<TermKey, std::size_t> index;
  for (std::size_t k = 0; k < N; ++k) index.emplace(ansatz.monomials[k], k);
  LinearSystem sys(N);
  for (const auto& [key, value] : ansatz.normalization) {
    auto it = index.find(key);
    if (it == index.end()) throw NoSolution("solve_central: normalized monomial outside the ansatz");
    sys.add({{it->second, Scalar(1)}}, value);
  }
  for (int i = 1; i <= g.rank(); ++i)
    for (const Element& gen : {g.e(i), g.f(i)}) {
      std::map<TermKey, LinearSystem::Row> rows;
      for (std::size_t k = 0; k < N; ++k) {
        const TermKey& m = ansatz.monomials[k];
        const Element img = g.ad(gen, g.term(m.f, m.t, m.e));
        for (const auto& [key, c] : img.terms()) rows[key][k] += c;
      }
      for (auto& [key, row] : rows) {
        std::erase_if(row, [](const auto& kv) { return kv.second.is_zero(); });
        if (!row.empty()) sys.add(std::move(row), Scalar());
      }
    }
  if (!sys.consistent()) throw NoSolution("solve_central: centrality equations are inconsistent");
  auto sol = sys.unique_solution();
  if (!sol) throw NonUniqueSolution("solve_central: solution space has dimension " + std::to_string(N - sys.rank()));
  Element z = g.zero();
  for (std::size_t k = 0; k < N; ++k) z.add_term(ansatz.monomials[k], (*sol)[k]);
  return z;
}

CentralCandidate central_by_solve(const QGroup& g, const Weight& lambda) {
  return CentralCandidate{solve_central(g, central_ansatz(g, lambda)), lambda, "solve"};
}

// ---------------------------------------------------------------- parity kernel

namespace {

std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t p = rank;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      const Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::vector<std::pair<std::vector<int>, std::vector<int>>> parity_kernel(int n, int bound, KernelMode mode) {
  if (bound < 1) throw IndexOutOfRange("parity_kernel: bound must be positive");
  const QGroup& g = QGroup::get(n);
  const RootSystemB& R = g.roots();
  const std::size_t m = static_cast<std::size_t>(2 * n);
  // Each row is a linear form in (eta, phi) that must vanish.
  std::vector<std::vector<Rational>> rows;
  for (int j = 1; j <= n; ++j) {
    const std::vector<Rational> lam = R.alpha_coords(R.fundamental_weight(j));
    std::vector<Rational> rx(m), sx(m);
    for (int k = 0; k < n; ++k) {
      std::vector<Rational> unit(static_cast<std::size_t>(n), 0);
      unit[static_cast<std::size_t>(k)] = 1;
      const auto [ex, ey] = g.gpair_exponents(unit, lam);  // from eta: <w'_eta, w_lambda>^{-1}
      const auto [fx, fy] = g.gpair_exponents(lam, unit);  // from phi: <w'_lambda, w_phi>
      rx[static_cast<std::size_t>(k)] = -ex;
      sx[static_cast<std::size_t>(k)] = -ey;
      rx[static_cast<std::size_t>(n + k)] = fx;
      sx[static_cast<std::size_t>(n + k)] = fy;
    }
    rows.push_back(rx);
    rows.push_back(sx);
    if (mode == KernelMode::Full) {
      std::vector<Rational> mx(m);
      for (int k = 0; k < n; ++k) {
        const Rational v = R.inner(R.simple_root(k + 1), R.fundamental_weight(j));
        mx[static_cast<std::size_t>(k)] = v;
        mx[static_cast<std::size_t>(n + k)] = v;
      }
      rows.push_back(mx);
    }
  }
  std::vector<std::pair<std::vector<int>, std::vector<int>>> out;
  if (rational_rank(rows) == m) return out;

  // Scale rows to integers and scan the box.
  std::vector<std::vector<long>> irows;
  for (const auto& row : rows) {
    Integer l = 1;
    for (const auto& x : row) l = lcm(l, Integer(x.get_den()));
    std::vector<long> ir;
    for (const auto& x : row) ir.push_back(Rational(x * l).get_num().get_si());
    irows.push_back(ir);
  }
  std::vector<int> x(m, -bound);
  while (true) {
    bool nonzero = false, ok = true;
    for (int v : x) nonzero = nonzero || v != 0;
    for (const auto& row : irows) {
      long s = 0;
      for (std::size_t k = 0; k < m; ++k) s += row[k] * x[k];
      if (s != 0) {
        ok = false;
        break;
      }
    }
    if (nonzero && ok)
      out.emplace_back(std::vector<int>(x.begin(), x.begin() + n), std::vector<int>(x.begin() + n, x.end()));
    std::size_t p = m;
    while (p > 0 && x[p - 1] == bound) x[--p] = -bound;
    if (p == 0) break;
    ++x[p - 1];
  }
  return out;
}

}  // namespace qgc
