#include "qgc/pairing.hpp"

#include <mutex>

#include "qgc/errors.hpp"

namespace qgc {

namespace {

std::vector<int> unit(int n, int i) {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  v[static_cast<std::size_t>(i - 1)] = 1;
  return v;
}

bool all_zero(const std::vector<int>& v) {
  for (int x : v)
    if (x) return false;
  return true;
}

}  // namespace

const SkewPairing& SkewPairing::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<SkewPairing>> all;
  std::lock_guard lock(mu);
  auto& slot = all[n];
  if (!slot) slot = std::make_unique<SkewPairing>(QGroup::get(n));
  return *slot;
}

Scalar SkewPairing::pair_words(const Word& f, const Word& e) const {
  if (f.size() != e.size()) return Scalar();
  if (e.empty()) return 1;
  if (g_.content(f) != g_.content(e)) return Scalar();
  const std::pair<Word, Word> key{f, e};
  {
    std::shared_lock lock(mu_);
    auto it = words_.find(key);
    if (it != words_.end()) return it->second;
  }
  const int n = g_.rank();
  const int i = e.front();
  const Word tail(e.begin() + 1, e.end());
  const std::vector<int> ai = unit(n, i);
  const Scalar lead = (g_.s_i(i) - g_.r_i(i)).inverse();
  Scalar total;
  Scalar prefix = 1;
  for (std::size_t p = 0; p < f.size(); ++p) {
    if (f[p] == i) {
      Word rest = f;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
      total += lead * prefix * pair_words(rest, tail);
    }
    prefix *= g_.gpair(unit(n, f[p]), ai);
  }
  std::unique_lock lock(mu_);
  words_.emplace(key, total);
  return total;
}

Scalar SkewPairing::skew_pair(const Element& y, const Element& x) const {
  for (const auto& [k, c] : y.terms())
    if (!k.e.empty() || !all_zero(k.t.phi)) throw WrongSide("skew_pair: first argument must lie in B'");
  for (const auto& [k, c] : x.terms())
    if (!k.f.empty() || !all_zero(k.t.eta)) throw WrongSide("skew_pair: second argument must lie in B");
  Scalar out;
  for (const auto& [ky, cy] : y.terms()) {
    for (const auto& [kx, cx] : x.terms()) {
      const Scalar w = pair_words(ky.f, kx.e);
      if (w.is_zero()) continue;
      std::vector<int> arg = ky.t.eta;
      const RootVec nu = g_.content(ky.f);
      for (int j = 0; j < g_.rank(); ++j) arg[static_cast<std::size_t>(j)] += nu[j];
      out += cy * cx * w * g_.gpair(arg, kx.t.phi);
    }
  }
  return out;
}

const Matrix& SkewPairing::gram(const RootVec& nu) const {
  {
    std::shared_lock lock(mu_);
    auto it = grams_.find(nu);
    if (it != grams_.end()) return *it->second;
  }
  const GradedBasis& fb = g_.graded_basis(Side::F, nu);
  const GradedBasis& eb = g_.graded_basis(Side::E, nu);
  auto m = std::make_shared<Matrix>(fb.dim(), eb.dim());
  for (std::size_t a = 0; a < fb.dim(); ++a)
    for (std::size_t b = 0; b < eb.dim(); ++b) (*m)(a, b) = pair_words(fb.reps[a], eb.reps[b]);
  std::unique_lock lock(mu_);
  auto [it, fresh] = grams_.emplace(nu, std::move(m));
  return *it->second;
}

const DualBasis& SkewPairing::dual_basis(const RootVec& nu) const {
  {
    std::shared_lock lock(mu_);
    auto it = duals_.find(nu);
    if (it != duals_.end()) return *it->second;
  }
  const Matrix& gm = gram(nu);
  auto inv = inverse(gm);
  if (!inv) throw SingularGram("Gram matrix is singular in degree " + nu.to_string());
  const GradedBasis& fb = g_.graded_basis(Side::F, nu);
  const GradedBasis& eb = g_.graded_basis(Side::E, nu);
  auto d = std::make_shared<DualBasis>();
  d->nu = nu;
  d->inv = *inv;
  for (const Word& w : eb.reps) d->u.push_back(g_.e_word(w));
  for (std::size_t i = 0; i < fb.dim(); ++i) {
    Element v = g_.zero();
    for (std::size_t a = 0; a < fb.dim(); ++a)
      if (!(*inv)(i, a).is_zero()) v += (*inv)(i, a) * g_.f_word(fb.reps[a]);
    d->v.push_back(std::move(v));
  }
  std::unique_lock lock(mu_);
  auto [it, fresh] = duals_.emplace(nu, std::move(d));
  return *it->second;
}

Scalar SkewPairing::s2_factor(const RootVec& nu) const {
  const Rational k = g_.roots().inner(g_.roots().rho(), g_.roots().to_weight(nu)) * 2;
  return Scalar::rs_power(k, -k);
}

Scalar SkewPairing::rosso(const Element& x, const Element& y) const {
  // <F_a w'_mu w_nu E_b, F_t w'_sig w_del E_g>_U = <F_t w'_sig, w_nu E_b> <S^2(F_a w'_mu), w_del E_g>
  const int n = g_.rank();
  Scalar out;
  for (const auto& [a, ca] : x.terms()) {
    for (const auto& [b, cb] : y.terms()) {
      const Scalar p1 = pair_words(b.f, a.e);
      if (p1.is_zero()) continue;
      const Scalar p2 = pair_words(a.f, b.e);
      if (p2.is_zero()) continue;
      const RootVec nt = g_.content(b.f), na = g_.content(a.f);
      std::vector<int> left = b.t.eta, right = a.t.eta;
      for (int j = 0; j < n; ++j) {
        left[static_cast<std::size_t>(j)] += nt[j];
        right[static_cast<std::size_t>(j)] += na[j];
      }
      out += ca * cb * g_.gpair(left, a.t.phi) * g_.gpair(right, b.t.phi) * p1 * p2 * s2_factor(na);
    }
  }
  return out;
}

bool SkewPairing::check_ad_invariance(const Element& a, const Element& b, const Element& c) const {
  return rosso(g_.ad(a, b), c) == rosso(b, g_.ad(g_.antipode(a), c));
}

Scalar SkewPairing::chi(const std::vector<int>& eta, const std::vector<int>& phi, const std::vector<int>& eta1,
                        const std::vector<int>& phi1) const {
  return g_.gpair(eta, phi1) * g_.gpair(eta1, phi);
}

}  // namespace qgc
