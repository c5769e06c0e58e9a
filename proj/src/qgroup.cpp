#include "qgc/qgroup.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

#include "qgc/errors.hpp"
#include "qgc/linalg.hpp"

namespace qgc {

namespace {

constexpr int kBasisCacheVersion = 1;

std::vector<Rational> to_rational(const std::vector<int>& v) {
  std::vector<Rational> out;
  out.reserve(v.size());
  for (int x : v) out.emplace_back(x);
  return out;
}

Scalar rs_int(long a, long b) { return Scalar(LaurentBi::monomial(static_cast<int>(2 * a), static_cast<int>(2 * b))); }

std::vector<int> unit(int n, int i, int k = 1) {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  v[static_cast<std::size_t>(i - 1)] = k;
  return v;
}

std::vector<int> negated(std::vector<int> v) {
  for (int& x : v) x = -x;
  return v;
}

Word concat(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return w;
}

// All words with the given letter multiplicities, ascending lex.
void words_rec(std::vector<int>& left, int remaining, Word& cur, std::vector<Word>& out) {
  if (remaining == 0) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (left[i] == 0) continue;
    --left[i];
    cur.push_back(static_cast<int>(i) + 1);
    words_rec(left, remaining - 1, cur, out);
    cur.pop_back();
    ++left[i];
  }
}

std::vector<Word> words_of_content(const RootVec& nu) {
  std::vector<int> left = nu.coeffs();
  std::vector<Word> out;
  Word cur;
  words_rec(left, nu.height(), cur, out);
  return out;
}

// (epsilon_j, alpha_i) for B_n.
int eps_dot(int n, int j, int i) {
  if (i == n) return j == n ? 1 : 0;
  return (j == i ? 1 : 0) - (j == i + 1 ? 1 : 0);
}

std::string side_name(Side s) { return s == Side::E ? "E" : "F"; }

std::string key_string(const TermKey& k) {
  std::string out;
  if (!k.f.empty()) out += " F" + word_to_string(k.f);
  if (!k.t.is_identity()) out += " W'" + word_to_string(k.t.eta) + " W" + word_to_string(k.t.phi);
  if (!k.e.empty()) out += " E" + word_to_string(k.e);
  return out;
}

}  // namespace

// ---------------------------------------------------------------- Toral

bool Toral::is_identity() const {
  return std::all_of(eta.begin(), eta.end(), [](int x) { return x == 0; }) &&
         std::all_of(phi.begin(), phi.end(), [](int x) { return x == 0; });
}

Toral Toral::operator*(const Toral& o) const {
  Toral t = *this;
  for (std::size_t i = 0; i < t.eta.size(); ++i) {
    t.eta[i] += o.eta[i];
    t.phi[i] += o.phi[i];
  }
  return t;
}

Toral Toral::inverse() const { return {negated(eta), negated(phi)}; }

bool Toral::balanced() const {
  for (std::size_t i = 0; i < eta.size(); ++i)
    if (phi[i] != -eta[i]) return false;
  return true;
}

std::string word_to_string(const Word& w) {
  std::string s = "[";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(w[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------- Element

Element::Element(const QGroup& g, Map terms) : g_(&g) {
  for (auto& [k, c] : terms)
    if (!c.is_zero()) terms_.emplace(k, std::move(c));
}

Scalar Element::coeff(const TermKey& k) const {
  auto it = terms_.find(k);
  return it == terms_.end() ? Scalar() : it->second;
}

void Element::add_term(const TermKey& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Element Element::operator-() const {
  Element out = *this;
  for (auto& [k, c] : out.terms_) c = -c;
  return out;
}

Element& Element::operator+=(const Element& o) {
  if (!g_) g_ = o.g_;
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Element& Element::operator-=(const Element& o) {
  if (!g_) g_ = o.g_;
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

Element& Element::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

Element operator*(const Element& a, const Element& b) {
  const QGroup* g = a.g_ ? a.g_ : b.g_;
  if (!g) return Element();
  return g->mul(a, b);
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    if (!first) out += " + ";
    first = false;
    out += "(" + c.to_string() + ")" + key_string(k);
  }
  return out;
}

nlohmann::json Element::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [k, c] : terms_)
    arr.push_back({{"f", k.f}, {"eta", k.t.eta}, {"phi", k.t.phi}, {"e", k.e}, {"coeff", c.to_json()}});
  return arr;
}

Element Element::from_json(const QGroup& g, const nlohmann::json& j) {
  Element out = g.zero();
  for (const auto& t : j) {
    Toral tor{t.at("eta").get<std::vector<int>>(), t.at("phi").get<std::vector<int>>()};
    out += g.term(t.at("f").get<Word>(), tor, t.at("e").get<Word>(), Scalar::from_json(t.at("coeff")));
  }
  return out;
}

// ---------------------------------------------------------------- Tensor

void Tensor::add_term(const Key& key, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.try_emplace(key, c);
  if (!fresh) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void Tensor::add_product(const std::vector<const Element*>& factors, const Scalar& c) {
  if (factors.size() != legs_) throw RankMismatch("tensor leg count mismatch");
  Key key(legs_);
  auto rec = [&](auto&& self, std::size_t leg, const Scalar& acc) -> void {
    if (leg == legs_) {
      add_term(key, acc);
      return;
    }
    for (const auto& [k, v] : factors[leg]->terms()) {
      key[leg] = k;
      self(self, leg + 1, acc * v);
    }
  };
  rec(rec, 0, c);
}

Tensor& Tensor::operator+=(const Tensor& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, c);
  return *this;
}

Tensor& Tensor::operator-=(const Tensor& o) {
  for (const auto& [k, c] : o.terms_) add_term(k, -c);
  return *this;
}

std::string Tensor::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [key, c] : terms_) {
    if (!out.empty()) out += " + ";
    out += "(" + c.to_string() + ")";
    for (std::size_t i = 0; i < key.size(); ++i) {
      const std::string leg = key_string(key[i]);
      out += (i ? " (x)" : "") + (leg.empty() ? std::string(" 1") : leg);
    }
  }
  return out;
}

// ---------------------------------------------------------------- GradedBasis

nlohmann::json GradedBasis::to_json() const {
  nlohmann::json red = nlohmann::json::array();
  for (const auto& [w, comb] : reduction) {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& [idx, c] : comb) cs.push_back({idx, c.to_json()});
    red.push_back({{"word", w}, {"expansion", cs}});
  }
  return {{"version", kBasisCacheVersion}, {"side", side_name(side)}, {"nu", nu.coeffs()},
          {"words", words},           {"reps", reps},             {"reduction", red}};
}

GradedBasis GradedBasis::from_json(const nlohmann::json& j) {
  if (j.at("version").get<int>() != kBasisCacheVersion) throw Error("CacheVersion", "graded basis cache version mismatch");
  GradedBasis b;
  b.side = j.at("side").get<std::string>() == "E" ? Side::E : Side::F;
  b.nu = RootVec(j.at("nu").get<std::vector<int>>());
  b.words = j.at("words").get<std::vector<Word>>();
  b.reps = j.at("reps").get<std::vector<Word>>();
  for (const auto& r : j.at("reduction")) {
    std::vector<std::pair<std::size_t, Scalar>> comb;
    for (const auto& c : r.at("expansion")) comb.emplace_back(c.at(0).get<std::size_t>(), Scalar::from_json(c.at(1)));
    b.reduction.emplace(r.at("word").get<Word>(), std::move(comb));
  }
  return b;
}

// ---------------------------------------------------------------- QGroup

const QGroup& QGroup::get(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<QGroup>> groups;
  std::lock_guard lock(mu);
  auto& slot = groups[n];
  if (!slot) slot = std::make_unique<QGroup>(n);
  return *slot;
}

QGroup::QGroup(int n) : n_(n), roots_(n) {
  g_.assign(static_cast<std::size_t>(n + 1), std::vector<std::pair<int, int>>(static_cast<std::size_t>(n + 1)));
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      std::pair<int, int> e;
      if (j < n)
        e = {2 * eps_dot(n, j, i), 2 * eps_dot(n, j + 1, i)};
      else if (i < n)
        e = {2 * eps_dot(n, n, i), 0};
      else
        e = {1, -1};
      g_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e;
    }
  }

  const Scalar r = Scalar::r(), s = Scalar::s();
  for (int i = 1; i < n; ++i) {
    const Scalar ri = r_i(i), si = s_i(i);
    serre_e_.push_back({"serre e" + std::to_string(i) + "^2 e" + std::to_string(i + 1), Side::E,
                        {{{i, i, i + 1}, 1}, {{i, i + 1, i}, -(ri + si)}, {{i + 1, i, i}, ri * si}}});
    serre_f_.push_back({"serre f" + std::to_string(i + 1) + " f" + std::to_string(i) + "^2", Side::F,
                        {{{i + 1, i, i}, 1}, {{i, i + 1, i}, -(ri + si)}, {{i, i, i + 1}, ri * si}}});
  }
  for (int j = 1; j < n - 1; ++j) {
    const Scalar a = r_i(j + 1).inverse(), b = s_i(j + 1).inverse();
    serre_e_.push_back({"serre e" + std::to_string(j + 1) + "^2 e" + std::to_string(j), Side::E,
                        {{{j + 1, j + 1, j}, 1}, {{j + 1, j, j + 1}, -(a + b)}, {{j, j + 1, j + 1}, a * b}}});
    serre_f_.push_back({"serre f" + std::to_string(j) + " f" + std::to_string(j + 1) + "^2", Side::F,
                        {{{j, j + 1, j + 1}, 1}, {{j + 1, j, j + 1}, -(a + b)}, {{j + 1, j + 1, j}, a * b}}});
  }
  if (n >= 2) {
    const Scalar ri = r.inverse(), si = s.inverse();
    const Scalar q = ri * ri + ri * si + si * si;
    const Scalar c3 = (ri * si).pow(3);
    const int m = n - 1;
    serre_e_.push_back({"serre e" + std::to_string(n) + "^3 e" + std::to_string(m), Side::E,
                        {{{n, n, n, m}, 1}, {{n, n, m, n}, -q}, {{n, m, n, n}, ri * si * q}, {{m, n, n, n}, -c3}}});
    serre_f_.push_back({"serre f" + std::to_string(m) + " f" + std::to_string(n) + "^3", Side::F,
                        {{{m, n, n, n}, 1}, {{n, m, n, n}, -q}, {{n, n, m, n}, ri * si * q}, {{n, n, n, m}, -c3}}});
  }
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 2; j <= n; ++j) {
      const std::string tag = std::to_string(i) + "," + std::to_string(j);
      serre_e_.push_back({"serre [e" + tag + "]", Side::E, {{{i, j}, 1}, {{j, i}, -1}}});
      serre_f_.push_back({"serre [f" + tag + "]", Side::F, {{{i, j}, 1}, {{j, i}, -1}}});
    }
  }
}

Scalar QGroup::r_i(int i) const { return i < n_ ? Scalar::r().pow(2) : Scalar::r(); }
Scalar QGroup::s_i(int i) const { return i < n_ ? Scalar::s().pow(2) : Scalar::s(); }

Scalar QGroup::qint(int m, int i) const {
  if (m < 0) throw IndexOutOfRange("qint: negative argument");
  if (i < 1 || i > n_) throw IndexOutOfRange("qint: index out of range");
  // (r_i^m - s_i^m)/(r_i - s_i) = sum_k r_i^k s_i^{m-1-k}
  const int w = i < n_ ? 2 : 1;
  Scalar out;
  for (int k = 0; k < m; ++k) out += rs_int(w * k, w * (m - 1 - k));
  return out;
}

std::pair<Rational, Rational> QGroup::gpair_exponents(const std::vector<Rational>& eta,
                                                      const std::vector<Rational>& phi) const {
  if (static_cast<int>(eta.size()) != n_ || static_cast<int>(phi.size()) != n_)
    throw RankMismatch("gpair: argument rank mismatch");
  Rational x = 0, y = 0;
  for (int i = 1; i <= n_; ++i) {
    const Rational& a = eta[static_cast<std::size_t>(i - 1)];
    if (a == 0) continue;
    for (int j = 1; j <= n_; ++j) {
      const Rational& b = phi[static_cast<std::size_t>(j - 1)];
      if (b == 0) continue;
      const auto [gx, gy] = g_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      x += a * b * gx;
      y += a * b * gy;
    }
  }
  return {x, y};
}

Scalar QGroup::gpair(const std::vector<Rational>& eta, const std::vector<Rational>& phi) const {
  for (const auto& c : phi)
    if (c.get_den() != 1) throw NonIntegralSecondArgument("gpair: second argument must lie in the root lattice");
  const auto [x, y] = gpair_exponents(eta, phi);
  return Scalar::rs_power(x, y);
}

Scalar QGroup::gpair(const std::vector<int>& eta, const std::vector<int>& phi) const {
  return gpair(to_rational(eta), to_rational(phi));
}

Scalar QGroup::rho_char(const std::vector<Rational>& lambda, const Toral& t) const {
  const auto [x1, y1] = gpair_exponents(to_rational(t.eta), lambda);
  const auto [x2, y2] = gpair_exponents(lambda, to_rational(t.phi));
  return Scalar::rs_power(x2 - x1, y2 - y1);
}

Scalar QGroup::rho_char(const std::vector<int>& lambda, const Toral& t) const {
  if (static_cast<int>(lambda.size()) != n_ || static_cast<int>(t.eta.size()) != n_ ||
      static_cast<int>(t.phi.size()) != n_)
    throw RankMismatch("rho_char: rank mismatch");
  long x = 0, y = 0;
  for (int i = 1; i <= n_; ++i) {
    for (int j = 1; j <= n_; ++j) {
      const auto [gx, gy] = g_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const long c = static_cast<long>(lambda[static_cast<std::size_t>(i - 1)]) * t.phi[static_cast<std::size_t>(j - 1)] -
                     static_cast<long>(t.eta[static_cast<std::size_t>(i - 1)]) * lambda[static_cast<std::size_t>(j - 1)];
      x += c * gx;
      y += c * gy;
    }
  }
  return rs_int(x, y);
}

Element QGroup::one() const { return scalar(1); }

Element QGroup::scalar(const Scalar& c) const {
  Element out(*this);
  out.add_term({{}, Toral::identity(n_), {}}, c);
  return out;
}

Element QGroup::e(int i) const {
  if (i < 1 || i > n_) throw IndexOutOfRange("generator index out of range");
  Element out(*this);
  out.add_term({{}, Toral::identity(n_), {i}}, 1);
  return out;
}

Element QGroup::f(int i) const {
  if (i < 1 || i > n_) throw IndexOutOfRange("generator index out of range");
  Element out(*this);
  out.add_term({{i}, Toral::identity(n_), {}}, 1);
  return out;
}

Element QGroup::omega(int i, int k) const {
  if (i < 1 || i > n_) throw IndexOutOfRange("generator index out of range");
  return toral(Toral{std::vector<int>(static_cast<std::size_t>(n_)), unit(n_, i, k)});
}

Element QGroup::omega_p(int i, int k) const {
  if (i < 1 || i > n_) throw IndexOutOfRange("generator index out of range");
  return toral(Toral{unit(n_, i, k), std::vector<int>(static_cast<std::size_t>(n_))});
}

Element QGroup::toral(const Toral& t) const {
  if (static_cast<int>(t.eta.size()) != n_ || static_cast<int>(t.phi.size()) != n_)
    throw RankMismatch("toral: rank mismatch");
  Element out(*this);
  out.add_term({{}, t, {}}, 1);
  return out;
}

Element QGroup::toral(const std::vector<int>& eta, const std::vector<int>& phi) const { return toral(Toral{eta, phi}); }

Element QGroup::e_word(const Word& w) const { return term({}, Toral::identity(n_), w); }
Element QGroup::f_word(const Word& w) const { return term(w, Toral::identity(n_), {}); }

Element QGroup::term(const Word& f, const Toral& t, const Word& e, const Scalar& c) const {
  if (static_cast<int>(t.eta.size()) != n_ || static_cast<int>(t.phi.size()) != n_)
    throw RankMismatch("term: rank mismatch");
  Element out(*this);
  if (c.is_zero()) return out;
  const auto fr = reduce_word(Side::F, f);
  const auto er = reduce_word(Side::E, e);
  for (const auto& [fw, fc] : fr)
    for (const auto& [ew, ec] : er) out.add_term({fw, t, ew}, c * fc * ec);
  return out;
}

RootVec QGroup::content(const Word& w) const {
  std::vector<int> c(static_cast<std::size_t>(n_), 0);
  for (int x : w) {
    if (x < 1 || x > n_) throw IndexOutOfRange("letter out of range");
    ++c[static_cast<std::size_t>(x - 1)];
  }
  return RootVec(std::move(c));
}

Toral QGroup::toral_of_root(const RootVec& v, bool primed) const {
  Toral t = Toral::identity(n_);
  (primed ? t.eta : t.phi) = v.coeffs();
  return t;
}

const std::vector<Relator>& QGroup::serre_relators(Side side) const {
  return side == Side::E ? serre_e_ : serre_f_;
}

// ---------------------------------------------------------------- graded bases

GradedBasis QGroup::build_graded_basis(Side side, const RootVec& nu) const {
  GradedBasis b;
  b.side = side;
  b.nu = nu;
  b.words = words_of_content(nu);
  const std::size_t total = b.words.size();
  std::map<Word, std::size_t> col;  // greatest word -> column 0
  for (std::size_t k = 0; k < total; ++k) col[b.words[k]] = total - 1 - k;

  LinearSystem sys(total);
  for (const Relator& rel : serre_relators(side)) {
    const RootVec sigma = content(rel.terms.front().first);
    const RootVec rest = nu - sigma;
    if (!rest.in_positive_cone()) continue;
    for (const Word& m : words_of_content(rest)) {
      for (std::size_t cut = 0; cut <= m.size(); ++cut) {
        LinearSystem::Row row;
        for (const auto& [w, c] : rel.terms) {
          Word full(m.begin(), m.begin() + static_cast<std::ptrdiff_t>(cut));
          full.insert(full.end(), w.begin(), w.end());
          full.insert(full.end(), m.begin() + static_cast<std::ptrdiff_t>(cut), m.end());
          row[col.at(full)] += c;
        }
        sys.add(std::move(row), Scalar());
      }
    }
  }

  const auto& rows = sys.pivot_rows();
  std::map<std::size_t, std::size_t> rep_index;  // column -> rep index
  for (const Word& w : b.words) {
    const std::size_t c = col.at(w);
    if (!rows.count(c)) {
      rep_index[c] = b.reps.size();
      b.reps.push_back(w);
    }
  }
  for (const Word& w : b.words) {
    const std::size_t c = col.at(w);
    std::vector<std::pair<std::size_t, Scalar>> comb;
    auto it = rows.find(c);
    if (it == rows.end()) {
      comb.emplace_back(rep_index.at(c), Scalar(1));
    } else {
      for (const auto& [j, v] : it->second.coeffs)
        if (j != c) comb.emplace_back(rep_index.at(j), -v);
      std::sort(comb.begin(), comb.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    }
    b.reduction.emplace(w, std::move(comb));
  }
  return b;
}

const GradedBasis& QGroup::graded_basis(Side side, const RootVec& nu) const {
  if (nu.rank() != n_) throw RankMismatch("graded_basis: rank mismatch");
  if (!nu.in_positive_cone()) throw NotInPositiveCone("graded_basis: degree must lie in Q+");
  const std::pair<int, RootVec> key{side == Side::E ? 0 : 1, nu};
  {
    std::shared_lock lock(basis_mu_);
    auto it = bases_.find(key);
    if (it != bases_.end()) return *it->second;
  }

  std::shared_ptr<const GradedBasis> built;
  namespace fs = std::filesystem;
  fs::path file;
  if (const char* dir = std::getenv("QGC_CACHE_DIR"); dir && *dir) {
    std::string name = "gb-v" + std::to_string(kBasisCacheVersion) + "-n" + std::to_string(n_) + "-" + side_name(side);
    for (int c : nu.coeffs()) name += "-" + std::to_string(c);
    file = fs::path(dir) / (name + ".json");
    std::ifstream in(file);
    if (in) {
      try {
        auto gb = GradedBasis::from_json(nlohmann::json::parse(in));
        if (gb.nu == nu && gb.side == side) built = std::make_shared<const GradedBasis>(std::move(gb));
      } catch (const std::exception&) {
        built.reset();
      }
    }
  }
  if (!built) {
    built = std::make_shared<const GradedBasis>(build_graded_basis(side, nu));
    if (!file.empty()) {
      std::error_code ec;
      fs::create_directories(file.parent_path(), ec);
      std::ostringstream tag;
      tag << file.string() << ".tmp" << std::hash<std::thread::id>{}(std::this_thread::get_id());
      const fs::path tmp = tag.str();
      {
        std::ofstream out(tmp);
        out << built->to_json().dump();
      }
      fs::rename(tmp, file, ec);
      if (ec) fs::remove(tmp, ec);
    }
  }
  std::unique_lock lock(basis_mu_);
  auto [it, fresh] = bases_.emplace(key, built);
  return *it->second;
}

std::vector<std::pair<Word, Scalar>> QGroup::reduce_word(Side side, const Word& w) const {
  if (w.size() <= 1) {
    if (!w.empty() && (w[0] < 1 || w[0] > n_)) throw IndexOutOfRange("letter out of range");
    return {{w, Scalar(1)}};
  }
  const GradedBasis& b = graded_basis(side, content(w));
  std::vector<std::pair<Word, Scalar>> out;
  for (const auto& [idx, c] : b.reduction.at(w)) out.emplace_back(b.reps[idx], c);
  return out;
}

// ---------------------------------------------------------------- products

Element QGroup::apply_ei_left(int i, const Element& x) const {
  Element out(*this);
  const std::vector<int> ai = unit(n_, i);
  const Scalar denom_inv = (r_i(i) - s_i(i)).inverse();
  const Toral w{std::vector<int>(static_cast<std::size_t>(n_)), ai};
  const Toral wp{ai, std::vector<int>(static_cast<std::size_t>(n_))};
  for (const auto& [k, c] : x.terms()) {
    // f_K e_i T E
    const Scalar ca = c * rho_char(ai, k.t).inverse();
    for (const auto& [ew, ec] : reduce_word(Side::E, concat({i}, k.e))) out.add_term({k.f, k.t, ew}, ca * ec);
    // commutator terms
    std::vector<int> tail(static_cast<std::size_t>(n_), 0);
    for (std::size_t p = k.f.size(); p-- > 0;) {
      if (k.f[p] == i) {
        const std::vector<int> neg = negated(tail);
        const Scalar cw = c * denom_inv * rho_char(neg, w);
        const Scalar cwp = -c * denom_inv * rho_char(neg, wp);
        Word rest = k.f;
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
        const Toral tw = w * k.t, twp = wp * k.t;
        for (const auto& [fw, fc] : reduce_word(Side::F, rest)) {
          out.add_term({fw, tw, k.e}, cw * fc);
          out.add_term({fw, twp, k.e}, cwp * fc);
        }
      }
      ++tail[static_cast<std::size_t>(k.f[p] - 1)];
    }
  }
  return out;
}

const Element& QGroup::straighten(const Word& e, const Word& f) const {
  const std::pair<Word, Word> key{e, f};
  {
    std::shared_lock lock(straight_mu_);
    auto it = straight_.find(key);
    if (it != straight_.end()) return *it->second;
  }
  Element value(*this);
  if (e.empty() || f.empty()) {
    value = term(f, Toral::identity(n_), e);
  } else {
    const Word tail(e.begin() + 1, e.end());
    value = apply_ei_left(e.front(), straighten(tail, f));
  }
  auto ptr = std::make_shared<const Element>(std::move(value));
  std::unique_lock lock(straight_mu_);
  auto [it, fresh] = straight_.emplace(key, std::move(ptr));
  return *it->second;
}

void QGroup::mul_terms(const TermKey& a, const Scalar& ca, const TermKey& b, const Scalar& cb, Element& out) const {
  const Scalar c0 = ca * cb;
  if (a.e.empty() && b.f.empty()) {
    if (b.e.empty()) {
      out.add_term({a.f, a.t * b.t, {}}, c0);
      return;
    }
    if (a.f.empty()) {
      out.add_term({{}, a.t * b.t, b.e}, c0);
      return;
    }
  }
  const Element& mid = straighten(a.e, b.f);
  for (const auto& [k, c] : mid.terms()) {
    const Scalar coef = c0 * c * rho_char(negated(content(k.f).coeffs()), a.t) *
                        rho_char(content(k.e).coeffs(), b.t).inverse();
    const Toral t = a.t * k.t * b.t;
    const auto fr = k.f.empty() ? std::vector<std::pair<Word, Scalar>>{{a.f, Scalar(1)}}
                                : reduce_word(Side::F, concat(a.f, k.f));
    const auto er = k.e.empty() ? std::vector<std::pair<Word, Scalar>>{{b.e, Scalar(1)}}
                                : reduce_word(Side::E, concat(k.e, b.e));
    for (const auto& [fw, fc] : fr)
      for (const auto& [ew, ec] : er) out.add_term({fw, t, ew}, coef * fc * ec);
  }
}

Element QGroup::mul(const Element& a, const Element& b) const {
  Element out(*this);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) mul_terms(ka, ca, kb, cb, out);
  return out;
}

// ---------------------------------------------------------------- Hopf maps

Tensor QGroup::comultiply_term(const TermKey& k) const {
  Tensor out(*this, 2);
  const std::size_t mf = k.f.size(), me = k.e.size();
  std::vector<std::vector<Scalar>> fc(mf, std::vector<Scalar>(mf)), ec(me, std::vector<Scalar>(me));
  for (std::size_t p = 0; p < mf; ++p)
    for (std::size_t q = p + 1; q < mf; ++q)
      fc[p][q] = rho_char(negated(unit(n_, k.f[q])), Toral{unit(n_, k.f[p]), std::vector<int>(static_cast<std::size_t>(n_))});
  for (std::size_t p = 0; p < me; ++p)
    for (std::size_t q = 0; q < p; ++q)
      ec[p][q] = rho_char(unit(n_, k.e[q]), Toral{std::vector<int>(static_cast<std::size_t>(n_)), unit(n_, k.e[p])}).inverse();

  for (std::size_t ma = 0; ma < (std::size_t{1} << mf); ++ma) {
    Word left_f, right_f;
    Toral tA = Toral::identity(n_);
    Scalar cf = 1;
    for (std::size_t p = 0; p < mf; ++p) {
      if (ma >> p & 1) {
        left_f.push_back(k.f[p]);
        ++tA.eta[static_cast<std::size_t>(k.f[p] - 1)];
        for (std::size_t q = p + 1; q < mf; ++q)
          if (!(ma >> q & 1)) cf *= fc[p][q];
      } else {
        right_f.push_back(k.f[p]);
      }
    }
    for (std::size_t mb = 0; mb < (std::size_t{1} << me); ++mb) {
      Word left_e, right_e;
      Toral tB = Toral::identity(n_);
      Scalar ce = cf;
      for (std::size_t p = 0; p < me; ++p) {
        if (mb >> p & 1) {
          right_e.push_back(k.e[p]);
          ++tB.phi[static_cast<std::size_t>(k.e[p] - 1)];
          for (std::size_t q = 0; q < p; ++q)
            if (!(mb >> q & 1)) ce *= ec[p][q];
        } else {
          left_e.push_back(k.e[p]);
        }
      }
      const Element l = term(left_f, k.t * tB, left_e);
      const Element r = term(right_f, tA * k.t, right_e);
      out.add_product({&l, &r}, ce);
    }
  }
  return out;
}

Tensor QGroup::comultiply(const Element& x) const {
  Tensor out(*this, 2);
  for (const auto& [k, c] : x.terms()) {
    Tensor t = comultiply_term(k);
    for (const auto& [key, v] : t.terms()) out.add_term(key, c * v);
  }
  return out;
}

Element QGroup::antipode(const Element& x) const {
  Element out(*this);
  for (const auto& [k, c] : x.terms()) {
    Element se = one();
    for (int letter : k.e) se = term({}, Toral{std::vector<int>(static_cast<std::size_t>(n_)), unit(n_, letter, -1)}, {letter}, -1) * se;
    Element sf = one();
    for (int letter : k.f) sf = term({letter}, Toral{unit(n_, letter, -1), std::vector<int>(static_cast<std::size_t>(n_))}, {}, -1) * sf;
    out += c * (se * toral(k.t.inverse()) * sf);
  }
  return out;
}

Scalar QGroup::counit(const Element& x) const {
  Scalar out;
  for (const auto& [k, c] : x.terms())
    if (k.f.empty() && k.e.empty()) out += c;
  return out;
}

Element QGroup::ad(const Element& x, const Element& z) const {
  const Tensor d = comultiply(x);
  Element out(*this);
  for (const auto& [key, c] : d.terms()) {
    Element l(*this), r(*this);
    l.add_term(key[0], 1);
    r.add_term(key[1], 1);
    out += c * (l * z * antipode(r));
  }
  return out;
}

// ---------------------------------------------------------------- relations

std::vector<std::pair<std::string, Element>> QGroup::relations() const {
  std::vector<std::pair<std::string, Element>> out;
  const Scalar r = Scalar::r(), s = Scalar::s();
  for (int i = 1; i <= n_; ++i) {
    out.emplace_back("w" + std::to_string(i) + " invertible", omega(i) * omega(i, -1) - one());
    out.emplace_back("w'" + std::to_string(i) + " invertible", omega_p(i) * omega_p(i, -1) - one());
    for (int j = 1; j <= n_; ++j)
      out.emplace_back("w" + std::to_string(i) + " w'" + std::to_string(j) + " commute",
                       omega(i) * omega_p(j) - omega_p(j) * omega(i));
  }
  for (int j = 1; j <= n_; ++j) {
    for (int i = 1; i <= n_; ++i) {
      Scalar cw, cwp;
      if (j < n_) {
        cw = r_i(j).pow(eps_dot(n_, j, i)) * s_i(j).pow(eps_dot(n_, j + 1, i));
        cwp = s_i(j).pow(eps_dot(n_, j, i)) * r_i(j).pow(eps_dot(n_, j + 1, i));
      } else if (i < n_) {
        cw = r.pow(2 * eps_dot(n_, n_, i));
        cwp = s.pow(2 * eps_dot(n_, n_, i));
      } else {
        cw = r * s.inverse();
        cwp = s * r.inverse();
      }
      const std::string tag = std::to_string(j) + " on " + std::to_string(i);
      out.emplace_back("w" + tag + " (e)", omega(j) * e(i) * omega(j, -1) - cw * e(i));
      out.emplace_back("w" + tag + " (f)", omega(j) * f(i) * omega(j, -1) - cw.inverse() * f(i));
      out.emplace_back("w'" + tag + " (e)", omega_p(j) * e(i) * omega_p(j, -1) - cwp * e(i));
      out.emplace_back("w'" + tag + " (f)", omega_p(j) * f(i) * omega_p(j, -1) - cwp.inverse() * f(i));
    }
  }
  for (int i = 1; i <= n_; ++i) {
    for (int j = 1; j <= n_; ++j) {
      Element rel = e(i) * f(j) - f(j) * e(i);
      if (i == j) rel -= (r_i(i) - s_i(i)).inverse() * (omega(i) - omega_p(i));
      out.emplace_back("[e" + std::to_string(i) + ",f" + std::to_string(j) + "]", rel);
    }
  }
  for (Side side : {Side::E, Side::F}) {
    for (const Relator& rel : serre_relators(side)) {
      Element sum(*this);
      for (const auto& [w, c] : rel.terms) {
        Element prod = one();
        for (int letter : w) prod = prod * (side == Side::E ? e(letter) : f(letter));
        sum += c * prod;
      }
      out.emplace_back(rel.name, sum);
    }
  }
  return out;
}

Element QGroup::random_element(unsigned seed, int max_height, int terms) const {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> letter(1, n_), small(-1, 1), coef(1, 3);
  Element out(*this);
  for (int t = 0; t < terms; ++t) {
    const int hf = std::uniform_int_distribution<int>(0, max_height)(rng);
    const int he = std::uniform_int_distribution<int>(0, max_height - hf)(rng);
    Word fw, ew;
    for (int k = 0; k < hf; ++k) fw.push_back(letter(rng));
    for (int k = 0; k < he; ++k) ew.push_back(letter(rng));
    Toral tor = Toral::identity(n_);
    for (int k = 0; k < n_; ++k) {
      tor.eta[static_cast<std::size_t>(k)] = small(rng);
      tor.phi[static_cast<std::size_t>(k)] = small(rng);
    }
    Scalar c = coef(rng);
    if (rng() & 1) c *= Scalar::r();
    if (rng() & 1) c = -c * Scalar::s().inverse();
    out += term(fw, tor, ew, c);
  }
  return out;
}

}  // namespace qgc
