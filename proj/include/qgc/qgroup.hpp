#pragma once

// The two-parameter quantum group U = U_{r,s}(so_{2n+1}): generators e_i,
// f_i, w_i, w'_i, elements in triangular normal form F * w'_eta w_phi * E,
// graded bases of the halves modulo the Serre ideal, and the Hopf maps.

#include <compare>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qgc/rootdata.hpp"
#include "qgc/scalars.hpp"

namespace qgc {

/// Sequence of generator indices (1-based).
using Word = std::vector<int>;

enum class Side { E, F };

/// w'_eta w_phi with eta, phi in alpha-coordinates.
struct Toral {
  std::vector<int> eta;
  std::vector<int> phi;

  static Toral identity(int n) { return {std::vector<int>(static_cast<std::size_t>(n)), std::vector<int>(static_cast<std::size_t>(n))}; }
  bool is_identity() const;
  Toral operator*(const Toral& o) const;
  Toral inverse() const;
  /// phi == -eta
  bool balanced() const;
  friend auto operator<=>(const Toral&, const Toral&) = default;
};

/// Key of a normal-form term: F-word, toral part, E-word.
struct TermKey {
  Word f;
  Toral t;
  Word e;
  friend auto operator<=>(const TermKey&, const TermKey&) = default;
};

class QGroup;

/// Finite linear combination of normal-form terms.  Words are always
/// graded-basis representatives; zero coefficients are never stored.
class Element {
 public:
  using Map = std::map<TermKey, Scalar>;

  Element() = default;
  explicit Element(const QGroup& g) : g_(&g) {}
  Element(const QGroup& g, Map terms);

  const QGroup& group() const { return *g_; }
  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  /// Coefficient of the given term (zero if absent).
  Scalar coeff(const TermKey& k) const;

  /// Adds c * key, dropping the entry if the sum cancels.
  void add_term(const TermKey& key, const Scalar& c);

  Element operator-() const;
  Element& operator+=(const Element& o);
  Element& operator-=(const Element& o);
  Element& operator*=(const Scalar& c);
  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Scalar& c, Element a) { return a *= c; }
  friend Element operator*(Element a, const Scalar& c) { return a *= c; }
  friend bool operator==(const Element& a, const Element& b) { return a.terms_ == b.terms_; }

  /// Text form, one term per summand: "(coeff) F[2,1] W'[0,1] W[1,0] E[1,2]".
  std::string to_string() const;
  nlohmann::json to_json() const;
  static Element from_json(const QGroup& g, const nlohmann::json& j);

 private:
  const QGroup* g_ = nullptr;
  Map terms_;
};

/// Sum of k-fold tensors of normal-form terms.
class Tensor {
 public:
  using Key = std::vector<TermKey>;
  using Map = std::map<Key, Scalar>;

  Tensor(const QGroup& g, std::size_t legs) : g_(&g), legs_(legs) {}
  std::size_t legs() const noexcept { return legs_; }
  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const Key& key, const Scalar& c);
  /// Adds c * (a_1 (x) ... (x) a_k).
  void add_product(const std::vector<const Element*>& factors, const Scalar& c);

  Tensor& operator+=(const Tensor& o);
  Tensor& operator-=(const Tensor& o);
  friend Tensor operator-(Tensor a, const Tensor& b) { return a -= b; }
  friend bool operator==(const Tensor& a, const Tensor& b) { return a.legs_ == b.legs_ && a.terms_ == b.terms_; }

  /// Replaces leg `leg` by the image of a linear map into k-fold tensors.
  template <class F>
  Tensor map_leg(std::size_t leg, std::size_t out_legs, F&& f) const;

  std::string to_string() const;

 private:
  const QGroup* g_;
  std::size_t legs_;
  Map terms_;
};

/// Basis of U^{+nu} (side E) or U^{-nu} (side F) modulo the Serre ideal.
struct GradedBasis {
  Side side = Side::E;
  RootVec nu;
  std::vector<Word> words;  // every word of content nu, ascending lex
  std::vector<Word> reps;   // representatives, ascending lex
  /// For every word: its expansion over reps (index, coefficient).
  std::map<Word, std::vector<std::pair<std::size_t, Scalar>>> reduction;

  std::size_t dim() const { return reps.size(); }
  nlohmann::json to_json() const;
  static GradedBasis from_json(const nlohmann::json& j);
};

/// Serre relator as a combination of words.
struct Relator {
  std::string name;
  Side side;
  std::vector<std::pair<Word, Scalar>> terms;
};

class QGroup {
 public:
  /// Shared instance per rank; instances live for the whole program.
  static const QGroup& get(int n);
  explicit QGroup(int n);
  QGroup(const QGroup&) = delete;
  QGroup& operator=(const QGroup&) = delete;

  int rank() const noexcept { return n_; }
  const RootSystemB& roots() const noexcept { return roots_; }

  /// r_i = r^{(alpha_i, alpha_i)}, s_i likewise.
  Scalar r_i(int i) const;
  Scalar s_i(int i) const;
  /// [m]_i = (r_i^m - s_i^m)/(r_i - s_i).
  Scalar qint(int m, int i) const;

  /// Exponents (x, y) with <w'_eta, w_phi> = r^x s^y, extended bilinearly to
  /// rational arguments.
  std::pair<Rational, Rational> gpair_exponents(const std::vector<Rational>& eta, const std::vector<Rational>& phi) const;
  /// <w'_eta, w_phi>; eta may be any weight in alpha-coordinates, phi must be
  /// integral.  Throws NonIntegralSecondArgument.
  Scalar gpair(const std::vector<Rational>& eta, const std::vector<Rational>& phi) const;
  Scalar gpair(const std::vector<int>& eta, const std::vector<int>& phi) const;
  /// The character rho^lambda(w'_eta w_phi) = <w'_eta, w_lambda>^{-1} <w'_lambda, w_phi>
  /// for lambda in alpha-coordinates (half-integral allowed).
  Scalar rho_char(const std::vector<Rational>& lambda, const Toral& t) const;
  Scalar rho_char(const std::vector<int>& lambda, const Toral& t) const;

  // Element builders.
  Element zero() const { return Element(*this); }
  Element one() const;
  Element scalar(const Scalar& c) const;
  Element e(int i) const;
  Element f(int i) const;
  /// w_i^k and w'_i^k
  Element omega(int i, int k = 1) const;
  Element omega_p(int i, int k = 1) const;
  Element toral(const Toral& t) const;
  Element toral(const std::vector<int>& eta, const std::vector<int>& phi) const;
  /// Product of generators; the word need not be a representative.
  Element e_word(const Word& w) const;
  Element f_word(const Word& w) const;
  /// F * T * E for arbitrary words.
  Element term(const Word& f, const Toral& t, const Word& e, const Scalar& c = 1) const;

  Element mul(const Element& a, const Element& b) const;
  Tensor comultiply(const Element& x) const;
  Element antipode(const Element& x) const;
  Scalar counit(const Element& x) const;
  /// Left adjoint action sum x_(1) z S(x_(2)).
  Element ad(const Element& x, const Element& z) const;
  /// Multiplies legs of a 2-tensor after applying maps to each leg.
  template <class L, class R>
  Element multiply_legs(const Tensor& t, L&& left, R&& right) const;

  RootVec content(const Word& w) const;
  /// Basis for U^{+nu} (E) or U^{-nu} (F); throws NotInPositiveCone.
  const GradedBasis& graded_basis(Side side, const RootVec& nu) const;
  /// Expansion of an arbitrary word over representatives.
  std::vector<std::pair<Word, Scalar>> reduce_word(Side side, const Word& w) const;

  /// Serre relators of the given side.
  const std::vector<Relator>& serre_relators(Side side) const;
  /// Every defining relation as a named difference lhs - rhs, evaluated in
  /// this algebra.
  std::vector<std::pair<std::string, Element>> relations() const;

  Toral toral_of_root(const RootVec& v, bool primed) const;
  Element random_element(unsigned seed, int max_height, int terms) const;

 private:
  GradedBasis build_graded_basis(Side side, const RootVec& nu) const;
  /// e_I * f_J in normal form.
  const Element& straighten(const Word& e, const Word& f) const;
  Element apply_ei_left(int i, const Element& x) const;
  void mul_terms(const TermKey& a, const Scalar& ca, const TermKey& b, const Scalar& cb, Element& out) const;
  Tensor comultiply_term(const TermKey& k) const;

  int n_;
  RootSystemB roots_;
  // Exponent table: <w'_i, w_j> = r^{g_[i][j].first} s^{g_[i][j].second}.
  std::vector<std::vector<std::pair<int, int>>> g_;
  std::vector<Relator> serre_e_, serre_f_;

  mutable std::shared_mutex basis_mu_;
  mutable std::map<std::pair<int, RootVec>, std::shared_ptr<const GradedBasis>> bases_;
  mutable std::shared_mutex straight_mu_;
  mutable std::map<std::pair<Word, Word>, std::shared_ptr<const Element>> straight_;
};

template <class F>
Tensor Tensor::map_leg(std::size_t leg, std::size_t out_legs, F&& f) const {
  Tensor out(*g_, legs_ - 1 + out_legs);
  for (const auto& [key, c] : terms_) {
    Tensor img = f(key[leg]);
    for (const auto& [k2, c2] : img.terms()) {
      Key nk;
      nk.insert(nk.end(), key.begin(), key.begin() + static_cast<std::ptrdiff_t>(leg));
      nk.insert(nk.end(), k2.begin(), k2.end());
      nk.insert(nk.end(), key.begin() + static_cast<std::ptrdiff_t>(leg) + 1, key.end());
      out.add_term(nk, c * c2);
    }
  }
  return out;
}

template <class L, class R>
Element QGroup::multiply_legs(const Tensor& t, L&& left, R&& right) const {
  Element out(*this);
  for (const auto& [key, c] : t.terms()) {
    Element a = left(term(key[0].f, key[0].t, key[0].e));
    Element b = right(term(key[1].f, key[1].t, key[1].e));
    out += c * (a * b);
  }
  return out;
}

std::string word_to_string(const Word& w);

}  // namespace qgc
