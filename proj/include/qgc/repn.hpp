#pragma once

// Weight modules realized by explicit matrices: truncated Verma modules for
// the characters rho^{lambda,mu}, their irreducible quotients L(lambda), the
// grading operator Theta, trace functions and matrix coefficients.

#include <map>
#include <vector>

#include <json.hpp>

#include "qgc/linalg.hpp"
#include "qgc/qgroup.hpp"

namespace qgc {

/// rho^{lambda,mu}(w'_eta w_phi) = rho^lambda(w'_eta w_phi) (r s^{-1})^{(eta+phi, mu)}.
Scalar char_pair(const QGroup& g, const Weight& lambda, const Weight& mu, const Toral& t);

class WeightModule {
 public:
  WeightModule(const QGroup& g, Weight lambda, Weight mu) : g_(&g), lambda_(std::move(lambda)), mu_(std::move(mu)) {}

  const QGroup& group() const { return *g_; }
  const Weight& highest() const { return lambda_; }
  const Weight& shift() const { return mu_; }
  std::size_t dim() const { return labels_.size(); }
  /// Largest height of a lowering word that can act nontrivially; -1 when
  /// the module is not truncated.
  int depth() const { return depth_; }

  /// Basis vector k is (the image of) labels[k] v_lambda.
  const Word& label(std::size_t k) const { return labels_[k]; }
  const RootVec& content(std::size_t k) const { return contents_[k]; }
  /// lambda - content(k)
  Weight weight(std::size_t k) const;
  std::map<Weight, int> multiplicities() const;
  /// Value of a toral monomial on basis vector k.
  Scalar toral_value(std::size_t k, const Toral& t) const;

  const Matrix& e_matrix(int i) const { return e_[static_cast<std::size_t>(i - 1)]; }
  const Matrix& f_matrix(int i) const { return f_[static_cast<std::size_t>(i - 1)]; }
  Matrix toral_matrix(const Toral& t) const;

  /// Index of the highest-weight vector.
  std::size_t top() const { return 0; }

  nlohmann::json to_json() const;

 private:
  friend WeightModule verma(const QGroup&, const Weight&, const Weight&, int);
  friend const WeightModule& irreducible(const QGroup&, const Weight&);

  const QGroup* g_;
  Weight lambda_, mu_;
  int depth_ = -1;
  std::vector<Word> labels_;
  std::vector<RootVec> contents_;
  std::vector<Matrix> e_, f_;
};

/// M(rho^{lambda,mu}) spanned by graded-basis words of height <= depth.
WeightModule verma(const QGroup& g, const Weight& lambda, const Weight& mu, int depth);
/// L(lambda); cached per (rank, lambda).  Throws NotDominant, NotInLattice.
const WeightModule& irreducible(const QGroup& g, const Weight& lambda);

/// Matrix of x.  Throws TruncationOverflow if a lowering word of x is longer
/// than the truncation depth.
Matrix act(const Element& x, const WeightModule& m);
/// Diagonal (r s^{-1})^{-2(rho, wt)}.
Matrix theta(const WeightModule& m);
/// f_lambda(x) = tr_{L(lambda)}(x Theta)
Scalar trace_fn(const QGroup& g, const Weight& lambda, const Element& x);
/// C_{f,m}(x) = f(x.m) with f the coordinate functional of basis vector
/// `f` and m given in coordinates.
Scalar matrix_coeff(const WeightModule& mod, std::size_t f, const std::vector<Scalar>& m, const Element& x);

/// e_i f_i^k v = [k]_i (r_i^{1-k} rho(w_i) - s_i^{1-k} rho(w'_i))/(r_i - s_i) f_i^{k-1} v
/// on the highest-weight vector of a Verma module (requires k <= depth).
bool check_ef_power(const WeightModule& verma_mod, int i, int k);
/// e_j f_i^{(lambda, alpha_i^vee)+1} v = 0 for every j.
bool check_singular(const WeightModule& verma_mod, int i);
/// Defining relations as matrix identities (mixed relations on vectors with
/// room below them).  Returns the names of violated relations.
std::vector<std::string> check_module_relations(const WeightModule& m);
/// Theta act(u) == act(S^2 u) Theta for every generator.
bool check_theta_twist(const WeightModule& m);

}  // namespace qgc
