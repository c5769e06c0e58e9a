#pragma once

// Harish-Chandra images, characters of the torus, the Weyl action on the
// balanced torus, and central elements built from trace functions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qgc/qgroup.hpp"
#include "qgc/repn.hpp"

namespace qgc {

/// Linear combination of toral monomials w'_eta w_phi.
class ToralPart {
 public:
  using Map = std::map<Toral, Scalar>;

  ToralPart() = default;
  explicit ToralPart(Map terms);

  const Map& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  void add_term(const Toral& t, const Scalar& c);
  /// Every term has phi = -eta.
  bool in_ub0() const;
  Scalar coeff(const Toral& t) const;

  ToralPart& operator+=(const ToralPart& o);
  friend ToralPart operator*(const Scalar& c, ToralPart t);
  friend bool operator==(const ToralPart& a, const ToralPart& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;
  /// [{"eta": [...], "phi": [...], "coeff": {...}}, ...]
  nlohmann::json to_json() const;

 private:
  Map terms_;
};

/// gamma^{-rho} of the toral part of x.
ToralPart hc_xi(const QGroup& g, const Element& x);
/// rho^{lambda,mu} extended linearly.
Scalar char_eval(const QGroup& g, const Weight& lambda, const Weight& mu, const ToralPart& t);
/// sigma(w'_eta w_{-eta}) = w'_{sigma eta} w_{-sigma eta}.  Throws NotInUb0.
ToralPart weyl_act(const QGroup& g, const WeylElement& sigma, const ToralPart& t);
/// 1/|W| sum_sigma w'_{sigma lambda} w_{-sigma lambda}.  Throws NotInRootLattice, NotDominant.
ToralPart av(const QGroup& g, const Weight& lambda);
bool weyl_invariant(const QGroup& g, const ToralPart& t);
/// Coefficients of t in the basis av(lambda), lambda dominant; nullopt when t
/// is not Weyl invariant.  Throws NotInUb0.
std::optional<std::map<Weight, Scalar>> av_expansion(const QGroup& g, const ToralPart& t);
/// The leading coefficient (at lambda) is a positive integer and every other
/// weight in the expansion is dominant and strictly below lambda.
bool dominance_triangular(const QGroup& g, const std::map<Weight, Scalar>& expansion, const Weight& lambda);

/// ad(e_i) z = ad(f_i) z = 0 and ad(w_i) z = ad(w'_i) z = z for all i.
bool is_central(const QGroup& g, const Element& z);

struct CentralCandidate {
  Element z;
  Weight lambda;
  std::string method;  // "trace" or "solve"
  nlohmann::json to_json() const;
};

/// z_lambda, the central element whose Rosso pairing is the trace function
/// f_lambda.  Throws NotInRootLattice, NotDominant, CentralityCheckFailed.
CentralCandidate central_from_trace(const QGroup& g, const Weight& lambda);

/// Monomials F_a w'_{lambda'} w_{-lambda'-nu} E_b used by the trace
/// construction for L(lambda), and the prescribed degree-zero coefficients.
struct CentralAnsatz {
  std::vector<TermKey> monomials;
  std::map<TermKey, Scalar> normalization;
};
CentralAnsatz central_ansatz(const QGroup& g, const Weight& lambda);
/// Solves the centrality equations over the ansatz with the normalization
/// imposed.  Throws NoSolution, NonUniqueSolution.
Element solve_central(const QGroup& g, const CentralAnsatz& ansatz);
CentralCandidate central_by_solve(const QGroup& g, const Weight& lambda);

enum class KernelMode { LambdaOnly, Full };
/// Nonzero (eta, phi) with coordinates in [-bound, bound] on which every
/// rho^lambda (LambdaOnly) or every rho^{lambda,mu} (Full) is trivial.
std::vector<std::pair<std::vector<int>, std::vector<int>>> parity_kernel(int n, int bound, KernelMode mode);

}  // namespace qgc
