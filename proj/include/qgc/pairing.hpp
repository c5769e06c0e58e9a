#pragma once

// The skew-dual pairing between the Borel halves, graded Gram matrices with
// their dual bases, and the Rosso form on U.

#include <map>
#include <memory>
#include <shared_mutex>
#include <utility>
#include <vector>

#include "qgc/linalg.hpp"
#include "qgc/qgroup.hpp"

namespace qgc {

/// Basis u_j of U^{+nu} (the E representatives) and the dual basis v_i of
/// U^{-nu} with <v_i, u_j> = delta_ij.
struct DualBasis {
  RootVec nu;
  std::vector<Element> u;
  std::vector<Element> v;
  /// Inverse Gram matrix: v_i = sum_a inv(i, a) f_{rep a}.
  Matrix inv;
};

class SkewPairing {
 public:
  static const SkewPairing& get(int n);
  explicit SkewPairing(const QGroup& g) : g_(g) {}

  const QGroup& group() const noexcept { return g_; }

  /// <f_J, e_I> for arbitrary words (zero unless the contents agree).
  Scalar pair_words(const Word& f, const Word& e) const;
  /// <y, x> for y in B' (terms F w'_eta) and x in B (terms w_phi E).
  /// Throws WrongSide.
  Scalar skew_pair(const Element& y, const Element& x) const;

  /// Rows: F representatives of U^{-nu}; columns: E representatives of U^{+nu}.
  const Matrix& gram(const RootVec& nu) const;
  /// Throws SingularGram.
  const DualBasis& dual_basis(const RootVec& nu) const;

  /// (r s^{-1})^{2(rho, nu)}: the factor by which S^2 scales U^{-nu}.
  Scalar s2_factor(const RootVec& nu) const;
  Scalar rosso(const Element& x, const Element& y) const;
  /// <ad(a) b, c>_U == <b, ad(S(a)) c>_U
  bool check_ad_invariance(const Element& a, const Element& b, const Element& c) const;

  /// chi_{eta,phi}(eta1, phi1) = <w'_eta, w_phi1> <w'_eta1, w_phi>
  Scalar chi(const std::vector<int>& eta, const std::vector<int>& phi, const std::vector<int>& eta1,
             const std::vector<int>& phi1) const;

 private:
  const QGroup& g_;
  mutable std::shared_mutex mu_;
  mutable std::map<std::pair<Word, Word>, Scalar> words_;
  mutable std::map<RootVec, std::shared_ptr<const Matrix>> grams_;
  mutable std::map<RootVec, std::shared_ptr<const DualBasis>> duals_;
};

}  // namespace qgc
