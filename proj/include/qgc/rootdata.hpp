#pragma once

// Type B_n root data: weights in doubled epsilon-coordinates, root-lattice
// vectors in alpha-coordinates, the Weyl group as signed permutations, and
// weight multiplicities of irreducible modules.

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qgc/scalars.hpp"

namespace qgc {

/// Weight with epsilon-coordinates stored doubled (actual value = stored / 2).
/// Lies in the weight lattice iff all entries have the same parity; lies in
/// the root lattice iff all entries are even.
class Weight {
 public:
  Weight() = default;
  explicit Weight(std::vector<int> doubled) : d_(std::move(doubled)) {}
  static Weight zero(int n) { return Weight(std::vector<int>(static_cast<std::size_t>(n), 0)); }
  /// From plain integer epsilon-coordinates.
  static Weight eps(const std::vector<int>& coords);

  int rank() const { return static_cast<int>(d_.size()); }
  const std::vector<int>& doubled() const { return d_; }
  Rational eps_coord(int i) const { return make_rational(d_[static_cast<std::size_t>(i)], 2); }
  bool in_weight_lattice() const;
  bool in_root_lattice() const;

  Weight operator-() const;
  Weight& operator+=(const Weight& o);
  Weight& operator-=(const Weight& o);
  friend Weight operator+(Weight x, const Weight& y) { return x += y; }
  friend Weight operator-(Weight x, const Weight& y) { return x -= y; }
  friend Weight operator*(int k, Weight x);
  friend auto operator<=>(const Weight&, const Weight&) = default;

  std::string to_string() const;  // e.g. "(3/2,1/2)"

 private:
  std::vector<int> d_;
};

/// Integer vector over the simple-root basis.
class RootVec {
 public:
  RootVec() = default;
  explicit RootVec(std::vector<int> coeffs) : c_(std::move(coeffs)) {}
  static RootVec zero(int n) { return RootVec(std::vector<int>(static_cast<std::size_t>(n), 0)); }
  static RootVec simple(int n, int i);  // alpha_i, 1-based

  int rank() const { return static_cast<int>(c_.size()); }
  const std::vector<int>& coeffs() const { return c_; }
  int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  int height() const;
  bool is_zero() const;
  bool in_positive_cone() const;

  RootVec operator-() const;
  RootVec& operator+=(const RootVec& o);
  RootVec& operator-=(const RootVec& o);
  friend RootVec operator+(RootVec x, const RootVec& y) { return x += y; }
  friend RootVec operator-(RootVec x, const RootVec& y) { return x -= y; }
  friend auto operator<=>(const RootVec&, const RootVec&) = default;

  std::string to_string() const;  // "[1,2]"

 private:
  std::vector<int> c_;
};

/// Signed permutation: sends epsilon_i to sign[i] * epsilon_{perm[i]}.
struct WeylElement {
  std::vector<int> perm;
  std::vector<int> sign;

  static WeylElement identity(int n);
  static WeylElement simple_reflection(int n, int i);  // 1-based
  WeylElement compose(const WeylElement& other) const;  // (this o other)
  WeylElement inverse() const;
  Weight apply(const Weight& w) const;
  friend bool operator==(const WeylElement&, const WeylElement&) = default;
  friend auto operator<=>(const WeylElement&, const WeylElement&) = default;
};

class RootSystemB {
 public:
  explicit RootSystemB(int n);

  int rank() const { return n_; }
  /// alpha_i for 1 <= i <= n, as a weight.
  Weight simple_root(int i) const;
  Weight fundamental_weight(int i) const;
  Weight rho() const;
  const std::vector<Weight>& positive_roots() const { return positive_; }
  /// Positive roots in alpha-coordinates, same order as positive_roots().
  const std::vector<RootVec>& positive_roots_alpha() const { return positive_alpha_; }

  Rational inner(const Weight& x, const Weight& y) const;
  Rational inner(const RootVec& x, const RootVec& y) const;
  /// 2 (lambda, alpha_i) / (alpha_i, alpha_i).
  Rational coroot_pair(const Weight& lambda, int i) const;
  /// Coefficients over the alpha-basis.
  std::vector<Rational> alpha_coords(const Weight& lambda) const;
  Weight to_weight(const RootVec& v) const;
  /// Throws NotInLattice when lambda is not in the root lattice.
  RootVec to_rootvec(const Weight& lambda) const;
  Weight from_fundamental(const std::vector<int>& coords) const;
  Weight from_alpha(const std::vector<Rational>& coords) const;

  bool is_dominant(const Weight& lambda) const;
  /// mu <= lambda in the dominance order (lambda - mu in Q+).
  bool dominated_by(const Weight& mu, const Weight& lambda) const;
  Weight dominant_conjugate(const Weight& lambda) const;

  Weight reflect(int i, const Weight& lambda) const;
  std::set<Weight> weyl_orbit(const Weight& lambda) const;
  const std::vector<WeylElement>& weyl_group() const;

  /// Weight multiplicities of the irreducible module with highest weight
  /// lambda (Freudenthal recursion).
  std::map<Weight, std::int64_t> freudenthal_mults(const Weight& lambda) const;
  Integer weyl_dim(const Weight& lambda) const;

  /// Number of ways to write nu as a multiset of positive roots.
  Integer kostant_count(const RootVec& nu) const;

 private:
  void check_rank(const Weight& w) const;
  void require_dominant(const Weight& lambda) const;

  int n_;
  std::vector<Weight> positive_;
  std::vector<RootVec> positive_alpha_;
  mutable std::vector<WeylElement> group_;
};

}  // namespace qgc
