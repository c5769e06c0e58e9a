#pragma once

// Exact coefficient field: fractions of Laurent polynomials in u = r^(1/2),
// v = s^(1/2) with arbitrary-precision integer coefficients.

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace qgc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Canonical a/b.
inline Rational make_rational(long a, long b) {
  Rational q(a, b);
  q.canonicalize();
  return q;
}

/// Laurent polynomial in u, v over the integers.  Terms are kept sorted
/// ascending in graded-lexicographic order on (a, b), where a term
/// (a, b, c) stands for c * u^a * v^b.  No stored coefficient is zero.
class LaurentBi {
 public:
  struct Term {
    int a = 0;
    int b = 0;
    Integer c;
  };

  LaurentBi() = default;
  LaurentBi(long c);  // NOLINT(google-explicit-constructor)
  explicit LaurentBi(const Integer& c);

  static LaurentBi monomial(int a, int b, const Integer& c = 1);
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static LaurentBi from_terms(std::vector<Term> terms);

  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_monomial() const noexcept { return terms_.size() == 1; }
  bool is_one() const;
  bool is_constant() const;

  /// Greatest term in graded-lex order.  Undefined on zero.
  const Term& leading() const { return terms_.back(); }
  int min_a() const;
  int min_b() const;
  int max_a() const;
  int max_b() const;
  Integer content() const;  // nonnegative gcd of coefficients

  LaurentBi shifted(int da, int db) const;
  LaurentBi pow(unsigned e) const;
  LaurentBi operator-() const;

  LaurentBi& operator+=(const LaurentBi& o);
  LaurentBi& operator-=(const LaurentBi& o);
  LaurentBi& operator*=(const LaurentBi& o);
  friend LaurentBi operator+(LaurentBi x, const LaurentBi& y) { return x += y; }
  friend LaurentBi operator-(LaurentBi x, const LaurentBi& y) { return x -= y; }
  friend LaurentBi operator*(const LaurentBi& x, const LaurentBi& y);

  /// Division by a nonzero integer that must divide every coefficient.
  LaurentBi divexact(const Integer& d) const;

  friend bool operator==(const LaurentBi& x, const LaurentBi& y);
  friend bool operator!=(const LaurentBi& x, const LaurentBi& y) { return !(x == y); }
  /// Total order used for map keys (not an algebraic order).
  friend bool operator<(const LaurentBi& x, const LaurentBi& y);

  Rational eval(const Rational& u0, const Rational& v0) const;
  std::size_t hash() const;

 private:
  static LaurentBi merge(const LaurentBi& x, const LaurentBi& y, bool subtract);

  std::vector<Term> terms_;
};

/// Exact quotient p / g of polynomials (both with nonnegative exponents).
/// Returns false if g does not divide p.
bool try_divide(const LaurentBi& p, const LaurentBi& g, LaurentBi& quotient);

/// Greatest common divisor in Z[u, v] of two polynomials with nonnegative
/// exponents, normalized to positive leading coefficient.  gcd(0, 0) = 0.
LaurentBi poly_gcd(const LaurentBi& p, const LaurentBi& q);

/// Element of K = Frac(Z[u^{+-1}, v^{+-1}]) in canonical form: numerator and
/// denominator coprime, denominator a polynomial with no monomial factor and
/// positive graded-lex leading coefficient.
class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(long c) : num_(c), den_(1) {}  // NOLINT(google-explicit-constructor)
  Scalar(const LaurentBi& p) : num_(p), den_(1) {}  // NOLINT
  Scalar(const LaurentBi& num, const LaurentBi& den);

  static Scalar u() { return Scalar(LaurentBi::monomial(1, 0)); }
  static Scalar v() { return Scalar(LaurentBi::monomial(0, 1)); }
  static Scalar r() { return Scalar(LaurentBi::monomial(2, 0)); }
  static Scalar s() { return Scalar(LaurentBi::monomial(0, 2)); }
  /// r^x s^y for x, y in (1/2)Z.
  static Scalar rs_power(const Rational& x, const Rational& y);

  const LaurentBi& num() const noexcept { return num_; }
  const LaurentBi& den() const noexcept { return den_; }
  bool is_zero() const noexcept { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_polynomial() const { return den_.is_one(); }

  Scalar inverse() const;
  Scalar pow(int e) const;
  Scalar operator-() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar x, const Scalar& y) { return x += y; }
  friend Scalar operator-(Scalar x, const Scalar& y) { return x -= y; }
  friend Scalar operator*(Scalar x, const Scalar& y) { return x *= y; }
  friend Scalar operator/(Scalar x, const Scalar& y) { return x /= y; }

  friend bool operator==(const Scalar& x, const Scalar& y) {
    return x.num_ == y.num_ && x.den_ == y.den_;
  }
  friend bool operator!=(const Scalar& x, const Scalar& y) { return !(x == y); }
  friend bool operator<(const Scalar& x, const Scalar& y);

  /// Value at u = u0, v = v0 (so r = u0^2, s = v0^2).  Throws PoleAtPoint.
  Rational eval(const Rational& u0, const Rational& v0) const;

  /// Renders in r, s, e.g. "(r^2*s^-1 - 1)/(r - s)"; odd u-powers become
  /// "r^(1/2)" style exponents.
  std::string to_string() const;
  nlohmann::json to_json() const;
  static Scalar from_json(const nlohmann::json& j);
  std::size_t hash() const { return num_.hash() * 31 + den_.hash(); }

 private:
  struct NoCanon {};
  Scalar(LaurentBi num, LaurentBi den, NoCanon) : num_(std::move(num)), den_(std::move(den)) {}
  void canonicalize();

  LaurentBi num_;
  LaurentBi den_;
};

std::string to_string(const LaurentBi& p);
nlohmann::json to_json(const LaurentBi& p);
LaurentBi laurent_from_json(const nlohmann::json& j);

}  // namespace qgc
