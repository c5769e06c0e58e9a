#include "qgc/scalars.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <utility>

#include "qgc/errors.hpp"

namespace qgc {

namespace {

// Graded-lex key: total degree first, then the u-exponent.
inline bool key_less(int a1, int b1, int a2, int b2) {
  const int d1 = a1 + b1, d2 = a2 + b2;
  return d1 != d2 ? d1 < d2 : a1 < a2;
}

inline bool term_less(const LaurentBi::Term& x, const LaurentBi::Term& y) {
  return key_less(x.a, x.b, y.a, y.b);
}

Rational qpow(const Rational& x, int e) {
  Rational base = e >= 0 ? x : Rational(1) / x;
  unsigned k = static_cast<unsigned>(e >= 0 ? e : -e);
  Rational out = 1;
  while (k) {
    if (k & 1U) out *= base;
    base *= base;
    k >>= 1U;
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------- LaurentBi

LaurentBi::LaurentBi(long c) {
  if (c != 0) terms_.push_back(Term{0, 0, Integer(c)});
}

LaurentBi::LaurentBi(const Integer& c) {
  if (c != 0) terms_.push_back(Term{0, 0, c});
}

LaurentBi LaurentBi::monomial(int a, int b, const Integer& c) {
  LaurentBi p;
  if (c != 0) p.terms_.push_back(Term{a, b, c});
  return p;
}

LaurentBi LaurentBi::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), term_less);
  LaurentBi p;
  p.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().a == t.a && p.terms_.back().b == t.b) {
      p.terms_.back().c += t.c;
    } else {
      if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().c == 0) p.terms_.pop_back();
  return p;
}

bool LaurentBi::is_one() const {
  return terms_.size() == 1 && terms_[0].a == 0 && terms_[0].b == 0 && terms_[0].c == 1;
}

bool LaurentBi::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].a == 0 && terms_[0].b == 0);
}

int LaurentBi::min_a() const {
  int m = terms_.empty() ? 0 : terms_[0].a;
  for (const auto& t : terms_) m = std::min(m, t.a);
  return m;
}
int LaurentBi::min_b() const {
  int m = terms_.empty() ? 0 : terms_[0].b;
  for (const auto& t : terms_) m = std::min(m, t.b);
  return m;
}
int LaurentBi::max_a() const {
  int m = terms_.empty() ? 0 : terms_[0].a;
  for (const auto& t : terms_) m = std::max(m, t.a);
  return m;
}
int LaurentBi::max_b() const {
  int m = terms_.empty() ? 0 : terms_[0].b;
  for (const auto& t : terms_) m = std::max(m, t.b);
  return m;
}

Integer LaurentBi::content() const {
  Integer g = 0;
  for (const auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

LaurentBi LaurentBi::shifted(int da, int db) const {
  LaurentBi p = *this;
  if (da == 0 && db == 0) return p;
  for (auto& t : p.terms_) {
    t.a += da;
    t.b += db;
  }
  return p;  // uniform shifts preserve graded-lex order
}

LaurentBi LaurentBi::pow(unsigned e) const {
  if (is_monomial()) {
    Integer c;
    mpz_pow_ui(c.get_mpz_t(), terms_[0].c.get_mpz_t(), e);
    return monomial(terms_[0].a * static_cast<int>(e), terms_[0].b * static_cast<int>(e), c);
  }
  LaurentBi base = *this, out(1);
  while (e) {
    if (e & 1U) out *= base;
    e >>= 1U;
    if (e) base *= base;
  }
  return out;
}

LaurentBi LaurentBi::operator-() const {
  LaurentBi p = *this;
  for (auto& t : p.terms_) t.c = -t.c;
  return p;
}

LaurentBi LaurentBi::merge(const LaurentBi& x, const LaurentBi& y, bool subtract) {
  const auto& xs = x.terms_;
  const auto& ys = y.terms_;
  LaurentBi p;
  auto& out = p.terms_;
  out.reserve(xs.size() + ys.size());
  std::size_t i = 0, j = 0;
  while (i < xs.size() || j < ys.size()) {
    if (j == ys.size() || (i < xs.size() && term_less(xs[i], ys[j]))) {
      out.push_back(xs[i++]);
    } else if (i == xs.size() || term_less(ys[j], xs[i])) {
      out.push_back(ys[j++]);
      if (subtract) out.back().c = -out.back().c;
    } else {
      Integer c = subtract ? Integer(xs[i].c - ys[j].c) : Integer(xs[i].c + ys[j].c);
      if (c != 0) out.push_back(Term{xs[i].a, xs[i].b, std::move(c)});
      ++i;
      ++j;
    }
  }
  return p;
}

LaurentBi& LaurentBi::operator+=(const LaurentBi& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  *this = merge(*this, o, false);
  return *this;
}

LaurentBi& LaurentBi::operator-=(const LaurentBi& o) {
  if (o.is_zero()) return *this;
  *this = merge(*this, o, true);
  return *this;
}

LaurentBi operator*(const LaurentBi& x, const LaurentBi& y) {
  if (x.is_zero() || y.is_zero()) return LaurentBi();
  if (y.is_one()) return x;
  if (x.is_one()) return y;
  std::vector<LaurentBi::Term> out;
  out.reserve(x.size() * y.size());
  for (const auto& s : x.terms_) {
    for (const auto& t : y.terms_) {
      out.push_back(LaurentBi::Term{s.a + t.a, s.b + t.b, s.c * t.c});
    }
  }
  return LaurentBi::from_terms(std::move(out));
}

LaurentBi& LaurentBi::operator*=(const LaurentBi& o) { return *this = *this * o; }

LaurentBi LaurentBi::divexact(const Integer& d) const {
  LaurentBi p = *this;
  for (auto& t : p.terms_) mpz_divexact(t.c.get_mpz_t(), t.c.get_mpz_t(), d.get_mpz_t());
  return p;
}

bool operator==(const LaurentBi& x, const LaurentBi& y) {
  if (x.terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    const auto& s = x.terms_[i];
    const auto& t = y.terms_[i];
    if (s.a != t.a || s.b != t.b || s.c != t.c) return false;
  }
  return true;
}

bool operator<(const LaurentBi& x, const LaurentBi& y) {
  if (x.terms_.size() != y.terms_.size()) return x.terms_.size() < y.terms_.size();
  for (std::size_t i = 0; i < x.terms_.size(); ++i) {
    const auto& s = x.terms_[i];
    const auto& t = y.terms_[i];
    if (s.a != t.a) return s.a < t.a;
    if (s.b != t.b) return s.b < t.b;
    if (s.c != t.c) return s.c < t.c;
  }
  return false;
}

Rational LaurentBi::eval(const Rational& u0, const Rational& v0) const {
  Rational acc = 0;
  for (const auto& t : terms_) {
    if ((t.a < 0 && u0 == 0) || (t.b < 0 && v0 == 0)) {
      throw PoleAtPoint("negative power evaluated at zero");
    }
    acc += Rational(t.c) * qpow(u0, t.a) * qpow(v0, t.b);
  }
  return acc;
}

std::size_t LaurentBi::hash() const {
  std::size_t h = terms_.size();
  for (const auto& t : terms_) {
    h = h * 1000003U ^ static_cast<std::size_t>(t.a * 131 + t.b);
    h = h * 1000003U ^ static_cast<std::size_t>(mpz_get_si(t.c.get_mpz_t()));
  }
  return h;
}

// ---------------------------------------------------------------- rendering

namespace {

void render_power(std::ostream& os, char var, int twice_exp) {
  if (twice_exp == 2) {
    os << var;
  } else if (twice_exp % 2 == 0) {
    os << var << '^' << twice_exp / 2;
  } else {
    os << var << "^(" << twice_exp << "/2)";
  }
}

}  // namespace

std::string to_string(const LaurentBi& p) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& t = *it;
    Integer mag = abs(t.c);
    if (first) {
      if (t.c < 0) os << '-';
    } else {
      os << (t.c < 0 ? " - " : " + ");
    }
    first = false;
    const bool has_vars = t.a != 0 || t.b != 0;
    if (!has_vars || mag != 1) {
      os << mag.get_str();
      if (has_vars) os << '*';
    }
    if (t.a != 0) {
      render_power(os, 'r', t.a);
      if (t.b != 0) os << '*';
    }
    if (t.b != 0) render_power(os, 's', t.b);
  }
  return os.str();
}

namespace {

nlohmann::json integer_json(const Integer& c) {
  if (c.fits_slong_p()) return c.get_si();
  return c.get_str();
}

Integer integer_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Integer(j.get<std::string>());
  return Integer(j.get<long>());
}

}  // namespace

nlohmann::json to_json(const LaurentBi& p) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : p.terms()) out.push_back({integer_json(t.c), t.a, t.b});
  return out;
}

LaurentBi laurent_from_json(const nlohmann::json& j) {
  std::vector<LaurentBi::Term> terms;
  for (const auto& t : j) {
    terms.push_back(LaurentBi::Term{t.at(1).get<int>(), t.at(2).get<int>(), integer_from_json(t.at(0))});
  }
  return LaurentBi::from_terms(std::move(terms));
}

// ------------------------------------------------------------------- Scalar

namespace {

// num is Laurent, den a polynomial; returns gcd of the shifted numerator and den.
LaurentBi gcd_num_den(const LaurentBi& num, const LaurentBi& den) {
  if (den.is_one() || num.is_zero()) return LaurentBi(1);
  if (den.is_constant()) {
    Integer g = gcd(num.content(), den.terms()[0].c);
    return LaurentBi(g);
  }
  return poly_gcd(num.shifted(-num.min_a(), -num.min_b()), den);
}

LaurentBi div_laurent(const LaurentBi& num, const LaurentBi& g) {
  if (g.is_one()) return num;
  if (g.is_constant()) return num.divexact(g.terms()[0].c);
  const int sa = num.min_a(), sb = num.min_b();
  LaurentBi q;
  if (!try_divide(num.shifted(-sa, -sb), g, q)) {
    throw std::logic_error("inexact division in scalar arithmetic");
  }
  return q.shifted(sa, sb);
}

}  // namespace

Scalar::Scalar(const LaurentBi& num, const LaurentBi& den) : num_(num), den_(den) {
  canonicalize();
}

void Scalar::canonicalize() {
  if (den_.is_zero()) throw DivisionByZero("zero denominator");
  if (num_.is_zero()) {
    den_ = LaurentBi(1);
    return;
  }
  const int da = den_.min_a(), db = den_.min_b();
  if (da != 0 || db != 0) {
    den_ = den_.shifted(-da, -db);
    num_ = num_.shifted(-da, -db);
  }
  LaurentBi g = gcd_num_den(num_, den_);
  if (!g.is_one()) {
    num_ = div_laurent(num_, g);
    den_ = div_laurent(den_, g);
  }
  if (den_.leading().c < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Scalar Scalar::rs_power(const Rational& x, const Rational& y) {
  Rational a = 2 * x, b = 2 * y;
  if (a.get_den() != 1 || b.get_den() != 1) {
    throw NotInLattice("r/s exponent outside (1/2)Z: " + x.get_str() + ", " + y.get_str());
  }
  return Scalar(LaurentBi::monomial(static_cast<int>(a.get_num().get_si()),
                                    static_cast<int>(b.get_num().get_si())));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  if (num_.is_monomial() && den_.is_one()) {
    // c u^a v^b -> 1 / (c u^a v^b)
    const auto& t = num_.terms()[0];
    if (t.c == 1 || t.c == -1) return Scalar(LaurentBi::monomial(-t.a, -t.b, t.c), 1, NoCanon{});
  }
  return Scalar(den_, num_);
}

Scalar Scalar::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  if (den_.is_one()) return Scalar(num_.pow(static_cast<unsigned>(e)), 1, NoCanon{});
  return Scalar(num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e)), NoCanon{});
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_, NoCanon{}); }

Scalar& Scalar::operator+=(const Scalar& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) return *this = o;
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  if (den_ == o.den_) {
    num_ += o.num_;
    canonicalize();
    return *this;
  }
  const LaurentBi g = den_.is_one() || o.den_.is_one() ? LaurentBi(1) : poly_gcd(den_, o.den_);
  const LaurentBi d1 = div_laurent(den_, g);
  const LaurentBi d2 = div_laurent(o.den_, g);
  LaurentBi num = num_ * d2 + o.num_ * d1;
  LaurentBi den = den_ * d2;
  if (num.is_zero()) return *this = Scalar();
  if (!g.is_one()) {
    LaurentBi g2 = gcd_num_den(num, g);
    if (!g2.is_one()) {
      num = div_laurent(num, g2);
      den = div_laurent(den, g2);
    }
  }
  num_ = std::move(num);
  den_ = std::move(den);
  if (den_.leading().c < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) { return *this += -o; }

Scalar& Scalar::operator*=(const Scalar& o) {
  if (is_zero() || o.is_zero()) return *this = Scalar();
  if (den_.is_one() && o.den_.is_one()) {
    num_ *= o.num_;
    return *this;
  }
  LaurentBi a = num_, c = o.num_, b = den_, d = o.den_;
  LaurentBi g1 = gcd_num_den(a, d);
  if (!g1.is_one()) {
    a = div_laurent(a, g1);
    d = div_laurent(d, g1);
  }
  LaurentBi g2 = gcd_num_den(c, b);
  if (!g2.is_one()) {
    c = div_laurent(c, g2);
    b = div_laurent(b, g2);
  }
  num_ = a * c;
  den_ = b * d;
  if (den_.leading().c < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) { return *this *= o.inverse(); }

bool operator<(const Scalar& x, const Scalar& y) {
  if (x.num_ != y.num_) return x.num_ < y.num_;
  return x.den_ < y.den_;
}

Rational Scalar::eval(const Rational& u0, const Rational& v0) const {
  Rational d = den_.eval(u0, v0);
  if (d == 0) throw PoleAtPoint("denominator vanishes at evaluation point");
  return num_.eval(u0, v0) / d;
}

std::string Scalar::to_string() const {
  std::string n = qgc::to_string(num_);
  if (den_.is_one()) return n;
  std::string d = qgc::to_string(den_);
  if (num_.size() > 1) n = "(" + n + ")";
  if (den_.size() > 1) d = "(" + d + ")";
  return n + "/" + d;
}

nlohmann::json Scalar::to_json() const {
  return nlohmann::json{{"num", qgc::to_json(num_)}, {"den", qgc::to_json(den_)}};
}

Scalar Scalar::from_json(const nlohmann::json& j) {
  return Scalar(laurent_from_json(j.at("num")), laurent_from_json(j.at("den")));
}

}  // namespace qgc
