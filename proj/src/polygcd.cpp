// Exact division and gcd for polynomials in Z[u, v].
//
// The gcd runs a primitive PRS in Z[u][v] (dense recursive representation),
// after cheap exits for constants, monomials and exact divisibility, which
// together cover most denominators met in practice.

#include <algorithm>
#include <map>
#include <utility>

#include "qgc/errors.hpp"
#include "qgc/scalars.hpp"

namespace qgc {

namespace {

using UPoly = std::vector<Integer>;  // index = degree
using BPoly = std::vector<UPoly>;    // index = degree in the main variable

void trim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}
void trim(BPoly& p) {
  while (!p.empty() && p.back().empty()) p.pop_back();
}
int deg(const UPoly& p) { return static_cast<int>(p.size()) - 1; }
int deg(const BPoly& p) { return static_cast<int>(p.size()) - 1; }

UPoly u_mul(const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly out(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
    }
  }
  trim(out);
  return out;
}

UPoly u_sub(const UPoly& a, const UPoly& b) {
  UPoly out(std::max(a.size(), b.size()), Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  trim(out);
  return out;
}

Integer u_content(const UPoly& a) {
  Integer g = 0;
  for (const auto& c : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

UPoly u_divexact(const UPoly& a, const Integer& c) {
  UPoly out = a;
  for (auto& x : out) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
  return out;
}

UPoly u_scale(const UPoly& a, const Integer& c) {
  UPoly out = a;
  for (auto& x : out) x *= c;
  trim(out);
  return out;
}

// Exact division over Z; false if b does not divide a.
bool u_divide(UPoly a, const UPoly& b, UPoly& q) {
  q.clear();
  if (a.empty()) return true;
  if (deg(a) < deg(b)) return false;
  q.assign(a.size() - b.size() + 1, Integer(0));
  const Integer& lb = b.back();
  for (int k = deg(a) - deg(b); k >= 0; --k) {
    Integer& top = a[static_cast<std::size_t>(k + deg(b))];
    if (top == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lb.get_mpz_t())) return false;
    Integer c;
    mpz_divexact(c.get_mpz_t(), top.get_mpz_t(), lb.get_mpz_t());
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_submul(a[static_cast<std::size_t>(k) + j].get_mpz_t(), c.get_mpz_t(), b[j].get_mpz_t());
    }
    q[static_cast<std::size_t>(k)] = c;
  }
  trim(a);
  trim(q);
  return a.empty();
}

UPoly u_prem(UPoly a, const UPoly& b) {
  const Integer& lb = b.back();
  while (!a.empty() && deg(a) >= deg(b)) {
    const std::size_t shift = static_cast<std::size_t>(deg(a) - deg(b));
    const Integer la = a.back();
    for (auto& x : a) x *= lb;
    for (std::size_t j = 0; j < b.size(); ++j) {
      mpz_submul(a[shift + j].get_mpz_t(), la.get_mpz_t(), b[j].get_mpz_t());
    }
    trim(a);
  }
  return a;
}

UPoly u_primitive(const UPoly& a) {
  if (a.empty()) return a;
  Integer c = u_content(a);
  if (a.back() < 0) c = -c;
  return u_divexact(a, c);
}

UPoly u_gcd(UPoly a, UPoly b) {
  if (a.empty()) return u_primitive(b).empty() ? b : u_scale(u_primitive(b), u_content(b));
  if (b.empty()) return u_scale(u_primitive(a), u_content(a));
  Integer c = gcd(u_content(a), u_content(b));
  a = u_primitive(a);
  b = u_primitive(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    if (deg(b) == 0) {
      a = UPoly{Integer(1)};
      break;
    }
    UPoly r = u_prem(a, b);
    a = std::move(b);
    b = u_primitive(r);
  }
  a = u_primitive(a);
  return u_scale(a, c);
}

bool u_is_one(const UPoly& a) { return a.size() == 1 && a[0] == 1; }

UPoly b_content(const BPoly& p) {
  UPoly g;
  for (const auto& c : p) {
    if (c.empty()) continue;
    g = g.empty() ? u_scale(u_primitive(c), u_content(c)) : u_gcd(g, c);
    if (deg(g) == 0) {
      // Only the integer content remains; finish it cheaply.
      Integer ic = g[0] < 0 ? Integer(-g[0]) : g[0];
      for (const auto& d : p) {
        if (ic == 1) break;
        ic = gcd(ic, u_content(d));
      }
      return UPoly{ic};
    }
  }
  if (!g.empty() && g.back() < 0) g = u_scale(g, Integer(-1));
  return g;
}

BPoly b_divide_by(const BPoly& p, const UPoly& c) {
  if (u_is_one(c)) return p;
  BPoly out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i].empty()) continue;
    if (!u_divide(p[i], c, out[i])) throw std::logic_error("content division not exact");
  }
  return out;
}

BPoly b_primitive(const BPoly& p) { return b_divide_by(p, b_content(p)); }

BPoly b_prem(BPoly a, const BPoly& b) {
  const UPoly& lb = b.back();
  while (!a.empty() && deg(a) >= deg(b)) {
    const std::size_t shift = static_cast<std::size_t>(deg(a) - deg(b));
    const UPoly la = a.back();
    for (auto& x : a) x = u_mul(x, lb);
    for (std::size_t j = 0; j < b.size(); ++j) {
      a[shift + j] = u_sub(a[shift + j], u_mul(la, b[j]));
    }
    trim(a);
  }
  return a;
}

BPoly b_gcd(BPoly a, BPoly b) {
  UPoly ca = b_content(a), cb = b_content(b);
  UPoly c = u_gcd(ca, cb);
  a = b_divide_by(a, ca);
  b = b_divide_by(b, cb);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!b.empty()) {
    if (deg(b) == 0) {
      a = BPoly{UPoly{Integer(1)}};
      break;
    }
    BPoly r = b_prem(a, b);
    a = std::move(b);
    b = r.empty() ? r : b_primitive(r);
  }
  a = b_primitive(a);
  for (auto& x : a) x = u_mul(x, c);
  trim(a);
  return a;
}


// ---------------------------------------------------------------------------
// Heuristic gcd: evaluate at a large integer, take the gcd one level down,
// rebuild by symmetric xi-adic expansion and accept only if the candidate
// divides both inputs.  With xi > 2 min(|A|, |B|) + 1 an accepted candidate is
// the true gcd.  Inputs must have integer content 1.

Integer max_norm(const UPoly& a) {
  Integer m = 0;
  for (const auto& c : a) {
    if (abs(c) > m) m = abs(c);
  }
  return m;
}

Integer max_norm(const BPoly& a) {
  Integer m = 0;
  for (const auto& c : a) {
    Integer x = max_norm(c);
    if (x > m) m = x;
  }
  return m;
}

// Symmetric remainder in (-xi/2, xi/2].
Integer sym_mod(const Integer& c, const Integer& xi) {
  Integer g;
  mpz_fdiv_r(g.get_mpz_t(), c.get_mpz_t(), xi.get_mpz_t());
  if (2 * g > xi) g -= xi;
  return g;
}

UPoly gen_poly(Integer c, const Integer& xi) {
  UPoly out;
  while (c != 0) {
    Integer g = sym_mod(c, xi);
    out.push_back(g);
    c = (c - g) / xi;
  }
  trim(out);
  return out;
}

Integer eval_at(const UPoly& a, const Integer& xi) {
  Integer acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it) acc = acc * xi + *it;
  return acc;
}

UPoly eval_at(const BPoly& a, const Integer& xi) {
  UPoly acc;
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    for (auto& x : acc) x *= xi;
    if (acc.size() < it->size()) acc.resize(it->size(), Integer(0));
    for (std::size_t j = 0; j < it->size(); ++j) acc[j] += (*it)[j];
  }
  trim(acc);
  return acc;
}

constexpr int kHeuTries = 6;
constexpr std::size_t kHeuMaxBits = 200000;

Integer next_xi(const Integer& xi) {
  Integer s;
  mpz_sqrt(s.get_mpz_t(), xi.get_mpz_t());
  mpz_sqrt(s.get_mpz_t(), s.get_mpz_t());
  return xi * 73794 / 27011 + s;
}

bool u_heu_gcd(const UPoly& a, const UPoly& b, UPoly& g);

// Full univariate gcd (content included) used by the bivariate step.
bool u_full_gcd(const UPoly& a, const UPoly& b, UPoly& g) {
  if (a.empty()) {
    g = b;
    return true;
  }
  if (b.empty()) {
    g = a;
    return true;
  }
  const Integer ca = u_content(a), cb = u_content(b);
  const Integer c = gcd(ca, cb);
  UPoly pa = u_divexact(a, ca), pb = u_divexact(b, cb);
  UPoly h;
  if (deg(pa) == 0 || deg(pb) == 0) {
    h = UPoly{Integer(1)};
  } else if (!u_heu_gcd(pa, pb, h)) {
    h = u_gcd(pa, pb);
  }
  g = u_scale(u_primitive(h), c);
  return true;
}

bool u_heu_gcd(const UPoly& a, const UPoly& b, UPoly& g) {
  Integer xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int t = 0; t < kHeuTries; ++t) {
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * static_cast<std::size_t>(std::max(deg(a), deg(b)) + 1) > kHeuMaxBits) return false;
    Integer gamma = gcd(eval_at(a, xi), eval_at(b, xi));
    UPoly cand = u_primitive(gen_poly(gamma, xi));
    UPoly q;
    if (!cand.empty() && u_divide(a, cand, q) && u_divide(b, cand, q)) {
      g = cand;
      return true;
    }
    xi = next_xi(xi);
  }
  return false;
}

BPoly b_integer_primitive(BPoly p) {
  Integer c = 0;
  for (const auto& x : p) c = gcd(c, u_content(x));
  if (c > 1) {
    for (auto& x : p) x = u_divexact(x, c);
  }
  trim(p);
  if (!p.empty() && p.back().back() < 0) {
    for (auto& x : p) x = u_scale(x, Integer(-1));
  }
  return p;
}

bool b_divides(const BPoly& a, const BPoly& b);

bool b_heu_gcd(const BPoly& a, const BPoly& b, BPoly& g) {
  Integer xi = 2 * std::min(max_norm(a), max_norm(b)) + 29;
  for (int t = 0; t < kHeuTries; ++t) {
    std::size_t span = 0;
    for (const auto& c : a) span = std::max(span, c.size());
    if (mpz_sizeinbase(xi.get_mpz_t(), 2) * (a.size() + span) > kHeuMaxBits) return false;
    UPoly gamma;
    u_full_gcd(eval_at(a, xi), eval_at(b, xi), gamma);
    // gamma(u) = G(u, xi): expand each u-coefficient xi-adically into v.
    BPoly cand;
    for (std::size_t j = 0; j < gamma.size(); ++j) {
      UPoly digits = gen_poly(gamma[j], xi);
      if (cand.size() < digits.size()) cand.resize(digits.size());
      for (std::size_t k = 0; k < digits.size(); ++k) {
        auto& slot = cand[k];
        if (slot.size() <= j) slot.resize(j + 1, Integer(0));
        slot[j] = digits[k];
      }
    }
    for (auto& c : cand) trim(c);
    cand = b_integer_primitive(std::move(cand));
    if (!cand.empty() && b_divides(a, cand) && b_divides(b, cand)) {
      g = std::move(cand);
      return true;
    }
    xi = next_xi(xi);
  }
  return false;
}

// Main variable v (exponent b), coefficients in u (exponent a).
BPoly to_bpoly(const LaurentBi& p, bool swap) {
  BPoly out;
  for (const auto& t : p.terms()) {
    const int mainexp = swap ? t.a : t.b;
    const int coefexp = swap ? t.b : t.a;
    if (out.size() <= static_cast<std::size_t>(mainexp)) out.resize(static_cast<std::size_t>(mainexp) + 1);
    auto& c = out[static_cast<std::size_t>(mainexp)];
    if (c.size() <= static_cast<std::size_t>(coefexp)) c.resize(static_cast<std::size_t>(coefexp) + 1, Integer(0));
    c[static_cast<std::size_t>(coefexp)] = t.c;
  }
  return out;
}

LaurentBi from_bpoly(const BPoly& p, bool swap) {
  std::vector<LaurentBi::Term> terms;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (p[i][j] == 0) continue;
      const int mainexp = static_cast<int>(i), coefexp = static_cast<int>(j);
      terms.push_back(LaurentBi::Term{swap ? mainexp : coefexp, swap ? coefexp : mainexp, p[i][j]});
    }
  }
  return LaurentBi::from_terms(std::move(terms));
}


bool b_divide(BPoly a, const BPoly& b, BPoly& q) {
  q.clear();
  if (a.empty()) return true;
  if (deg(a) < deg(b)) return false;
  q.assign(a.size() - b.size() + 1, UPoly{});
  const UPoly& lb = b.back();
  for (int k = deg(a) - deg(b); k >= 0; --k) {
    UPoly& top = a[static_cast<std::size_t>(k + deg(b))];
    if (top.empty()) continue;
    UPoly c;
    if (!u_divide(top, lb, c)) return false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto& slot = a[static_cast<std::size_t>(k) + j];
      slot = u_sub(slot, u_mul(c, b[j]));
    }
    q[static_cast<std::size_t>(k)] = std::move(c);
  }
  trim(a);
  if (!a.empty()) return false;
  trim(q);
  return true;
}

bool b_divides(const BPoly& a, const BPoly& b) {
  BPoly q;
  return b_divide(a, b, q);
}

LaurentBi positive_leading(LaurentBi p) {
  if (!p.is_zero() && p.leading().c < 0) p = -p;
  return p;
}

}  // namespace

bool try_divide(const LaurentBi& p, const LaurentBi& g, LaurentBi& quotient) {
  if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
  quotient = LaurentBi();
  if (p.is_zero()) return true;
  if (g.max_a() > p.max_a() || g.max_b() > p.max_b()) return false;
  if (g.is_constant()) {
    const Integer& c = g.terms()[0].c;
    for (const auto& t : p.terms()) {
      if (!mpz_divisible_p(t.c.get_mpz_t(), c.get_mpz_t())) return false;
    }
    quotient = p.divexact(c);
    return true;
  }
  // Dense recursive division is markedly faster than term-by-term for the
  // fairly full polynomials that show up as denominators.
  const bool swap = g.max_b() == 0;
  BPoly q;
  if (!b_divide(to_bpoly(p, swap), to_bpoly(g, swap), q)) return false;
  quotient = from_bpoly(q, swap);
  return true;
}

LaurentBi poly_gcd(const LaurentBi& p, const LaurentBi& q) {
  if (p.is_zero()) return positive_leading(q);
  if (q.is_zero()) return positive_leading(p);
  const int ma = std::min(p.min_a(), q.min_a());
  const int mb = std::min(p.min_b(), q.min_b());
  LaurentBi ps = p.shifted(-p.min_a(), -p.min_b());
  LaurentBi qs = q.shifted(-q.min_a(), -q.min_b());
  const Integer cp = ps.content(), cq = qs.content();
  const Integer c = gcd(cp, cq);
  LaurentBi g;
  if (ps.is_constant() || qs.is_constant()) {
    g = LaurentBi(1);
  } else {
    ps = ps.divexact(cp);
    qs = qs.divexact(cq);
    LaurentBi tmp;
    if (ps == qs || ps == -qs) {
      g = ps;
    } else if (try_divide(ps, qs, tmp)) {
      g = qs;
    } else if (try_divide(qs, ps, tmp)) {
      g = ps;
    } else {
      // Run the PRS in the variable of smaller degree.
      const bool swap = std::max(ps.max_a(), qs.max_a()) < std::max(ps.max_b(), qs.max_b());
      const BPoly a = to_bpoly(ps, swap), b = to_bpoly(qs, swap);
      BPoly h;
      if (!b_heu_gcd(a, b, h)) h = b_gcd(a, b);
      g = from_bpoly(h, swap);
    }
    g = positive_leading(g);
  }
  return (g * LaurentBi(c)).shifted(ma, mb);
}

}  // namespace qgc
