#include "qgc/rootdata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <numeric>
#include <sstream>

#include "qgc/errors.hpp"

namespace qgc {

// ------------------------------------------------------------------- Weight

Weight Weight::eps(const std::vector<int>& coords) {
  std::vector<int> d(coords.size());
  std::transform(coords.begin(), coords.end(), d.begin(), [](int x) { return 2 * x; });
  return Weight(std::move(d));
}

bool Weight::in_weight_lattice() const {
  if (d_.empty()) return true;
  const int p = d_[0] & 1;
  return std::all_of(d_.begin(), d_.end(), [p](int x) { return (x & 1) == p; });
}

bool Weight::in_root_lattice() const {
  return std::all_of(d_.begin(), d_.end(), [](int x) { return (x & 1) == 0; });
}

Weight Weight::operator-() const {
  Weight w = *this;
  for (auto& x : w.d_) x = -x;
  return w;
}

Weight& Weight::operator+=(const Weight& o) {
  if (o.d_.size() != d_.size()) throw RankMismatch("weight ranks differ");
  for (std::size_t i = 0; i < d_.size(); ++i) d_[i] += o.d_[i];
  return *this;
}

Weight& Weight::operator-=(const Weight& o) { return *this += -o; }

Weight operator*(int k, Weight x) {
  for (auto& v : x.d_) v *= k;
  return x;
}

std::string Weight::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < d_.size(); ++i) {
    if (i) os << ',';
    os << make_rational(d_[i], 2);
  }
  os << ')';
  return os.str();
}

// ------------------------------------------------------------------ RootVec

RootVec RootVec::simple(int n, int i) {
  RootVec v = zero(n);
  v.c_[static_cast<std::size_t>(i - 1)] = 1;
  return v;
}

int RootVec::height() const { return std::accumulate(c_.begin(), c_.end(), 0); }

bool RootVec::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
}

bool RootVec::in_positive_cone() const {
  return std::all_of(c_.begin(), c_.end(), [](int x) { return x >= 0; });
}

RootVec RootVec::operator-() const {
  RootVec v = *this;
  for (auto& x : v.c_) x = -x;
  return v;
}

RootVec& RootVec::operator+=(const RootVec& o) {
  if (o.c_.size() != c_.size()) throw RankMismatch("root vector ranks differ");
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

RootVec& RootVec::operator-=(const RootVec& o) { return *this += -o; }

std::string RootVec::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
  os << ']';
  return os.str();
}

// -------------------------------------------------------------- WeylElement

WeylElement WeylElement::identity(int n) {
  WeylElement w;
  w.perm.resize(static_cast<std::size_t>(n));
  std::iota(w.perm.begin(), w.perm.end(), 0);
  w.sign.assign(static_cast<std::size_t>(n), 1);
  return w;
}

WeylElement WeylElement::simple_reflection(int n, int i) {
  WeylElement w = identity(n);
  if (i < n) {
    std::swap(w.perm[static_cast<std::size_t>(i - 1)], w.perm[static_cast<std::size_t>(i)]);
  } else {
    w.sign[static_cast<std::size_t>(n - 1)] = -1;
  }
  return w;
}

WeylElement WeylElement::compose(const WeylElement& other) const {
  // (this o other)(eps_i) = this(other.sign[i] eps_{other.perm[i]})
  WeylElement w;
  const std::size_t n = perm.size();
  w.perm.resize(n);
  w.sign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(other.perm[i]);
    w.perm[i] = perm[j];
    w.sign[i] = other.sign[i] * sign[j];
  }
  return w;
}

WeylElement WeylElement::inverse() const {
  WeylElement w;
  const std::size_t n = perm.size();
  w.perm.resize(n);
  w.sign.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(perm[i]);
    w.perm[j] = static_cast<int>(i);
    w.sign[j] = sign[i];
  }
  return w;
}

Weight WeylElement::apply(const Weight& w) const {
  std::vector<int> out(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    out[static_cast<std::size_t>(perm[i])] = sign[i] * w.doubled()[i];
  }
  return Weight(std::move(out));
}

// -------------------------------------------------------------- RootSystemB

RootSystemB::RootSystemB(int n) : n_(n) {
  if (n < 1) throw IndexOutOfRange("rank must be at least 1");
  // epsilon_i - epsilon_j, epsilon_i, epsilon_i + epsilon_j in alpha-coordinates
  for (int i = 1; i <= n; ++i) {
    for (int j = i + 1; j <= n; ++j) {
      std::vector<int> c(static_cast<std::size_t>(n), 0);
      for (int k = i; k < j; ++k) c[static_cast<std::size_t>(k - 1)] = 1;
      positive_alpha_.emplace_back(c);
      for (int k = j; k <= n; ++k) c[static_cast<std::size_t>(k - 1)] = 2;
      positive_alpha_.emplace_back(c);
    }
    std::vector<int> c(static_cast<std::size_t>(n), 0);
    for (int k = i; k <= n; ++k) c[static_cast<std::size_t>(k - 1)] = 1;
    positive_alpha_.emplace_back(c);
  }
  std::sort(positive_alpha_.begin(), positive_alpha_.end(), [](const RootVec& x, const RootVec& y) {
    return x.height() != y.height() ? x.height() < y.height() : x > y;
  });
  for (const auto& a : positive_alpha_) positive_.push_back(to_weight(a));
}

void RootSystemB::check_rank(const Weight& w) const {
  if (w.rank() != n_) throw RankMismatch("expected rank " + std::to_string(n_));
}

Weight RootSystemB::simple_root(int i) const {
  if (i < 1 || i > n_) throw IndexOutOfRange("simple root index " + std::to_string(i));
  return to_weight(RootVec::simple(n_, i));
}

Weight RootSystemB::fundamental_weight(int i) const {
  if (i < 1 || i > n_) throw IndexOutOfRange("fundamental weight index " + std::to_string(i));
  std::vector<int> d(static_cast<std::size_t>(n_), 0);
  for (int k = 0; k < i; ++k) d[static_cast<std::size_t>(k)] = i < n_ ? 2 : 1;
  return Weight(std::move(d));
}

Weight RootSystemB::rho() const {
  std::vector<int> d(static_cast<std::size_t>(n_));
  for (int k = 0; k < n_; ++k) d[static_cast<std::size_t>(k)] = 2 * (n_ - k) - 1;
  return Weight(std::move(d));
}

Rational RootSystemB::inner(const Weight& x, const Weight& y) const {
  check_rank(x);
  check_rank(y);
  long acc = 0;
  for (int i = 0; i < n_; ++i) acc += static_cast<long>(x.doubled()[static_cast<std::size_t>(i)]) * y.doubled()[static_cast<std::size_t>(i)];
  return make_rational(acc, 4);
}

Rational RootSystemB::inner(const RootVec& x, const RootVec& y) const {
  return inner(to_weight(x), to_weight(y));
}

Rational RootSystemB::coroot_pair(const Weight& lambda, int i) const {
  const Weight a = simple_root(i);
  return 2 * inner(lambda, a) / inner(a, a);
}

std::vector<Rational> RootSystemB::alpha_coords(const Weight& lambda) const {
  check_rank(lambda);
  std::vector<Rational> out(static_cast<std::size_t>(n_));
  Rational acc = 0;
  for (int k = 0; k < n_; ++k) {
    acc += lambda.eps_coord(k);
    out[static_cast<std::size_t>(k)] = acc;
  }
  return out;
}

Weight RootSystemB::to_weight(const RootVec& v) const {
  if (v.rank() != n_) throw RankMismatch("expected rank " + std::to_string(n_));
  std::vector<int> d(static_cast<std::size_t>(n_));
  int prev = 0;
  for (int k = 0; k < n_; ++k) {
    d[static_cast<std::size_t>(k)] = 2 * (v[k] - prev);
    prev = v[k];
  }
  return Weight(std::move(d));
}

RootVec RootSystemB::to_rootvec(const Weight& lambda) const {
  check_rank(lambda);
  if (!lambda.in_root_lattice()) throw NotInLattice(lambda.to_string() + " is not in the root lattice");
  std::vector<int> c(static_cast<std::size_t>(n_));
  int acc = 0;
  for (int k = 0; k < n_; ++k) {
    acc += lambda.doubled()[static_cast<std::size_t>(k)] / 2;
    c[static_cast<std::size_t>(k)] = acc;
  }
  return RootVec(std::move(c));
}

Weight RootSystemB::from_fundamental(const std::vector<int>& coords) const {
  if (static_cast<int>(coords.size()) != n_) throw RankMismatch("expected " + std::to_string(n_) + " coordinates");
  Weight w = Weight::zero(n_);
  for (int i = 1; i <= n_; ++i) w += coords[static_cast<std::size_t>(i - 1)] * fundamental_weight(i);
  return w;
}

Weight RootSystemB::from_alpha(const std::vector<Rational>& coords) const {
  if (static_cast<int>(coords.size()) != n_) throw RankMismatch("expected " + std::to_string(n_) + " coordinates");
  std::vector<int> d(static_cast<std::size_t>(n_));
  Rational prev = 0;
  for (int k = 0; k < n_; ++k) {
    Rational x = 2 * (coords[static_cast<std::size_t>(k)] - prev);
    if (x.get_den() != 1) throw NotInLattice("alpha coordinates do not give a lattice weight");
    d[static_cast<std::size_t>(k)] = static_cast<int>(x.get_num().get_si());
    prev = coords[static_cast<std::size_t>(k)];
  }
  Weight w(std::move(d));
  if (!w.in_weight_lattice()) throw NotInLattice(w.to_string() + " is not in the weight lattice");
  return w;
}

bool RootSystemB::is_dominant(const Weight& lambda) const {
  check_rank(lambda);
  const auto& d = lambda.doubled();
  for (int k = 0; k + 1 < n_; ++k) {
    if (d[static_cast<std::size_t>(k)] < d[static_cast<std::size_t>(k + 1)]) return false;
  }
  return d[static_cast<std::size_t>(n_ - 1)] >= 0;
}

bool RootSystemB::dominated_by(const Weight& mu, const Weight& lambda) const {
  const Weight diff = lambda - mu;
  if (!diff.in_root_lattice()) return false;
  return to_rootvec(diff).in_positive_cone();
}

Weight RootSystemB::dominant_conjugate(const Weight& lambda) const {
  check_rank(lambda);
  std::vector<int> d = lambda.doubled();
  for (auto& x : d) x = std::abs(x);
  std::sort(d.begin(), d.end(), std::greater<>());
  return Weight(std::move(d));
}

Weight RootSystemB::reflect(int i, const Weight& lambda) const {
  check_rank(lambda);
  if (i < 1 || i > n_) throw IndexOutOfRange("reflection index " + std::to_string(i));
  // lambda - (lambda, alpha_i^vee) alpha_i
  return WeylElement::simple_reflection(n_, i).apply(lambda);
}

std::set<Weight> RootSystemB::weyl_orbit(const Weight& lambda) const {
  std::set<Weight> seen{lambda};
  std::deque<Weight> queue{lambda};
  while (!queue.empty()) {
    const Weight w = queue.front();
    queue.pop_front();
    for (int i = 1; i <= n_; ++i) {
      Weight x = reflect(i, w);
      if (seen.insert(x).second) queue.push_back(std::move(x));
    }
  }
  return seen;
}

const std::vector<WeylElement>& RootSystemB::weyl_group() const {
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  if (group_.empty()) {
    std::vector<int> perm(static_cast<std::size_t>(n_));
    std::iota(perm.begin(), perm.end(), 0);
    do {
      for (unsigned mask = 0; mask < (1U << n_); ++mask) {
        WeylElement w;
        w.perm = perm;
        w.sign.resize(static_cast<std::size_t>(n_));
        for (int k = 0; k < n_; ++k) w.sign[static_cast<std::size_t>(k)] = (mask >> k) & 1U ? -1 : 1;
        group_.push_back(std::move(w));
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return group_;
}

void RootSystemB::require_dominant(const Weight& lambda) const {
  check_rank(lambda);
  if (!lambda.in_weight_lattice()) throw NotInLattice(lambda.to_string() + " is not in the weight lattice");
  if (!is_dominant(lambda)) throw NotDominant(lambda.to_string() + " is not dominant");
}

std::map<Weight, std::int64_t> RootSystemB::freudenthal_mults(const Weight& lambda) const {
  require_dominant(lambda);
  // Work with 4x inner products so everything stays integral.
  auto ip4 = [&](const Weight& x, const Weight& y) {
    long acc = 0;
    for (int i = 0; i < n_; ++i) acc += static_cast<long>(x.doubled()[static_cast<std::size_t>(i)]) * y.doubled()[static_cast<std::size_t>(i)];
    return acc;
  };
  const Weight lr = lambda + rho();
  const long top = ip4(lr, lr);

  std::map<Weight, std::int64_t> mult{{lambda, 1}};
  std::set<Weight> level{lambda};
  while (!level.empty()) {
    std::set<Weight> next;
    for (const auto& w : level) {
      for (int i = 1; i <= n_; ++i) {
        Weight c = w - simple_root(i);
        if (mult.count(c) || !dominated_by(dominant_conjugate(c), lambda)) continue;
        next.insert(std::move(c));
      }
    }
    for (const auto& mu : next) {
      long num = 0;
      for (const auto& alpha : positive_) {
        Weight x = mu + alpha;
        for (;;) {
          auto it = mult.find(x);
          if (it == mult.end()) break;
          num += 2 * ip4(x, alpha) * it->second;
          x += alpha;
        }
      }
      const Weight mr = mu + rho();
      const long den = top - ip4(mr, mr);
      if (den <= 0 || num % den != 0) throw std::logic_error("Freudenthal recursion produced a non-integer");
      if (num / den > 0) mult.emplace(mu, num / den);
    }
    level.clear();
    for (const auto& mu : next) {
      if (mult.count(mu)) level.insert(mu);
    }
  }
  return mult;
}

Integer RootSystemB::weyl_dim(const Weight& lambda) const {
  require_dominant(lambda);
  const Weight lr = lambda + rho();
  Rational prod = 1;
  for (const auto& alpha : positive_) prod *= inner(lr, alpha) / inner(rho(), alpha);
  if (prod.get_den() != 1) throw std::logic_error("Weyl dimension is not an integer");
  return prod.get_num();
}

Integer RootSystemB::kostant_count(const RootVec& nu) const {
  if (nu.rank() != n_) throw RankMismatch("expected rank " + std::to_string(n_));
  if (!nu.in_positive_cone()) return 0;
  std::map<std::pair<std::size_t, RootVec>, Integer> memo;
  std::function<Integer(std::size_t, const RootVec&)> count = [&](std::size_t idx, const RootVec& rest) -> Integer {
    if (rest.is_zero()) return 1;
    if (idx == positive_alpha_.size()) return 0;
    auto key = std::make_pair(idx, rest);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Integer total = 0;
    RootVec cur = rest;
    while (cur.in_positive_cone()) {
      total += count(idx + 1, cur);
      cur -= positive_alpha_[idx];
    }
    memo.emplace(key, total);
    return total;
  };
  return count(0, nu);
}

}  // namespace qgc
