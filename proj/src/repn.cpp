#include "qgc/repn.hpp"

#include <algorithm>
#include <functional>
#include <memory>
#include <mutex>

#include "qgc/errors.hpp"

namespace qgc {

namespace {

std::vector<int> unit(int n, int i) {
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  v[static_cast<std::size_t>(i - 1)] = 1;
  return v;
}

Toral omega_toral(int n, int i, bool primed) {
  Toral t = Toral::identity(n);
  (primed ? t.eta : t.phi)[static_cast<std::size_t>(i - 1)] = 1;
  return t;
}

// All nu in Q+ accepted by `keep`, visited by increasing height; `keep` must
// be closed under decreasing a coordinate.
std::vector<RootVec> contents_by_height(int n, int max_height, const std::function<bool(const RootVec&)>& keep) {
  std::vector<RootVec> out;
  std::vector<int> c(static_cast<std::size_t>(n), 0);
  for (int h = 0; h <= max_height; ++h) {
    auto rec = [&](auto&& self, int i, int left) -> void {
      if (i == n - 1) {
        c[static_cast<std::size_t>(i)] = left;
        RootVec v(c);
        if (keep(v)) out.push_back(v);
        return;
      }
      for (int k = 0; k <= left; ++k) {
        c[static_cast<std::size_t>(i)] = k;
        self(self, i + 1, left - k);
      }
    };
    rec(rec, 0, h);
  }
  return out;
}

std::vector<Scalar> column(const Matrix& m, std::size_t j) {
  std::vector<Scalar> v(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
  return v;
}

bool all_zero(const std::vector<Scalar>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

// Incrementally maintained fully reduced row space.
struct RowSpace {
  std::vector<std::size_t> pivots;
  std::vector<std::vector<Scalar>> rows;

  void reduce(std::vector<Scalar>& v) const {
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const Scalar c = v[pivots[k]];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!rows[k][j].is_zero()) v[j] -= c * rows[k][j];
    }
  }
  bool insert(std::vector<Scalar> v) {
    reduce(v);
    std::size_t p = 0;
    while (p < v.size() && v[p].is_zero()) ++p;
    if (p == v.size()) return false;
    const Scalar inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    for (auto& row : rows) {
      const Scalar c = row[p];
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < v.size(); ++j)
        if (!v[j].is_zero()) row[j] -= c * v[j];
    }
    pivots.push_back(p);
    rows.push_back(std::move(v));
    return true;
  }
  bool is_pivot(std::size_t j) const {
    for (std::size_t p : pivots)
      if (p == j) return true;
    return false;
  }
};

}  // namespace

Scalar char_pair(const QGroup& g, const Weight& lambda, const Weight& mu, const Toral& t) {
  const RootSystemB& R = g.roots();
  Scalar out = g.rho_char(R.alpha_coords(lambda), t);
  std::vector<int> sum(t.eta.size());
  for (std::size_t j = 0; j < sum.size(); ++j) sum[j] = t.eta[j] + t.phi[j];
  const Rational k = R.inner(R.to_weight(RootVec(sum)), mu);
  if (k != 0) out *= Scalar::rs_power(k, -k);
  return out;
}

Weight WeightModule::weight(std::size_t k) const { return lambda_ - g_->roots().to_weight(contents_[k]); }

std::map<Weight, int> WeightModule::multiplicities() const {
  std::map<Weight, int> out;
  for (std::size_t k = 0; k < dim(); ++k) ++out[weight(k)];
  return out;
}

Scalar WeightModule::toral_value(std::size_t k, const Toral& t) const { return char_pair(*g_, weight(k), mu_, t); }

Matrix WeightModule::toral_matrix(const Toral& t) const {
  Matrix m(dim(), dim());
  for (std::size_t k = 0; k < dim(); ++k) m(k, k) = toral_value(k, t);
  return m;
}

nlohmann::json WeightModule::to_json() const {
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& [w, c] : multiplicities()) weights.push_back({{"weight", w.doubled()}, {"mult", c}});
  nlohmann::json basis = nlohmann::json::array();
  for (std::size_t k = 0; k < dim(); ++k) basis.push_back({{"f", labels_[k]}, {"weight", weight(k).doubled()}});
  return {{"rank", g_->rank()},
          {"lambda", lambda_.doubled()},
          {"mu", mu_.doubled()},
          {"depth", depth_},
          {"dim", dim()},
          {"weights", weights},
          {"basis", basis}};
}

namespace {

// Verma module restricted to the contents accepted by `keep`.
void fill_verma(WeightModule& m, const QGroup& g, std::vector<Word>& labels, std::vector<RootVec>& contents,
                std::vector<Matrix>& e_mats, std::vector<Matrix>& f_mats, const std::vector<RootVec>& degs) {
  const int n = g.rank();
  std::map<Word, std::size_t> index;
  for (const RootVec& nu : degs)
    for (const Word& w : g.graded_basis(Side::F, nu).reps) {
      index.emplace(w, labels.size());
      labels.push_back(w);
      contents.push_back(nu);
    }
  const std::size_t d = labels.size();
  e_mats.assign(static_cast<std::size_t>(n), Matrix(d, d));
  f_mats.assign(static_cast<std::size_t>(n), Matrix(d, d));
  for (int i = 1; i <= n; ++i) {
    Matrix& fm = f_mats[static_cast<std::size_t>(i - 1)];
    Matrix& em = e_mats[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = 0; k < d; ++k) {
      Word w{i};
      w.insert(w.end(), labels[k].begin(), labels[k].end());
      RootVec target = contents[k] + RootVec::simple(n, i);
      if (std::find(degs.begin(), degs.end(), target) != degs.end())
        for (const auto& [rep, c] : g.reduce_word(Side::F, w)) fm(index.at(rep), k) += c;
      if (contents[k].is_zero()) continue;
      const Element prod = g.e(i) * g.f_word(labels[k]);
      for (const auto& [key, c] : prod.terms()) {
        if (!key.e.empty()) continue;
        em(index.at(key.f), k) += c * char_pair(g, m.highest(), m.shift(), key.t);
      }
    }
  }
}

}  // namespace

WeightModule verma(const QGroup& g, const Weight& lambda, const Weight& mu, int depth) {
  if (depth < 0) throw IndexOutOfRange("verma: depth must be nonnegative");
  if (lambda.rank() != g.rank() || mu.rank() != g.rank()) throw RankMismatch("verma: rank mismatch");
  WeightModule m(g, lambda, mu);
  m.depth_ = depth;
  const auto degs = contents_by_height(g.rank(), depth, [](const RootVec&) { return true; });
  fill_verma(m, g, m.labels_, m.contents_, m.e_, m.f_, degs);
  return m;
}

const WeightModule& irreducible(const QGroup& g, const Weight& lambda) {
  static std::mutex mu;
  static std::map<std::pair<int, Weight>, std::unique_ptr<WeightModule>> cache;
  const RootSystemB& R = g.roots();
  if (lambda.rank() != g.rank()) throw RankMismatch("irreducible: rank mismatch");
  if (!lambda.in_weight_lattice()) throw NotInLattice("irreducible: weight not in the weight lattice");
  if (!R.is_dominant(lambda)) throw NotDominant("irreducible: highest weight must be dominant");
  {
    std::lock_guard lock(mu);
    auto it = cache.find({g.rank(), lambda});
    if (it != cache.end()) return *it->second;
  }
  const int n = g.rank();
  // Weights of L(lambda) lie in lambda - [0, 2 lambda] (the lowest weight is -lambda).
  const RootVec box = R.to_rootvec(2 * lambda);
  auto in_box = [&](const RootVec& v) {
    for (int j = 0; j < n; ++j)
      if (v[j] > box[j]) return false;
    return true;
  };
  const auto degs = contents_by_height(n, box.height(), in_box);
  WeightModule V(g, lambda, Weight::zero(n));
  fill_verma(V, g, V.labels_, V.contents_, V.e_, V.f_, degs);
  const std::size_t d = V.dim();

  // Submodule generated by f_i^{m_i + 1} v, closed under the f_j.
  std::map<RootVec, std::vector<std::size_t>> slots;
  for (std::size_t k = 0; k < d; ++k) slots[V.contents_[k]].push_back(k);
  std::map<RootVec, RowSpace> sub;
  std::vector<std::pair<RootVec, std::vector<Scalar>>> queue;
  auto restrict_to = [&](const RootVec& nu, const std::vector<Scalar>& full) {
    std::vector<Scalar> out;
    for (std::size_t k : slots.at(nu)) out.push_back(full[k]);
    return out;
  };
  auto push = [&](const RootVec& nu, const std::vector<Scalar>& full) {
    if (all_zero(full)) return;
    if (sub[nu].insert(restrict_to(nu, full))) queue.emplace_back(nu, full);
  };
  for (int i = 1; i <= n; ++i) {
    const int m_i = static_cast<int>(R.coroot_pair(lambda, i).get_num().get_si());
    RootVec nu = RootVec::simple(n, i);
    std::vector<Scalar> v(d);
    v[0] = 1;
    bool inside = true;
    for (int k = 0; k <= m_i; ++k) {
      if (k > 0) nu += RootVec::simple(n, i);
      if (!in_box(nu)) {
        inside = false;
        break;
      }
      v = V.f_[static_cast<std::size_t>(i - 1)].apply(v);
    }
    if (inside) push(nu, v);
  }
  for (std::size_t q = 0; q < queue.size(); ++q) {
    const auto [nu, v] = queue[q];
    for (int j = 1; j <= n; ++j) {
      const RootVec next = nu + RootVec::simple(n, j);
      if (!in_box(next)) continue;
      push(next, V.f_[static_cast<std::size_t>(j - 1)].apply(v));
    }
  }

  // Quotient basis: non-pivot coordinates of each weight space.
  auto L = std::make_unique<WeightModule>(g, lambda, Weight::zero(n));
  std::vector<std::size_t> chosen;
  std::map<std::size_t, std::size_t> position;
  for (const RootVec& nu : degs) {
    const auto& sl = slots.at(nu);
    const RowSpace& rs = sub[nu];
    for (std::size_t a = 0; a < sl.size(); ++a) {
      if (rs.is_pivot(a)) continue;
      position[sl[a]] = chosen.size();
      chosen.push_back(sl[a]);
      L->labels_.push_back(V.labels_[sl[a]]);
      L->contents_.push_back(nu);
    }
  }
  const std::size_t ld = chosen.size();
  auto project = [&](const std::vector<Scalar>& full, Matrix& out, std::size_t col) {
    for (const auto& [nu, sl] : slots) {
      std::vector<Scalar> part = restrict_to(nu, full);
      if (all_zero(part)) continue;
      sub[nu].reduce(part);
      for (std::size_t a = 0; a < sl.size(); ++a)
        if (!part[a].is_zero()) out(position.at(sl[a]), col) = part[a];
    }
  };
  L->e_.assign(static_cast<std::size_t>(n), Matrix(ld, ld));
  L->f_.assign(static_cast<std::size_t>(n), Matrix(ld, ld));
  for (int i = 1; i <= n; ++i)
    for (std::size_t c = 0; c < ld; ++c) {
      std::vector<Scalar> unit_vec(d);
      unit_vec[chosen[c]] = 1;
      project(V.e_[static_cast<std::size_t>(i - 1)].apply(unit_vec), L->e_[static_cast<std::size_t>(i - 1)], c);
      project(V.f_[static_cast<std::size_t>(i - 1)].apply(unit_vec), L->f_[static_cast<std::size_t>(i - 1)], c);
    }

  std::lock_guard lock(mu);
  auto [it, fresh] = cache.emplace(std::make_pair(g.rank(), lambda), std::move(L));
  return *it->second;
}

Matrix act(const Element& x, const WeightModule& m) {
  const QGroup& g = m.group();
  const std::size_t d = m.dim();
  Matrix out(d, d);
  std::map<Word, Matrix> e_cache, f_cache;
  auto word_matrix = [&](const Word& w, bool is_e) -> const Matrix& {
    auto& cache = is_e ? e_cache : f_cache;
    auto it = cache.find(w);
    if (it != cache.end()) return it->second;
    Matrix p = Matrix::identity(d);
    for (int i : w) p = p * (is_e ? m.e_matrix(i) : m.f_matrix(i));
    return cache.emplace(w, std::move(p)).first->second;
  };
  for (const auto& [key, c] : x.terms()) {
    if (m.depth() >= 0 && static_cast<int>(key.f.size()) - static_cast<int>(key.e.size()) > m.depth())
      throw TruncationOverflow("act: lowering word " + word_to_string(key.f) + " exceeds the truncation depth");
    const Matrix& fe = word_matrix(key.e, true);
    const Matrix& ff = word_matrix(key.f, false);
    Matrix te = fe;
    for (std::size_t i = 0; i < d; ++i) {
      const Scalar tv = m.toral_value(i, key.t) * c;
      for (std::size_t j = 0; j < d; ++j)
        if (!te(i, j).is_zero()) te(i, j) *= tv;
    }
    out += ff * te;
  }
  (void)g;
  return out;
}

Matrix theta(const WeightModule& m) {
  const RootSystemB& R = m.group().roots();
  Matrix out(m.dim(), m.dim());
  for (std::size_t k = 0; k < m.dim(); ++k) {
    const Rational e = R.inner(R.rho(), m.weight(k)) * -2;
    out(k, k) = Scalar::rs_power(e, -e);
  }
  return out;
}

Scalar trace_fn(const QGroup& g, const Weight& lambda, const Element& x) {
  const WeightModule& L = irreducible(g, lambda);
  return (act(x, L) * theta(L)).trace();
}

Scalar matrix_coeff(const WeightModule& mod, std::size_t f, const std::vector<Scalar>& m, const Element& x) {
  if (f >= mod.dim() || m.size() != mod.dim()) throw IndexOutOfRange("matrix_coeff: index out of range");
  return act(x, mod).apply(m)[f];
}

bool check_ef_power(const WeightModule& V, int i, int k) {
  const QGroup& g = V.group();
  if (k < 1) throw IndexOutOfRange("check_ef_power: k must be positive");
  if (V.depth() < 0 || k > V.depth()) throw TruncationOverflow("check_ef_power: power exceeds the truncation depth");
  std::vector<Scalar> prev(V.dim());
  prev[V.top()] = 1;
  for (int t = 1; t < k; ++t) prev = V.f_matrix(i).apply(prev);
  const std::vector<Scalar> cur = V.f_matrix(i).apply(prev);
  const std::vector<Scalar> lhs = V.e_matrix(i).apply(cur);
  const int n = g.rank();
  const Scalar rw = V.toral_value(V.top(), omega_toral(n, i, false));
  const Scalar rwp = V.toral_value(V.top(), omega_toral(n, i, true));
  const Scalar coef = g.qint(k, i) * (g.r_i(i).pow(1 - k) * rw - g.s_i(i).pow(1 - k) * rwp) *
                      (g.r_i(i) - g.s_i(i)).inverse();
  for (std::size_t a = 0; a < V.dim(); ++a)
    if (lhs[a] != coef * prev[a]) return false;
  return true;
}

bool check_singular(const WeightModule& V, int i) {
  const Rational m = V.group().roots().coroot_pair(V.highest(), i);
  if (m.get_den() != 1 || m < 0) throw NotDominant("check_singular: highest weight is not dominant integral at i");
  const int k = static_cast<int>(m.get_num().get_si()) + 1;
  if (V.depth() < 0 || k > V.depth()) throw TruncationOverflow("check_singular: power exceeds the truncation depth");
  std::vector<Scalar> v(V.dim());
  v[V.top()] = 1;
  for (int t = 0; t < k; ++t) v = V.f_matrix(i).apply(v);
  for (int j = 1; j <= V.group().rank(); ++j)
    if (!all_zero(V.e_matrix(j).apply(v))) return false;
  return true;
}

std::vector<std::string> check_module_relations(const WeightModule& m) {
  const QGroup& g = m.group();
  const int n = g.rank();
  std::vector<std::string> bad;
  const std::size_t d = m.dim();
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (bool primed : {false, true}) {
        const Toral t = omega_toral(n, j, primed);
        const Matrix tm = m.toral_matrix(t);
        const Scalar c = g.rho_char(unit(n, i), t);
        const std::string w = std::string(primed ? "w'_" : "w_") + std::to_string(j);
        if (tm * m.e_matrix(i) != c * (m.e_matrix(i) * tm)) bad.push_back(w + " e_" + std::to_string(i));
        if (tm * m.f_matrix(i) != c.inverse() * (m.f_matrix(i) * tm)) bad.push_back(w + " f_" + std::to_string(i));
      }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Matrix lhs = m.e_matrix(i) * m.f_matrix(j) - m.f_matrix(j) * m.e_matrix(i);
      Matrix rhs(d, d);
      if (i == j)
        rhs = (g.r_i(i) - g.s_i(i)).inverse() *
              (m.toral_matrix(omega_toral(n, i, false)) - m.toral_matrix(omega_toral(n, i, true)));
      for (std::size_t k = 0; k < d; ++k) {
        if (m.depth() >= 0 && m.content(k).height() >= m.depth()) continue;
        if (column(lhs, k) != column(rhs, k)) {
          bad.push_back("[e_" + std::to_string(i) + ", f_" + std::to_string(j) + "]");
          break;
        }
      }
    }
  for (Side side : {Side::E, Side::F})
    for (const Relator& rel : g.serre_relators(side)) {
      Matrix sum(d, d);
      for (const auto& [w, c] : rel.terms) {
        Matrix p = Matrix::identity(d);
        for (int i : w) p = p * (side == Side::E ? m.e_matrix(i) : m.f_matrix(i));
        sum += c * p;
      }
      if (!sum.is_zero()) bad.push_back(rel.name);
    }
  return bad;
}

bool check_theta_twist(const WeightModule& m) {
  const QGroup& g = m.group();
  const Matrix th = theta(m);
  for (int i = 1; i <= g.rank(); ++i)
    for (const Element& u : {g.e(i), g.f(i), g.omega(i), g.omega_p(i)})
      if (th * act(u, m) != act(g.antipode(g.antipode(u)), m) * th) return false;
  return true;
}

}  // namespace qgc
