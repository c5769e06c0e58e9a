#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "qgc/center.hpp"
#include "qgc/errors.hpp"
#include "qgc/pairing.hpp"
#include "qgc/qgroup.hpp"
#include "qgc/repn.hpp"

namespace qgc::cli {

namespace {

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Value: return "value";
  }
  return "value";
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!s.empty() && s.back() == ',') out.emplace_back();
  return out;
}

std::vector<int> parse_ints(const std::string& s, int n, const std::string& what) {
  std::vector<int> out;
  for (const auto& tok : split(s)) {
    try {
      std::size_t pos = 0;
      const int v = std::stoi(tok, &pos);
      if (pos != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw UsageError(what + ": '" + tok + "' is not an integer");
    }
  }
  if (static_cast<int>(out.size()) != n)
    throw UsageError(what + ": expected " + std::to_string(n) + " entries, got " + std::to_string(out.size()));
  return out;
}

std::vector<Rational> parse_rationals(const std::string& s, int n, const std::string& what) {
  std::vector<Rational> out;
  for (const auto& tok : split(s)) {
    Rational q;
    if (tok.empty() || q.set_str(tok, 10) != 0) throw UsageError(what + ": '" + tok + "' is not a rational number");
    q.canonicalize();
    out.push_back(q);
  }
  if (static_cast<int>(out.size()) != n)
    throw UsageError(what + ": expected " + std::to_string(n) + " entries, got " + std::to_string(out.size()));
  return out;
}

struct WeightArgs {
  std::string fund, alpha;

  void add(CLI::App* app, const std::string& name) {
    auto* f = app->add_option("--" + name + "-fund", fund, "fundamental-weight coordinates c1,...,cn");
    auto* a = app->add_option("--" + name + "-alpha", alpha, "simple-root coordinates q1,...,qn (rationals)");
    f->excludes(a);
  }
  bool given() const { return !fund.empty() || !alpha.empty(); }
  Weight get(const RootSystemB& R, const std::string& name) const {
    if (!fund.empty()) return R.from_fundamental(parse_ints(fund, R.rank(), "--" + name + "-fund"));
    if (!alpha.empty()) {
      try {
        return R.from_alpha(parse_rationals(alpha, R.rank(), "--" + name + "-alpha"));
      } catch (const NotInLattice& e) {
        throw UsageError(std::string("--") + name + "-alpha: " + e.what());
      }
    }
    return Weight::zero(R.rank());
  }
};

nlohmann::json weight_json(const Weight& w) { return w.doubled(); }

nlohmann::json mults_json(const std::map<Weight, std::int64_t>& m) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, c] : m) arr.push_back({{"weight", weight_json(w)}, {"mult", c}});
  return arr;
}

nlohmann::json expansion_json(const std::map<Weight, Scalar>& ex) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [w, c] : ex) arr.push_back({{"weight", weight_json(w)}, {"coeff", c.to_json()}});
  return arr;
}

void check_rank(int n) {
  if (n < 1) throw UsageError("--n must be at least 1");
  if (n > 8) throw UsageError("--n must be at most 8");
}

// ---------------------------------------------------------------- commands

Report cmd_root_data(int n, const WeightArgs& lam) {
  const QGroup& g = QGroup::get(n);
  const RootSystemB& R = g.roots();
  Report rep{"root-data"};
  nlohmann::json simple = nlohmann::json::array(), fund = nlohmann::json::array(), pos = nlohmann::json::array();
  for (int i = 1; i <= n; ++i) {
    simple.push_back(weight_json(R.simple_root(i)));
    fund.push_back(weight_json(R.fundamental_weight(i)));
  }
  for (const Weight& w : R.positive_roots()) pos.push_back(weight_json(w));
  rep.payload = {{"rank", n},
                 {"simple_roots", simple},
                 {"fundamental_weights", fund},
                 {"positive_roots", pos},
                 {"rho", weight_json(R.rho())},
                 {"weyl_order", R.weyl_group().size()}};
  if (lam.given()) {
    const Weight w = lam.get(R, "lambda");
    rep.payload["lambda"] = weight_json(w);
    rep.payload["dominant"] = R.is_dominant(w);
    if (R.is_dominant(w)) {
      rep.payload["weyl_dim"] = R.weyl_dim(w).get_str();
      rep.payload["multiplicities"] = mults_json(R.freudenthal_mults(w));
    }
  }
  return rep;
}

Report cmd_graded_dim(int n, const std::string& sign, const std::string& nu_s) {
  const QGroup& g = QGroup::get(n);
  if (sign != "+" && sign != "-") throw UsageError("--sign must be + or -");
  const RootVec nu(parse_ints(nu_s, n, "--nu"));
  const GradedBasis& b = g.graded_basis(sign == "+" ? Side::E : Side::F, nu);
  Report rep{"graded-dim"};
  rep.payload = {{"rank", n},
                 {"sign", sign},
                 {"nu", nu.coeffs()},
                 {"dim", b.dim()},
                 {"words", b.words.size()},
                 {"representatives", b.reps},
                 {"kostant_count", g.roots().kostant_count(nu).get_str()}};
  return rep;
}

Report cmd_pairing_gram(int n, const std::string& nu_s) {
  const SkewPairing& p = SkewPairing::get(n);
  const QGroup& g = p.group();
  const RootVec nu(parse_ints(nu_s, n, "--nu"));
  const Matrix& m = p.gram(nu);
  const Scalar det = determinant(m);
  Report rep{"pairing-gram"};
  rep.payload = {{"rank", n},
                 {"nu", nu.coeffs()},
                 {"rows", g.graded_basis(Side::F, nu).reps},
                 {"cols", g.graded_basis(Side::E, nu).reps},
                 {"gram", m.to_json()},
                 {"determinant", det.to_json()},
                 {"nonsingular", !det.is_zero()}};
  if (det.is_zero()) {
    rep.status = Status::Fail;
    rep.payload["witness"] = {{"nu", nu.coeffs()}, {"reason", "singular Gram matrix"}};
  }
  return rep;
}

Report cmd_rosso_check(int n, int height, int trials, unsigned seed, int jobs) {
  const SkewPairing& p = SkewPairing::get(n);
  const QGroup& g = p.group();
  if (height < 0 || trials < 0) throw UsageError("--height and --trials must be nonnegative");
  struct Case {
    Element a, b, c;
    bool ok = false;
  };
  std::vector<Case> cases;
  std::mt19937 rng(seed);
  std::vector<Element> gens;
  for (int i = 1; i <= n; ++i)
    for (const Element& x : {g.e(i), g.f(i), g.omega(i), g.omega_p(i)}) gens.push_back(x);
  for (const Element& a : gens)
    for (int t = 0; t < trials; ++t) {
      const unsigned sb = rng(), sc = rng();
      cases.push_back({a, g.random_element(sb, height, 2), g.random_element(sc, height, 2)});
    }
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < cases.size(); k = next++)
      cases[k].ok = p.check_ad_invariance(cases[k].a, cases[k].b, cases[k].c);
  };
  std::vector<std::thread> pool;
  for (int j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report rep{"rosso-check"};
  std::size_t failures = 0;
  nlohmann::json witness;
  for (const Case& c : cases)
    if (!c.ok && failures++ == 0)
      witness = {{"a", c.a.to_string()}, {"b", c.b.to_string()}, {"c", c.c.to_string()}};
  rep.status = failures ? Status::Fail : Status::Pass;
  rep.payload = {{"rank", n}, {"height", height}, {"trials", trials}, {"seed", seed}, {"checks", cases.size()},
                 {"failures", failures}};
  if (failures) rep.payload["witness"] = witness;
  return rep;
}

Report cmd_verma(int n, const WeightArgs& lam, const WeightArgs& mu, int depth, bool check) {
  const QGroup& g = QGroup::get(n);
  const RootSystemB& R = g.roots();
  if (depth < 0) throw UsageError("--depth must be nonnegative");
  const WeightModule V = verma(g, lam.get(R, "lambda"), mu.get(R, "mu"), depth);
  Report rep{"verma"};
  rep.payload = V.to_json();
  if (!check) return rep;
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  nlohmann::json witness;
  for (int i = 1; i <= n; ++i) {
    for (int k = 1; k <= depth; ++k) {
      const bool ok = check_ef_power(V, i, k);
      checks.push_back({{"kind", "ef_power"}, {"i", i}, {"k", k}, {"ok", ok}});
      if (!ok && all) witness = {{"kind", "ef_power"}, {"i", i}, {"k", k}};
      all = all && ok;
    }
    const Rational m = R.coroot_pair(V.highest(), i);
    if (m.get_den() == 1 && m >= 0 && m.get_num().get_si() + 1 <= depth) {
      const bool ok = check_singular(V, i);
      checks.push_back({{"kind", "singular"}, {"i", i}, {"k", m.get_num().get_si() + 1}, {"ok", ok}});
      if (!ok && all) witness = {{"kind", "singular"}, {"i", i}};
      all = all && ok;
    }
  }
  const auto bad = check_module_relations(V);
  checks.push_back({{"kind", "relations"}, {"ok", bad.empty()}});
  if (!bad.empty() && all) witness = {{"kind", "relations"}, {"violated", bad}};
  all = all && bad.empty();
  rep.payload["checks"] = checks;
  rep.status = all ? Status::Pass : Status::Fail;
  if (!all) rep.payload["witness"] = witness;
  return rep;
}

Report cmd_irrep(int n, const WeightArgs& lam) {
  const QGroup& g = QGroup::get(n);
  const RootSystemB& R = g.roots();
  const Weight w = lam.get(R, "lambda");
  const WeightModule& L = irreducible(g, w);
  const auto expect = R.freudenthal_mults(w);
  bool match = L.multiplicities().size() == expect.size();
  for (const auto& [mu, m] : expect) {
    auto mine = L.multiplicities();
    match = match && mine.count(mu) && mine.at(mu) == m;
  }
  Report rep{"irrep"};
  rep.payload = L.to_json();
  rep.payload.erase("basis");
  rep.payload["weyl_dim"] = R.weyl_dim(w).get_str();
  rep.payload["freudenthal_match"] = match;
  if (!match) {
    rep.status = Status::Fail;
    rep.payload["witness"] = {{"expected", mults_json(expect)}};
  }
  return rep;
}

Report cmd_central(int n, const WeightArgs& lam, const std::string& method, bool verify) {
  const QGroup& g = QGroup::get(n);
  const Weight w = lam.get(g.roots(), "lambda");
  if (method != "trace" && method != "solve") throw UsageError("--method must be trace or solve");
  const CentralCandidate c = method == "trace" ? central_from_trace(g, w) : central_by_solve(g, w);
  Report rep{"central"};
  rep.payload = c.to_json();
  rep.payload["hc_image"] = hc_xi(g, c.z).to_json();
  if (verify) {
    const bool ok = is_central(g, c.z);
    rep.payload["central"] = ok;
    rep.status = ok ? Status::Pass : Status::Fail;
    if (!ok) rep.payload["witness"] = {{"reason", "ad-action of a generator is nontrivial"}};
  }
  return rep;
}

Report cmd_hc_image(int n, const WeightArgs& lam) {
  const QGroup& g = QGroup::get(n);
  const Weight w = lam.get(g.roots(), "lambda");
  const ToralPart xi = hc_xi(g, central_from_trace(g, w).z);
  Report rep{"hc-image"};
  rep.payload = {{"rank", n}, {"lambda", weight_json(w)}, {"image", xi.to_json()}, {"terms", xi.terms().size()}};
  const auto ex = av_expansion(g, xi);
  rep.payload["weyl_invariant"] = ex.has_value();
  if (ex) {
    rep.payload["av_expansion"] = expansion_json(*ex);
    rep.payload["triangular"] = dominance_triangular(g, *ex, w);
  }
  return rep;
}

Report cmd_parity_kernel(int n, int bound, const std::string& mode) {
  if (mode != "lambda" && mode != "full") throw UsageError("--mode must be lambda or full");
  if (bound < 1) throw UsageError("--bound must be at least 1");
  const auto k = parity_kernel(n, bound, mode == "lambda" ? KernelMode::LambdaOnly : KernelMode::Full);
  Report rep{"parity-kernel"};
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& [eta, phi] : k) arr.push_back({{"eta", eta}, {"phi", phi}});
  rep.payload = {{"rank", n}, {"bound", bound}, {"mode", mode}, {"kernel", arr}, {"count", k.size()}};
  return rep;
}

Report cmd_selftest() {
  Report rep{"selftest"};
  nlohmann::json checks = nlohmann::json::array();
  bool all = true;
  auto record = [&](const std::string& name, bool ok) {
    checks.push_back({{"name", name}, {"ok", ok}});
    all = all && ok;
  };
  for (int n = 1; n <= 2; ++n) {
    bool ok = true;
    for (const auto& [name, rel] : QGroup::get(n).relations()) ok = ok && rel.is_zero();
    record("relations n=" + std::to_string(n), ok);
  }
  const QGroup& g = QGroup::get(2);
  const RootSystemB& R = g.roots();
  const SkewPairing& p = SkewPairing::get(2);
  record("generator pairing", p.skew_pair(g.f(1), g.e(1)) == (g.s_i(1) - g.r_i(1)).inverse());
  record("graded dimension", g.graded_basis(Side::E, RootVec({2, 1})).dim() == 2);
  const WeightModule& L = irreducible(g, R.fundamental_weight(1));
  record("irreducible dimension", L.dim() == 5);
  record("theta twist", check_theta_twist(L));
  const Element z = central_from_trace(g, R.fundamental_weight(1)).z;
  ToralPart expect;
  for (const auto& [mu, m] : R.freudenthal_mults(R.fundamental_weight(1))) {
    const RootVec v = R.to_rootvec(mu);
    std::vector<int> neg = v.coeffs();
    for (int& x : neg) x = -x;
    expect.add_term(Toral{v.coeffs(), neg}, Scalar(static_cast<long>(m)));
  }
  record("central element image", hc_xi(g, z) == expect);
  record("parity kernel n=1", !parity_kernel(1, 2, KernelMode::LambdaOnly).empty());
  rep.payload = {{"checks", checks}};
  rep.status = all ? Status::Pass : Status::Fail;
  if (!all) rep.payload["witness"] = "see checks";
  return rep;
}

std::string render_text(const Report& rep) {
  std::ostringstream os;
  os << rep.command << ": " << status_name(rep.status) << "\n";
  for (const auto& [k, v] : rep.payload.items()) {
    if (v.is_primitive()) {
      os << "  " << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    } else {
      os << "  " << k << ": " << v.dump() << "\n";
    }
  }
  return os.str();
}

}  // namespace

nlohmann::json Report::to_json() const {
  return {{"command", command}, {"status", status_name(status)}, {"payload", payload}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations in the two-parameter quantum group of type B_n", "qgc"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  int jobs = 1;
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  int n = 0;
  auto add_rank = [&](CLI::App* sub) { sub->add_option("--n", n, "rank")->required(); };

  auto* root_data = app.add_subcommand("root-data", "root system data and weight multiplicities");
  add_rank(root_data);
  WeightArgs rd_lam;
  rd_lam.add(root_data, "lambda");

  auto* graded = app.add_subcommand("graded-dim", "dimension of a graded piece of U^+ or U^-");
  add_rank(graded);
  std::string sign, nu;
  graded->add_option("--sign", sign, "+ or -")->required();
  graded->add_option("--nu", nu, "degree c1,...,cn")->required();

  auto* gram = app.add_subcommand("pairing-gram", "Gram matrix of the skew pairing in one degree");
  add_rank(gram);
  gram->add_option("--nu", nu, "degree c1,...,cn")->required();

  auto* rosso = app.add_subcommand("rosso-check", "ad-invariance of the Rosso form on random elements");
  add_rank(rosso);
  int height = 2, trials = 10;
  unsigned seed = 1;
  rosso->add_option("--height", height, "maximal word height");
  rosso->add_option("--trials", trials, "random pairs per generator");
  rosso->add_option("--seed", seed, "random seed");

  auto* verma_cmd = app.add_subcommand("verma", "truncated Verma module");
  add_rank(verma_cmd);
  WeightArgs v_lam, v_mu;
  v_lam.add(verma_cmd, "lambda");
  v_mu.add(verma_cmd, "mu");
  int depth = 2;
  bool check46 = false;
  verma_cmd->add_option("--depth", depth, "truncation depth");
  verma_cmd->add_flag("--check-eq46", check46, "check e_i f_i^k v and singular vectors");

  auto* irrep_cmd = app.add_subcommand("irrep", "irreducible module L(lambda)");
  add_rank(irrep_cmd);
  WeightArgs i_lam;
  i_lam.add(irrep_cmd, "lambda");

  auto* central_cmd = app.add_subcommand("central", "central element z_lambda");
  add_rank(central_cmd);
  WeightArgs c_lam;
  c_lam.add(central_cmd, "lambda");
  std::string method = "trace";
  bool verify = false;
  central_cmd->add_option("--method", method, "trace or solve");
  central_cmd->add_flag("--verify", verify, "check centrality");

  auto* hc_cmd = app.add_subcommand("hc-image", "Harish-Chandra image of z_lambda");
  add_rank(hc_cmd);
  WeightArgs h_lam;
  h_lam.add(hc_cmd, "lambda");

  auto* parity_cmd = app.add_subcommand("parity-kernel", "toral monomials invisible to the characters");
  add_rank(parity_cmd);
  int bound = 3;
  std::string mode = "lambda";
  parity_cmd->add_option("--bound", bound, "coordinate bound");
  parity_cmd->add_option("--mode", mode, "lambda or full");

  auto* self_cmd = app.add_subcommand("selftest", "quick consistency checks");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::Success&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Report rep;
  try {
    auto need_lambda = [](const WeightArgs& w) {
      if (!w.given()) throw UsageError("one of --lambda-fund or --lambda-alpha is required");
    };
    if (*self_cmd) {
      rep = cmd_selftest();
    } else {
      check_rank(n);
      if (*root_data) rep = cmd_root_data(n, rd_lam);
      else if (*graded) rep = cmd_graded_dim(n, sign, nu);
      else if (*gram) rep = cmd_pairing_gram(n, nu);
      else if (*rosso) rep = cmd_rosso_check(n, height, trials, seed, jobs);
      else if (*verma_cmd) rep = cmd_verma(n, v_lam, v_mu, depth, check46);
      else if (*irrep_cmd) {
        need_lambda(i_lam);
        rep = cmd_irrep(n, i_lam);
      } else if (*central_cmd) {
        need_lambda(c_lam);
        rep = cmd_central(n, c_lam, method, verify);
      } else if (*hc_cmd) {
        need_lambda(h_lam);
        rep = cmd_hc_image(n, h_lam);
      } else if (*parity_cmd) rep = cmd_parity_kernel(n, bound, mode);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const RankMismatch& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    rep.command = app.get_subcommands().front()->get_name();
    rep.status = Status::Fail;
    rep.payload = {{"error", e.kind()}, {"message", e.what()}, {"witness", {{"error", e.kind()}}}};
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  err << "[qgc] " << rep.command << " finished in " << rep.seconds << " s\n";
  if (format == "json") out << rep.to_json().dump(2) << "\n";
  else out << render_text(rep);
  return rep.exit_code();
}

}  // namespace qgc::cli
