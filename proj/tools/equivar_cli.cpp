// Command-line driver: one subcommand per computation, text or JSON output.

#include "suite.hpp"

#include "equivar/burnside.hpp"
#include "equivar/config.hpp"
#include "equivar/gsets.hpp"
#include "equivar/tambara.hpp"
#include "equivar/witt.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <sstream>

using namespace equivar;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Exit status of a verb: 0 success, 1 failed comparison or check.
struct Run {
  int status = 0;
};

json json_int(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max()) return static_cast<long long>(v);
  return v.str();
}

json json_vec(const Vec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(json_int(x));
  return a;
}

json json_mat(const Mat& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) rows.push_back(json_vec(m.row(i)));
  return rows;
}

json json_group(const FgAbelianGroup& a) { return json_vec(a.invariant_factors()); }

int parse_int(const std::string& s, const std::string& what) {
  try {
    size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) throw UsageError(what);
    return v;
  } catch (const std::logic_error&) {
    throw UsageError("bad " + what + ": " + s);
  }
}

/// dihedral:<order>, cyclic:<n>, symmetric:<n>, alternating:<n>, or the short names D6, C4, S4, A4.
GroupPtr parse_group(const std::string& text) {
  std::string kind, arg;
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    kind = text.substr(0, colon);
    arg = text.substr(colon + 1);
  } else if (!text.empty()) {
    static const std::map<char, std::string> shorts{{'D', "dihedral"}, {'C', "cyclic"}, {'S', "symmetric"}, {'A', "alternating"}};
    auto it = shorts.find(text[0]);
    if (it == shorts.end()) throw UsageError("unknown group " + text);
    kind = it->second;
    arg = text.substr(1);
  }
  int n = parse_int(arg, "group size");
  if (n < 1) throw UsageError("group size must be positive: " + text);
  GroupPtr g;
  if (kind == "dihedral") {
    if (n % 2) throw UsageError("dihedral groups are named by their (even) order: " + text);
    if (n > budgets().max_group_order) throw BudgetExceeded("group order " + std::to_string(n));
    g = Group::dihedral(n / 2);
  } else if (kind == "cyclic") {
    if (n > budgets().max_group_order) throw BudgetExceeded("group order " + std::to_string(n));
    g = Group::cyclic(n);
  } else if (kind == "symmetric" || kind == "alternating") {
    if (n > 5) throw UsageError("permutation groups on more than 5 letters are not supported");
    g = kind == "symmetric" ? Group::symmetric(n) : Group::alternating(n);
    if (g->order() > budgets().max_group_order) throw BudgetExceeded("group order " + std::to_string(g->order()));
  } else {
    throw UsageError("unknown group kind " + kind);
  }
  return g;
}

int parse_sub(const Group& g, const std::string& name) {
  try {
    return g.parse_subgroup(name);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

/// constZ (Z with trivial involution), Z/<n>, gaussian.
DiscreteEsigmaRing parse_ring(const std::string& text) {
  RingWithAntiInvolution r;
  if (text == "constZ" || text == "Z") r = RingWithAntiInvolution::integers_mod(0);
  else if (text.rfind("Z/", 0) == 0) r = RingWithAntiInvolution::integers_mod(parse_int(text.substr(2), "modulus"));
  else if (text == "gaussian") r = RingWithAntiInvolution::gaussian();
  else throw UsageError("unknown ring " + text);
  return DiscreteEsigmaRing::from_ring_with_anti_involution(r);
}

GroupPtr odd_dihedral(int m) {
  if (m < 1 || m % 2 == 0) throw UsageError("--m must be odd");
  if (2 * m > budgets().max_group_order) throw BudgetExceeded("group order " + std::to_string(2 * m));
  return Group::dihedral(m);
}

json group_json(const Group& g) {
  json j;
  if (g.is_dihedral()) {
    j["type"] = "dihedral";
    j["m"] = g.dihedral_m();
  } else {
    j["type"] = "perm";
    j["name"] = g.name();
    j["generators"] = g.perm_generators();
  }
  j["order"] = g.order();
  json labels = json::array();
  for (int x = 0; x < g.order(); ++x) labels.push_back(g.label(x));
  j["labels"] = labels;
  return j;
}

json envelope(const std::string& verb) {
  json j;
  j["schema"] = "equivar." + verb + "/1";
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// ---------------------------------------------------------------- verbs

Run do_marks(const std::string& group, bool as_json) {
  auto g = parse_group(group);
  auto ring = BurnsideRing::get(g, g->whole());
  const Mat& t = ring->marks_table();
  std::vector<std::string> names;
  for (int s : ring->reps()) names.push_back(g->subgroup_name(s));
  if (as_json) {
    json j = envelope("marks");
    j["group"] = group_json(*g);
    j["subgroups"] = names;
    j["marks"] = json_mat(t);
    emit(j);
    return {};
  }
  // Rows G/H, columns K: |(G/H)^K|.
  size_t w = 6;
  for (const auto& n : names) w = std::max(w, n.size() + 4);
  std::cout << std::setw(static_cast<int>(w)) << "";
  for (const auto& n : names) std::cout << std::setw(static_cast<int>(w)) << n;
  std::cout << "\n";
  for (int i = 0; i < t.rows(); ++i) {
    std::cout << std::setw(static_cast<int>(w)) << ("G/" + names[i]);
    for (int j = 0; j < t.cols(); ++j) std::cout << std::setw(static_cast<int>(w)) << t(i, j).str();
    std::cout << "\n";
  }
  return {};
}

Run do_burnside_mul(const std::string& group, const std::string& sub, const std::string& a, const std::string& b, bool as_json) {
  auto g = parse_group(group);
  int top = sub.empty() ? g->whole() : parse_sub(*g, sub);
  auto ring = BurnsideRing::get(g, top);
  BurnsideElement x, y;
  try {
    x = parse_burnside(ring, a);
    y = parse_burnside(ring, b);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto p = x * y;
  if (!as_json) {
    std::cout << p.to_string() << "\n";
    return {};
  }
  json j = envelope("burnside.mul");
  j["group"] = group_json(*g);
  j["top"] = g->subgroup_name(top);
  json basis = json::array();
  for (int i = 0; i < ring->rank(); ++i) basis.push_back(ring->basis_name(i));
  j["basis"] = basis;
  j["a"] = json_vec(x.coeffs);
  j["b"] = json_vec(y.coeffs);
  j["product"] = json_vec(p.coeffs);
  j["product_text"] = p.to_string();
  emit(j);
  return {};
}

Run do_coinduce(const std::string& group, const std::string& sub, const std::string& labels, bool as_json) {
  auto g = parse_group(group);
  int h = parse_sub(*g, sub);
  int n = 1;
  for (char c : labels) n += c == ',';
  auto x = coinduce(GSet::trivial(g, h, n), g->whole());
  std::map<int, long long> by_class;
  long long fixed = 0;
  for (const auto& o : x.orbits()) {
    ++by_class[g->class_rep(o.stab)];
    if (o.points.size() == 1) ++fixed;
  }
  if (!as_json) {
    std::cout << "Map^" << g->subgroup_name(h) << "(" << g->name() << ", {" << labels << "}): " << x.size() << " points, "
              << fixed << " fixed\n";
    for (const auto& [s, c] : by_class) std::cout << "  " << c << " x " << g->name() << "/" << g->subgroup_name(s) << "\n";
    return {};
  }
  json j = envelope("coinduce");
  j["group"] = group_json(*g);
  j["sub"] = g->subgroup_name(h);
  j["points"] = x.size();
  j["fixed"] = fixed;
  json orbits = json::array();
  for (const auto& [s, c] : by_class) orbits.push_back({{"stabilizer", g->subgroup_name(s)}, {"count", c}});
  j["orbits"] = orbits;
  emit(j);
  return {};
}

Run do_norm(const std::string& group, const std::string& from, const std::string& functor, const std::string& compare, bool as_json) {
  auto g = parse_group(group);
  int h = parse_sub(*g, from);
  if (functor != "constZ") throw UsageError("only --functor constZ is supported");
  if (g->sub_order(h) != 2) throw UsageError("constZ needs a subgroup of order 2");
  auto n = norm_mackey(constant_Z_presentation(g, h), g->whole());
  Run r;
  json j = envelope("norm");
  j["group"] = group_json(*g);
  j["from"] = g->subgroup_name(h);
  j["diagram"] = json::parse(n.to_json());
  if (!compare.empty()) {
    if (compare != "burnside-quotient") throw UsageError("unknown comparison " + compare);
    if (!g->is_dihedral() || g->dihedral_m() % 2 == 0) throw UsageError("burnside-quotient needs D_2m with m odd");
    auto c = mackey_iso(n, suite::burnside_quotient(g));
    j["certificate"] = json::parse(c.to_json());
    if (!c.found) r.status = 1;
  }
  if (as_json) emit(j);
  else {
    std::cout << n.show();
    if (!compare.empty()) std::cout << "isomorphic to the Burnside quotient: " << (r.status ? "no" : "yes") << "\n";
  }
  return r;
}

Run do_reciprocity(const std::string& group, const std::string& sub, const std::string& top_name, bool latex, bool as_json,
                   bool verify, int trials) {
  auto g = parse_group(group);
  int h = parse_sub(*g, sub);
  int top = top_name.empty() ? g->whole() : parse_sub(*g, top_name);
  if (!g->le(h, top)) throw UsageError("--sub must lie in --top");
  auto e = reciprocity_sum(*g, top, h);
  Run r;
  json checks = json::array();
  if (verify) {
    std::vector<std::unique_ptr<TambaraInstance>> rs;
    rs.push_back(burnside_tambara(g));
    for (long long n : {0LL, 4LL, 6LL}) rs.push_back(fixed_point_tambara(g, n));
    for (const auto& inst : rs) {
      auto c = verify_reciprocity(*inst, top, h, trials, suite::options().seed);
      if (c.failures) r.status = 1;
      json x;
      x["instance"] = c.instance;
      x["summands"] = c.summands;
      x["trials"] = c.trials;
      x["failures"] = c.failures;
      if (c.failures) x["counterexample"] = c.first_failure;
      checks.push_back(x);
    }
  }
  if (as_json) {
    json j = envelope("reciprocity");
    j["group"] = group_json(*g);
    j["top"] = g->subgroup_name(top);
    j["sub"] = g->subgroup_name(h);
    j["summands"] = e->kids.empty() ? 1 : e->kids.size();
    j["text"] = to_text(*g, e);
    j["latex"] = to_latex(*g, e);
    j["expr"] = json::parse(to_json(*g, e));
    if (verify) j["verify"] = checks;
    emit(j);
  } else {
    std::cout << (latex ? to_latex(*g, e) : to_text(*g, e)) << "\n";
    for (const auto& c : checks) {
      std::cout << (c["failures"] == 0 ? "pass" : "FAIL") << "  " << c["instance"].get<std::string>() << "  "
                << c["trials"] << " trials";
      if (c.contains("counterexample")) std::cout << "  " << c["counterexample"].get<std::string>();
      std::cout << "\n";
    }
  }
  return r;
}

Run do_hr0(const std::string& ring, int m, const std::string& compare, bool as_json) {
  auto md = parse_ring(ring);
  auto g = odd_dihedral(m);
  auto h = hr0(md, g);
  Run r;
  json j = envelope("hr0");
  j["ring"] = ring;
  j["group"] = group_json(*g);
  j["diagram"] = json::parse(h.to_json());
  if (!compare.empty()) {
    if (compare != "burnside-quotient") throw UsageError("unknown comparison " + compare);
    auto c = mackey_iso(h, suite::burnside_quotient(g));
    j["certificate"] = json::parse(c.to_json());
    if (!c.found) r.status = 1;
  }
  if (as_json) emit(j);
  else {
    std::cout << h.show();
    if (!compare.empty()) std::cout << "isomorphic to the Burnside quotient: " << (r.status ? "no" : "yes") << "\n";
  }
  return r;
}

Run do_hr_homology(const std::string& ring, int m, int degree, bool as_json) {
  auto md = parse_ring(ring);
  auto g = odd_dihedral(m);
  if (degree < 0) throw UsageError("--degree must be non-negative");
  if (degree + 1 > budgets().max_bar_degree) throw BudgetExceeded("bar degree " + std::to_string(degree + 1));
  auto b = hr_complex(md, g, degree + 1);
  auto h = hr_homology(b, degree);
  if (!as_json) {
    std::cout << h.describe(*g);
    return {};
  }
  json j = envelope("hr.homology");
  j["ring"] = ring;
  j["group"] = group_json(*g);
  j["degree"] = degree;
  json levels = json::array();
  for (size_t i = 0; i < h.levels.size(); ++i)
    levels.push_back({{"subgroup", g->subgroup_name(h.levels[i])}, {"invariant_factors", json_group(h.groups[i])}});
  j["levels"] = levels;
  emit(j);
  return {};
}

Run do_witt(const std::string& ring, int p, int levels, const std::string& ops, bool coinvariants, bool as_json) {
  auto md = parse_ring(ring);
  if (levels < 1) throw UsageError("--levels must be at least 1");
  std::set<std::string> want;
  std::stringstream ss(ops);
  for (std::string op; std::getline(ss, op, ',');) {
    if (op.empty()) continue;
    if (op != "R" && op != "F" && op != "V") throw UsageError("unknown operator " + op);
    want.insert(op);
  }
  auto t = witt_tower(md, p, levels - 1);
  std::string why;
  bool ok = t.check(&why);
  json tj = json::parse(t.to_json());
  json j = envelope("witt");
  j["ring"] = ring;
  j["p"] = p;
  j["levels"] = tj["levels"];
  json maps = json::object();
  for (const auto& op : want) maps[op] = tj["maps"][op];
  j["maps"] = maps;
  j["tower_check"] = ok;
  if (!ok) j["tower_failure"] = why;
  std::optional<WittCoinvariants> c;
  if (coinvariants) {
    c = witt_coinvariants_F(t);
    j["coinvariants"] = json::parse(c->to_json())["truncations"];
  }
  if (as_json) emit(j);
  else {
    for (const auto& l : t.levels)
      std::cout << "W_" << l.k + 1 << ": D2 level " << l.top().describe() << ", underlying " << l.under().describe() << "\n";
    for (const auto& op : want)
      for (int k = 1; k < levels; ++k) {
        const auto& x = op == "R" ? t.r(k) : op == "F" ? t.f(k) : t.v(k);
        std::cout << op << "_" << k << ": coker " << cokernel(x.top).describe() << " / " << cokernel(x.under).describe() << "\n";
      }
    std::cout << "tower check: " << (ok ? "pass" : "FAIL " + why) << "\n";
    if (c)
      for (int k = 0; k <= c->K; ++k)
        std::cout << "coinvariants at truncation " << k << ": " << c->top[k].describe() << " / " << c->under[k].describe()
                  << (c->stable[k] ? "  (stable)" : "") << (k == 0 ? "  (no Frobenius below W_1)" : "") << "\n";
  }
  return {ok ? 0 : 1};
}

Run do_check(const std::string& which, int jobs, bool as_json) {
  std::vector<suite::Check> checks;
  if (which == "paper-suite") checks = suite::paper_suite();
  else if (which == "acceptance") checks = suite::acceptance_criteria();
  else throw UsageError("unknown suite " + which);
  auto results = suite::run_checks(checks, jobs);
  int failed = 0;
  for (const auto& r : results) failed += !r.pass;
  if (as_json) {
    json j = envelope("check");
    j["suite"] = which;
    json arr = json::array();
    for (const auto& r : results) arr.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    j["results"] = arr;
    j["failed"] = failed;
    emit(j);
  } else {
    size_t w = 0;
    for (const auto& r : results) w = std::max(w, r.name.size());
    for (const auto& r : results)
      std::cout << (r.pass ? "PASS  " : "FAIL  ") << std::left << std::setw(static_cast<int>(w)) << r.name << "  " << r.detail << "\n";
    std::cout << results.size() - failed << "/" << results.size() << " passed\n";
  }
  return {failed ? 1 : 0};
}

Run do_mackey_show(const std::string& group, const std::string& functor, const std::string& from, bool as_json) {
  auto g = parse_group(group);
  Mackey m;
  if (functor == "burnside") m = Mackey::representable(GSet::point(g, g->whole()));
  else if (functor == "constZ") {
    if (!g->is_dihedral() || g->dihedral_m() != 1) throw UsageError("constZ lives over dihedral:2; use norm for larger groups");
    m = constant_Z(g);
  } else if (functor == "burnside-quotient") {
    if (!g->is_dihedral() || g->dihedral_m() % 2 == 0) throw UsageError("burnside-quotient needs D_2m with m odd");
    m = suite::burnside_quotient(g);
  } else if (functor == "cosets") {
    m = Mackey::representable(GSet::cosets(g, g->whole(), parse_sub(*g, from.empty() ? "e" : from)));
  } else {
    throw UsageError("unknown functor " + functor);
  }
  if (as_json) {
    json j = envelope("mackey");
    j["group"] = group_json(*g);
    j["functor"] = functor;
    j["diagram"] = json::parse(m.to_json());
    emit(j);
  } else {
    std::cout << m.show();
  }
  return {};
}

int jobs_from_env() {
  const char* v = std::getenv("EQUIVAR_JOBS");
  if (!v || !*v) return 1;
  return std::max(1, parse_int(v, "EQUIVAR_JOBS"));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with G-sets, Mackey and Tambara functors, Real Hochschild homology and Witt vectors"};
  app.require_subcommand(1);
  app.fallthrough();

  bool as_json = false;
  int jobs = 0;
  std::uint64_t seed = 1;
  Budgets& b = budgets();
  app.add_flag("--json", as_json, "JSON output");
  app.add_option("--jobs", jobs, "Worker threads (default 1, or EQUIVAR_JOBS)");
  app.add_option("--seed", seed, "Seed for randomized checks")->capture_default_str();
  app.add_option("--max-group-order", b.max_group_order, "Largest group order")->capture_default_str();
  app.add_option("--max-coinduction", b.max_coinduction, "Largest enumerated coinduction")->capture_default_str();
  app.add_option("--max-bar-degree", b.max_bar_degree, "Largest bar construction degree")->capture_default_str();
  app.add_option("--max-witt-index", b.max_witt_index, "Largest p^k in the Witt tower")->capture_default_str();

  std::string group, sub, top, from, functor = "constZ", compare, labels = "a,b", a, bb, ring = "constZ", ops, which;
  int m = 3, degree = 0, p = 3, levels = 1, trials = 20;
  bool latex = false, verify = false, coinv = false;
  std::function<Run()> action;

  auto* marks = app.add_subcommand("marks", "Table of marks");
  marks->add_option("--group", group, "Group, e.g. dihedral:6")->required();
  marks->callback([&] { action = [&] { return do_marks(group, as_json); }; });

  auto* burnside = app.add_subcommand("burnside", "Burnside ring arithmetic");
  burnside->require_subcommand(1);
  auto* mul = burnside->add_subcommand("mul", "Product of two classes");
  mul->add_option("--group", group)->required();
  mul->add_option("--a", a, "Class expression, e.g. \"2 + [G/D2]\"")->required();
  mul->add_option("--b", bb)->required();
  mul->add_option("--top", top, "Subgroup whose Burnside ring is used (default G)");
  mul->callback([&] { action = [&] { return do_burnside_mul(group, top, a, bb, as_json); }; });

  auto* coind = app.add_subcommand("coinduce", "Orbit decomposition of Map^H(G, T) for a trivial H-set T");
  coind->add_option("--group", group)->required();
  coind->add_option("--sub", sub)->required();
  coind->add_option("--labels", labels, "Points of T")->capture_default_str();
  coind->callback([&] { action = [&] { return do_coinduce(group, sub, labels, as_json); }; });

  auto* norm = app.add_subcommand("norm", "Norm of a Mackey functor");
  norm->add_option("--group", group)->required();
  norm->add_option("--from", from)->required();
  norm->add_option("--functor", functor)->capture_default_str();
  norm->add_option("--compare", compare, "burnside-quotient");
  norm->callback([&] { action = [&] { return do_norm(group, from, functor, compare, as_json); }; });

  auto* recip = app.add_subcommand("reciprocity", "Tambara reciprocity formula for N_H^K(a + b)");
  recip->add_option("--group", group)->required();
  recip->add_option("--sub", sub)->required();
  recip->add_option("--top", top, "K (default G)");
  recip->add_flag("--latex", latex);
  recip->add_flag("--verify", verify, "Compare with brute-force norms");
  recip->add_option("--trials", trials)->capture_default_str();
  recip->callback([&] { action = [&] { return do_reciprocity(group, sub, top, latex, as_json, verify, trials); }; });

  auto* h0 = app.add_subcommand("hr0", "Degree-zero Real Hochschild homology");
  h0->add_option("--ring", ring)->capture_default_str();
  h0->add_option("--m", m)->required();
  h0->add_option("--compare", compare, "burnside-quotient");
  h0->callback([&] { action = [&] { return do_hr0(ring, m, compare, as_json); }; });

  auto* hr = app.add_subcommand("hr", "Real Hochschild homology");
  hr->require_subcommand(1);
  auto* hom = hr->add_subcommand("homology", "Homology in one degree");
  hom->add_option("--ring", ring)->capture_default_str();
  hom->add_option("--m", m)->required();
  hom->add_option("--degree", degree)->required();
  hom->callback([&] { action = [&] { return do_hr_homology(ring, m, degree, as_json); }; });

  auto* witt = app.add_subcommand("witt", "Truncated Real Witt vectors");
  witt->add_option("--ring", ring)->capture_default_str();
  witt->add_option("--p", p)->capture_default_str();
  witt->add_option("--levels", levels, "Number of truncations W_1 .. W_levels")->capture_default_str();
  witt->add_option("--ops", ops, "Comma list of R, F, V");
  witt->add_flag("--coinvariants", coinv);
  witt->callback([&] { action = [&] { return do_witt(ring, p, levels, ops, coinv, as_json); }; });

  auto* check = app.add_subcommand("check", "Regression suites");
  check->require_subcommand(1);
  for (const char* name : {"paper-suite", "acceptance"}) {
    auto* s = check->add_subcommand(name, std::string("Run the ") + name + " checks");
    s->callback([&, name] {
      which = name;
      action = [&] { return do_check(which, jobs, as_json); };
    });
  }

  auto* mackey = app.add_subcommand("mackey", "Mackey functor diagrams");
  mackey->require_subcommand(1);
  auto* show = mackey->add_subcommand("show", "Print a Lewis diagram");
  show->add_option("--group", group)->required();
  show->add_option("--functor", functor, "burnside | constZ | burnside-quotient | cosets")->capture_default_str();
  show->add_option("--from", from, "Subgroup for --functor cosets");
  show->callback([&] { action = [&] { return do_mackey_show(group, functor, from, as_json); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (jobs <= 0) jobs = jobs_from_env();
    b.jobs = jobs;
    suite::options().seed = seed;
    return action().status;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
