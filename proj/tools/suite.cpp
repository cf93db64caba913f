#include "suite.hpp"

#include "equivar/burnside.hpp"
#include "equivar/config.hpp"
#include "equivar/gsets.hpp"
#include "equivar/tambara.hpp"
#include "equivar/witt.hpp"

#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace equivar::suite {

Options& options() {
  static Options o;
  return o;
}

std::vector<CheckResult> run_checks(const std::vector<Check>& checks, int jobs) {
  std::vector<CheckResult> out(checks.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < checks.size(); i = next++) {
      CheckResult& r = out[i];
      r.name = checks[i].name;
      auto t0 = std::chrono::steady_clock::now();
      try {
        r.pass = checks[i].run(r.detail);
      } catch (const std::exception& e) {
        r.pass = false;
        r.detail = std::string("exception: ") + e.what();
      }
      r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  int n = std::max(1, std::min<int>(jobs, static_cast<int>(checks.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

DiscreteEsigmaRing constant_z_ring() {
  return DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(0));
}

int reflection_d2(const GroupPtr& g) { return dihedral_reflection_subgroup(*g, 1, 0); }

int num_divisors(int m) {
  int n = 0;
  for (int k = 1; k <= m; ++k) n += m % k == 0;
  return n;
}

Mackey burnside_quotient_at(const GroupPtr& g, int k) {
  int d2k = dihedral_reflection_subgroup(*g, k, 0);
  int muk = dihedral_rotation_subgroup(*g, k);
  auto a = Mackey::representable(GSet::point(g, d2k));
  SparseVec x = sparse_add(sparse_add(a.unit(d2k), a.unit(d2k)), SparseVec{{a.rep()->index(d2k, muk, 0), Int(1)}}, -1);
  return a.quotient_by_congruence({{d2k, x}});
}

Mackey burnside_quotient(const GroupPtr& g) { return burnside_quotient_at(g, g->dihedral_m()); }

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

bool fail(std::string& d, const std::string& msg) {
  d = msg;
  return false;
}

std::string secs(double s) {
  std::ostringstream o;
  o.precision(2);
  o << std::fixed << s << "s";
  return o.str();
}

SparseVec e(int j) { return SparseVec{{j, Int(1)}}; }

Int pow2(int k) { return Int(1) << k; }

// ---------------------------------------------------------------- 1

bool criterion1(std::string& d) {
  auto t0 = Clock::now();
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    int top = g->whole(), h = reflection_d2(g);
    auto x = coinduce(GSet::trivial(g, h, 2), top);
    Int fixed = 0, reflect = 0, free = 0;
    for (const auto& o : x.orbits()) {
      if (o.stab == top) ++fixed;
      else if (g->class_of(o.stab) == g->class_of(h)) ++reflect;
      else if (o.stab == 0) ++free;
      else return fail(d, "p=" + std::to_string(p) + ": unexpected stabilizer " + g->subgroup_name(o.stab));
    }
    Int want_reflect = pow2((p + 1) / 2) - 2;
    Int want_free = (pow2(p - 1) - 1) / p + 1 - pow2((p - 1) / 2);
    if (fixed != 2 || reflect != want_reflect || free != want_free)
      return fail(d, "p=" + std::to_string(p) + ": got " + fixed.str() + "/" + reflect.str() + "/" + free.str());
    auto y = coinduce(GSet::cosets(g, h, 0), top);
    auto [c, dd] = c_p_d_p(p);
    Int rot = 0, fr = 0;
    int mu = dihedral_rotation_subgroup(*g, p);
    for (const auto& o : y.orbits()) {
      if (o.stab == mu) ++rot;
      else if (o.stab == 0) ++fr;
      else return fail(d, "p=" + std::to_string(p) + ": Map(D2p, D2) has stabilizer " + g->subgroup_name(o.stab));
    }
    if (rot != 1 || fr != c + dd) return fail(d, "p=" + std::to_string(p) + ": Map(D2p, D2) decomposition");
  }
  double s = since(t0);
  if (s >= 5) return fail(d, "too slow: " + secs(s));
  d = "p = 3, 5, 7 in " + secs(s);
  return true;
}

// ---------------------------------------------------------------- 2

bool criterion2(std::string& d) {
  auto t0 = Clock::now();
  Budgets saved = budgets();
  budgets().max_coinduction = std::max<std::int64_t>(saved.max_coinduction, 1 << 25);
  std::vector<GroupPtr> groups;
  for (int n = 1; n <= 24; ++n) groups.push_back(Group::cyclic(n));
  for (int m = 1; m <= 12; ++m) groups.push_back(Group::dihedral(m));
  groups.push_back(Group::symmetric(3));
  groups.push_back(Group::symmetric(4));
  groups.push_back(Group::alternating(4));
  int cases = 0;
  std::string bad;
  for (const auto& g : groups) {
    std::vector<std::unique_ptr<TambaraInstance>> rs;
    rs.push_back(burnside_tambara(g));
    for (long long n : {0LL, 4LL, 6LL}) rs.push_back(fixed_point_tambara(g, n));
    for (int h : g->local_class_reps(g->whole()))
      for (const auto& r : rs) {
        auto c = verify_reciprocity(*r, g->whole(), h, 20, options().seed + static_cast<std::uint64_t>(cases));
        ++cases;
        if (c.failures && bad.empty()) bad = c.group + " " + c.sub + " " + c.instance + ": " + c.first_failure;
      }
  }
  budgets() = saved;
  double s = since(t0);
  if (!bad.empty()) return fail(d, bad);
  if (s >= 300) return fail(d, "too slow: " + secs(s));
  d = std::to_string(groups.size()) + " groups, " + std::to_string(cases) + " (subgroup, instance) cases x 20 pairs in " + secs(s);
  return true;
}

// ---------------------------------------------------------------- 3

bool criterion3(std::string& d) {
  auto t0 = Clock::now();
  auto g3 = Group::dihedral(3);
  std::string want =
      "N_D2^D6(a) + N_D2^D6(b) + tr_D2^D6(a * N_e^D2([z]res^D2_e(b))) + tr_D2^D6(b * N_e^D2([z]res^D2_e(a)))";
  std::string got = to_text(*g3, reciprocity_sum_dihedral(g3));
  if (got != want) return fail(d, "D6 formula: " + got);
  for (int p : {3, 5, 7}) {
    auto g = Group::dihedral(p);
    auto general = reciprocity_sum(*g, g->whole(), reflection_d2(g));
    auto special = reciprocity_sum_dihedral(g);
    if (to_text(*g, general) != to_text(*g, special) || to_json(*g, general) != to_json(*g, special))
      return fail(d, "p=" + std::to_string(p) + ": dihedral and general formulas differ");
    auto [c, dd] = c_p_d_p(p);
    Int norms = 0, tr_d2 = 0, tr_e = 0;
    for (const auto& k : special->kids) {
      if (k->op == TambaraOp::Norm) ++norms;
      else if (k->op == TambaraOp::Tr && k->from == 0) {
        ++tr_e;
        if (k->kids[0]->op != TambaraOp::Product || static_cast<int>(k->kids[0]->kids.size()) != p)
          return fail(d, "p=" + std::to_string(p) + ": free summand is not a " + std::to_string(p) + "-fold product");
      } else if (k->op == TambaraOp::Tr) ++tr_d2;
    }
    if (norms != 2 || tr_d2 != 2 * c || tr_e != dd)
      return fail(d, "p=" + std::to_string(p) + ": summand structure " + norms.str() + "/" + tr_d2.str() + "/" + tr_e.str());
  }
  double s = since(t0);
  if (s >= 10) return fail(d, "too slow: " + secs(s));
  d = "D6 text matches; p = 3, 5, 7 agree in " + secs(s);
  return true;
}

// ---------------------------------------------------------------- 4

bool criterion4(std::string& d) {
  auto t0 = Clock::now();
  double t15 = 0;
  for (int m : {3, 5, 9, 15}) {
    auto t1 = Clock::now();
    auto g = Group::dihedral(m);
    int top = g->whole();
    std::string at = "m=" + std::to_string(m) + ": ";
    auto n = norm_mackey(constant_Z_presentation(g, reflection_d2(g)), top);
    auto c = mackey_iso(n, burnside_quotient(g));
    if (!c.found) return fail(d, at + "no isomorphism: " + c.reason);
    auto v = n.value(top);
    if (!v.is_free() || v.rank() != num_divisors(m)) return fail(d, at + "top level is " + v.describe());
    Lattice span = n.rels(top);
    for (int k = 1; k <= m; ++k)
      if (m % k == 0) span.add(e(n.rep()->index(top, dihedral_reflection_subgroup(*g, k, 0), 0)));
    for (int i = 0; i < n.ngens(top); ++i)
      if (!span.contains(e(i))) return fail(d, at + "classes [D2m/D2k] do not span the top level");
    for (int k = 1; k <= m; ++k) {
      if (m % k) continue;
      SparseVec mu{{n.rep()->index(top, dihedral_rotation_subgroup(*g, k), 0), Int(1)}};
      SparseVec twice{{n.rep()->index(top, dihedral_reflection_subgroup(*g, k, 0), 0), Int(2)}};
      if (!n.rels(top).contains(sparse_add(mu, twice, -1)))
        return fail(d, at + "[D2m/mu_" + std::to_string(k) + "] is not 2[D2m/D2k]");
    }
    if (m == 15) t15 = since(t1);
  }
  if (t15 >= 120) return fail(d, "m = 15 too slow: " + secs(t15));
  d = "m = 3, 5, 9, 15 certified; m = 15 in " + secs(t15) + ", total " + secs(since(t0));
  return true;
}

// ---------------------------------------------------------------- 5

bool criterion5(std::string& d) {
  auto t0 = Clock::now();
  for (auto [m, p] : std::vector<std::pair<int, int>>{{3, 3}, {9, 3}, {15, 3}, {15, 5}}) {
    auto g = Group::dihedral(m);
    int top = g->whole(), k = m / p;
    std::string at = "(m,p)=(" + std::to_string(m) + "," + std::to_string(p) + "): ";
    auto n = norm_mackey(constant_Z_presentation(g, reflection_d2(g)), top);
    int d2k = dihedral_reflection_subgroup(*g, k, 0), muk = dihedral_rotation_subgroup(*g, k);
    auto c1 = mackey_iso(n.restrict(d2k), burnside_quotient_at(g, k));
    if (!c1.found) return fail(d, at + "restriction to D2k: " + c1.reason);
    auto c2 = mackey_iso(n.restrict(muk), Mackey::representable(GSet::point(g, muk)));
    if (!c2.found) return fail(d, at + "restriction to mu_k: " + c2.reason);
    for (int j = 1; j <= m; ++j) {
      if (m % j) continue;
      int l = std::gcd(k, j);
      int d2j = dihedral_reflection_subgroup(*g, j, 0);
      SparseVec img = n.res(top, d2k).apply(e(n.rep()->index(top, d2j, 0)));
      SparseVec want{{n.rep()->index(d2k, dihedral_reflection_subgroup(*g, l, 0), 0), Int(p * l / j)}};
      if (!n.rels(d2k).contains(sparse_add(img, want, -1))) return fail(d, at + "res of [D2m/D2j], j=" + std::to_string(j));
      if (k % j == 0) {
        SparseVec t = n.tr(d2k, top).apply(e(n.rep()->index(d2k, d2j, 0)));
        if (!n.rels(top).contains(sparse_add(t, e(n.rep()->index(top, d2j, 0)), -1)))
          return fail(d, at + "tr of [D2k/D2j], j=" + std::to_string(j));
      }
    }
  }
  d = "4 cases in " + secs(since(t0));
  return true;
}

// ---------------------------------------------------------------- 6

bool criterion6(std::string& d) {
  auto t0 = Clock::now();
  double t9 = 0;
  auto zbar = constant_z_ring();
  for (int m : {3, 5, 9}) {
    auto t1 = Clock::now();
    auto g = Group::dihedral(m);
    std::string at = "m=" + std::to_string(m) + ": ";
    auto h = hr0(zbar, g);
    auto c = mackey_iso(h, burnside_quotient(g));
    if (!c.found) return fail(d, at + "hr0: " + c.reason);
    auto t = twisted_module_structures(zbar, g);
    auto c1 = mackey_iso(t.right, conjugation_transport(t.left, g->zeta()));
    if (!c1.found) return fail(d, at + "right end vs transported left end: " + c1.reason);
    auto c2 = mackey_iso(t.right, t.left);
    if (!c2.found) return fail(d, at + "choice of reflection matters: " + c2.reason);
    if (m == 9) t9 = since(t1);
  }
  if (t9 >= 300) return fail(d, "m = 9 too slow: " + secs(t9));
  d = "m = 3, 5, 9 certified; m = 9 in " + secs(t9) + ", total " + secs(since(t0));
  return true;
}

// ---------------------------------------------------------------- 7

bool criterion7(std::string& d) {
  auto zbar = constant_z_ring();
  auto a = phi_compatibility_check(zbar, 3, 3, 1);
  if (!a.found()) return fail(d, "D6 -> D2: " + a.to_json());
  auto b = phi_compatibility_check(zbar, 9, 3, 0);
  if (!b.found()) return fail(d, "D18 -> D6: " + b.to_json());
  d = "D6 -> D2 in degrees 0, 1 and D18 -> D6 in degree 0";
  return true;
}

// ---------------------------------------------------------------- 8

bool criterion8(std::string& d) {
  auto t0 = Clock::now();
  auto t = witt_tower(constant_z_ring(), 3, 2);
  for (const auto& l : t.levels) {
    if (!l.top().is_free() || !l.under().is_free() || l.top().rank() != l.k + 1 || l.under().rank() != l.k + 1)
      return fail(d, "W_" + std::to_string(l.k + 1) + ": " + l.top().describe() + " / " + l.under().describe());
  }
  std::string why;
  if (!t.check(&why)) return fail(d, why);
  for (int k = 1; k <= 2; ++k) {
    auto fv = compose(t.f(k).under, t.v(k).under);
    if (!same_map(fv, scalar(t.levels[k - 1].under(), 3))) return fail(d, "FV is not 3 at k=" + std::to_string(k));
    Mat classical = classical_witt::frobenius(3, k) * classical_witt::verschiebung(3, k);
    Mat three = Mat::identity(k);
    for (int i = 0; i < k; ++i) three(i, i) = 3;
    if (!(classical == three)) return fail(d, "classical FV is not 3 at k=" + std::to_string(k));
    if (!cokernel(fv).isomorphic(FgAbelianGroup(k, classical))) return fail(d, "FV differs from the classical oracle");
  }
  double s = since(t0);
  if (s >= 600) return fail(d, "too slow: " + secs(s));
  d = "W_1..W_3 free of ranks 1..3, RF = FR, FV = 3 in " + secs(s);
  return true;
}

// ---------------------------------------------------------------- 9

bool double_coset_suite(std::string& d, int& count) {
  std::vector<std::pair<std::string, Mackey>> diagrams;
  for (auto g : {Group::dihedral(1), Group::dihedral(3), Group::dihedral(4), Group::cyclic(6), Group::alternating(4)})
    for (int h : g->class_reps()) diagrams.push_back({g->name() + " A_{G/" + g->subgroup_name(h) + "}", Mackey::representable(GSet::cosets(g, g->whole(), h))});
  diagrams.push_back({"constant Z", constant_Z(Group::dihedral(1))});
  auto zbar = constant_z_ring();
  for (int m : {3, 5, 9}) {
    auto g = Group::dihedral(m);
    std::string tag = "D" + std::to_string(2 * m);
    diagrams.push_back({tag + " Burnside quotient", burnside_quotient(g)});
    diagrams.push_back({tag + " norm of Z", norm_mackey(constant_Z_presentation(g, reflection_d2(g)), g->whole())});
    diagrams.push_back({tag + " hr0", hr0(zbar, g)});
  }
  for (int m : {1, 3}) {
    auto b = hr_complex(zbar, Group::dihedral(m), 2);
    for (size_t k = 0; k < b.terms.size(); ++k)
      diagrams.push_back({"D" + std::to_string(2 * m) + " bar term " + std::to_string(k), b.terms[k]});
  }
  auto t = witt_tower(zbar, 3, 2);
  for (const auto& l : t.levels) diagrams.push_back({"W_" + std::to_string(l.k + 1), l.value});
  diagrams.push_back({"Phi of D18 hr0", geometric_fixed_points_dihedral(hr0(zbar, Group::dihedral(9)), 3)});
  for (const auto& [name, m] : diagrams) {
    std::string why;
    if (!m.check_axioms(&why)) return fail(d, name + ": " + why);
  }
  count = static_cast<int>(diagrams.size());
  return true;
}

bool bar_suite(std::string& d, int& count) {
  count = 0;
  for (long long n : {0LL, 4LL, 6LL})
    for (int m : {1, 3, 5}) {
      // Z/6 over D10 needs norm fibers of 6^10 points
      if (n == 6 && m == 5) continue;
      auto ring = DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution::integers_mod(n));
      auto b = hr_complex(ring, Group::dihedral(m), m == 5 ? 2 : 3);
      std::string why;
      std::string at = "Z/" + std::to_string(n) + " over D" + std::to_string(2 * m) + ": ";
      if (!b.check_simplicial(&why)) return fail(d, at + why);
      if (!b.check_d_squared(&why)) return fail(d, at + why);
      ++count;
    }
  return true;
}

bool marks_suite(std::string& d, int& count) {
  std::vector<GroupPtr> groups;
  for (int n = 1; n <= 30; ++n) groups.push_back(Group::cyclic(n));
  for (int m = 1; m <= 15; ++m) groups.push_back(Group::dihedral(m));
  groups.push_back(Group::symmetric(3));
  groups.push_back(Group::symmetric(4));
  groups.push_back(Group::alternating(4));
  count = 0;
  for (const auto& g : groups) {
    int top = g->whole();
    auto ring = BurnsideRing::get(g, top);
    if (static_cast<int>(smith(ring->marks_table()).diag.size()) != ring->rank())
      return fail(d, g->descriptor() + ": table of marks is singular");
    for (int a : ring->reps())
      for (int b : ring->reps()) {
        auto prod = BurnsideElement::basis(ring, a) * BurnsideElement::basis(ring, b);
        auto direct = burnside_class(product(GSet::cosets(g, top, a), GSet::cosets(g, top, b)));
        if (!(prod == direct))
          return fail(d, g->descriptor() + ": [G/" + g->subgroup_name(a) + "][G/" + g->subgroup_name(b) + "] = " +
                             prod.to_string() + " but the G-set product is " + direct.to_string());
      }
    ++count;
  }
  return true;
}

bool norm_suite(std::string& d, int& count) {
  std::vector<GroupPtr> groups{Group::dihedral(2), Group::dihedral(3), Group::dihedral(4), Group::dihedral(5),
                               Group::dihedral(7), Group::cyclic(6), Group::symmetric(3), Group::alternating(4),
                               Group::symmetric(4)};
  count = 0;
  for (const auto& g : groups) {
    for (int h : g->class_reps()) {
      if (g->order() / g->sub_order(h) > 7 || h == g->whole()) continue;
      std::vector<GSet> ts{GSet::trivial(g, h, 1), GSet::trivial(g, h, 2)};
      // over S4 the mixed set gives presentations too large to check quickly
      if (g->sub_order(h) <= 4 && g->order() <= 12) ts.push_back(disjoint_union(GSet::point(g, h), GSet::cosets(g, h, 0)));
      for (const auto& t : ts) {
        EffectiveCoequalizerPresentation p{t, t, SpanHom::identity(t), SpanHom::identity(t)};
        std::string at = g->descriptor() + " from " + g->subgroup_name(h) + ", |T| = " + std::to_string(t.size());
        Mackey nm, rep;
        try {
          nm = norm_mackey(p, g->whole());
          rep = Mackey::representable(coinduce(t, g->whole()));
        } catch (const BudgetExceeded& e) {
          return fail(d, at + ": " + e.what());
        }
        for (int s : rep.levels())
          if (nm.ngens(s) != rep.ngens(s) || nm.rels(s).rank() != 0 || !nm.value(s).isomorphic(rep.value(s)))
            return fail(d, at + ": differs at " + g->subgroup_name(s));
        std::string why;
        if (!nm.check_axioms(&why)) return fail(d, at + ": " + why);
        ++count;
      }
    }
  }
  return true;
}

bool criterion9(std::string& d) {
  auto t0 = Clock::now();
  int a = 0, b = 0, c = 0, n = 0;
  if (!double_coset_suite(d, a)) return false;
  if (!bar_suite(d, b)) return false;
  if (!marks_suite(d, c)) return false;
  if (!norm_suite(d, n)) return false;
  d = std::to_string(a) + " diagrams, " + std::to_string(b) + " bar complexes, " + std::to_string(c) + " groups' marks, " +
      std::to_string(n) + " norms in " + secs(since(t0));
  return true;
}

}  // namespace

std::vector<Check> acceptance_criteria() {
  return {
      {"1 coinduction decompositions", criterion1},
      {"2 Tambara reciprocity vs brute force", criterion2},
      {"3 dihedral reciprocity formulas", criterion3},
      {"4 norm of constant Z", criterion4},
      {"5 restriction and transfer of the norm", criterion5},
      {"6 HR_0 of constant Z", criterion6},
      {"7 geometric fixed points of HR", criterion7},
      {"8 Witt tower", criterion8},
      {"9 property suites", criterion9},
  };
}

}  // namespace equivar::suite
