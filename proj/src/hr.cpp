#include "equivar/hr.hpp"

#include "equivar/config.hpp"

#include <json.hpp>

#include <sstream>
#include <stdexcept>

namespace equivar {

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

SparseVec unit_vec(int j) { return SparseVec{{j, Int(1)}}; }

Int mod(const Int& x, long long n) {
  if (n == 0) return x;
  Int r = x % n;
  return r < 0 ? r + n : r;
}

// Solve f y = v in (Z/n)^r; f has the generators as columns.
Vec solve_mod(const Mat& f, const Vec& v, long long n) {
  Mat a = f;
  if (n != 0) {
    Mat pn = Mat::identity(f.rows());
    for (int i = 0; i < f.rows(); ++i) pn(i, i) = n;
    a = f.hcat(pn);
  }
  Vec x;
  if (!solve_integer(a, v, x)) throw std::logic_error("fixed level: element outside the fixed points");
  x.resize(f.cols());
  return x;
}

}  // namespace

// ---------------------------------------------------------------- rings

Vec RingWithAntiInvolution::reduce(Vec v) const {
  for (auto& x : v) x = mod(x, modulus);
  return v;
}

Vec RingWithAntiInvolution::times(const Vec& a, const Vec& b) const {
  Vec out(rank, 0);
  for (int i = 0; i < rank; ++i)
    for (int j = 0; j < rank; ++j) {
      if (a[i] == 0 || b[j] == 0) continue;
      for (int k = 0; k < rank; ++k) out[k] += a[i] * b[j] * mul[i][j][k];
    }
  return reduce(out);
}

Vec RingWithAntiInvolution::apply_tau(const Vec& a) const { return reduce(tau * a); }

RingWithAntiInvolution RingWithAntiInvolution::integers_mod(long long n) {
  if (n < 0) throw std::invalid_argument("integers_mod: negative modulus");
  RingWithAntiInvolution r;
  r.name = n == 0 ? "Z" : "Z/" + std::to_string(n);
  r.rank = 1;
  r.modulus = n;
  r.mul = {{Vec{1}}};
  r.one = {1};
  r.tau = Mat::identity(1);
  r.labels = {"1"};
  return r;
}

RingWithAntiInvolution RingWithAntiInvolution::gaussian() {
  RingWithAntiInvolution r;
  r.name = "Z[i]";
  r.rank = 2;
  r.mul = {{Vec{1, 0}, Vec{0, 1}}, {Vec{0, 1}, Vec{-1, 0}}};
  r.one = {1, 0};
  r.tau = Mat::from_rows({{1, 0}, {0, -1}});
  r.labels = {"1", "i"};
  return r;
}

// ---------------------------------------------------------------- E_sigma-rings

DiscreteEsigmaRing DiscreteEsigmaRing::from_ring_with_anti_involution(RingWithAntiInvolution r) {
  std::string why;
  if (!r.check(&why)) throw std::invalid_argument(r.name + ": " + why);
  int n = r.rank;
  long long p = r.modulus;
  if (static_cast<int>(r.labels.size()) != n) {
    r.labels.clear();
    for (int i = 0; i < n; ++i) r.labels.push_back("r" + std::to_string(i));
  }
  // Fixed points of tau on (Z/p)^n as a sublattice of Z^n containing p Z^n.
  Mat a = r.tau - Mat::identity(n);
  if (p != 0) {
    Mat pn = Mat::identity(n);
    for (int i = 0; i < n; ++i) pn(i, i) = -p;
    a = a.hcat(pn);
  }
  Mat ker = integer_kernel(a);
  Lattice fix(n);
  for (int j = 0; j < ker.cols(); ++j) {
    Vec v = ker.column(j);
    v.resize(n);
    fix.add(v);
  }
  if (p != 0)
    for (int i = 0; i < n; ++i) {
      Vec v(n, 0);
      v[i] = p;
      fix.add(v);
    }
  // Keep generators that are nonzero mod p.
  std::vector<Vec> gens;
  for (const auto& b : fix.basis())
    if (r.reduce(b) != Vec(n, 0)) gens.push_back(r.reduce(b));
  Mat f = Mat::from_columns(n, gens);
  int k = f.cols();

  auto d2 = Group::dihedral(1);
  int e = 0, top = d2->whole();
  Mackey::Level le{e, r.labels, Lattice(n)}, lt{top, {}, Lattice(k)};
  if (p != 0)
    for (int i = 0; i < n; ++i) {
      Vec v(n, 0);
      v[i] = p;
      le.rels.add(v);
    }
  // relations among fixed generators: f y = 0 mod p
  if (p != 0) {
    Mat pn = Mat::identity(n);
    for (int i = 0; i < n; ++i) pn(i, i) = p;
    Mat kk = integer_kernel(f.hcat(pn));
    for (int j = 0; j < kk.cols(); ++j) {
      Vec y = kk.column(j);
      y.resize(k);
      lt.rels.add(y);
    }
  }
  for (int j = 0; j < k; ++j) {
    std::string s;
    Vec c = f.column(j);
    for (int i = 0; i < n; ++i) {
      if (c[i] == 0) continue;
      std::string coef = c[i] == 1 ? "" : (c[i] == -1 ? "-" : to_string(c[i]));
      s += (s.empty() || c[i] < 0 ? "" : "+") + coef + r.labels[i];
    }
    lt.labels.push_back(s);
  }
  Mackey m(d2, top, {le, lt});
  m.set_res(e, e, SparseMat::identity(n));
  m.set_tr(e, e, SparseMat::identity(n));
  m.set_res(top, top, SparseMat::identity(k));
  m.set_tr(top, top, SparseMat::identity(k));
  m.set_res(top, e, SparseMat::from_dense(f));
  Mat tr(k, n);
  for (int j = 0; j < n; ++j) {
    Vec ej(n, 0);
    ej[j] = 1;
    Vec t = r.tau * ej;
    t[j] += 1;
    Vec y = solve_mod(f, r.reduce(t), p);
    for (int i = 0; i < k; ++i) tr(i, j) = y[i];
  }
  m.set_tr(e, top, SparseMat::from_dense(tr));
  for (int x : d2->sub(top).elems) {
    m.set_conj(x, e, x == 0 ? SparseMat::identity(n) : SparseMat::from_dense(r.tau));
    m.set_conj(x, top, SparseMat::identity(k));
  }
  std::vector<std::vector<SparseVec>> table(2);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table[0].push_back(to_sparse(r.mul[i][j]));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) table[1].push_back(to_sparse(solve_mod(f, r.times(f.column(i), f.column(j)), p)));
  std::vector<SparseVec> units{to_sparse(r.one), to_sparse(solve_mod(f, r.one, p))};
  m.set_green(std::move(table), std::move(units));

  DiscreteEsigmaRing out;
  out.r_ = std::move(r);
  out.m_ = std::move(m);
  out.fixed_ = f;
  return out;
}

bool RingWithAntiInvolution::check(std::string* why) const {
  int n = rank;
  std::vector<Vec> basis;
  for (int i = 0; i < n; ++i) {
    Vec v(n, 0);
    v[i] = 1;
    basis.push_back(v);
  }
  for (const auto& x : basis)
    if (apply_tau(apply_tau(x)) != reduce(x)) return fail(why, "tau is not an involution");
  for (const auto& x : basis)
    for (const auto& y : basis)
      if (apply_tau(times(x, y)) != times(apply_tau(y), apply_tau(x)))
        return fail(why, "tau is not an anti-homomorphism");
  if (apply_tau(one) != reduce(one)) return fail(why, "tau does not fix 1");
  for (const auto& x : basis)
    if (times(one, x) != reduce(x) || times(x, one) != reduce(x)) return fail(why, "1 is not a unit");
  for (const auto& a : basis)
    for (const auto& b : basis)
      for (const auto& x : basis) {
        if (apply_tau(act(a, b, x)) != act(apply_tau(b), apply_tau(a), apply_tau(x)))
          return fail(why, "bimodule action is not equivariant");
      }
  return true;
}

Vec RingWithAntiInvolution::act(const Vec& a, const Vec& b, const Vec& x) const { return times(times(a, x), b); }

bool DiscreteEsigmaRing::check(std::string* why) const {
  if (!r_.check(why)) return false;
  std::vector<Vec> basis;
  for (int i = 0; i < r_.rank; ++i) {
    Vec v(r_.rank, 0);
    v[i] = 1;
    basis.push_back(v);
  }
  for (const auto& a : basis)
    for (int j = 0; j < fixed_.cols(); ++j) {
      Vec y = r_.act(a, r_.apply_tau(a), fixed_.column(j));
      if (r_.apply_tau(y) != y) return fail(why, "norm action leaves the fixed level");
    }
  int top = group()->whole();
  SparseVec u = m_.res(top, 0).apply(m_.unit(top));
  if (!m_.rels(0).contains(sparse_add(u, to_sparse(r_.one), -1))) return fail(why, "fixed unit does not restrict to 1");
  if (!m_.check_axioms(why)) return false;
  return m_.check_green(why);
}

bool DiscreteEsigmaRing::unit_generated() const {
  if (r_.rank != 1 || r_.tau(0, 0) != 1) return false;
  Int u = r_.one[0];
  if (r_.modulus == 0) return u == 1 || u == -1;
  return boost::multiprecision::gcd(mod(u, r_.modulus), Int(r_.modulus)) == 1;
}

long long DiscreteEsigmaRing::cyclic_modulus() const {
  if (!unit_generated()) throw std::invalid_argument("E_sigma-ring is not generated by its unit");
  return r_.modulus;
}

EffectiveCoequalizerPresentation ring_presentation(const GroupPtr& gp, int h, long long n) {
  int oh = gp->sub_order(h);
  if (oh > 2) throw std::invalid_argument("ring_presentation: need a subgroup of order at most 2");
  if (n < 0) throw std::invalid_argument("ring_presentation: negative modulus");
  GSet pt = GSet::point(gp, h);
  int nu = (oh == 2) + (n > 0);
  if (nu == 0) return free_presentation(pt);
  GSet u = GSet::trivial(gp, h, nu), z0 = GSet::empty(gp, h), z1 = GSet::empty(gp, h);
  std::vector<int> a0, a1;
  int ui = 0;
  if (oh == 2) {  // [h/e] = 2
    z0 = disjoint_union(z0, GSet::cosets(gp, h, 0));
    z1 = disjoint_union(z1, GSet::trivial(gp, h, 2));
    a0.insert(a0.end(), 2, ui);
    a1.insert(a1.end(), 2, ui);
    ++ui;
  }
  if (n > 0) {  // n = 0
    z0 = disjoint_union(z0, GSet::trivial(gp, h, static_cast<int>(n)));
    a0.insert(a0.end(), static_cast<size_t>(n), ui);
  }
  std::vector<int> b0(a0.size(), 0), b1(a1.size(), 0);
  return {u, pt, SpanHom::from_maps(u, pt, z0, a0, b0), SpanHom::from_maps(u, pt, z1, a1, b1)};
}

EffectiveCoequalizerPresentation esigma_presentation(const DiscreteEsigmaRing& m, const GroupPtr& g, int h) {
  if (g->sub_order(h) != 2) throw std::invalid_argument("esigma_presentation: need a subgroup of order 2");
  return ring_presentation(g, h, m.cyclic_modulus());
}

IsoCertificate presentation_certificate(const DiscreteEsigmaRing& m) {
  int top = m.group()->whole();
  Mackey p = esigma_presentation(m, m.group(), top).realize();
  return iso_from_forward(p, m.mackey(), morphism_from_images(p, m.mackey(), {m.mackey().unit(top)}));
}

// ---------------------------------------------------------------- bar complex

namespace {

// The map of quotients of A_pt sending 1 to 1; throws when it is not well defined.
BarMap unit_map(const Mackey& src, const Mackey& dst, std::string name) {
  if (!src.rep() || !dst.rep() || src.rep()->set().size() != 1 || dst.rep()->set().size() != 1)
    throw std::logic_error("bar map: terms must be quotients of A_pt");
  int top = dst.top();
  BarMap f{morphism_from_images(src, dst, {unit_vec(dst.rep()->index(top, top, 0))}), std::move(name)};
  std::string why;
  if (!verify_morphism(src, dst, f.map, &why)) throw std::logic_error(f.name + " is not well defined: " + why);
  return f;
}

MackeyMap compose(const MackeyMap& first, const MackeyMap& second) {
  MackeyMap out;
  for (size_t i = 0; i < first.at.size(); ++i) out.at.push_back(second.at[i] * first.at[i]);
  return out;
}

bool same_map(const Mackey& tgt, const MackeyMap& a, const MackeyMap& b) {
  const auto& subs = tgt.levels();
  for (size_t i = 0; i < subs.size(); ++i)
    for (int j = 0; j < a.at[i].ncols(); ++j)
      if (!tgt.rels(subs[i]).contains(sparse_add(a.at[i].cols[j], b.at[i].cols[j], -1))) return false;
  return true;
}

bool is_identity(const Mackey& m, const MackeyMap& f) { return same_map(m, f, identity_map(m)); }

void check_dihedral(const Group& g) {
  if (!g.is_dihedral() || (g.dihedral_m() != 1 && g.dihedral_m() % 2 == 0))
    throw std::invalid_argument("Real Hochschild homology: need D_2m with m odd");
}

}  // namespace

TwistedModules twisted_module_structures(const DiscreteEsigmaRing& m, const GroupPtr& g) {
  check_dihedral(*g);
  int top = g->whole();
  int h = g->generated({g->tau()});
  auto p = esigma_presentation(m, g, h);
  TwistedModules t;
  t.left = norm_mackey(p, top);
  t.right = norm_mackey(conjugate_presentation(p, g->zeta()), top);
  t.middle = norm_mackey(ring_presentation(g, 0, m.cyclic_modulus()), top);
  t.psi_r = unit_map(box(t.left, t.middle), t.left, "psi_R");
  t.psi_l = unit_map(box(t.middle, t.right), t.right, "psi_L");
  return t;
}

bool TwistedModules::check(std::string* why) const {
  Mackey lm = box(left, middle), mr = box(middle, right);
  if (!verify_morphism(lm, left, psi_r.map, why)) return false;
  if (!verify_morphism(mr, right, psi_l.map, why)) return false;
  if (!is_identity(left, compose(unit_map(left, lm, "id box unit").map, psi_r.map)))
    return fail(why, "psi_R is not unital");
  if (!is_identity(right, compose(unit_map(right, mr, "unit box id").map, psi_l.map)))
    return fail(why, "psi_L is not unital");
  Mackey mm = box(middle, middle);
  BarMap mu = unit_map(mm, middle, "mu");
  // psi_R (psi_R box id) = psi_R (id box mu) on left box middle box middle
  Mackey lmm = box(left, mm);
  MackeyMap a = compose(unit_map(lmm, lm, "psi_R box id").map, psi_r.map);
  MackeyMap b = compose(unit_map(lmm, lm, "id box mu").map, psi_r.map);
  if (!same_map(left, a, b)) return fail(why, "psi_R is not associative");
  Mackey mmr = box(mm, right);
  a = compose(unit_map(mmr, mr, "id box psi_L").map, psi_l.map);
  b = compose(unit_map(mmr, mr, "mu box id").map, psi_l.map);
  if (!same_map(right, a, b)) return fail(why, "psi_L is not associative");
  return true;
}

BarComplex hr_complex(const DiscreteEsigmaRing& m, const GroupPtr& g, int top_degree) {
  if (top_degree < 0) throw std::invalid_argument("hr_complex: negative degree");
  if (top_degree > budgets().max_bar_degree)
    throw BudgetExceeded("bar degree " + std::to_string(top_degree) + " exceeds " + std::to_string(budgets().max_bar_degree));
  BarComplex b;
  b.group = g;
  b.ends = twisted_module_structures(m, g);
  Mackey chain = b.ends.right;
  b.terms.push_back(box(b.ends.left, chain));
  for (int k = 1; k <= top_degree; ++k) {
    chain = box(b.ends.middle, chain);
    b.terms.push_back(box(b.ends.left, chain));
  }
  b.faces.resize(top_degree + 1);
  b.degens.resize(top_degree + 1);
  for (int k = 1; k <= top_degree; ++k)
    for (int i = 0; i <= k; ++i) {
      std::string name = i == 0 ? "psi_R box id" : (i == k ? "id box psi_L" : "mu_" + std::to_string(i));
      b.faces[k].push_back(unit_map(b.terms[k], b.terms[k - 1], "d_" + std::to_string(i) + " = " + name));
    }
  for (int k = 0; k < top_degree; ++k)
    for (int j = 0; j <= k; ++j) b.degens[k].push_back(unit_map(b.terms[k], b.terms[k + 1], "s_" + std::to_string(j)));
  return b;
}

bool BarComplex::check_simplicial(std::string* why) const {
  int top = static_cast<int>(terms.size()) - 1;
  auto tag = [](const char* id, int k, int i, int j) {
    return std::string(id) + " fails in degree " + std::to_string(k) + " (i = " + std::to_string(i) + ", j = " + std::to_string(j) + ")";
  };
  // d_i d_j = d_{j-1} d_i for i < j
  for (int k = 2; k <= top; ++k)
    for (int j = 1; j <= k; ++j)
      for (int i = 0; i < j; ++i)
        if (!same_map(terms[k - 2], compose(faces[k][j].map, faces[k - 1][i].map), compose(faces[k][i].map, faces[k - 1][j - 1].map)))
          return fail(why, tag("d_i d_j = d_{j-1} d_i", k, i, j));
  // s_i s_j = s_{j+1} s_i for i <= j
  for (int k = 0; k + 2 <= top; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= j; ++i)
        if (!same_map(terms[k + 2], compose(degens[k][j].map, degens[k + 1][i].map), compose(degens[k][i].map, degens[k + 1][j + 1].map)))
          return fail(why, tag("s_i s_j = s_{j+1} s_i", k, i, j));
  // d_i s_j on terms[k] -> terms[k+1] -> terms[k]
  for (int k = 0; k + 1 <= top; ++k)
    for (int j = 0; j <= k; ++j)
      for (int i = 0; i <= k + 1; ++i) {
        MackeyMap lhs = compose(degens[k][j].map, faces[k + 1][i].map);
        bool ok;
        if (i == j || i == j + 1)
          ok = is_identity(terms[k], lhs);
        else if (i < j)
          ok = same_map(terms[k], lhs, compose(faces[k][i].map, degens[k - 1][j - 1].map));
        else
          ok = same_map(terms[k], lhs, compose(faces[k][i - 1].map, degens[k - 1][j].map));
        if (!ok) return fail(why, tag("d_i s_j", k, i, j));
      }
  return true;
}

namespace {

SparseMat alternating(const BarComplex& b, int k, size_t li) {
  SparseMat d = b.faces[k][0].map.at[li];
  for (int i = 1; i <= k; ++i) d = i % 2 ? d - b.faces[k][i].map.at[li] : d + b.faces[k][i].map.at[li];
  return d;
}

// Columns spanning {x : d_i x = 0 in terms[k-1] for i in [from, k]} at level index li.
Mat normalized(const BarComplex& b, int k, size_t li, int from) {
  int s = b.terms[k].levels()[li];
  int a = b.terms[k].ngens(s);
  if (k == 0 || from > k) return Mat::identity(a);
  int t = b.terms[k - 1].levels()[li];
  int c = b.terms[k - 1].ngens(t);
  Mat lm = b.terms[k - 1].rels(t).matrix();
  int r = lm.cols(), blocks = k - from + 1;
  Mat big(blocks * c, a + blocks * r);
  for (int bi = 0; bi < blocks; ++bi) {
    Mat d = b.faces[k][from + bi].map.at[li].dense();
    for (int i = 0; i < c; ++i) {
      for (int j = 0; j < a; ++j) big(bi * c + i, j) = d(i, j);
      for (int j = 0; j < r; ++j) big(bi * c + i, a + bi * r + j) = -lm(i, j);
    }
  }
  Mat ker = integer_kernel(big);
  return ker.block(0, 0, a, ker.cols());
}

}  // namespace

bool BarComplex::check_d_squared(std::string* why) const {
  int top = static_cast<int>(terms.size()) - 1;
  for (int k = 2; k <= top; ++k) {
    const Mackey& tgt = terms[k - 2];
    const auto& subs = tgt.levels();
    for (size_t li = 0; li < subs.size(); ++li) {
      SparseMat dd = alternating(*this, k - 1, li) * alternating(*this, k, li);
      for (const auto& col : dd.cols)
        if (!tgt.rels(subs[li]).contains(col))
          return fail(why, "d^2 != 0 in degree " + std::to_string(k) + " at " + group->subgroup_name(subs[li]));
      Mat n = normalized(*this, k, li, 1);
      Mat d0 = faces[k - 1][0].map.at[li].dense() * faces[k][0].map.at[li].dense();
      Mat img = d0 * n;
      for (int j = 0; j < img.cols(); ++j)
        if (!tgt.rels(subs[li]).contains(img.column(j)))
          return fail(why, "normalized d^2 != 0 in degree " + std::to_string(k) + " at " + group->subgroup_name(subs[li]));
    }
  }
  return true;
}

Mackey hr0(const BarComplex& b) {
  if (b.terms.size() < 2) throw std::invalid_argument("hr0: needs degree 1 of the bar complex");
  const Mackey& b1 = b.terms[1];
  std::vector<MackeyElement> rels;
  const auto& subs = b1.levels();
  for (size_t li = 0; li < subs.size(); ++li) {
    SparseMat d = b.faces[1][0].map.at[li] - b.faces[1][1].map.at[li];
    for (const auto& col : d.cols)
      if (!col.empty()) rels.push_back({subs[li], col});
  }
  return b.terms[0].quotient(rels);
}

Mackey hr0(const DiscreteEsigmaRing& m, const GroupPtr& g) { return hr0(hr_complex(m, g, 1)); }

HrHomology hr_homology(const BarComplex& b, int n) {
  int top = static_cast<int>(b.terms.size()) - 1;
  if (n < 0 || n + 1 > top) throw std::invalid_argument("hr_homology: degree needs the next term of the complex");
  HrHomology h;
  h.degree = n;
  const auto& subs = b.terms[n].levels();
  for (size_t li = 0; li < subs.size(); ++li) {
    int s = subs[li];
    Mat lm = b.terms[n].rels(s).matrix();
    Mat cycles = normalized(b, n, li, 0).hcat(lm);
    Mat chains = normalized(b, n + 1, li, 1);
    Mat bound = (b.faces[n + 1][0].map.at[li].dense() * chains).hcat(lm);
    h.levels.push_back(s);
    h.groups.push_back(subquotient(cycles, bound));
  }
  return h;
}

std::string HrHomology::describe(const Group& g) const {
  std::ostringstream os;
  for (size_t i = 0; i < levels.size(); ++i) os << g.subgroup_name(levels[i]) << ": " << groups[i].describe() << "\n";
  return os.str();
}

// ---------------------------------------------------------------- geometric fixed points

bool PhiCertificate::found() const {
  for (const auto& c : degree)
    if (!c.found) return false;
  return hr0.found;
}

std::string PhiCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["m"] = m;
  j["d"] = d;
  j["max_degree"] = max_degree;
  j["found"] = found();
  auto arr = nlohmann::ordered_json::array();
  for (const auto& c : degree) arr.push_back(nlohmann::ordered_json::parse(c.to_json()));
  j["degrees"] = arr;
  j["hr0"] = nlohmann::ordered_json::parse(hr0.to_json());
  return j.dump();
}

PhiCertificate phi_compatibility_check(const DiscreteEsigmaRing& m, int dihedral_m, int d, int max_degree) {
  if (d <= 0 || dihedral_m % d) throw std::invalid_argument("phi check: d must divide m");
  auto g = Group::dihedral(dihedral_m);
  auto q = Group::dihedral(dihedral_m / d);
  int deg = std::max(max_degree, 1);
  BarComplex big = hr_complex(m, g, deg);
  BarComplex small = hr_complex(m, q, deg);
  PhiCertificate c;
  c.m = dihedral_m;
  c.d = d;
  c.max_degree = max_degree;
  for (int k = 0; k <= max_degree; ++k)
    c.degree.push_back(mackey_iso(geometric_fixed_points_dihedral(big.terms[k], d, q), small.terms[k]));
  c.hr0 = mackey_iso(geometric_fixed_points_dihedral(hr0(big), d, q), hr0(small));
  return c;
}

}  // namespace equivar
