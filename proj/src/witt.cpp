#include "equivar/witt.hpp"

#include "equivar/boxnorm.hpp"
#include "equivar/config.hpp"

#include <json.hpp>

#include <algorithm>
#include <functional>
#include <limits>
#include <stdexcept>

namespace equivar {

namespace {

using json = nlohmann::ordered_json;

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

json json_int(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

json json_mat(const Mat& d) {
  json rows = json::array();
  for (int i = 0; i < d.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < d.cols(); ++j) row.push_back(json_int(d(i, j)));
    rows.push_back(row);
  }
  return rows;
}

json json_group(const FgAbelianGroup& a) {
  json inv = json::array();
  for (const auto& d : a.invariant_factors()) inv.push_back(json_int(d));
  return inv;
}

bool is_prime(int p) {
  if (p < 2) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int power(int p, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) {
    r *= p;
    if (r > std::numeric_limits<int>::max()) throw BudgetExceeded("witt index overflows");
  }
  return static_cast<int>(r);
}

// Generators [s/t] of src at level h go to [s'/sub_map(t)] of dst at level s'. Both functors are
// quotients of the Burnside functor; the identification is induced by a group isomorphism.
Mat transport(const Mackey& src, int h, const Mackey& dst, int s, const std::function<int(int)>& sub_map) {
  Mat r(dst.ngens(s), src.ngens(h));
  for (int i = 0; i < src.ngens(h); ++i) {
    auto [t, x] = src.rep()->elem(h, i);
    r(dst.rep()->index(s, sub_map(t), x), i) += 1;
  }
  return r;
}

struct Embedding {
  GroupHom phi;  // small group -> big group
  std::vector<int> pre;
  int top = 0, under = 0;  // images of the small levels
};

Embedding embedding(const WittLevel& small, const WittLevel& big) {
  Embedding e{dihedral_embedding(small.group, big.group, 0), {}, 0, 0};
  e.pre.assign(big.group->num_subgroups(), -1);
  for (int u = 0; u < small.group->num_subgroups(); ++u) e.pre[e.phi.map_subgroup(u)] = u;
  e.top = e.phi.map_subgroup(small.top_sub);
  e.under = e.phi.map_subgroup(small.under_sub);
  return e;
}

WittLevel build_level(const DiscreteEsigmaRing& m, int p, int k, const GroupPtr& d2) {
  if (!is_prime(p) || p == 2) throw std::invalid_argument("witt: p must be an odd prime");
  if (k < 0) throw std::invalid_argument("witt: negative index");
  int pk = power(p, k);
  if (pk > budgets().max_witt_index)
    throw BudgetExceeded("witt index p^k = " + std::to_string(pk) + " > " + std::to_string(budgets().max_witt_index));
  WittLevel w;
  w.p = p;
  w.k = k;
  w.group = Group::dihedral(pk);
  w.hr0 = hr0(m, w.group);
  w.top_sub = w.group->whole();
  w.under_sub = dihedral_rotation_subgroup(*w.group, pk);
  w.value = w.hr0.fixed_points_functor(w.under_sub, dihedral_quotient(w.group, d2));
  return w;
}

LevelPair make_F(const WittLevel& big, const WittLevel& small) {
  auto e = embedding(small, big);
  auto back = [&](int t) { return e.pre.at(t); };
  Mat top = transport(big.hr0, e.top, small.hr0, small.top_sub, back) * big.hr0.res(big.top_sub, e.top).dense();
  Mat under = transport(big.hr0, e.under, small.hr0, small.under_sub, back) * big.hr0.res(big.under_sub, e.under).dense();
  return {make_hom(big.top(), small.top(), top), make_hom(big.under(), small.under(), under)};
}

LevelPair make_V(const WittLevel& big, const WittLevel& small) {
  auto e = embedding(small, big);
  auto fwd = [&](int t) { return e.phi.map_subgroup(t); };
  Mat top = big.hr0.tr(e.top, big.top_sub).dense() * transport(small.hr0, small.top_sub, big.hr0, e.top, fwd);
  Mat under = big.hr0.tr(e.under, big.under_sub).dense() * transport(small.hr0, small.under_sub, big.hr0, e.under, fwd);
  return {make_hom(small.top(), big.top(), top), make_hom(small.under(), big.under(), under)};
}

// Quotient onto the geometric fixed points, then the certified identification with the smaller hr0.
LevelPair make_R(const WittLevel& big, const WittLevel& small) {
  const auto& g = *big.group;
  int n = dihedral_rotation_subgroup(g, big.p);
  auto pi = dihedral_quotient(big.group, small.group);
  Mackey phi = geometric_fixed_points_dihedral(big.hr0, big.p, small.group);
  IsoCertificate iso = mackey_iso(phi, small.hr0);
  if (!iso.found) throw std::logic_error("witt: geometric fixed points not identified: " + iso.reason);
  auto level = [&](int h, int s) {
    if (pi.map_subgroup(h) != s || !g.le(n, h)) throw std::logic_error("witt: level mismatch");
    Mat q(phi.ngens(s), big.hr0.ngens(h));
    for (int i = 0; i < big.hr0.ngens(h); ++i) {
      auto [t, x] = big.hr0.rep()->elem(h, i);
      if (g.le(n, t)) q(phi.rep()->index(s, pi.map_subgroup(t), x), i) += 1;
    }
    const auto& subs = phi.levels();
    size_t pos = std::find(subs.begin(), subs.end(), s) - subs.begin();
    return iso.forward.at.at(pos).dense() * q;
  };
  return {make_hom(big.top(), small.top(), level(big.top_sub, small.top_sub)),
          make_hom(big.under(), small.under(), level(big.under_sub, small.under_sub))};
}

}  // namespace

AbHom WittLevel::res() const { return make_hom(top(), under(), hr0.res(top_sub, under_sub).dense()); }
AbHom WittLevel::tr() const { return make_hom(under(), top(), hr0.tr(under_sub, top_sub).dense()); }

bool same_map(const AbHom& a, const AbHom& b) {
  if (a.matrix.rows() != b.matrix.rows() || a.matrix.cols() != b.matrix.cols()) return false;
  const Mat& rels = a.target.rels();
  Lattice l(a.matrix.rows());
  for (int j = 0; j < rels.cols(); ++j) l.add(rels.column(j));
  Mat d = a.matrix - b.matrix;
  for (int j = 0; j < d.cols(); ++j)
    if (!l.contains(d.column(j))) return false;
  return true;
}

AbHom compose(const AbHom& g, const AbHom& f) { return make_hom(f.source, g.target, g.matrix * f.matrix); }

AbHom subtract(const AbHom& a, const AbHom& b) { return make_hom(a.source, a.target, a.matrix - b.matrix); }

AbHom scalar(const FgAbelianGroup& a, const Int& k) {
  Mat m = Mat::identity(a.ngens());
  for (int i = 0; i < a.ngens(); ++i) m(i, i) = k;
  return make_hom(a, a, m);
}

WittLevel truncated_witt(const DiscreteEsigmaRing& m, int p, int k) { return build_level(m, p, k, Group::dihedral(1)); }

WittTower witt_tower(const DiscreteEsigmaRing& m, int p, int K) {
  if (K < 0) throw std::invalid_argument("witt: negative truncation");
  WittTower t;
  t.p = p;
  t.d2 = Group::dihedral(1);
  for (int k = 0; k <= K; ++k) t.levels.push_back(build_level(m, p, k, t.d2));
  for (int k = 1; k <= K; ++k) {
    const auto& big = t.levels[k];
    const auto& small = t.levels[k - 1];
    t.R.push_back(make_R(big, small));
    t.F.push_back(make_F(big, small));
    t.V.push_back(make_V(big, small));
  }
  return t;
}

namespace {

LevelPair pick(const DiscreteEsigmaRing& m, int p, int k, int which) {
  if (k < 1) throw std::invalid_argument("witt: operators need k >= 1");
  auto d2 = Group::dihedral(1);
  auto big = build_level(m, p, k, d2);
  auto small = build_level(m, p, k - 1, d2);
  if (which == 0) return make_R(big, small);
  if (which == 1) return make_F(big, small);
  return make_V(big, small);
}

}  // namespace

LevelPair restriction_R(const DiscreteEsigmaRing& m, int p, int k) { return pick(m, p, k, 0); }
LevelPair frobenius_F(const DiscreteEsigmaRing& m, int p, int k) { return pick(m, p, k, 1); }
LevelPair verschiebung_V(const DiscreteEsigmaRing& m, int p, int k) { return pick(m, p, k, 2); }

bool WittTower::check(std::string* why) const {
  for (int k = 1; k < static_cast<int>(levels.size()); ++k) {
    const auto& big = levels[k];
    const auto& small = levels[k - 1];
    std::string at = " at k = " + std::to_string(k);
    for (const auto* op : {&r(k), &f(k)}) {
      const char* name = op == &r(k) ? "R" : "F";
      if (!same_map(compose(op->under, big.res()), compose(small.res(), op->top)))
        return fail(why, std::string(name) + " does not commute with res" + at);
    }
    if (!same_map(compose(v(k).top, small.tr()), compose(big.tr(), v(k).under)))
      return fail(why, "V does not commute with tr" + at);
    if (!same_map(compose(v(k).under, small.res()), compose(big.res(), v(k).top)))
      return fail(why, "V does not commute with res" + at);
    if (k >= 2) {
      for (int lvl = 0; lvl < 2; ++lvl) {
        auto sel = [&](const LevelPair& x) -> const AbHom& { return lvl ? x.under : x.top; };
        if (!same_map(compose(sel(r(k - 1)), sel(f(k))), compose(sel(f(k - 1)), sel(r(k)))))
          return fail(why, "RF != FR" + at);
      }
    }
  }
  return true;
}

std::string WittTower::to_json() const {
  json j;
  j["p"] = p;
  json ls = json::array();
  for (const auto& l : levels) {
    json x;
    x["k"] = l.k;
    x["top"] = json_group(l.top());
    x["under"] = json_group(l.under());
    ls.push_back(x);
  }
  j["levels"] = ls;
  json maps;
  for (const auto& [name, ops] : {std::pair<const char*, const std::vector<LevelPair>*>{"R", &R}, {"F", &F}, {"V", &V}}) {
    json arr = json::array();
    for (size_t i = 0; i < ops->size(); ++i) {
      json x;
      x["k"] = i + 1;
      x["top"] = json_mat((*ops)[i].top.matrix);
      x["under"] = json_mat((*ops)[i].under.matrix);
      arr.push_back(x);
    }
    maps[name] = arr;
  }
  j["maps"] = maps;
  return j.dump();
}

WittCoinvariants witt_coinvariants_F(const WittTower& t) {
  WittCoinvariants c;
  c.p = t.p;
  c.K = static_cast<int>(t.levels.size()) - 1;
  for (int k = 0; k <= c.K; ++k) {
    if (k == 0) {
      c.top.push_back(t.levels[0].top());
      c.under.push_back(t.levels[0].under());
      c.stable.push_back(false);
      continue;
    }
    c.top.push_back(cokernel(subtract(t.r(k).top, t.f(k).top)));
    c.under.push_back(cokernel(subtract(t.r(k).under, t.f(k).under)));
    c.stable.push_back(c.top[k].isomorphic(c.top[k - 1]) && c.under[k].isomorphic(c.under[k - 1]));
  }
  return c;
}

WittCoinvariants witt_coinvariants_F(const DiscreteEsigmaRing& m, int p, int K) {
  return witt_coinvariants_F(witt_tower(m, p, K));
}

std::string WittCoinvariants::to_json() const {
  json j;
  j["p"] = p;
  j["K"] = K;
  json arr = json::array();
  for (int k = 0; k <= K; ++k) {
    json x;
    x["truncation"] = k;
    x["top"] = json_group(top[k]);
    x["under"] = json_group(under[k]);
    x["stable"] = static_cast<bool>(stable[k]);
    x["artifact"] = k == 0 && artifact_at_zero;
    arr.push_back(x);
  }
  j["truncations"] = arr;
  return j.dump();
}

// ---------------------------------------------------------------- classical oracle

namespace classical_witt {

namespace {

Int ipow(const Int& b, long long e) {
  Int r = 1;
  for (long long i = 0; i < e; ++i) r *= b;
  return r;
}

// Coordinates of a ghost vector in ghost_basis (lower triangular); throws when not integral.
Vec coords(int p, const Vec& w) {
  int n = static_cast<int>(w.size());
  Mat b = ghost_basis(p, n);
  Vec x(n, 0);
  for (int i = 0; i < n; ++i) {
    Int r = w[i];
    for (int j = 0; j < i; ++j) r -= b(i, j) * x[j];
    if (r % b(i, i) != 0) throw std::logic_error("classical witt: not in the ghost image");
    x[i] = r / b(i, i);
  }
  return x;
}

Mat op(int p, int n_src, int n_dst, const std::function<Vec(const Vec&)>& f) {
  Mat b = ghost_basis(p, n_src);
  std::vector<Vec> cols;
  for (int j = 0; j < n_src; ++j) cols.push_back(coords(p, f(b.column(j))));
  return Mat::from_columns(n_dst, cols);
}

}  // namespace

Vec ghost(int p, const Vec& a) {
  int n = static_cast<int>(a.size());
  Vec w(n, 0);
  for (int k = 0; k < n; ++k)
    for (int i = 0; i <= k; ++i) w[k] += ipow(p, i) * ipow(a[i], ipow(p, k - i).convert_to<long long>());
  return w;
}

Mat ghost_basis(int p, int n) {
  std::vector<Vec> cols;
  for (int j = 0; j < n; ++j) {
    Vec a(n, 0);
    a[j] = 1;
    cols.push_back(ghost(p, a));
  }
  return Mat::from_columns(n, cols);
}

bool in_ghost_image(int p, const Vec& w) {
  for (size_t i = 1; i < w.size(); ++i)
    if ((w[i] - w[i - 1]) % ipow(p, static_cast<long long>(i)) != 0) return false;
  return true;
}

Mat frobenius(int p, int n) {
  return op(p, n + 1, n, [](const Vec& w) { return Vec(w.begin() + 1, w.end()); });
}

Mat restriction(int p, int n) {
  return op(p, n + 1, n, [](const Vec& w) { return Vec(w.begin(), w.end() - 1); });
}

Mat verschiebung(int p, int n) {
  return op(p, n, n + 1, [p](const Vec& w) {
    Vec r{0};
    for (const auto& x : w) r.push_back(x * p);
    return r;
  });
}

FgAbelianGroup coinvariants(int p, int K) {
  if (K == 0) return FgAbelianGroup::free(1);
  return FgAbelianGroup(K, restriction(p, K) - frobenius(p, K));
}

}  // namespace classical_witt

}  // namespace equivar
