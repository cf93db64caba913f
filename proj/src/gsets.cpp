#include "equivar/gsets.hpp"

#include "equivar/config.hpp"

#include <algorithm>
#include <stdexcept>

namespace equivar {

GSet::GSet(GroupPtr g, int top, int n, std::vector<int> act) : g_(std::move(g)), top_(top), n_(n), act_(std::move(act)) {
  if (static_cast<int64_t>(act_.size()) != static_cast<int64_t>(g_->order()) * n_)
    throw std::invalid_argument("GSet: action table has wrong size");
}

GSet GSet::empty(GroupPtr g, int top) { return GSet(std::move(g), top, 0, {}); }

GSet GSet::trivial(GroupPtr g, int top, int n) {
  int order = g->order();
  std::vector<int> act(static_cast<size_t>(order) * n, -1);
  for (int x : g->sub(top).elems)
    for (int i = 0; i < n; ++i) act[static_cast<size_t>(x) * n + i] = i;
  return GSet(std::move(g), top, n, std::move(act));
}

GSet GSet::cosets(GroupPtr g, int top, int sub) {
  if (!g->le(sub, top)) throw std::invalid_argument("cosets: subgroup not contained in top");
  std::vector<int> reps = g->left_coset_reps(top, sub);
  int n = static_cast<int>(reps.size());
  std::vector<int> coset_of(g->order(), -1);
  for (int i = 0; i < n; ++i)
    for (int y : g->sub(sub).elems) coset_of[g->mul(reps[i], y)] = i;
  std::vector<int> act(static_cast<size_t>(g->order()) * n, -1);
  for (int x : g->sub(top).elems)
    for (int i = 0; i < n; ++i) act[static_cast<size_t>(x) * n + i] = coset_of[g->mul(x, reps[i])];
  return GSet(std::move(g), top, n, std::move(act));
}

bool GSet::verify() const {
  const auto& el = g_->sub(top_).elems;
  for (int x = 0; x < n_; ++x)
    if (act(0, x) != x) return false;
  for (int a : el)
    for (int b : el)
      for (int x = 0; x < n_; ++x) {
        int y = act(b, x);
        if (y < 0 || y >= n_ || act(a, y) != act(g_->mul(a, b), x)) return false;
      }
  return true;
}

std::vector<int> GSet::fixed_points(int h) const {
  std::vector<int> out;
  const auto& el = g_->sub(h).elems;
  for (int x = 0; x < n_; ++x) {
    bool fixed = true;
    for (int a : el)
      if (act(a, x) != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

int GSet::num_fixed(int h) const { return static_cast<int>(fixed_points(h).size()); }

int GSet::stabilizer(int x) const {
  Mask m;
  for (int a : g_->sub(top_).elems)
    if (act(a, x) == x) m.set(a);
  return g_->find(m);
}

std::vector<GSet::Orbit> GSet::orbits_under(int h) const {
  std::vector<Orbit> out;
  std::vector<char> seen(n_, 0);
  const auto& el = g_->sub(h).elems;
  for (int x = 0; x < n_; ++x) {
    if (seen[x]) continue;
    Orbit o{x, -1, {}};
    Mask st;
    for (int a : el) {
      int y = act(a, x);
      if (y == x) st.set(a);
      if (!seen[y]) {
        seen[y] = 1;
        o.points.push_back(y);
      }
    }
    std::sort(o.points.begin(), o.points.end());
    o.stab = g_->find(st);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<int> GSet::orbit_index() const {
  std::vector<int> idx(n_, -1);
  auto orbs = orbits();
  for (int i = 0; i < static_cast<int>(orbs.size()); ++i)
    for (int x : orbs[i].points) idx[x] = i;
  return idx;
}

GSet GSet::restrict(int h) const {
  if (!g_->le(h, top_)) throw std::invalid_argument("restrict: not a subgroup of top");
  std::vector<int> act(act_.size(), -1);
  for (int a : g_->sub(h).elems)
    for (int x = 0; x < n_; ++x) act[static_cast<size_t>(a) * n_ + x] = this->act(a, x);
  return GSet(g_, h, n_, std::move(act));
}

bool is_equivariant(const GSet& s, const GSet& t, const GMap& f) {
  if (static_cast<int>(f.val.size()) != s.size()) return false;
  for (int a : s.group()->sub(s.top()).elems)
    for (int x = 0; x < s.size(); ++x)
      if (f.val[s.act(a, x)] != t.act(a, f.val[x])) return false;
  return true;
}

GSet product(const GSet& a, const GSet& b) {
  const auto& g = a.group();
  int n = a.size() * b.size();
  std::vector<int> act(static_cast<size_t>(g->order()) * n, -1);
  for (int x : g->sub(a.top()).elems)
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < b.size(); ++j)
        act[static_cast<size_t>(x) * n + i * b.size() + j] = a.act(x, i) * b.size() + b.act(x, j);
  return GSet(g, a.top(), n, std::move(act));
}

GSet disjoint_union(const GSet& a, const GSet& b) {
  const auto& g = a.group();
  int n = a.size() + b.size();
  std::vector<int> act(static_cast<size_t>(g->order()) * n, -1);
  for (int x : g->sub(a.top()).elems) {
    for (int i = 0; i < a.size(); ++i) act[static_cast<size_t>(x) * n + i] = a.act(x, i);
    for (int j = 0; j < b.size(); ++j) act[static_cast<size_t>(x) * n + a.size() + j] = a.size() + b.act(x, j);
  }
  return GSet(g, a.top(), n, std::move(act));
}

GSet multiple(const GSet& a, int k) {
  GSet out = GSet::empty(a.group(), a.top());
  for (int i = 0; i < k; ++i) out = disjoint_union(out, a);
  return out;
}

GSet induce(const GSet& t, int k) {
  const auto& g = t.group();
  int h = t.top();
  if (!g->le(h, k)) throw std::invalid_argument("induce: subgroup not contained in target");
  std::vector<int> reps = g->left_coset_reps(k, h);
  std::vector<int> coset_of(g->order(), -1);
  for (int i = 0; i < static_cast<int>(reps.size()); ++i)
    for (int y : g->sub(h).elems) coset_of[g->mul(reps[i], y)] = i;
  int nt = t.size();
  int n = static_cast<int>(reps.size()) * nt;
  std::vector<int> act(static_cast<size_t>(g->order()) * n, -1);
  for (int x : g->sub(k).elems)
    for (int i = 0; i < static_cast<int>(reps.size()); ++i) {
      int y = g->mul(x, reps[i]);
      int j = coset_of[y];
      int hh = g->mul(g->inv(reps[j]), y);
      for (int p = 0; p < nt; ++p) act[static_cast<size_t>(x) * n + i * nt + p] = j * nt + t.act(hh, p);
    }
  return GSet(g, k, n, std::move(act));
}

// ---------------------------------------------------------------- coinduction

CoinductionIndex::CoinductionIndex(const GSet& t, int k) : t_(t), k_(k) {
  const auto& g = t.group();
  int h = t.top();
  if (!g->le(h, k)) throw std::invalid_argument("coinduce: subgroup not contained in target");
  reps_ = g->right_coset_reps(k, h);
  int s = slots();
  slot_of_.assign(g->order(), -1);
  for (int i = 0; i < s; ++i)
    for (int y : g->sub(h).elems) slot_of_[g->mul(y, reps_[i])] = i;
  perm_.assign(static_cast<size_t>(g->order()) * s, -1);
  hpart_.assign(static_cast<size_t>(g->order()) * s, -1);
  for (int x : g->sub(k).elems)
    for (int i = 0; i < s; ++i) {
      int y = g->mul(reps_[i], x);
      int j = slot_of_[y];
      perm_[static_cast<size_t>(x) * s + i] = j;
      hpart_[static_cast<size_t>(x) * s + i] = g->mul(y, g->inv(reps_[j]));
    }
  pow_.assign(s + 1, 1);
  bool huge = false;
  for (int i = 0; i < s; ++i) {
    if (t.size() > 0 && pow_[i] > (static_cast<std::uint64_t>(1) << 62) / static_cast<std::uint64_t>(t.size())) huge = true;
    pow_[i + 1] = huge ? 0 : pow_[i] * static_cast<std::uint64_t>(t.size());
  }
  count_ = huge ? INT64_MAX : static_cast<std::int64_t>(pow_[s]);
  if (s == 0) count_ = 1;
}

std::uint64_t CoinductionIndex::encode(const std::vector<int>& v) const {
  std::uint64_t c = 0;
  for (int i = 0; i < slots(); ++i) c += pow_[i] * static_cast<std::uint64_t>(v[i]);
  return c;
}

std::vector<int> CoinductionIndex::decode(std::uint64_t code) const {
  std::vector<int> v(slots());
  auto base = static_cast<std::uint64_t>(t_.size());
  for (int i = 0; i < slots(); ++i) {
    v[i] = static_cast<int>(code % base);
    code /= base;
  }
  return v;
}

std::uint64_t CoinductionIndex::act(int k, std::uint64_t code) const {
  std::vector<int> v = decode(code);
  int s = slots();
  std::uint64_t out = 0;
  for (int i = 0; i < s; ++i) {
    size_t q = static_cast<size_t>(k) * s + i;
    out += pow_[i] * static_cast<std::uint64_t>(t_.act(hpart_[q], v[perm_[q]]));
  }
  return out;
}

std::pair<int, int> CoinductionIndex::split(int g) const {
  int j = slot_of_.at(g);
  if (j < 0) throw std::invalid_argument("coinduction: element outside the source group");
  const auto& gr = t_.group();
  return {j, gr->mul(g, gr->inv(reps_[j]))};
}

int CoinductionIndex::value_at(const std::vector<int>& vals, int g) const {
  auto [j, h] = split(g);
  return t_.act(h, vals[j]);
}

void CoinductionIndex::for_each_orbit(const std::function<void(const OrbitRec&)>& fn) const {
  if (count_ > budgets().max_coinduction)
    throw BudgetExceeded("coinduction has " + std::to_string(count_) + " points, limit " +
                         std::to_string(budgets().max_coinduction));
  const auto& g = t_.group();
  const auto& kel = g->sub(k_).elems;
  int s = slots();
  std::vector<bool> seen(static_cast<size_t>(count_), false);
  std::vector<int> v(s);
  auto base = static_cast<std::uint64_t>(t_.size());
  for (std::uint64_t c = 0; c < static_cast<std::uint64_t>(count_); ++c) {
    if (seen[c]) continue;
    std::uint64_t tmp = c;
    for (int i = 0; i < s; ++i) {
      v[i] = static_cast<int>(tmp % base);
      tmp /= base;
    }
    Mask st;
    std::int64_t size = 0;
    for (int x : kel) {
      std::uint64_t img = 0;
      const int* pp = &perm_[static_cast<size_t>(x) * s];
      const int* hp = &hpart_[static_cast<size_t>(x) * s];
      for (int i = 0; i < s; ++i) img += pow_[i] * static_cast<std::uint64_t>(t_.act(hp[i], v[pp[i]]));
      if (img == c) st.set(x);
      if (!seen[img]) {
        seen[img] = true;
        ++size;
      }
    }
    fn(OrbitRec{c, g->find(st), size});
  }
}

std::vector<CoinductionIndex::OrbitRec> CoinductionIndex::orbits() const {
  std::vector<OrbitRec> out;
  for_each_orbit([&](const OrbitRec& r) { out.push_back(r); });
  return out;
}

GSet coinduce(const GSet& t, int k, std::vector<std::uint64_t>* codes) {
  CoinductionIndex ci(t, k);
  if (ci.count() > budgets().max_coinduction)
    throw BudgetExceeded("coinduction has " + std::to_string(ci.count()) + " points");
  const auto& g = t.group();
  auto n = static_cast<int>(ci.count());
  std::vector<int> act(static_cast<size_t>(g->order()) * n, -1);
  for (int x : g->sub(k).elems)
    for (int c = 0; c < n; ++c) act[static_cast<size_t>(x) * n + c] = static_cast<int>(ci.act(x, static_cast<std::uint64_t>(c)));
  if (codes) {
    codes->resize(n);
    for (int c = 0; c < n; ++c) (*codes)[c] = static_cast<std::uint64_t>(c);
  }
  return GSet(g, k, n, std::move(act));
}

OrbitType iso_type(const GSet& x) {
  OrbitType t;
  const auto& g = x.group();
  for (const auto& o : x.orbits()) t[g->local_rep(x.top(), o.stab)] += 1;
  return t;
}

OrbitType coinduction_type(const CoinductionIndex& ci) {
  OrbitType t;
  const auto& g = ci.fiber().group();
  ci.for_each_orbit([&](const CoinductionIndex::OrbitRec& r) { t[g->local_rep(ci.top(), r.stab)] += 1; });
  return t;
}

bool gsets_isomorphic(const GSet& a, const GSet& b) {
  if (a.group() != b.group() || a.top() != b.top()) return false;
  return iso_type(a) == iso_type(b);
}

std::int64_t orbit_type_size(const Group& g, int top, const OrbitType& t) {
  std::int64_t n = 0;
  for (const auto& [s, c] : t) n += c * (g.sub_order(top) / g.sub_order(s));
  return n;
}

Mat table_of_marks(const Group& g, int top) {
  std::vector<int> reps = g.local_class_reps(top);
  int k = static_cast<int>(reps.size());
  Mat m(k, k);
  const auto& el = g.sub(top).elems;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      int cnt = 0;
      for (int x : el)
        if (g.le(g.conj(g.inv(x), reps[j]), reps[i])) ++cnt;
      m(i, j) = cnt / g.sub_order(reps[i]);
    }
  return m;
}

namespace {

// The sub-H-set on `pts` (assumed H-stable), reindexed 0..|pts|-1.
GSet subset_set(const GSet& x, int h, const std::vector<int>& pts, std::vector<int>& back) {
  const auto& g = x.group();
  std::vector<int> idx(x.size(), -1);
  for (int i = 0; i < static_cast<int>(pts.size()); ++i) idx[pts[i]] = i;
  int n = static_cast<int>(pts.size());
  std::vector<int> act(static_cast<size_t>(g->order()) * n, -1);
  for (int a : g->sub(h).elems)
    for (int i = 0; i < n; ++i) {
      int y = idx[x.act(a, pts[i])];
      if (y < 0) throw std::invalid_argument("subset is not stable");
      act[static_cast<size_t>(a) * n + i] = y;
    }
  back = pts;
  return GSet(g, h, n, std::move(act));
}

}  // namespace

DependentProduct dependent_product(const GSet& t0, int k, int top) {
  GSet p = coinduce(t0, k);
  DependentProduct d;
  d.pi = induce(p, top);
  d.base = GSet::cosets(t0.group(), top, k);
  d.hprime.resize(d.pi.size());
  for (int x = 0; x < d.pi.size(); ++x) d.hprime[x] = x / p.size();
  return d;
}

ExponentialDiagram exponential_diagram(const GSet& a, const std::vector<int>& h_to_cosets, int sub_h, int sub_k) {
  const auto& g = a.group();
  int top = a.top();
  if (!g->le(sub_h, sub_k) || !g->le(sub_k, top)) throw std::invalid_argument("exponential_diagram: need H <= K <= top");
  ExponentialDiagram e;
  e.A = a;
  e.X = GSet::cosets(g, top, sub_h);
  e.Y = GSet::cosets(g, top, sub_k);
  e.h.val = h_to_cosets;
  if (!is_equivariant(e.A, e.X, e.h)) throw std::invalid_argument("exponential_diagram: h is not equivariant");

  std::vector<int> fiber_pts;
  for (int x = 0; x < a.size(); ++x)
    if (h_to_cosets[x] == 0) fiber_pts.push_back(x);
  std::vector<int> back;
  GSet a0 = subset_set(a, sub_h, fiber_pts, back);
  CoinductionIndex ci(a0, sub_k);
  GSet p = coinduce(a0, sub_k);
  e.Pi = induce(p, top);

  std::vector<int> yreps = g->left_coset_reps(top, sub_k);
  std::vector<int> kreps = g->left_coset_reps(sub_k, sub_h);
  std::vector<int> xreps = g->left_coset_reps(top, sub_h);
  std::vector<int> ycoset(g->order(), -1), kcoset(g->order(), -1), xcoset(g->order(), -1);
  for (int i = 0; i < static_cast<int>(yreps.size()); ++i)
    for (int y : g->sub(sub_k).elems) ycoset[g->mul(yreps[i], y)] = i;
  for (int j = 0; j < static_cast<int>(kreps.size()); ++j)
    for (int y : g->sub(sub_h).elems) kcoset[g->mul(kreps[j], y)] = j;
  for (int i = 0; i < static_cast<int>(xreps.size()); ++i)
    for (int y : g->sub(sub_h).elems) xcoset[g->mul(xreps[i], y)] = i;

  e.g.val.resize(e.X.size());
  for (int i = 0; i < e.X.size(); ++i) e.g.val[i] = ycoset[xreps[i]];

  int ny = static_cast<int>(yreps.size()), nk = static_cast<int>(kreps.size()), np = p.size();
  int n = ny * nk * np;
  auto index = [&](int i, int j, int f) { return (i * nk + j) * np + f; };
  std::vector<int> act(static_cast<size_t>(g->order()) * n, -1);
  for (int x : g->sub(top).elems)
    for (int i = 0; i < ny; ++i) {
      int gc = g->mul(x, yreps[i]);
      int i2 = ycoset[gc];
      int kappa = g->mul(g->inv(yreps[i2]), gc);
      for (int j = 0; j < nk; ++j) {
        int j2 = kcoset[g->mul(kappa, kreps[j])];
        for (int f = 0; f < np; ++f) act[static_cast<size_t>(x) * n + index(i, j, f)] = index(i2, j2, p.act(kappa, f));
      }
    }
  e.XPi = GSet(g, top, n, std::move(act));
  e.fprime.val.resize(n);
  e.gprime.val.resize(n);
  for (int i = 0; i < ny; ++i)
    for (int j = 0; j < nk; ++j) {
      int x = g->mul(yreps[i], kreps[j]);
      int kinv = g->inv(kreps[j]);
      for (int f = 0; f < np; ++f) {
        std::vector<int> vals = ci.decode(static_cast<std::uint64_t>(f));
        int a0pt = back[ci.value_at(vals, kinv)];
        e.fprime.val[index(i, j, f)] = a.act(x, a0pt);
        e.gprime.val[index(i, j, f)] = i * np + f;
      }
    }
  e.hprime.val.resize(e.Pi.size());
  for (int q = 0; q < e.Pi.size(); ++q) e.hprime.val[q] = q / np;
  return e;
}

GSet circle_points(GroupPtr d, int n) {
  int m = d->dihedral_m();
  if (n % m != 0) throw std::invalid_argument("circle_points: m must divide N");
  int step = n / m;
  std::vector<int> act(static_cast<size_t>(d->order()) * n);
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < m; ++i) {
      int a = d->dihedral_index(i, e);
      for (int j = 0; j < n; ++j) {
        int r = e ? -j : j;
        act[static_cast<size_t>(a) * n + j] = ((r + i * step) % n + n) % n;
      }
    }
  int top = d->whole();
  return GSet(std::move(d), top, n, std::move(act));
}

}  // namespace equivar
