#include "equivar/boxnorm.hpp"

#include "equivar/config.hpp"

#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace equivar {

namespace {

SparseVec unit_vec(int j) { return SparseVec{{j, Int(1)}}; }

// Stabilizer in `within` of point z.
int stabilizer_in(const GSet& x, int within, int z) {
  const auto& g = *x.group();
  Mask m;
  for (int h : g.sub(within).elems)
    if (x.act(h, z) == z) m.set(h);
  return g.find(m);
}

}  // namespace

SpanApex span_apex(const SpanHom& f) {
  if (!f.is_effective()) throw std::invalid_argument("span_apex: virtual span");
  const auto& g = f.source.group();
  int top = f.source.top(), nt = f.target.size();
  SpanApex out{GSet::empty(g, top), {}, {}};
  for (const auto& [key, c] : f.terms) {
    int k = key.first, s = key.second / nt, t = key.second % nt;
    auto reps = g->left_coset_reps(top, k);
    GSet orbit = GSet::cosets(g, top, k);
    for (Int i = 0; i < c; ++i) {
      out.z = disjoint_union(out.z, orbit);
      for (int r : reps) {
        out.a.push_back(f.source.act(r, s));
        out.b.push_back(f.target.act(r, t));
      }
    }
  }
  return out;
}

SparseVec apply_span(const SpanApex& f, const RepBasis& target, int level, int u) {
  const auto& g = *f.z.group();
  SparseVec out;
  std::vector<char> seen(f.z.size(), 0);
  for (int z = 0; z < f.z.size(); ++z) {
    if (f.a[z] != u || seen[z]) continue;
    for (int h : g.sub(level).elems) seen[f.z.act(h, z)] = 1;
    out = sparse_add(out, unit_vec(target.index(level, stabilizer_in(f.z, level, z), f.b[z])));
  }
  return out;
}

// ---------------------------------------------------------------- presentations

SpanHom EffectiveCoequalizerPresentation::d(int i) const {
  const SpanHom& r = i == 0 ? r0 : r1;
  int nt = t.size();
  SpanHom out = SpanHom::zero(disjoint_union(u, t), t);
  for (const auto& [key, c] : r.terms) out.add(key.first, key.second / nt, key.second % nt, c);
  for (const auto& o : t.orbits()) out.add(o.stab, u.size() + o.rep, o.rep, 1);
  return out;
}

SpanHom EffectiveCoequalizerPresentation::s0() const {
  SpanHom out = SpanHom::zero(t, disjoint_union(u, t));
  for (const auto& o : t.orbits()) out.add(o.stab, o.rep, u.size() + o.rep, 1);
  return out;
}

bool EffectiveCoequalizerPresentation::check(std::string* why) const {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  if (!r0.is_effective() || !r1.is_effective()) return fail("relation spans must be effective");
  SpanHom id = SpanHom::identity(t);
  for (int i = 0; i < 2; ++i)
    if (!(compose_spans(s0(), d(i)) == id)) return fail("d" + std::to_string(i) + " s0 is not the identity");
  return true;
}

Mackey EffectiveCoequalizerPresentation::realize() const {
  Mackey r = Mackey::representable(t);
  SpanApex a0 = span_apex(r0), a1 = span_apex(r1);
  std::vector<MackeyElement> rels;
  for (const auto& o : u.orbits()) {
    SparseVec v = sparse_add(apply_span(a0, *r.rep(), o.stab, o.rep), apply_span(a1, *r.rep(), o.stab, o.rep), -1);
    if (!v.empty()) rels.push_back({o.stab, std::move(v)});
  }
  return r.quotient(rels);
}

EffectiveCoequalizerPresentation constant_Z_presentation(const GroupPtr& g, int h) {
  if (g->sub_order(h) != 2) throw std::invalid_argument("constant_Z_presentation: need a subgroup of order 2");
  GSet pt = GSet::point(g, h);
  GSet free = GSet::cosets(g, h, 0), two = GSet::trivial(g, h, 2);
  return {pt, pt, SpanHom::from_maps(pt, pt, free, {0, 0}, {0, 0}), SpanHom::from_maps(pt, pt, two, {0, 0}, {0, 0})};
}

EffectiveCoequalizerPresentation free_presentation(const GSet& t) {
  GSet none = GSet::empty(t.group(), t.top());
  return {none, t, SpanHom::zero(none, t), SpanHom::zero(none, t)};
}

// ---------------------------------------------------------------- box

Mackey box(const Mackey& m, const Mackey& n) {
  if (!m.rep() || !n.rep()) throw std::logic_error("box: needs presented functors");
  if (m.group() != n.group() || m.top() != n.top()) throw std::invalid_argument("box: different groups");
  const auto& g = *m.group();
  const GSet& s = m.rep()->set();
  const GSet& t = n.rep()->set();
  int nt = t.size();
  Mackey r = Mackey::representable(product(s, t));
  std::vector<MackeyElement> rels;
  // side 0: rel(M) x T, side 1: S x rel(N)
  for (int side = 0; side < 2; ++side) {
    const Mackey& f = side == 0 ? m : n;
    const GSet& other = side == 0 ? t : s;
    for (int k : g.local_class_reps(m.top()))
      for (const auto& b : f.rels(k).basis()) {
        SparseVec x = to_sparse(b);
        for (const auto& o : other.orbits_under(k)) {
          int l = o.stab;
          SparseVec rx = f.res(k, l).apply(x), img;
          for (const auto& [j, c] : rx) {
            auto [tt, p] = f.rep()->elem(l, j);
            int q = side == 0 ? p * nt + o.rep : o.rep * nt + p;
            img = sparse_add(img, SparseVec{{r.rep()->index(l, tt, q), c}});
          }
          if (!img.empty()) rels.push_back({l, std::move(img)});
        }
      }
  }
  return r.quotient(rels);
}

// ---------------------------------------------------------------- norms

namespace {

std::unordered_map<std::uint64_t, int> code_positions(const std::vector<std::uint64_t>& codes) {
  std::unordered_map<std::uint64_t, int> pos;
  pos.reserve(codes.size());
  for (size_t i = 0; i < codes.size(); ++i) pos.emplace(codes[i], static_cast<int>(i));
  return pos;
}

}  // namespace

SpanHom norm_span(const SpanHom& f, int k) {
  SpanApex ap = span_apex(f);
  CoinductionIndex cs(f.source, k), ct(f.target, k), cz(ap.z, k);
  std::vector<std::uint64_t> codes_s, codes_t, codes_z;
  GSet ms = coinduce(f.source, k, &codes_s), mt = coinduce(f.target, k, &codes_t), mz = coinduce(ap.z, k, &codes_z);
  auto pos_s = code_positions(codes_s), pos_t = code_positions(codes_t);
  std::vector<int> a(mz.size()), b(mz.size());
  for (int i = 0; i < mz.size(); ++i) {
    std::vector<int> v = cz.decode(codes_z[i]), va(v.size()), vb(v.size());
    for (size_t j = 0; j < v.size(); ++j) {
      va[j] = ap.a[v[j]];
      vb[j] = ap.b[v[j]];
    }
    a[i] = pos_s.at(cs.encode(va));
    b[i] = pos_t.at(ct.encode(vb));
  }
  return SpanHom::from_maps(ms, mt, mz, a, b);
}

namespace {

// Normed image of the generator F of A_{Map(W)} at level `level` under the span W <-a- Y -b-> T.
struct NormedLeg {
  GSet y;
  std::vector<int> a, b;
  CoinductionIndex ci;
  NormedLeg(GSet yy, std::vector<int> aa, std::vector<int> bb, int k)
      : y(std::move(yy)), a(std::move(aa)), b(std::move(bb)), ci(y, k) {}
};

SparseVec normed_image(const NormedLeg& leg, const std::vector<int>& fvals, int level, const CoinductionIndex& ct,
                       const std::unordered_map<std::uint64_t, int>& pos_t, const RepBasis& target) {
  const auto& g = *leg.y.group();
  int slots = static_cast<int>(fvals.size());
  std::vector<std::vector<int>> choices(slots);
  double total = 1;
  for (int i = 0; i < slots; ++i) {
    for (int z = 0; z < leg.y.size(); ++z)
      if (leg.a[z] == fvals[i]) choices[i].push_back(z);
    if (choices[i].empty()) return {};
    total *= static_cast<double>(choices[i].size());
  }
  if (total > static_cast<double>(budgets().max_coinduction))
    throw BudgetExceeded("norm fiber has " + std::to_string(static_cast<long long>(total)) + " points");
  const auto& elems = g.sub(level).elems;
  std::unordered_set<std::uint64_t> seen;
  std::vector<int> idx(slots, 0), vals(slots), bvals(slots);
  SparseVec out;
  while (true) {
    for (int i = 0; i < slots; ++i) vals[i] = choices[i][idx[i]];
    std::uint64_t code = leg.ci.encode(vals);
    if (!seen.count(code)) {
      Mask stab;
      for (int h : elems) {
        std::uint64_t c = leg.ci.act(h, code);
        if (c == code) stab.set(h);
        seen.insert(c);
      }
      for (int i = 0; i < slots; ++i) bvals[i] = leg.b[vals[i]];
      int p = pos_t.at(ct.encode(bvals));
      out = sparse_add(out, unit_vec(target.index(level, g.find(stab), p)));
    }
    int i = 0;
    while (i < slots && ++idx[i] == static_cast<int>(choices[i].size())) idx[i++] = 0;
    if (i == slots) break;
  }
  return out;
}

NormedLeg make_leg(const EffectiveCoequalizerPresentation& p, const SpanApex& ap, int k) {
  GSet y = disjoint_union(ap.z, p.t);
  std::vector<int> a = ap.a, b = ap.b;
  for (int j = 0; j < p.t.size(); ++j) {
    a.push_back(p.u.size() + j);
    b.push_back(j);
  }
  return NormedLeg(std::move(y), std::move(a), std::move(b), k);
}

}  // namespace

Mackey norm_mackey(const EffectiveCoequalizerPresentation& p, int k) {
  std::string why;
  if (!p.check(&why)) throw std::invalid_argument("norm_mackey: " + why);
  const auto& g = *p.t.group();
  if (!g.le(p.t.top(), k)) throw std::invalid_argument("norm_mackey: target must contain the source group");
  std::vector<std::uint64_t> codes_t;
  GSet mt = coinduce(p.t, k, &codes_t);
  auto pos_t = code_positions(codes_t);
  CoinductionIndex ct(p.t, k);
  Mackey r = Mackey::representable(mt);
  if (p.u.size() == 0) return r;

  NormedLeg leg0 = make_leg(p, span_apex(p.r0), k), leg1 = make_leg(p, span_apex(p.r1), k);
  GSet w = disjoint_union(p.u, p.t);
  CoinductionIndex cw(w, k);
  std::set<std::pair<int, SparseVec>> rels;
  cw.for_each_orbit([&](const CoinductionIndex::OrbitRec& o) {
    std::vector<int> f = cw.decode(o.rep);
    bool touches_u = false;
    for (int v : f) touches_u |= v < p.u.size();
    if (!touches_u) return;  // both legs restrict to the identity here
    SparseVec v = sparse_add(normed_image(leg0, f, o.stab, ct, pos_t, *r.rep()),
                             normed_image(leg1, f, o.stab, ct, pos_t, *r.rep()), -1);
    if (!v.empty()) rels.insert({o.stab, std::move(v)});
  });
  std::vector<MackeyElement> elems;
  for (auto& [l, v] : rels) elems.push_back({l, v});
  return r.quotient(elems);
}

// ---------------------------------------------------------------- conjugation

GSet conjugate_gset(const GSet& x, int gel) {
  const auto& g = x.group();
  int top = g->conj(gel, x.top()), n = x.size();
  int gi = g->inv(gel);
  std::vector<int> act(static_cast<size_t>(g->order()) * n, -1);
  for (int y : g->sub(top).elems) {
    int yy = g->mul(g->mul(gi, y), gel);
    for (int q = 0; q < n; ++q) act[static_cast<size_t>(y) * n + q] = x.act(yy, q);
  }
  return GSet(g, top, n, std::move(act));
}

EffectiveCoequalizerPresentation conjugate_presentation(const EffectiveCoequalizerPresentation& p, int gel) {
  const auto& g = *p.t.group();
  EffectiveCoequalizerPresentation out{conjugate_gset(p.u, gel), conjugate_gset(p.t, gel), {}, {}};
  int nt = p.t.size();
  for (int i = 0; i < 2; ++i) {
    const SpanHom& r = i == 0 ? p.r0 : p.r1;
    SpanHom c = SpanHom::zero(out.u, out.t);
    for (const auto& [key, coef] : r.terms) c.add(g.conj(gel, key.first), key.second / nt, key.second % nt, coef);
    (i == 0 ? out.r0 : out.r1) = std::move(c);
  }
  return out;
}

Mackey conjugation_transport(const Mackey& m, int gel) {
  const auto& gp = m.group();
  const auto& g = *gp;
  int gi = g.inv(gel);
  if (m.rep()) {
    Mackey r = Mackey::representable(conjugate_gset(m.rep()->set(), gel));
    std::vector<Lattice> rels;
    for (int s2 : r.levels()) {
      int s = g.conj(gi, s2);
      Lattice l(r.ngens(s2));
      for (const auto& b : m.rels(s).basis()) {
        Vec v(r.ngens(s2), 0);
        for (int i = 0; i < m.ngens(s); ++i) {
          if (b[i] == 0) continue;
          auto [t, x] = m.rep()->elem(s, i);
          v[r.rep()->index(s2, g.conj(gel, t), x)] += b[i];
        }
        l.add(v);
      }
      rels.push_back(std::move(l));
    }
    return r.with_relations(std::move(rels));
  }
  int top = g.conj(gel, m.top());
  std::vector<Mackey::Level> levels;
  for (int s2 : g.subgroups_of(top)) {
    int s = g.conj(gi, s2);
    Mackey::Level l;
    l.sub = s2;
    for (int i = 0; i < m.ngens(s); ++i) l.labels.push_back(m.label(s, i));
    l.rels = m.rels(s);
    levels.push_back(std::move(l));
  }
  Mackey r(gp, top, std::move(levels));
  for (int s2 : r.levels()) {
    int s = g.conj(gi, s2);
    for (int u2 : g.subgroups_of(s2)) {
      int u = g.conj(gi, u2);
      r.set_res(s2, u2, m.res(s, u));
      r.set_tr(u2, s2, m.tr(u, s));
    }
    for (int y : g.sub(top).elems) r.set_conj(y, s2, m.conj(g.mul(g.mul(gi, y), gel), s));
  }
  if (m.has_green()) {
    std::vector<std::vector<SparseVec>> table;
    std::vector<SparseVec> units;
    for (int s2 : r.levels()) {
      int s = g.conj(gi, s2), n = m.ngens(s);
      std::vector<SparseVec> t(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[static_cast<size_t>(i) * n + j] = m.mul(s, i, j);
      table.push_back(std::move(t));
      units.push_back(m.unit(s));
    }
    r.set_green(std::move(table), std::move(units));
  }
  return r;
}

Mackey geometric_fixed_points_dihedral(const Mackey& m, int d, GroupPtr q) {
  const auto& g = m.group();
  if (!g->is_dihedral() || m.top() != g->whole()) throw std::invalid_argument("geometric fixed points: need a dihedral top level");
  int mm = g->dihedral_m();
  if (d <= 0 || mm % d) throw std::invalid_argument("geometric fixed points: d must divide m");
  if (!q) q = Group::dihedral(mm / d);
  if (!q->is_dihedral() || q->dihedral_m() != mm / d) throw std::invalid_argument("geometric fixed points: wrong quotient group");
  return m.geometric_fixed_points(dihedral_rotation_subgroup(*g, d), dihedral_quotient(g, q));
}

}  // namespace equivar
