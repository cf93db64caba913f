#include "equivar/mackey.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace equivar {

namespace {

using json = nlohmann::ordered_json;

SparseVec unit_vec(int j) { return SparseVec{{j, Int(1)}}; }

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

json json_int(const Int& v) {
  if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
    return static_cast<long long>(v);
  return v.str();
}

json json_mat(const SparseMat& m) {
  Mat d = m.dense();
  json rows = json::array();
  for (int i = 0; i < d.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < d.cols(); ++j) row.push_back(json_int(d(i, j)));
    rows.push_back(row);
  }
  return rows;
}

// Subgroup of the ambient group of `top` mapping onto q under pi (restricted to top).
int preimage(const Group& g, int top, const GroupHom& pi, int q) {
  Mask m;
  for (int x : g.sub(top).elems)
    if (pi.dst->contains(q, pi.img[x])) m.set(x);
  int r = g.find(m);
  if (r < 0) throw std::logic_error("preimage is not a subgroup");
  return r;
}

}  // namespace

Mackey Mackey::restrict(int k) const {
  if (!g_->le(k, top_)) throw std::invalid_argument("restrict: not a subgroup of top");
  if (rep_) {
    Mackey r = representable(rep_->set().restrict(k));
    std::vector<Lattice> rels;
    for (int s : r.levels()) rels.push_back(this->rels(s));
    if (!green_) r.green_ = false;
    return r.with_relations(std::move(rels));
  }
  std::vector<Level> levels;
  for (int s : g_->subgroups_of(k)) levels.push_back(lv(s));
  Mackey r(g_, k, std::move(levels));
  for (int s : r.subs_) {
    for (int u : g_->subgroups_of(s)) {
      r.set_res(s, u, res(s, u));
      r.set_tr(u, s, tr(u, s));
    }
    for (int x : g_->sub(k).elems) r.set_conj(x, s, conj(x, s));
  }
  if (green_) {
    std::vector<std::vector<SparseVec>> table;
    std::vector<SparseVec> units;
    for (int s : r.subs_) {
      table.push_back(mul_[pos_[s]]);
      units.push_back(unit_[pos_[s]]);
    }
    r.set_green(std::move(table), std::move(units));
  }
  return r;
}

Mackey Mackey::pullback(const GroupHom& phi) const {
  const auto& q = phi.src;
  if (!phi.is_injective() || !g_->le(phi.map_subgroup(q->whole()), top_))
    throw std::invalid_argument("pullback: need an injective map into top");
  std::vector<int> img_of(q->num_subgroups());
  std::map<int, int> pre;
  for (int s = 0; s < q->num_subgroups(); ++s) {
    img_of[s] = phi.map_subgroup(s);
    pre[img_of[s]] = s;
  }
  if (rep_) {
    const GSet& x = rep_->set();
    std::vector<int> act(static_cast<size_t>(q->order()) * x.size());
    for (int a = 0; a < q->order(); ++a)
      for (int p = 0; p < x.size(); ++p) act[static_cast<size_t>(a) * x.size() + p] = x.act(phi.img[a], p);
    Mackey r = representable(GSet(q, q->whole(), x.size(), std::move(act)));
    std::vector<Lattice> rels;
    for (int s : r.levels()) {
      int big = img_of[s];
      Lattice l(r.ngens(s));
      for (const auto& b : this->rels(big).basis()) {
        Vec v(r.ngens(s), 0);
        for (int i = 0; i < ngens(big); ++i) {
          if (b[i] == 0) continue;
          auto [t, p] = rep_->elem(big, i);
          v[r.rep()->index(s, pre.at(t), p)] += b[i];
        }
        l.add(v);
      }
      rels.push_back(std::move(l));
    }
    return r.with_relations(std::move(rels));
  }
  std::vector<Level> levels;
  for (int s = 0; s < q->num_subgroups(); ++s) {
    Level l = lv(img_of[s]);
    l.sub = s;
    levels.push_back(std::move(l));
  }
  Mackey r(q, q->whole(), std::move(levels));
  for (int s = 0; s < q->num_subgroups(); ++s) {
    for (int u : q->subgroups_of(s)) {
      r.set_res(s, u, res(img_of[s], img_of[u]));
      r.set_tr(u, s, tr(img_of[u], img_of[s]));
    }
    for (int a = 0; a < q->order(); ++a) r.set_conj(a, s, conj(phi.img[a], img_of[s]));
  }
  if (green_) {
    std::vector<std::vector<SparseVec>> table;
    std::vector<SparseVec> units;
    for (int s = 0; s < q->num_subgroups(); ++s) {
      table.push_back(mul_[pos_[img_of[s]]]);
      units.push_back(unit_[pos_[img_of[s]]]);
    }
    r.set_green(std::move(table), std::move(units));
  }
  return r;
}

Mackey Mackey::fixed_points_functor(int n, const GroupHom& pi) const {
  if (!g_->is_normal(n, top_)) throw std::invalid_argument("fixed_points_functor: subgroup is not normal");
  const auto& q = pi.dst;
  std::vector<int> lift(q->order(), -1);
  for (int x : g_->sub(top_).elems)
    if (lift[pi.img[x]] < 0) lift[pi.img[x]] = x;
  for (int v : lift)
    if (v < 0) throw std::invalid_argument("fixed_points_functor: quotient map is not onto");
  std::vector<int> big(q->num_subgroups());
  std::vector<Level> levels;
  for (int s = 0; s < q->num_subgroups(); ++s) {
    big[s] = preimage(*g_, top_, pi, s);
    if (!g_->le(n, big[s])) throw std::logic_error("fixed_points_functor: kernel mismatch");
    Level l = lv(big[s]);
    l.sub = s;
    levels.push_back(std::move(l));
  }
  Mackey r(q, q->whole(), std::move(levels));
  for (int s = 0; s < q->num_subgroups(); ++s) {
    for (int u : q->subgroups_of(s)) {
      r.set_res(s, u, res(big[s], big[u]));
      r.set_tr(u, s, tr(big[u], big[s]));
    }
    for (int a = 0; a < q->order(); ++a) r.set_conj(a, s, conj(lift[a], big[s]));
  }
  if (green_) {
    std::vector<std::vector<SparseVec>> table;
    std::vector<SparseVec> units;
    for (int s = 0; s < q->num_subgroups(); ++s) {
      table.push_back(mul_[pos_[big[s]]]);
      units.push_back(unit_[pos_[big[s]]]);
    }
    r.set_green(std::move(table), std::move(units));
  }
  return r;
}

Mackey Mackey::geometric_fixed_points(int n, const GroupHom& pi) const {
  if (!rep_) throw std::logic_error("geometric_fixed_points: needs a presented functor");
  if (!g_->is_normal(n, top_)) throw std::invalid_argument("geometric_fixed_points: subgroup is not normal");
  const auto& q = pi.dst;
  // Subfunctor generated by all levels that do not contain n.
  std::vector<MackeyElement> gens;
  for (int s : subs_)
    if (!g_->le(n, s))
      for (int j = 0; j < ngens(s); ++j) gens.push_back({s, unit_vec(j)});
  std::vector<Lattice> killed = generated_subfunctor(gens, false);

  const GSet& x = rep_->set();
  std::vector<int> fixed = x.fixed_points(n);
  std::vector<int> pos(x.size(), -1);
  for (size_t i = 0; i < fixed.size(); ++i) pos[fixed[i]] = static_cast<int>(i);
  std::vector<int> lift(q->order(), -1);
  for (int a : g_->sub(top_).elems)
    if (lift[pi.img[a]] < 0) lift[pi.img[a]] = a;
  int nf = static_cast<int>(fixed.size());
  std::vector<int> act(static_cast<size_t>(q->order()) * nf);
  for (int a = 0; a < q->order(); ++a)
    for (int i = 0; i < nf; ++i) act[static_cast<size_t>(a) * nf + i] = pos[x.act(lift[a], fixed[i])];
  Mackey r = representable(GSet(q, q->whole(), nf, std::move(act)));

  std::vector<Lattice> rels;
  for (int s : r.levels()) {
    int h = preimage(*g_, top_, pi, s);
    const Lattice& k = killed[pos_[h]];
    std::vector<int> to_new(ngens(h), -1);
    int kept = 0;
    for (int i = 0; i < ngens(h); ++i) {
      auto [t, p] = rep_->elem(h, i);
      if (g_->le(n, t)) {
        to_new[i] = r.rep()->index(s, pi.map_subgroup(t), pos[p]);
        ++kept;
      } else if (!k.contains(unit_vec(i))) {
        throw std::logic_error("geometric_fixed_points: a generator off the fixed levels survived");
      }
    }
    if (kept != r.ngens(s)) throw std::logic_error("geometric_fixed_points: generator count mismatch");
    Lattice l(r.ngens(s));
    for (const auto& b : k.basis()) {
      Vec v(r.ngens(s), 0);
      for (int i = 0; i < ngens(h); ++i)
        if (to_new[i] >= 0) v[to_new[i]] += b[i];
      l.add(v);
    }
    rels.push_back(std::move(l));
  }
  return r.with_relations(std::move(rels));
}

// ---------------------------------------------------------------- morphisms

bool verify_morphism(const Mackey& m, const Mackey& n, const MackeyMap& f, std::string* why) {
  if (m.group() != n.group() || m.top() != n.top()) return fail(why, "different groups");
  const auto& g = *m.group();
  const auto& subs = m.levels();
  if (f.at.size() != subs.size()) return fail(why, "wrong number of levels");
  auto at = [&](int s) -> const SparseMat& {
    return f.at[std::find(subs.begin(), subs.end(), s) - subs.begin()];
  };
  for (int s : subs) {
    const SparseMat& fs = at(s);
    if (fs.ncols() != m.ngens(s) || fs.rows != n.ngens(s)) return fail(why, "shape mismatch at " + g.subgroup_name(s));
    for (const auto& b : m.rels(s).basis())
      if (!n.rels(s).contains(fs.apply(b))) return fail(why, "relations not preserved at " + g.subgroup_name(s));
  }
  for (int s : g.local_class_reps(m.top())) {
    for (int u : g.subgroups_of(s)) {
      for (int j = 0; j < m.ngens(s); ++j) {
        SparseVec l = at(u).apply(m.res(s, u).apply(unit_vec(j)));
        SparseVec r = n.res(s, u).apply(at(s).apply(unit_vec(j)));
        if (!n.rels(u).contains(sparse_add(l, r, -1))) return fail(why, "does not commute with res " + g.subgroup_name(s) + ">" + g.subgroup_name(u));
      }
      for (int j = 0; j < m.ngens(u); ++j) {
        SparseVec l = at(s).apply(m.tr(u, s).apply(unit_vec(j)));
        SparseVec r = n.tr(u, s).apply(at(u).apply(unit_vec(j)));
        if (!n.rels(s).contains(sparse_add(l, r, -1))) return fail(why, "does not commute with tr " + g.subgroup_name(u) + "<" + g.subgroup_name(s));
      }
    }
    for (int x : g.sub(m.top()).elems) {
      int sx = g.conj(x, s);
      for (int j = 0; j < m.ngens(s); ++j) {
        SparseVec l = at(sx).apply(m.conj(x, s).apply(unit_vec(j)));
        SparseVec r = n.conj(x, s).apply(at(s).apply(unit_vec(j)));
        if (!n.rels(sx).contains(sparse_add(l, r, -1))) return fail(why, "does not commute with conjugation at " + g.subgroup_name(s));
      }
    }
  }
  return true;
}

MackeyMap morphism_from_images(const Mackey& m, const Mackey& n, const std::vector<SparseVec>& images) {
  const auto& rb = m.rep();
  if (!rb) throw std::logic_error("morphism_from_images: source is not presented");
  const auto& g = *m.group();
  const GSet& x = rb->set();
  auto orbs = x.orbits();
  if (images.size() != orbs.size()) throw std::invalid_argument("morphism_from_images: one image per orbit");
  std::vector<int> orbit_of(x.size()), trans(x.size(), -1);
  for (size_t i = 0; i < orbs.size(); ++i)
    for (int h : g.sub(m.top()).elems) {
      int y = x.act(h, orbs[i].rep);
      if (trans[y] < 0) {
        trans[y] = h;
        orbit_of[y] = static_cast<int>(i);
      }
    }
  MackeyMap f;
  for (int s : m.levels()) {
    SparseMat col(n.ngens(s), m.ngens(s));
    for (int i = 0; i < m.ngens(s); ++i) {
      auto [t, y] = rb->elem(s, i);
      int o = orbit_of[y], h = trans[y];
      int stab = orbs[o].stab;
      int hs = g.conj(h, stab);
      SparseVec v = n.conj(h, stab).apply(images[o]);
      v = n.res(hs, t).apply(v);
      col.cols[i] = n.tr(t, s).apply(v);
    }
    f.at.push_back(std::move(col));
  }
  return f;
}

MackeyMap identity_map(const Mackey& m) {
  MackeyMap f;
  for (int s : m.levels()) f.at.push_back(SparseMat::identity(m.ngens(s)));
  return f;
}

IsoCertificate certify_iso(const Mackey& m, const Mackey& n, const MackeyMap& fwd, const MackeyMap& bwd) {
  IsoCertificate c;
  c.forward = fwd;
  c.backward = bwd;
  const auto& g = *m.group();
  for (int s : m.levels())
    if (!m.value(s).isomorphic(n.value(s))) {
      c.invariants_differ = true;
      c.reason = "values differ at " + g.subgroup_name(s) + ": " + m.value(s).describe() + " vs " + n.value(s).describe();
      return c;
    }
  std::string why;
  if (!verify_morphism(m, n, fwd, &why)) {
    c.reason = "forward map: " + why;
    return c;
  }
  if (!verify_morphism(n, m, bwd, &why)) {
    c.reason = "backward map: " + why;
    return c;
  }
  const auto& subs = m.levels();
  for (size_t k = 0; k < subs.size(); ++k) {
    int s = subs[k];
    for (int j = 0; j < m.ngens(s); ++j)
      if (!m.rels(s).contains(sparse_add(bwd.at[k].apply(fwd.at[k].apply(unit_vec(j))), unit_vec(j), -1))) {
        c.reason = "backward after forward is not the identity at " + g.subgroup_name(s);
        return c;
      }
    for (int j = 0; j < n.ngens(s); ++j)
      if (!n.rels(s).contains(sparse_add(fwd.at[k].apply(bwd.at[k].apply(unit_vec(j))), unit_vec(j), -1))) {
        c.reason = "forward after backward is not the identity at " + g.subgroup_name(s);
        return c;
      }
  }
  c.found = true;
  c.reason = "verified";
  return c;
}

IsoCertificate mackey_iso(const Mackey& m, const Mackey& n) {
  IsoCertificate c;
  if (m.group() != n.group() || m.top() != n.top()) {
    c.reason = "different groups";
    return c;
  }
  for (int s : m.levels())
    if (!m.value(s).isomorphic(n.value(s))) {
      c.invariants_differ = true;
      c.reason = "values differ at " + m.group()->subgroup_name(s) + ": " + m.value(s).describe() + " vs " + n.value(s).describe();
      return c;
    }
  if (!m.rep() || !n.rep() || m.rep()->set().orbits().size() != 1 || n.rep()->set().orbits().size() != 1) {
    c.reason = "inconclusive: no seeded candidate for these presentations";
    return c;
  }
  auto om = m.rep()->set().orbits().front(), on = n.rep()->set().orbits().front();
  if (om.stab != on.stab) {
    c.reason = "inconclusive: generating orbits have different stabilizers";
    return c;
  }
  SparseVec gm = unit_vec(m.rep()->index(om.stab, om.stab, om.rep));
  SparseVec gn = unit_vec(n.rep()->index(on.stab, on.stab, on.rep));
  return certify_iso(m, n, morphism_from_images(m, n, {gn}), morphism_from_images(n, m, {gm}));
}

IsoCertificate iso_from_forward(const Mackey& m, const Mackey& n, const MackeyMap& fwd) {
  IsoCertificate c;
  if (m.group() != n.group() || m.top() != n.top()) {
    c.reason = "different groups";
    return c;
  }
  MackeyMap bwd;
  const auto& subs = m.levels();
  for (size_t k = 0; k < subs.size(); ++k) {
    int s = subs[k];
    // [f | rels(N)] x = e_j
    Mat a = fwd.at[k].dense().hcat(n.rels(s).matrix());
    SparseMat col(m.ngens(s), n.ngens(s));
    for (int j = 0; j < n.ngens(s); ++j) {
      Vec x;
      if (!solve_integer(a, to_dense(unit_vec(j), n.ngens(s)), x)) {
        c.reason = "candidate is not surjective at " + m.group()->subgroup_name(s);
        return c;
      }
      x.resize(m.ngens(s));
      col.cols[j] = to_sparse(x);
    }
    bwd.at.push_back(std::move(col));
  }
  return certify_iso(m, n, fwd, bwd);
}

std::string IsoCertificate::to_json() const {
  json j;
  j["found"] = found;
  j["invariants_differ"] = invariants_differ;
  j["reason"] = reason;
  json f = json::array(), b = json::array();
  for (const auto& m : forward.at) f.push_back(json_mat(m));
  for (const auto& m : backward.at) b.push_back(json_mat(m));
  j["forward"] = f;
  j["backward"] = b;
  return j.dump();
}

// ---------------------------------------------------------------- output

std::string Mackey::to_json(bool pretty) const {
  const auto& g = *g_;
  json j;
  j["group"] = g.descriptor();
  j["top"] = top_ == g.whole() ? "G" : g.subgroup_name(top_);
  auto reps = g.local_class_reps(top_);
  json levels = json::array();
  for (int s : reps) {
    json l;
    l["subgroup"] = g.subgroup_name(s);
    l["generators"] = lv(s).labels;
    json rel = json::array();
    for (const auto& b : rels(s).basis()) {
      json v = json::array();
      for (const auto& x : b) v.push_back(json_int(x));
      rel.push_back(v);
    }
    l["relations"] = rel;
    json inv = json::array();
    auto v = value(s);
    for (const auto& d : v.invariant_factors()) inv.push_back(json_int(d));
    l["invariant_factors"] = inv;
    l["value"] = value(s).describe();
    json weyl = json::array();
    for (int x : g.left_coset_reps(g.meet(g.normalizer(s), top_), s)) {
      if (x == 0) continue;
      weyl.push_back({{"element", g.label(x)}, {"matrix", json_mat(conj(x, s))}});
    }
    l["weyl"] = weyl;
    levels.push_back(l);
  }
  j["levels"] = levels;
  json r = json::object(), t = json::object();
  for (int s : reps)
    for (int u : reps)
      if (u != s && g.le(u, s)) {
        std::string key = g.subgroup_name(u) + "<" + g.subgroup_name(s);
        r[key] = json_mat(res(s, u));
        t[key] = json_mat(tr(u, s));
      }
  j["res"] = r;
  j["tr"] = t;
  return pretty ? j.dump(2) : j.dump();
}

std::string Mackey::show() const {
  const auto& g = *g_;
  std::ostringstream os;
  auto reps = g.local_class_reps(top_);
  std::reverse(reps.begin(), reps.end());
  for (int s : reps) {
    os << g.subgroup_name(s) << ": " << value(s).describe() << "   generators";
    for (const auto& l : lv(s).labels) os << " " << l;
    os << "\n";
    for (int u : reps) {
      if (u == s || !g.le(u, s)) continue;
      Mat rm = res(s, u).dense(), tm = tr(u, s).dense();
      os << "  res to " << g.subgroup_name(u) << ":";
      for (int c = 0; c < rm.cols(); ++c) {
        os << " (";
        for (int i = 0; i < rm.rows(); ++i) os << (i ? "," : "") << rm(i, c);
        os << ")";
      }
      os << "\n  tr from " << g.subgroup_name(u) << ":";
      for (int c = 0; c < tm.cols(); ++c) {
        os << " (";
        for (int i = 0; i < tm.rows(); ++i) os << (i ? "," : "") << tm(i, c);
        os << ")";
      }
      os << "\n";
    }
  }
  return os.str();
}

}  // namespace equivar
