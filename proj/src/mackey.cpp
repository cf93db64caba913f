#include "equivar/mackey.hpp"

#include <set>
#include <stdexcept>

namespace equivar {

// ---------------------------------------------------------------- RepBasis

RepBasis::RepBasis(GSet x) : x_(std::move(x)) { levels_.resize(x_.group()->num_subgroups()); }

const RepBasis::Level& RepBasis::level(int s) const {
  auto& slot = levels_.at(s);
  if (slot) return *slot;
  const auto& g = group();
  auto l = std::make_unique<Level>();
  int n = x_.size();
  l->orbit_rep.assign(n, -1);
  l->trans.assign(n, -1);
  l->stab.assign(n, -1);
  for (const auto& o : x_.orbits_under(s)) {
    for (int h : g->sub(s).elems) {
      int y = x_.act(h, o.rep);
      if (l->trans[y] < 0) {
        l->trans[y] = h;
        l->orbit_rep[y] = o.rep;
      }
    }
    l->stab[o.rep] = o.stab;
    for (int t : g->local_class_reps(o.stab)) {
      l->index[{t, o.rep}] = static_cast<int>(l->elems.size());
      l->elems.push_back({t, o.rep});
    }
  }
  slot = std::move(l);
  return *slot;
}

int RepBasis::index(int s, int t, int y) const {
  const auto& l = level(s);
  const auto& g = group();
  int x = l.orbit_rep[y];
  int h = l.trans[y];
  int t1 = g->local_rep(l.stab[x], g->conj(g->inv(h), t));
  auto it = l.index.find({t1, x});
  if (it == l.index.end()) throw std::logic_error("RepBasis: pair is not a basis element");
  return it->second;
}

std::string RepBasis::label(int s, int i) const {
  const auto& g = group();
  auto [t, x] = elem(s, i);
  std::string base = "[" + g->subgroup_name(s) + "/" + g->subgroup_name(t) + "]";
  return x_.size() == 1 ? base : base + "@" + std::to_string(x);
}

SparseVec RepBasis::res(int s, int u, int i) const {
  const auto& g = group();
  auto [t, x] = elem(s, i);
  SparseVec out;
  for (int gamma : g->double_coset_reps(s, u, t)) {
    int j = index(u, g->meet(u, g->conj(gamma, t)), x_.act(gamma, x));
    out = sparse_add(out, SparseVec{{j, Int(1)}});
  }
  return out;
}

int RepBasis::tr(int u, int s, int i) const {
  auto [t, x] = elem(u, i);
  return index(s, t, x);
}

int RepBasis::conj(int gel, int s, int i) const {
  const auto& g = group();
  auto [t, x] = elem(s, i);
  return index(g->conj(gel, s), g->conj(gel, t), x_.act(gel, x));
}

// ---------------------------------------------------------------- Mackey core

Mackey::Mackey(GroupPtr g, int top, std::vector<Level> levels) : g_(std::move(g)), top_(top), levels_(std::move(levels)) {
  pos_.assign(g_->num_subgroups(), -1);
  for (size_t i = 0; i < levels_.size(); ++i) {
    subs_.push_back(levels_[i].sub);
    pos_[levels_[i].sub] = static_cast<int>(i);
  }
  size_t n = levels_.size();
  res_.assign(n * n, SparseMat());
  tr_.assign(n * n, SparseMat());
  conj_.assign(static_cast<size_t>(g_->order()) * n, SparseMat());
}

const Mackey::Level& Mackey::lv(int s) const {
  if (!has_level(s)) throw std::out_of_range("Mackey: no level " + std::to_string(s));
  return levels_[pos_[s]];
}

void Mackey::set_res(int s, int u, SparseMat m) { res_[pair_key(s, u)] = std::move(m); }
void Mackey::set_tr(int u, int s, SparseMat m) { tr_[pair_key(s, u)] = std::move(m); }
void Mackey::set_conj(int gel, int s, SparseMat m) { conj_[static_cast<size_t>(gel) * subs_.size() + pos_[s]] = std::move(m); }
void Mackey::set_green(std::vector<std::vector<SparseVec>> table, std::vector<SparseVec> units) {
  green_ = true;
  mul_ = std::move(table);
  unit_ = std::move(units);
}

const SparseMat& Mackey::res(int s, int u) const {
  if (!has_level(s) || !has_level(u) || !g_->le(u, s)) throw std::out_of_range("Mackey::res: bad pair");
  return res_[pair_key(s, u)];
}

const SparseMat& Mackey::tr(int u, int s) const {
  if (!has_level(s) || !has_level(u) || !g_->le(u, s)) throw std::out_of_range("Mackey::tr: bad pair");
  return tr_[pair_key(s, u)];
}

const SparseMat& Mackey::conj(int gel, int s) const {
  if (!g_->contains(top_, gel)) throw std::out_of_range("Mackey::conj: element outside top");
  return conj_[static_cast<size_t>(gel) * subs_.size() + pos_.at(s)];
}

FgAbelianGroup Mackey::value(int s) const {
  const auto& l = lv(s);
  return FgAbelianGroup(static_cast<int>(l.labels.size()), l.rels.matrix());
}

const SparseVec& Mackey::mul(int s, int i, int j) const {
  if (!green_) throw std::logic_error("Mackey: no Green structure");
  return mul_[pos_.at(s)][static_cast<size_t>(i) * ngens(s) + j];
}

SparseVec Mackey::multiply(int s, const SparseVec& a, const SparseVec& b) const {
  SparseVec out;
  for (const auto& [i, x] : a)
    for (const auto& [j, y] : b) out = sparse_add(out, mul(s, i, j), x * y);
  return out;
}

const SparseVec& Mackey::unit(int s) const {
  if (!green_) throw std::logic_error("Mackey: no Green structure");
  return unit_.at(pos_.at(s));
}

Mackey Mackey::zero(GroupPtr g, int top) {
  std::vector<Level> levels;
  for (int s : g->subgroups_of(top)) levels.push_back(Level{s, {}, Lattice(0)});
  Mackey m(g, top, std::move(levels));
  for (int s : m.subs_) {
    for (int u : g->subgroups_of(s)) {
      m.set_res(s, u, SparseMat(0, 0));
      m.set_tr(u, s, SparseMat(0, 0));
    }
    for (int x : g->sub(top).elems) m.set_conj(x, s, SparseMat(0, 0));
  }
  return m;
}

Mackey Mackey::representable(const GSet& x) {
  auto rb = std::make_shared<RepBasis>(x);
  const auto& g = x.group();
  int top = x.top();
  std::vector<Level> levels;
  for (int s : g->subgroups_of(top)) {
    Level l;
    l.sub = s;
    int n = rb->size(s);
    for (int i = 0; i < n; ++i) l.labels.push_back(rb->label(s, i));
    l.rels = Lattice(n);
    levels.push_back(std::move(l));
  }
  Mackey m(g, top, std::move(levels));
  for (int s : m.subs_) {
    int ns = rb->size(s);
    for (int u : g->subgroups_of(s)) {
      int nu = rb->size(u);
      SparseMat r(nu, ns), t(ns, nu);
      for (int i = 0; i < ns; ++i) r.cols[i] = rb->res(s, u, i);
      for (int i = 0; i < nu; ++i) t.cols[i] = SparseVec{{rb->tr(u, s, i), Int(1)}};
      m.set_res(s, u, std::move(r));
      m.set_tr(u, s, std::move(t));
    }
    for (int e : g->sub(top).elems) {
      SparseMat c(rb->size(g->conj(e, s)), ns);
      for (int i = 0; i < ns; ++i) c.cols[i] = SparseVec{{rb->conj(e, s, i), Int(1)}};
      m.set_conj(e, s, std::move(c));
    }
  }
  if (x.size() == 1) {
    std::vector<std::vector<SparseVec>> table;
    std::vector<SparseVec> units;
    for (int s : m.subs_) {
      int n = rb->size(s);
      std::vector<SparseVec> t(static_cast<size_t>(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          int a = rb->elem(s, i).first, b = rb->elem(s, j).first;
          SparseVec v;
          for (int gamma : g->double_coset_reps(s, a, b))
            v = sparse_add(v, SparseVec{{rb->index(s, g->meet(a, g->conj(gamma, b)), 0), Int(1)}});
          t[static_cast<size_t>(i) * n + j] = std::move(v);
        }
      table.push_back(std::move(t));
      units.push_back(SparseVec{{rb->index(s, s, 0), Int(1)}});
    }
    m.set_green(std::move(table), std::move(units));
  }
  m.rep_ = std::move(rb);
  return m;
}

Mackey Mackey::presented(const GSet& x, const std::vector<MackeyElement>& relations) {
  return representable(x).quotient(relations);
}

std::vector<Lattice> Mackey::generated_subfunctor(const std::vector<MackeyElement>& elems, bool ideal) const {
  if (ideal && !green_) throw std::logic_error("Green ideal requested on a functor without Green data");
  size_t n = subs_.size();
  std::vector<Lattice> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = Lattice(ngens(subs_[i]));
  for (const auto& e : elems) {
    std::set<std::pair<int, SparseVec>> done;
    for (int gel : g_->sub(top_).elems) {
      int s2 = g_->conj(gel, e.level);
      SparseVec w = conj(gel, e.level).apply(e.v);
      if (!done.insert({s2, w}).second) continue;
      for (int t : g_->subgroups_of(s2)) {
        SparseVec r = res(s2, t).apply(w);
        if (r.empty()) continue;
        Lattice& lat = d[pos_[t]];
        if (ideal) {
          for (int j = 0; j < ngens(t); ++j) lat.add(multiply(t, SparseVec{{j, Int(1)}}, r));
        } else {
          lat.add(r);
        }
      }
    }
  }
  std::vector<Lattice> out(n);
  for (size_t i = 0; i < n; ++i) {
    int u = subs_[i];
    out[i] = levels_[i].rels;
    for (int t : g_->subgroups_of(u)) {
      const auto& lat = d[pos_[t]];
      if (lat.rank() == 0) continue;
      const SparseMat& m = tr(t, u);
      for (const auto& b : lat.basis()) out[i].add(m.apply(b));
    }
  }
  return out;
}

Mackey Mackey::with_relations(std::vector<Lattice> rels) const {
  Mackey m = *this;
  for (size_t i = 0; i < levels_.size(); ++i) {
    if (rels[i].dim() != ngens(subs_[i])) throw std::invalid_argument("with_relations: dimension mismatch");
    m.levels_[i].rels = std::move(rels[i]);
  }
  return m;
}

Mackey Mackey::quotient(const std::vector<MackeyElement>& elems) const {
  return with_relations(generated_subfunctor(elems, false));
}

Mackey Mackey::quotient_by_congruence(const std::vector<MackeyElement>& elems) const {
  return with_relations(generated_subfunctor(elems, true));
}

namespace {

bool fail(std::string* why, const std::string& msg) {
  if (why) *why = msg;
  return false;
}

SparseVec unit_vec(int j) { return SparseVec{{j, Int(1)}}; }

}  // namespace

bool Mackey::check_axioms(std::string* why) const {
  const auto& gr = *g_;
  auto name = [&](int s) { return gr.subgroup_name(s); };
  // Well-definedness on relations.
  for (int s : subs_) {
    for (const auto& b : rels(s).basis()) {
      for (int u : gr.subgroups_of(s))
        if (!rels(u).contains(res(s, u).apply(b))) return fail(why, "res does not preserve relations at " + name(s) + ">" + name(u));
      for (int k : subs_)
        if (gr.le(s, k) && !rels(k).contains(tr(s, k).apply(b)))
          return fail(why, "tr does not preserve relations at " + name(s) + "<" + name(k));
      for (int x : gr.sub(top_).elems)
        if (!rels(gr.conj(x, s)).contains(conj(x, s).apply(b))) return fail(why, "conj does not preserve relations at " + name(s));
    }
  }
  for (int s : gr.local_class_reps(top_)) {
    int ns = ngens(s);
    // Inner conjugations act trivially.
    for (int h : gr.sub(s).elems)
      for (int j = 0; j < ns; ++j)
        if (!rels(s).contains(sparse_add(conj(h, s).apply(unit_vec(j)), unit_vec(j), -1)))
          return fail(why, "inner conjugation is not trivial at " + name(s));
    // Conjugation is an action and commutes with res/tr.
    for (int a : gr.sub(top_).elems) {
      int sa = gr.conj(a, s);
      for (int b : gr.sub(top_).elems) {
        const SparseMat& cb = conj(b, sa);
        const SparseMat& cab = conj(gr.mul(b, a), s);
        const SparseMat& ca = conj(a, s);
        int target = gr.conj(gr.mul(b, a), s);
        for (int j = 0; j < ns; ++j)
          if (!rels(target).contains(sparse_add(cb.apply(ca.apply(unit_vec(j))), cab.apply(unit_vec(j)), -1)))
            return fail(why, "conjugation is not an action at " + name(s));
      }
      for (int u : gr.subgroups_of(s)) {
        int ua = gr.conj(a, u);
        for (int j = 0; j < ns; ++j) {
          SparseVec l = conj(a, u).apply(res(s, u).apply(unit_vec(j)));
          SparseVec r = res(sa, ua).apply(conj(a, s).apply(unit_vec(j)));
          if (!rels(ua).contains(sparse_add(l, r, -1))) return fail(why, "res is not conjugation-equivariant at " + name(s));
        }
        for (int j = 0; j < ngens(u); ++j) {
          SparseVec l = conj(a, s).apply(tr(u, s).apply(unit_vec(j)));
          SparseVec r = tr(ua, sa).apply(conj(a, u).apply(unit_vec(j)));
          if (!rels(sa).contains(sparse_add(l, r, -1))) return fail(why, "tr is not conjugation-equivariant at " + name(s));
        }
      }
    }
    // Transitivity and identities.
    for (int j = 0; j < ns; ++j) {
      if (!rels(s).contains(sparse_add(res(s, s).apply(unit_vec(j)), unit_vec(j), -1)) ||
          !rels(s).contains(sparse_add(tr(s, s).apply(unit_vec(j)), unit_vec(j), -1)))
        return fail(why, "res/tr to the same level is not the identity at " + name(s));
    }
    for (int u : gr.subgroups_of(s))
      for (int v : gr.subgroups_of(u)) {
        for (int j = 0; j < ns; ++j)
          if (!rels(v).contains(sparse_add(res(u, v).apply(res(s, u).apply(unit_vec(j))), res(s, v).apply(unit_vec(j)), -1)))
            return fail(why, "res is not transitive at " + name(s) + ">" + name(u) + ">" + name(v));
        for (int j = 0; j < ngens(v); ++j)
          if (!rels(s).contains(sparse_add(tr(u, s).apply(tr(v, u).apply(unit_vec(j))), tr(v, s).apply(unit_vec(j)), -1)))
            return fail(why, "tr is not transitive at " + name(v) + "<" + name(u) + "<" + name(s));
      }
    // Double coset formula.
    for (int u : gr.subgroups_of(s))
      for (int t : gr.subgroups_of(s)) {
        auto gammas = gr.double_coset_reps(s, u, t);
        for (int j = 0; j < ngens(t); ++j) {
          SparseVec lhs = res(s, u).apply(tr(t, s).apply(unit_vec(j)));
          SparseVec rhs;
          for (int gamma : gammas) {
            int w1 = gr.meet(gr.conj(gr.inv(gamma), u), t);
            int w = gr.conj(gamma, w1);
            rhs = sparse_add(rhs, tr(w, u).apply(conj(gamma, w1).apply(res(t, w1).apply(unit_vec(j)))));
          }
          if (!rels(u).contains(sparse_add(lhs, rhs, -1)))
            return fail(why, "double coset formula fails for " + name(u) + "," + name(t) + " in " + name(s));
        }
      }
  }
  return true;
}

bool Mackey::check_green(std::string* why) const {
  if (!green_) return fail(why, "no Green structure");
  const auto& gr = *g_;
  for (int s : gr.local_class_reps(top_)) {
    int n = ngens(s);
    for (int i = 0; i < n; ++i) {
      if (!rels(s).contains(sparse_add(multiply(s, unit(s), unit_vec(i)), unit_vec(i), -1)))
        return fail(why, "unit fails at " + gr.subgroup_name(s));
      for (int j = 0; j < n; ++j) {
        if (!rels(s).contains(sparse_add(mul(s, i, j), mul(s, j, i), -1))) return fail(why, "not commutative");
        for (int k = 0; k < n; ++k) {
          SparseVec l = multiply(s, mul(s, i, j), unit_vec(k));
          SparseVec r = multiply(s, unit_vec(i), mul(s, j, k));
          if (!rels(s).contains(sparse_add(l, r, -1))) return fail(why, "not associative at " + gr.subgroup_name(s));
        }
      }
    }
    for (int t : gr.subgroups_of(s)) {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          SparseVec l = res(s, t).apply(mul(s, i, j));
          SparseVec r = multiply(t, res(s, t).apply(unit_vec(i)), res(s, t).apply(unit_vec(j)));
          if (!rels(t).contains(sparse_add(l, r, -1))) return fail(why, "res is not multiplicative");
        }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < ngens(t); ++j) {
          SparseVec l = tr(t, s).apply(multiply(t, unit_vec(j), res(s, t).apply(unit_vec(i))));
          SparseVec r = multiply(s, tr(t, s).apply(unit_vec(j)), unit_vec(i));
          if (!rels(s).contains(sparse_add(l, r, -1))) return fail(why, "Frobenius reciprocity fails");
        }
    }
  }
  return true;
}

Mackey constant_Z(const GroupPtr& d2) {
  auto pt = GSet::point(d2, d2->whole());
  Mackey a = Mackey::representable(pt);
  int top = d2->whole();
  SparseVec rel = sparse_add(a.unit(top), a.unit(top));
  int free = a.rep()->index(top, 0, 0);
  rel = sparse_add(rel, SparseVec{{free, Int(1)}}, -1);
  return a.quotient({{top, rel}});
}

}  // namespace equivar
