#include "equivar/groups.hpp"

#include "equivar/config.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace equivar {

Budgets& budgets() {
  static Budgets b;
  return b;
}

namespace {

void check_order(int n) {
  if (n > budgets().max_group_order || n > kMaxOrder)
    throw BudgetExceeded("group order " + std::to_string(n) + " exceeds limit " +
                         std::to_string(std::min(budgets().max_group_order, kMaxOrder)));
}

std::string cycle_label(const std::vector<int>& p) {
  std::vector<bool> seen(p.size());
  std::string out;
  for (size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = static_cast<size_t>(p[j]);
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

}  // namespace

GroupPtr Group::from_table(std::vector<int> mul, int n, std::vector<std::string> labels, std::string name) {
  check_order(n);
  auto g = std::shared_ptr<Group>(new Group());
  g->n_ = n;
  g->mul_ = std::move(mul);
  g->labels_ = std::move(labels);
  if (static_cast<int>(g->labels_.size()) != n) {
    g->labels_.resize(n);
    for (int i = 0; i < n; ++i) g->labels_[i] = "g" + std::to_string(i);
  }
  g->name_ = std::move(name);
  g->inv_.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mul_[a * n + b] == 0) g->inv_[a] = b;
  for (int a = 0; a < n; ++a)
    if (g->inv_[a] < 0) throw std::invalid_argument("from_table: element without inverse");
  g->build_lattice();
  return g;
}

GroupPtr Group::dihedral(int m) {
  if (m < 1) throw std::invalid_argument("dihedral: m must be positive");
  int n = 2 * m;
  check_order(n);
  std::vector<int> mul(static_cast<size_t>(n) * n);
  std::vector<std::string> labels(n);
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < m; ++i) {
      int a = e * m + i;
      std::string rot = i == 0 ? "" : (i == 1 ? "z" : "z^" + std::to_string(i));
      if (e == 0)
        labels[a] = i == 0 ? "e" : rot;
      else
        labels[a] = rot.empty() ? "t" : rot + " t";
      for (int d = 0; d < 2; ++d)
        for (int j = 0; j < m; ++j) {
          int k = ((i + (e ? -j : j)) % m + m) % m;
          mul[static_cast<size_t>(a) * n + d * m + j] = ((e + d) % 2) * m + k;
        }
    }
  auto g = std::shared_ptr<Group>(new Group());
  g->n_ = n;
  g->mul_ = std::move(mul);
  g->labels_ = std::move(labels);
  g->name_ = "D" + std::to_string(n);
  g->dihedral_m_ = m;
  g->inv_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mul_[a * n + b] == 0) g->inv_[a] = b;
  g->build_lattice();
  return g;
}

GroupPtr Group::from_permutations(int degree, const std::vector<std::vector<int>>& gens, std::string name) {
  std::vector<int> id(degree);
  std::iota(id.begin(), id.end(), 0);
  std::map<std::vector<int>, int> seen;
  std::vector<std::vector<int>> elems{id};
  seen[id] = 0;
  for (size_t q = 0; q < elems.size(); ++q) {
    for (const auto& s : gens) {
      if (static_cast<int>(s.size()) != degree) throw std::invalid_argument("permutation degree mismatch");
      std::vector<int> p(degree);
      for (int x = 0; x < degree; ++x) p[x] = elems[q][s[x]];
      if (!seen.count(p)) {
        seen[p] = static_cast<int>(elems.size());
        elems.push_back(p);
        check_order(static_cast<int>(elems.size()));
      }
    }
  }
  std::sort(elems.begin(), elems.end());
  seen.clear();
  for (int i = 0; i < static_cast<int>(elems.size()); ++i) seen[elems[i]] = i;
  int n = static_cast<int>(elems.size());
  std::vector<int> mul(static_cast<size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      std::vector<int> p(degree);
      for (int x = 0; x < degree; ++x) p[x] = elems[a][elems[b][x]];  // a after b
      mul[static_cast<size_t>(a) * n + b] = seen.at(p);
    }
  std::vector<std::string> labels(n);
  for (int i = 0; i < n; ++i) labels[i] = cycle_label(elems[i]);
  auto g = std::shared_ptr<Group>(new Group());
  g->n_ = n;
  g->mul_ = std::move(mul);
  g->labels_ = std::move(labels);
  g->name_ = std::move(name);
  g->perm_degree_ = degree;
  g->perm_gens_ = gens;
  g->perms_ = elems;
  g->inv_.assign(n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (g->mul_[a * n + b] == 0) g->inv_[a] = b;
  g->build_lattice();
  return g;
}

GroupPtr Group::cyclic(int n) {
  if (n < 1) throw std::invalid_argument("cyclic: n must be positive");
  std::vector<int> c(n);
  for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
  return from_permutations(n, {c}, "C" + std::to_string(n));
}

GroupPtr Group::symmetric(int n) {
  if (n < 1) throw std::invalid_argument("symmetric: n must be positive");
  std::vector<std::vector<int>> gens;
  if (n >= 2) {
    std::vector<int> t(n), c(n);
    std::iota(t.begin(), t.end(), 0);
    std::swap(t[0], t[1]);
    for (int i = 0; i < n; ++i) c[i] = (i + 1) % n;
    gens = {t, c};
  }
  return from_permutations(n, gens, "S" + std::to_string(n));
}

GroupPtr Group::alternating(int n) {
  if (n < 1) throw std::invalid_argument("alternating: n must be positive");
  std::vector<std::vector<int>> gens;
  for (int i = 2; i < n; ++i) {
    std::vector<int> c(n);
    std::iota(c.begin(), c.end(), 0);
    c[0] = 1;
    c[1] = i;
    c[i] = 0;  // 3-cycle (0 1 i)
    gens.push_back(c);
  }
  return from_permutations(n, gens, "A" + std::to_string(n));
}

int Group::dihedral_index(int i, int eps) const {
  if (!is_dihedral()) throw std::logic_error("not a dihedral group");
  int m = dihedral_m_;
  return (eps & 1) * m + ((i % m) + m) % m;
}

int Group::elem_order(int g) const {
  int k = 1, x = g;
  while (x != 0) {
    x = mul(x, g);
    ++k;
  }
  return k;
}

bool Group::verify_axioms() const {
  for (int a = 0; a < n_; ++a) {
    if (mul(0, a) != a || mul(a, 0) != a) return false;
    if (mul(a, inv(a)) != 0 || mul(inv(a), a) != 0) return false;
  }
  auto assoc = [&](int a, int b, int c) { return mul(mul(a, b), c) == mul(a, mul(b, c)); };
  if (n_ <= 64) {
    for (int a = 0; a < n_; ++a)
      for (int b = 0; b < n_; ++b)
        for (int c = 0; c < n_; ++c)
          if (!assoc(a, b, c)) return false;
  } else {
    std::mt19937 rng(12345);
    std::uniform_int_distribution<int> d(0, n_ - 1);
    for (int t = 0; t < 200000; ++t)
      if (!assoc(d(rng), d(rng), d(rng))) return false;
  }
  return true;
}

// ---------------------------------------------------------------- lattice

namespace {

Subgroup closure(const Group& g, const std::vector<int>& gens) {
  Subgroup s;
  s.mask.set(0);
  s.elems.push_back(0);
  for (size_t q = 0; q < s.elems.size(); ++q)
    for (int x : gens) {
      int y = g.mul(s.elems[q], x);
      if (!s.mask.test(y)) {
        s.mask.set(y);
        s.elems.push_back(y);
      }
    }
  std::sort(s.elems.begin(), s.elems.end());
  return s;
}

}  // namespace

void Group::build_lattice() {
  std::vector<Subgroup> found;
  std::vector<std::vector<int>> gens_of;
  std::unordered_map<Mask, int> idx;
  auto insert = [&](Subgroup s, std::vector<int> gens) {
    auto it = idx.find(s.mask);
    if (it != idx.end()) return;
    idx[s.mask] = static_cast<int>(found.size());
    found.push_back(std::move(s));
    gens_of.push_back(std::move(gens));
  };
  insert(closure(*this, {}), {});
  std::vector<int> cyc_gen;
  for (int g = 1; g < n_; ++g) {
    Subgroup c = closure(*this, {g});
    if (!idx.count(c.mask)) cyc_gen.push_back(g);
    insert(std::move(c), {g});
  }
  for (size_t q = 0; q < found.size(); ++q) {
    for (int g : cyc_gen) {
      if (found[q].mask.test(g)) continue;
      std::vector<int> gens = gens_of[q];
      gens.push_back(g);
      Subgroup j = closure(*this, gens);
      insert(std::move(j), gens);
    }
  }
  std::sort(found.begin(), found.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.elems < b.elems;
  });
  subs_ = std::move(found);
  int ns = num_subgroups();
  index_.clear();
  for (int s = 0; s < ns; ++s) index_[subs_[s].mask] = s;
  le_.assign(static_cast<size_t>(ns) * ns, 0);
  for (int t = 0; t < ns; ++t)
    for (int s = 0; s < ns; ++s) le_[t * ns + s] = (subs_[t].mask & ~subs_[s].mask).none();
  conj_.assign(static_cast<size_t>(n_) * ns, -1);
  for (int g = 0; g < n_; ++g)
    for (int s = 0; s < ns; ++s) {
      Mask m;
      for (int x : subs_[s].elems) m.set(conj_elem(g, x));
      conj_[g * ns + s] = index_.at(m);
    }
  normalizer_.assign(ns, -1);
  for (int s = 0; s < ns; ++s) {
    Mask m;
    for (int g = 0; g < n_; ++g)
      if (conj(g, s) == s) m.set(g);
    normalizer_[s] = index_.at(m);
  }
  class_of_.assign(ns, -1);
  classes_.clear();
  for (int s = 0; s < ns; ++s) {
    if (class_of_[s] >= 0) continue;
    int c = static_cast<int>(classes_.size());
    classes_.emplace_back();
    for (int g = 0; g < n_; ++g) {
      int t = conj(g, s);
      if (class_of_[t] < 0) {
        class_of_[t] = c;
        classes_[c].push_back(t);
      }
    }
    std::sort(classes_[c].begin(), classes_[c].end());
  }
}

int Group::find(const Mask& m) const {
  auto it = index_.find(m);
  return it == index_.end() ? -1 : it->second;
}

int Group::meet(int s, int t) const { return index_.at(subs_[s].mask & subs_[t].mask); }

int Group::join(int s, int t) const {
  std::vector<int> gens = subs_[s].elems;
  gens.insert(gens.end(), subs_[t].elems.begin(), subs_[t].elems.end());
  return generated(gens);
}

int Group::generated(const std::vector<int>& gens) const { return index_.at(closure(*this, gens).mask); }

bool Group::is_normal(int s, int in) const {
  if (!le(s, in)) return false;
  for (int g : subs_[in].elems)
    if (conj(g, s) != s) return false;
  return true;
}

std::vector<int> Group::class_reps() const {
  std::vector<int> r;
  for (const auto& c : classes_) r.push_back(c.front());
  return r;
}

std::vector<int> Group::subgroups_of(int s) const {
  std::vector<int> r;
  for (int t = 0; t <= s; ++t)
    if (le(t, s)) r.push_back(t);
  return r;
}

int Group::local_rep(int s, int t) const {
  int best = t;
  for (int g : subs_[s].elems) best = std::min(best, conj(g, t));
  return best;
}

std::vector<int> Group::local_class_reps(int s) const {
  std::vector<int> r;
  for (int t : subgroups_of(s))
    if (local_rep(s, t) == t) r.push_back(t);
  return r;
}

std::vector<int> Group::left_coset_reps(int s, int t) const {
  std::vector<int> reps;
  Mask covered;
  for (int x : subs_[s].elems) {
    if (covered.test(x)) continue;
    reps.push_back(x);
    for (int y : subs_[t].elems) covered.set(mul(x, y));
  }
  return reps;
}

std::vector<int> Group::right_coset_reps(int s, int t) const {
  std::vector<int> reps;
  Mask covered;
  for (int x : subs_[s].elems) {
    if (covered.test(x)) continue;
    reps.push_back(x);
    for (int y : subs_[t].elems) covered.set(mul(y, x));
  }
  return reps;
}

std::vector<int> Group::double_coset_reps(int s, int k, int h) const {
  std::vector<int> reps;
  Mask covered;
  for (int x : subs_[s].elems) {
    if (covered.test(x)) continue;
    reps.push_back(x);
    for (int a : subs_[k].elems)
      for (int b : subs_[h].elems) covered.set(mul(mul(a, x), b));
  }
  return reps;
}

GroupPtr Group::weyl_group(int s, std::vector<int>* section) const {
  int nz = normalizer(s);
  std::vector<int> reps = left_coset_reps(nz, s);
  int k = static_cast<int>(reps.size());
  std::vector<int> coset_of(n_, -1);
  for (int i = 0; i < k; ++i)
    for (int y : subs_[s].elems) coset_of[mul(reps[i], y)] = i;
  std::vector<int> table(static_cast<size_t>(k) * k);
  std::vector<std::string> labels(k);
  for (int i = 0; i < k; ++i) {
    labels[i] = labels_[reps[i]];
    for (int j = 0; j < k; ++j) table[static_cast<size_t>(i) * k + j] = coset_of[mul(reps[i], reps[j])];
  }
  if (section) *section = reps;
  return from_table(std::move(table), k, std::move(labels), "W(" + subgroup_name(s) + ")");
}

std::string Group::subgroup_name(int s) const {
  if (s == whole() && !is_dihedral()) return "G";
  if (s == 0) return "e";
  if (is_dihedral()) {
    int m = dihedral_m_;
    int j0 = -1;
    for (int x : subs_[s].elems)
      if (x >= m) {
        j0 = x - m;
        break;
      }
    if (j0 < 0) return "mu_" + std::to_string(sub_order(s));
    int k = sub_order(s) / 2;
    std::string base = "D" + std::to_string(2 * k);
    return j0 == 0 ? base : base + "[" + std::to_string(j0) + "]";
  }
  return "H" + std::to_string(s);
}

int Group::parse_subgroup(const std::string& raw) const {
  std::string name;
  for (char c : raw)
    if (c != ' ' && c != '{' && c != '}') name += c;
  if (name == "e" || name == "1") return 0;
  if (name == "G") return whole();
  if (is_dihedral()) {
    int m = dihedral_m_;
    std::string mu = name.rfind("mu_", 0) == 0 ? name.substr(3) : (name.rfind("mu", 0) == 0 ? name.substr(2) : "");
    if (!mu.empty()) {
      int k = std::stoi(mu);
      if (k <= 0 || m % k != 0) throw std::invalid_argument("no subgroup " + raw);
      return dihedral_rotation_subgroup(*this, k);
    }
    if (!name.empty() && name[0] == 'D') {
      size_t br = name.find('[');
      int order = std::stoi(name.substr(1, br == std::string::npos ? std::string::npos : br - 1));
      int j = 0;
      if (br != std::string::npos) j = std::stoi(name.substr(br + 1));
      if (order % 2 != 0 || m % (order / 2) != 0) throw std::invalid_argument("no subgroup " + raw);
      return dihedral_reflection_subgroup(*this, order / 2, j);
    }
  }
  for (int s = 0; s < num_subgroups(); ++s)
    if (subgroup_name(s) == name) return s;
  throw std::invalid_argument("unknown subgroup " + raw);
}

std::string Group::descriptor() const {
  if (is_dihedral()) return "dihedral:" + std::to_string(n_);
  return name_;
}

// ---------------------------------------------------------------- homs

int GroupHom::map_subgroup(int s) const {
  Mask m;
  for (int x : src->sub(s).elems) m.set(img[x]);
  int r = dst->find(m);
  if (r < 0) throw std::logic_error("map_subgroup: image is not a subgroup");
  return r;
}

bool GroupHom::is_homomorphism() const {
  for (int a = 0; a < src->order(); ++a)
    for (int b = 0; b < src->order(); ++b)
      if (img[src->mul(a, b)] != dst->mul(img[a], img[b])) return false;
  return true;
}

bool GroupHom::is_injective() const {
  Mask m;
  for (int x : img) m.set(x);
  return static_cast<int>(m.count()) == src->order();
}

GroupHom dihedral_embedding(const GroupPtr& small, const GroupPtr& big, int offset) {
  int k = small->dihedral_m(), m = big->dihedral_m();
  if (m % k != 0) throw std::invalid_argument("dihedral_embedding: k must divide m");
  int stride = m / k;
  GroupHom h{small, big, std::vector<int>(small->order())};
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < k; ++i) h.img[small->dihedral_index(i, e)] = big->dihedral_index(stride * i + e * offset, e);
  if (!h.is_homomorphism()) throw std::logic_error("dihedral_embedding: not a homomorphism");
  return h;
}

GroupHom dihedral_quotient(const GroupPtr& big, const GroupPtr& small) {
  int m = big->dihedral_m(), k = small->dihedral_m();
  if (m % k != 0) throw std::invalid_argument("dihedral_quotient: order mismatch");
  GroupHom h{big, small, std::vector<int>(big->order())};
  for (int e = 0; e < 2; ++e)
    for (int i = 0; i < m; ++i) h.img[big->dihedral_index(i, e)] = small->dihedral_index(i % k, e);
  if (!h.is_homomorphism()) throw std::logic_error("dihedral_quotient: not a homomorphism");
  return h;
}

int dihedral_rotation_subgroup(const Group& g, int k) {
  int m = g.dihedral_m();
  if (k <= 0 || m % k != 0) throw std::invalid_argument("rotation subgroup: k must divide m");
  return g.generated({g.dihedral_index(m / k, 0)});
}

int dihedral_reflection_subgroup(const Group& g, int k, int j) {
  int m = g.dihedral_m();
  if (k <= 0 || m % k != 0) throw std::invalid_argument("reflection subgroup: k must divide m");
  return g.generated({g.dihedral_index(m / k, 0), g.dihedral_index(j, 1)});
}

}  // namespace equivar
