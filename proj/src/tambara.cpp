#include "equivar/tambara.hpp"

#include "equivar/config.hpp"
#include "equivar/gsets.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace equivar {

// ---------------------------------------------------------------- expressions

namespace {

TambaraExpr make(TambaraNode n) { return std::make_shared<const TambaraNode>(std::move(n)); }

}  // namespace

TambaraExpr tvar(int var, int level) { return make({TambaraOp::Var, level, level, 0, var, 0, {}}); }
TambaraExpr tlit(const Int& v, int level) { return make({TambaraOp::Literal, level, level, 0, 0, v, {}}); }
TambaraExpr tsum(std::vector<TambaraExpr> kids, int level) { return make({TambaraOp::Sum, level, level, 0, 0, 0, std::move(kids)}); }
TambaraExpr tprod(std::vector<TambaraExpr> kids, int level) {
  return make({TambaraOp::Product, level, level, 0, 0, 0, std::move(kids)});
}
TambaraExpr tres(const Group& g, TambaraExpr x, int to) {
  if (!g.le(to, x->level)) throw std::invalid_argument("res: target is not a subgroup");
  return make({TambaraOp::Res, to, x->level, 0, 0, 0, {std::move(x)}});
}
TambaraExpr ttr(const Group& g, TambaraExpr x, int to) {
  if (!g.le(x->level, to)) throw std::invalid_argument("tr: target is not an overgroup");
  return make({TambaraOp::Tr, to, x->level, 0, 0, 0, {std::move(x)}});
}
TambaraExpr tnorm(const Group& g, TambaraExpr x, int to) {
  if (!g.le(x->level, to)) throw std::invalid_argument("norm: target is not an overgroup");
  return make({TambaraOp::Norm, to, x->level, 0, 0, 0, {std::move(x)}});
}
TambaraExpr tconj(const Group& g, TambaraExpr x, int elem) {
  int from = x->level;
  return make({TambaraOp::Conj, g.conj(elem, from), from, elem, 0, 0, {std::move(x)}});
}

bool well_formed(const Group& g, const TambaraExpr& e) {
  for (const auto& k : e->kids)
    if (!well_formed(g, k)) return false;
  switch (e->op) {
    case TambaraOp::Var:
    case TambaraOp::Literal:
      return e->kids.empty();
    case TambaraOp::Sum:
    case TambaraOp::Product:
      for (const auto& k : e->kids)
        if (k->level != e->level) return false;
      return !e->kids.empty();
    case TambaraOp::Res:
      return e->kids.size() == 1 && e->kids[0]->level == e->from && g.le(e->level, e->from);
    case TambaraOp::Tr:
    case TambaraOp::Norm:
      return e->kids.size() == 1 && e->kids[0]->level == e->from && g.le(e->from, e->level);
    case TambaraOp::Conj:
      return e->kids.size() == 1 && e->kids[0]->level == e->from && g.conj(e->elem, e->from) == e->level;
  }
  return false;
}

namespace {

std::string latex_sub(const std::string& name) {
  // D12 -> D_{12}, mu_3 -> \mu_{3}, D6[1] -> D_{6}[1], H5 -> H_{5}
  if (name == "e" || name == "G") return name;
  if (name.rfind("mu_", 0) == 0) return "\\mu_{" + name.substr(3) + "}";
  size_t i = 0;
  while (i < name.size() && !std::isdigit(static_cast<unsigned char>(name[i]))) ++i;
  if (i == 0 || i == name.size()) return name;
  size_t j = i;
  while (j < name.size() && std::isdigit(static_cast<unsigned char>(name[j]))) ++j;
  return name.substr(0, i) + "_{" + name.substr(i, j - i) + "}" + name.substr(j);
}

std::string latex_elem(const Group& g, int x) {
  std::string s = g.label(x);
  if (!g.is_dihedral()) return s;
  std::string out;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == 'z') {
      out += "\\zeta";
    } else if (s[i] == 't') {
      out += "\\tau";
    } else if (s[i] == '^') {
      size_t j = i + 1;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out += "^{" + s.substr(i + 1, j - i - 1) + "}";
      i = j - 1;
    } else if (s[i] != ' ') {
      out += s[i];
    }
  }
  return out;
}

std::string render(const Group& g, const TambaraExpr& e, bool latex) {
  auto name = [&](int s) { return latex ? latex_sub(g.subgroup_name(s)) : g.subgroup_name(s); };
  auto arg = [&](const TambaraExpr& k) { return "(" + render(g, k, latex) + ")"; };
  switch (e->op) {
    case TambaraOp::Var:
      return e->var == 0 ? "a" : "b";
    case TambaraOp::Literal:
      return to_string(e->literal);
    case TambaraOp::Sum: {
      std::string s;
      for (size_t i = 0; i < e->kids.size(); ++i) s += (i ? " + " : "") + render(g, e->kids[i], latex);
      return s;
    }
    case TambaraOp::Product: {
      std::string s;
      for (size_t i = 0; i < e->kids.size(); ++i) {
        const auto& k = e->kids[i];
        std::string r = k->op == TambaraOp::Sum ? arg(k) : render(g, k, latex);
        s += (i ? (latex ? " \\cdot " : " * ") : "") + r;
      }
      return s;
    }
    case TambaraOp::Res:
      return latex ? "\\mathrm{res}^{" + name(e->from) + "}_{" + name(e->level) + "}" + arg(e->kids[0])
                   : "res^" + name(e->from) + "_" + name(e->level) + arg(e->kids[0]);
    case TambaraOp::Tr:
      return latex ? "\\mathrm{tr}_{" + name(e->from) + "}^{" + name(e->level) + "}" + arg(e->kids[0])
                   : "tr_" + name(e->from) + "^" + name(e->level) + arg(e->kids[0]);
    case TambaraOp::Norm:
      return latex ? "N_{" + name(e->from) + "}^{" + name(e->level) + "}" + arg(e->kids[0])
                   : "N_" + name(e->from) + "^" + name(e->level) + arg(e->kids[0]);
    case TambaraOp::Conj: {
      const auto& k = e->kids[0];
      std::string inner = k->op == TambaraOp::Sum || k->op == TambaraOp::Product ? arg(k) : render(g, k, latex);
      return latex ? latex_elem(g, e->elem) + "\\," + inner : "[" + g.label(e->elem) + "]" + inner;
    }
  }
  return "";
}

nlohmann::ordered_json json_of(const Group& g, const TambaraExpr& e) {
  static const char* ops[] = {"var", "literal", "sum", "product", "res", "tr", "norm", "conj"};
  nlohmann::ordered_json j;
  j["op"] = ops[static_cast<int>(e->op)];
  j["level"] = g.subgroup_name(e->level);
  switch (e->op) {
    case TambaraOp::Var:
      j["var"] = e->var == 0 ? "a" : "b";
      break;
    case TambaraOp::Literal:
      j["value"] = to_string(e->literal);
      break;
    case TambaraOp::Res:
    case TambaraOp::Tr:
    case TambaraOp::Norm:
      j["from"] = g.subgroup_name(e->from);
      break;
    case TambaraOp::Conj:
      j["element"] = g.label(e->elem);
      break;
    default:
      break;
  }
  if (!e->kids.empty()) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& k : e->kids) arr.push_back(json_of(g, k));
    j["args"] = arr;
  }
  return j;
}

}  // namespace

std::string to_text(const Group& g, const TambaraExpr& e) { return render(g, e, false); }
std::string to_latex(const Group& g, const TambaraExpr& e) { return render(g, e, true); }
std::string to_json(const Group& g, const TambaraExpr& e) { return json_of(g, e).dump(); }

TambaraExpr substitute_b_zero(const Group& g, const TambaraExpr& e) {
  switch (e->op) {
    case TambaraOp::Var:
      return e->var == 1 ? nullptr : e;
    case TambaraOp::Literal:
      return e->literal == 0 ? nullptr : e;
    case TambaraOp::Sum: {
      std::vector<TambaraExpr> kids;
      for (const auto& k : e->kids)
        if (auto s = substitute_b_zero(g, k)) kids.push_back(s);
      if (kids.empty()) return nullptr;
      if (kids.size() == 1) return kids[0];
      return tsum(std::move(kids), e->level);
    }
    case TambaraOp::Product: {
      std::vector<TambaraExpr> kids;
      for (const auto& k : e->kids) {
        auto s = substitute_b_zero(g, k);
        if (!s) return nullptr;
        kids.push_back(s);
      }
      if (kids.size() == 1) return kids[0];
      return tprod(std::move(kids), e->level);
    }
    default: {
      auto s = substitute_b_zero(g, e->kids[0]);
      if (!s) return nullptr;
      TambaraNode n = *e;
      n.kids = {s};
      return make(std::move(n));
    }
  }
}

// ---------------------------------------------------------------- orbit enumeration

namespace {

struct Slots {
  std::vector<int> reps;     // right coset representatives H g_i
  std::vector<int> slot_of;  // element of top -> slot
};

Slots right_slots(const Group& g, int top, int h) {
  Slots s;
  s.reps = g.right_coset_reps(top, h);
  s.slot_of.assign(g.order(), -1);
  for (size_t i = 0; i < s.reps.size(); ++i)
    for (int y : g.sub(h).elems) s.slot_of[g.mul(y, s.reps[i])] = static_cast<int>(i);
  return s;
}

}  // namespace

std::vector<ReciprocityOrbit> reciprocity_orbits(const Group& g, int top, int h) {
  if (!g.le(h, top)) throw std::invalid_argument("reciprocity: H is not a subgroup of the top group");
  Slots sl = right_slots(g, top, h);
  int n = static_cast<int>(sl.reps.size());
  if (n > 32 || (std::int64_t{1} << n) > budgets().max_coinduction)
    throw BudgetExceeded("Map^H(G,{a,b}) has 2^" + std::to_string(n) + " points, limit " +
                         std::to_string(budgets().max_coinduction));
  const auto& elems = g.sub(top).elems;
  int nb = (n + 7) / 8;
  // tab[k][byte][v]: image bits contributed by byte `byte` of the mask under k.
  std::vector<std::uint32_t> tab(elems.size() * nb * 256, 0);
  for (size_t ki = 0; ki < elems.size(); ++ki) {
    int k = elems[ki];
    std::vector<int> inv(n);
    for (int i = 0; i < n; ++i) inv[sl.slot_of[g.mul(sl.reps[i], k)]] = i;  // (kF)(i) = F(perm i)
    for (int b = 0; b < nb; ++b)
      for (int v = 0; v < 256; ++v) {
        std::uint32_t out = 0;
        for (int j = 0; j < 8; ++j)
          if ((v >> j & 1) && 8 * b + j < n) out |= std::uint32_t{1} << inv[8 * b + j];
        tab[(ki * nb + b) * 256 + v] = out;
      }
  }
  auto image = [&](size_t ki, std::uint32_t m) {
    std::uint32_t out = 0;
    for (int b = 0; b < nb; ++b) out |= tab[(ki * nb + b) * 256 + (m >> (8 * b) & 0xff)];
    return out;
  };
  std::vector<ReciprocityOrbit> out;
  std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mm = 0; mm < total; ++mm) {
    auto m = static_cast<std::uint32_t>(mm);
    bool least = true;
    for (size_t ki = 1; ki < elems.size() && least; ++ki)
      if (image(ki, m) < m) least = false;
    if (!least) continue;
    Mask stab;
    for (size_t ki = 0; ki < elems.size(); ++ki)
      if (image(ki, m) == m) stab.set(elems[ki]);
    out.push_back({m, g.find(stab)});
  }
  return out;
}

namespace {

struct CosetFactor {
  int gamma, l, slot;
};

// Double cosets H gamma K with gamma^{-1} least, sorted by gamma^{-1}.
std::vector<CosetFactor> coset_factors(const Group& g, int top, int h, int k, const Slots& sl) {
  std::vector<CosetFactor> out;
  for (int d : g.double_coset_reps(top, h, k)) {
    int best = -1;
    for (int x : g.sub(h).elems)
      for (int y : g.sub(k).elems) {
        int c = g.mul(g.mul(x, d), y);
        if (best < 0 || g.inv(c) < g.inv(best)) best = c;
      }
    int l = g.meet(k, g.conj(g.inv(best), h));
    out.push_back({best, l, sl.slot_of[best]});
  }
  std::sort(out.begin(), out.end(), [&](const CosetFactor& a, const CosetFactor& b) { return g.inv(a.gamma) < g.inv(b.gamma); });
  return out;
}

std::string table_word(std::uint32_t t, int n) {
  std::string s(n, 'a');
  for (int i = 0; i < n; ++i)
    if (t >> i & 1) s[i] = 'b';
  return s;
}

TambaraExpr factor_expr(const Group& g, int h, int k, int gamma, int l, int var) {
  TambaraExpr x = tvar(var, h);
  int gl = g.conj(gamma, l);
  if (gl != h) x = tres(g, x, gl);
  if (gamma != 0) x = tconj(g, x, g.inv(gamma));
  if (l != k) x = tnorm(g, x, k);
  return x;
}

TambaraExpr summand_expr(const Group& g, int top, std::vector<TambaraExpr> factors, int k) {
  TambaraExpr p = factors.size() == 1 ? factors[0] : tprod(std::move(factors), k);
  return k == top ? p : ttr(g, p, top);
}

}  // namespace

std::vector<ReciprocityFactor> reciprocity_factors(const Group& g, int top, int h, const ReciprocityOrbit& f) {
  Slots sl = right_slots(g, top, h);
  std::vector<ReciprocityFactor> out;
  for (const auto& c : coset_factors(g, top, h, f.stab, sl)) out.push_back({c.gamma, c.l, static_cast<int>(f.table >> c.slot & 1)});
  return out;
}

TambaraExpr reciprocity_sum(const Group& g, int top, int h, std::size_t max_summands) {
  auto orbits = reciprocity_orbits(g, top, h);
  if (orbits.size() > max_summands)
    throw BudgetExceeded("reciprocity formula has " + std::to_string(orbits.size()) + " summands");
  Slots sl = right_slots(g, top, h);
  int n = static_cast<int>(sl.reps.size());
  const auto& elems = g.sub(top).elems;
  // Canonical representative: least (stabilizer id, function table).
  struct Canon {
    int stab;
    std::string word;
    std::uint32_t table;
  };
  std::vector<Canon> canon;
  for (const auto& o : orbits) {
    Canon best{-1, "", 0};
    for (int k : elems) {
      std::uint32_t t = 0;
      for (int i = 0; i < n; ++i)
        if (o.table >> sl.slot_of[g.mul(sl.reps[i], k)] & 1) t |= std::uint32_t{1} << i;
      Canon c{g.conj(k, o.stab), table_word(t, n), t};
      if (best.stab < 0 || std::tie(c.stab, c.word) < std::tie(best.stab, best.word)) best = c;
    }
    canon.push_back(best);
  }
  std::sort(canon.begin(), canon.end(), [&](const Canon& a, const Canon& b) {
    int oa = g.sub_order(a.stab), ob = g.sub_order(b.stab);
    if (oa != ob) return oa > ob;
    return a.word < b.word;
  });
  std::map<int, std::vector<CosetFactor>> cache;
  std::vector<TambaraExpr> summands;
  for (const auto& c : canon) {
    auto it = cache.find(c.stab);
    if (it == cache.end()) it = cache.emplace(c.stab, coset_factors(g, top, h, c.stab, sl)).first;
    std::vector<TambaraExpr> factors;
    for (const auto& f : it->second) factors.push_back(factor_expr(g, h, c.stab, f.gamma, f.l, c.table >> f.slot & 1));
    summands.push_back(summand_expr(g, top, std::move(factors), c.stab));
  }
  return tsum(std::move(summands), top);
}

WordSets dihedral_words(int p) {
  WordSets w;
  auto word = [&](std::uint32_t m) { return table_word(m, p); };
  for (std::uint32_t m = 0; m < (1u << p); ++m) {
    std::string s = word(m);
    bool constant = s.find('a') == std::string::npos || s.find('b') == std::string::npos;
    if (constant) continue;
    bool pal = true;
    for (int i = 1; i < p; ++i) pal &= s[i] == s[p - i];
    if (pal) w.x.push_back(s);
    // orbit under rotations and the reflection i -> -i
    std::string least = s;
    bool free = true;
    for (int r = 0; r < p; ++r)
      for (int f = 0; f < 2; ++f) {
        std::string t(p, 'a');
        for (int i = 0; i < p; ++i) t[i] = s[((f ? -i : i) + r + p) % p];
        if (t < least) least = t;
        if (t == s && (r != 0 || f != 0)) free = false;
      }
    if (free && least == s) w.y.push_back(s);
  }
  std::sort(w.x.begin(), w.x.end());
  std::sort(w.y.begin(), w.y.end());
  return w;
}

TambaraExpr reciprocity_sum_dihedral(const GroupPtr& gp) {
  const Group& g = *gp;
  if (!g.is_dihedral() || g.dihedral_m() % 2 == 0) throw std::invalid_argument("dihedral reciprocity: need D_2p, p odd");
  int p = g.dihedral_m(), top = g.whole();
  int h = g.generated({g.tau()});
  auto z = [&](int i) { return g.dihedral_index(i, 0); };
  WordSets w = dihedral_words(p);
  std::vector<TambaraExpr> summands;
  summands.push_back(tnorm(g, tvar(0, h), top));
  summands.push_back(tnorm(g, tvar(1, h), top));
  // Words are function tables on the cosets H zeta^j; the letter paired with zeta^i is F(H zeta^{-i}).
  auto letter = [&](const std::string& table, int i) { return table[(p - i) % p] == 'b' ? 1 : 0; };
  for (const auto& x : w.x) {
    std::vector<TambaraExpr> f{tvar(letter(x, 0), h)};
    for (int i = 1; i <= (p - 1) / 2; ++i) f.push_back(tnorm(g, tconj(g, tres(g, tvar(letter(x, i), h), 0), z(i)), h));
    summands.push_back(ttr(g, tprod(std::move(f), h), top));
  }
  for (const auto& y : w.y) {
    std::vector<TambaraExpr> f{tres(g, tvar(letter(y, 0), h), 0)};
    for (int i = 1; i < p; ++i) f.push_back(tconj(g, tres(g, tvar(letter(y, i), h), 0), z(i)));
    summands.push_back(ttr(g, tprod(std::move(f), 0), top));
  }
  return tsum(std::move(summands), top);
}

// ---------------------------------------------------------------- instances

namespace {

class BurnsideTambara : public TambaraInstance {
 public:
  explicit BurnsideTambara(GroupPtr g) : g_(std::move(g)) {}
  const GroupPtr& group() const override { return g_; }
  std::string name() const override { return "Burnside"; }
  int dim(int level) const override { return ring(level)->rank(); }
  Vec integer(int level, const Int& n) const override { return BurnsideElement::integer(ring(level), n).coeffs; }
  Vec add(int, const Vec& a, const Vec& b) const override {
    Vec out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
  }
  Vec mul(int level, const Vec& a, const Vec& b) const override { return (el(level, a) * el(level, b)).coeffs; }
  Vec res(int s, int u, const Vec& a) const override { return equivar::res(el(s, a), u).coeffs; }
  Vec tr(int u, int s, const Vec& a) const override { return equivar::tr(el(u, a), s).coeffs; }
  Vec norm(int u, int s, const Vec& a) const override { return ring(s)->from_marks(norm_marks(el(u, a), s)); }
  Vec conj(int x, int s, const Vec& a) const override { return equivar::conj(el(s, a), x).coeffs; }
  std::string show(int level, const Vec& a) const override { return el(level, a).to_string(); }

  Vec brute_norm_of_sum(int h, int k, const Vec& a, const Vec& b) const override {
    BurnsideElement x = el(h, a) + el(h, b);
    if (!x.is_effective()) throw std::invalid_argument("brute norm: inputs must be effective");
    GSet t = realize_effective(x);
    double points = 1;
    int index = g_->sub_order(k) / g_->sub_order(h);
    for (int i = 0; i < index; ++i) points *= t.size();
    if (points <= 200000) return burnside_class(coinduce(t, k)).coeffs;
    return ring(k)->from_marks(norm_marks(x, k));
  }

  Vec random_element(int level, std::mt19937_64& rng) const override {
    Vec v(dim(level), 0);
    std::uniform_int_distribution<int> d(0, 9);
    for (auto& c : v) {
      int r = d(rng);
      c = r < 6 ? 0 : (r < 9 ? 1 : 2);
    }
    return v;
  }

 private:
  BurnsidePtr ring(int level) const { return BurnsideRing::get(g_, level); }
  BurnsideElement el(int level, const Vec& a) const { return {ring(level), a}; }
  GroupPtr g_;
};

class FixedPointTambara : public TambaraInstance {
 public:
  FixedPointTambara(GroupPtr g, long long n) : g_(std::move(g)), n_(n) {}
  const GroupPtr& group() const override { return g_; }
  std::string name() const override { return n_ == 0 ? "Z" : "Z/" + std::to_string(n_); }
  int dim(int) const override { return 1; }
  Vec integer(int, const Int& n) const override { return {red(n)}; }
  Vec add(int, const Vec& a, const Vec& b) const override { return {red(a[0] + b[0])}; }
  Vec mul(int, const Vec& a, const Vec& b) const override { return {red(a[0] * b[0])}; }
  Vec res(int, int, const Vec& a) const override { return a; }
  Vec tr(int u, int s, const Vec& a) const override { return {red(a[0] * index(u, s))}; }
  Vec norm(int u, int s, const Vec& a) const override { return {power(a[0], index(u, s))}; }
  Vec conj(int, int, const Vec& a) const override { return a; }
  std::string show(int, const Vec& a) const override { return to_string(a[0]); }
  Vec brute_norm_of_sum(int h, int k, const Vec& a, const Vec& b) const override {
    return {power(a[0] + b[0], index(h, k))};
  }
  Vec random_element(int, std::mt19937_64& rng) const override {
    std::uniform_int_distribution<long long> d(0, n_ == 0 ? 5 : n_ - 1);
    return {Int(d(rng))};
  }

 private:
  int index(int u, int s) const { return g_->sub_order(s) / g_->sub_order(u); }
  Int red(const Int& x) const {
    if (n_ == 0) return x;
    Int r = x % n_;
    return r < 0 ? r + n_ : r;
  }
  Int power(Int x, int e) const {
    Int out = 1;
    x = red(x);
    for (int i = 0; i < e; ++i) out = red(out * x);
    return out;
  }
  GroupPtr g_;
  long long n_;
};

}  // namespace

std::unique_ptr<TambaraInstance> burnside_tambara(GroupPtr g) { return std::make_unique<BurnsideTambara>(std::move(g)); }
std::unique_ptr<TambaraInstance> fixed_point_tambara(GroupPtr g, long long n) {
  if (n < 0 || n == 1) throw std::invalid_argument("fixed_point_tambara: need n = 0 or n >= 2");
  return std::make_unique<FixedPointTambara>(std::move(g), n);
}

Vec evaluate(const TambaraInstance& r, const TambaraExpr& e, const Vec& a, const Vec& b) {
  switch (e->op) {
    case TambaraOp::Var:
      return e->var == 0 ? a : b;
    case TambaraOp::Literal:
      return r.integer(e->level, e->literal);
    case TambaraOp::Sum: {
      Vec out = r.integer(e->level, 0);
      for (const auto& k : e->kids) out = r.add(e->level, out, evaluate(r, k, a, b));
      return out;
    }
    case TambaraOp::Product: {
      Vec out = r.integer(e->level, 1);
      for (const auto& k : e->kids) out = r.mul(e->level, out, evaluate(r, k, a, b));
      return out;
    }
    case TambaraOp::Res:
      return r.res(e->from, e->level, evaluate(r, e->kids[0], a, b));
    case TambaraOp::Tr:
      return r.tr(e->from, e->level, evaluate(r, e->kids[0], a, b));
    case TambaraOp::Norm:
      return r.norm(e->from, e->level, evaluate(r, e->kids[0], a, b));
    case TambaraOp::Conj:
      return r.conj(e->elem, e->from, evaluate(r, e->kids[0], a, b));
  }
  throw std::logic_error("evaluate: unknown node");
}

std::vector<Vec> evaluate_reciprocity(const TambaraInstance& r, int top, int h, const std::vector<ReciprocityOrbit>& orbits,
                                      const std::vector<std::pair<Vec, Vec>>& inputs) {
  const Group& g = *r.group();
  Slots sl = right_slots(g, top, h);
  int dh = r.dim(h);
  // A factor acts as x -> N_L^K(M x) with M = c_{gamma^{-1}} res^H_{gamma L gamma^{-1}}; factors with the
  // same (L, M) take equal values, so summands are grouped by (K, multiset of (signature, variable)).
  std::map<std::pair<int, std::vector<Vec>>, int> sig_id;
  struct SigInfo {
    int l;
    int gamma;
  };
  std::vector<SigInfo> sigs;
  std::map<int, std::vector<std::pair<int, int>>> per_k;  // K -> (slot, signature) per double coset
  for (const auto& o : orbits) {
    if (per_k.count(o.stab)) continue;
    std::vector<std::pair<int, int>> v;
    for (const auto& c : coset_factors(g, top, h, o.stab, sl)) {
      int gl = g.conj(c.gamma, c.l);
      std::vector<Vec> cols;
      for (int j = 0; j < dh; ++j) {
        Vec ej(dh, 0);
        ej[j] = 1;
        Vec x = gl == h ? ej : r.res(h, gl, ej);
        cols.push_back(r.conj(g.inv(c.gamma), gl, x));
      }
      auto key = std::make_pair(c.l, cols);
      auto it = sig_id.find(key);
      if (it == sig_id.end()) {
        it = sig_id.emplace(key, static_cast<int>(sigs.size())).first;
        sigs.push_back({c.l, c.gamma});
      }
      v.push_back({c.slot, it->second});
    }
    per_k.emplace(o.stab, std::move(v));
  }
  std::map<std::pair<int, std::vector<int>>, std::int64_t> groups;
  std::vector<int> key;
  for (const auto& o : orbits) {
    key.clear();
    for (const auto& [slot, sig] : per_k.at(o.stab)) key.push_back(2 * sig + static_cast<int>(o.table >> slot & 1));
    std::sort(key.begin(), key.end());
    groups[{o.stab, key}] += 1;
  }
  std::vector<Vec> out;
  for (const auto& [a, b] : inputs) {
    std::map<std::pair<int, int>, Vec> fcache;  // (K, 2*sig+var) -> value at K
    auto factor = [&](int k, int code) -> const Vec& {
      auto it = fcache.find({k, code});
      if (it != fcache.end()) return it->second;
      const SigInfo& s = sigs[code / 2];
      const Vec& x = code % 2 ? b : a;
      int gl = g.conj(s.gamma, s.l);
      Vec v = gl == h ? x : r.res(h, gl, x);
      if (s.gamma != 0) v = r.conj(g.inv(s.gamma), gl, v);
      if (s.l != k) v = r.norm(s.l, k, v);
      return fcache.emplace(std::make_pair(k, code), std::move(v)).first->second;
    };
    Vec total = r.integer(top, 0);
    for (const auto& [gk, count] : groups) {
      int k = gk.first;
      Vec p = r.integer(k, 1);
      for (int code : gk.second) p = r.mul(k, p, factor(k, code));
      if (k != top) p = r.tr(k, top, p);
      total = r.add(top, total, r.mul(top, r.integer(top, count), p));
    }
    out.push_back(std::move(total));
  }
  return out;
}

ReciprocityCheck verify_reciprocity(const TambaraInstance& r, int top, int h, int trials, std::uint64_t seed) {
  const Group& g = *r.group();
  ReciprocityCheck c;
  c.group = g.descriptor();
  c.sub = g.subgroup_name(h);
  c.instance = r.name();
  auto orbits = reciprocity_orbits(g, top, h);
  c.summands = static_cast<int>(orbits.size());
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Vec, Vec>> inputs;
  for (int i = 0; i < trials; ++i) {
    Vec a = r.random_element(h, rng);
    Vec b = r.random_element(h, rng);
    inputs.push_back({a, b});
  }
  auto values = evaluate_reciprocity(r, top, h, orbits, inputs);
  for (int i = 0; i < trials; ++i) {
    Vec want = r.brute_norm_of_sum(h, top, inputs[i].first, inputs[i].second);
    ++c.trials;
    if (!r.equal(top, values[i], want)) {
      if (c.failures++ == 0)
        c.first_failure = "a = " + r.show(h, inputs[i].first) + ", b = " + r.show(h, inputs[i].second) + ": formula " +
                          r.show(top, values[i]) + ", direct " + r.show(top, want);
    }
  }
  return c;
}

}  // namespace equivar
