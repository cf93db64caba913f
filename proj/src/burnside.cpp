#include "equivar/burnside.hpp"

#include <cctype>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace equivar {

BurnsideRing::BurnsideRing(GroupPtr g, int top) : g_(std::move(g)), top_(top) {
  reps_ = g_->local_class_reps(top_);
  for (int i = 0; i < rank(); ++i) pos_[reps_[i]] = i;
  marks_ = table_of_marks(*g_, top_);
}

BurnsidePtr BurnsideRing::get(const GroupPtr& g, int top) {
  static std::mutex mu;
  static std::map<std::pair<const Group*, int>, BurnsidePtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(g.get(), top);
  auto it = cache.find(key);
  if (it != cache.end() && it->second->group() == g) return it->second;
  BurnsidePtr r(new BurnsideRing(g, top));
  cache[key] = r;
  return r;
}

Vec BurnsideRing::marks(const Vec& a) const {
  int n = rank();
  Vec phi(n, 0);
  for (int i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j <= i; ++j)
      if (marks_(i, j) != 0) phi[j] += a[i] * marks_(i, j);
  }
  return phi;
}

Vec BurnsideRing::from_marks(const Vec& phi) const {
  int n = rank();
  Vec c(n, 0);
  for (int j = n - 1; j >= 0; --j) {
    Int rest = phi[j];
    for (int i = j + 1; i < n; ++i)
      if (c[i] != 0) rest -= c[i] * marks_(i, j);
    if (rest % marks_(j, j) != 0) throw std::domain_error("marks are not integral");
    c[j] = rest / marks_(j, j);
  }
  return c;
}

std::string BurnsideRing::basis_name(int i) const {
  if (reps_[i] == top_) return "1";
  std::string topname = top_ == g_->whole() ? "G" : g_->subgroup_name(top_);
  return "[" + topname + "/" + g_->subgroup_name(reps_[i]) + "]";
}

BurnsideElement BurnsideElement::zero(BurnsidePtr r) {
  int n = r->rank();
  return {std::move(r), Vec(n, 0)};
}

BurnsideElement BurnsideElement::one(BurnsidePtr r) { return integer(std::move(r), 1); }

BurnsideElement BurnsideElement::basis(BurnsidePtr r, int k) {
  auto e = zero(r);
  e.coeffs[r->index_of(k)] = 1;
  return e;
}

BurnsideElement BurnsideElement::integer(BurnsidePtr r, const Int& n) {
  auto e = zero(r);
  e.coeffs[r->index_of(r->top())] = n;
  return e;
}

bool BurnsideElement::is_effective() const {
  for (const auto& c : coeffs)
    if (c < 0) return false;
  return true;
}

std::string BurnsideElement::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (int i = ring->rank() - 1; i >= 0; --i) {
    const Int& c = coeffs[i];
    if (c == 0) continue;
    Int a = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    std::string name = ring->basis_name(i);
    if (name == "1")
      os << a;
    else {
      if (a != 1) os << a;
      os << name;
    }
  }
  return first ? "0" : os.str();
}

BurnsideElement BurnsideElement::operator+(const BurnsideElement& o) const {
  BurnsideElement r = *this;
  for (int i = 0; i < ring->rank(); ++i) r.coeffs[i] += o.coeffs[i];
  return r;
}

BurnsideElement BurnsideElement::operator-(const BurnsideElement& o) const { return *this + o.scaled(-1); }

BurnsideElement BurnsideElement::scaled(const Int& k) const {
  BurnsideElement r = *this;
  for (auto& c : r.coeffs) c *= k;
  return r;
}

BurnsideElement BurnsideElement::operator*(const BurnsideElement& o) const {
  if (ring != o.ring) throw std::invalid_argument("Burnside product over different rings");
  Vec a = marks(), b = o.marks();
  for (size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
  return {ring, ring->from_marks(a)};
}

BurnsideElement burnside_class(const GSet& x) {
  auto r = BurnsideRing::get(x.group(), x.top());
  auto e = BurnsideElement::zero(r);
  for (const auto& [s, c] : iso_type(x)) e.coeffs[r->index_of(s)] += c;
  return e;
}

GSet realize_effective(const BurnsideElement& a) {
  if (!a.is_effective()) throw std::invalid_argument("realize_effective: negative coefficient");
  const auto& r = *a.ring;
  GSet out = GSet::empty(r.group(), r.top());
  for (int i = 0; i < r.rank(); ++i)
    for (Int c = 0; c < a.coeffs[i]; ++c) out = disjoint_union(out, GSet::cosets(r.group(), r.top(), r.reps()[i]));
  return out;
}

BurnsideElement parse_burnside(const BurnsidePtr& r, const std::string& text) {
  auto out = BurnsideElement::zero(r);
  size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  bool any = false;
  while (true) {
    skip();
    if (i >= text.size()) break;
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (any) {
      throw std::invalid_argument("parse_burnside: expected + or - at position " + std::to_string(i));
    }
    Int coef = 1;
    bool has_num = false;
    size_t st = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i > st) {
      coef = Int(text.substr(st, i - st));
      has_num = true;
    }
    skip();
    if (i < text.size() && text[i] == '*') {
      ++i;
      skip();
    }
    if (i < text.size() && text[i] == '[') {
      size_t close = text.find(']', i);
      if (close == std::string::npos) throw std::invalid_argument("parse_burnside: missing ]");
      std::string inner = text.substr(i + 1, close - i - 1);
      size_t slash = inner.find('/');
      std::string sub = slash == std::string::npos ? inner : inner.substr(slash + 1);
      int s = sub == "G" ? r->top() : r->group()->parse_subgroup(sub);
      if (!r->group()->le(s, r->top())) throw std::invalid_argument("parse_burnside: " + sub + " is not in the top group");
      out.coeffs[r->index_of(s)] += sign * coef;
      i = close + 1;
    } else if (has_num) {
      out.coeffs[r->index_of(r->top())] += sign * coef;
    } else {
      throw std::invalid_argument("parse_burnside: cannot parse '" + text + "'");
    }
    any = true;
  }
  return out;
}

BurnsideElement res(const BurnsideElement& a, int h) {
  const auto& g = a.ring->group();
  if (!g->le(h, a.ring->top())) throw std::invalid_argument("res: not a subgroup");
  auto target = BurnsideRing::get(g, h);
  Vec phi = a.marks();
  Vec out(target->rank());
  for (int j = 0; j < target->rank(); ++j) out[j] = phi[a.ring->index_of(target->reps()[j])];
  return {target, target->from_marks(out)};
}

BurnsideElement tr(const BurnsideElement& b, int k) {
  const auto& g = b.ring->group();
  int h = b.ring->top();
  if (!g->le(h, k)) throw std::invalid_argument("tr: not an overgroup");
  auto target = BurnsideRing::get(g, k);
  Vec phi = b.marks();
  std::vector<int> cosets = g->left_coset_reps(k, h);
  Vec out(target->rank(), 0);
  for (int j = 0; j < target->rank(); ++j) {
    int w = target->reps()[j];
    for (int x : cosets) {
      int c = g->conj(g->inv(x), w);
      if (g->le(c, h)) out[j] += phi[b.ring->index_of(c)];
    }
  }
  return {target, target->from_marks(out)};
}

BurnsideElement conj(const BurnsideElement& b, int x) {
  const auto& g = b.ring->group();
  auto target = BurnsideRing::get(g, g->conj(x, b.ring->top()));
  Vec phi = b.marks();
  Vec out(target->rank());
  for (int j = 0; j < target->rank(); ++j) out[j] = phi[b.ring->index_of(g->conj(g->inv(x), target->reps()[j]))];
  return {target, target->from_marks(out)};
}

Vec norm_marks(const BurnsideElement& b, int k) {
  const auto& g = b.ring->group();
  int h = b.ring->top();
  if (!g->le(h, k)) throw std::invalid_argument("norm: not an overgroup");
  auto target = BurnsideRing::get(g, k);
  Vec phi = b.marks();
  Vec out(target->rank(), 1);
  for (int j = 0; j < target->rank(); ++j) {
    int w = target->reps()[j];
    for (int d : g->double_coset_reps(k, h, w)) out[j] *= phi[b.ring->index_of(g->meet(h, g->conj(d, w)))];
  }
  return out;
}

BurnsideElement norm(const BurnsideElement& b, int k) {
  if (!b.is_effective()) throw std::invalid_argument("norm: input is not effective; expand sums by reciprocity");
  auto target = BurnsideRing::get(b.ring->group(), k);
  return {target, target->from_marks(norm_marks(b, k))};
}

// ---------------------------------------------------------------- spans

SpanHom SpanHom::zero(const GSet& s, const GSet& t) { return SpanHom{s, t, {}}; }

std::pair<int, int> SpanHom::canonical(int k, int s, int t) const {
  const auto& g = source.group();
  int nt = target.size();
  std::pair<int, int> best{k, s * nt + t};
  for (int x : g->sub(source.top()).elems) {
    std::pair<int, int> c{g->conj(x, k), source.act(x, s) * nt + target.act(x, t)};
    if (c < best) best = c;
  }
  return best;
}

void SpanHom::add(int k, int s, int t, const Int& c) {
  if (c == 0) return;
  auto key = canonical(k, s, t);
  auto& v = terms[key];
  v += c;
  if (v == 0) terms.erase(key);
}

SpanHom SpanHom::identity(const GSet& s) {
  SpanHom f = zero(s, s);
  for (const auto& o : s.orbits()) f.add(o.stab, o.rep, o.rep, 1);
  return f;
}

SpanHom SpanHom::from_maps(const GSet& s, const GSet& t, const GSet& z, const std::vector<int>& a, const std::vector<int>& b) {
  if (!is_equivariant(z, s, GMap{a}) || !is_equivariant(z, t, GMap{b})) throw std::invalid_argument("span legs are not equivariant");
  SpanHom f = zero(s, t);
  for (const auto& o : z.orbits()) f.add(o.stab, a[o.rep], b[o.rep], 1);
  return f;
}

bool SpanHom::is_effective() const {
  for (const auto& [k, c] : terms)
    if (c < 0) return false;
  return true;
}

SpanHom SpanHom::operator+(const SpanHom& o) const {
  SpanHom r = *this;
  int nt = target.size();
  for (const auto& [key, c] : o.terms) r.add(key.first, key.second / nt, key.second % nt, c);
  return r;
}

std::string SpanHom::to_string() const {
  std::ostringstream os;
  const auto& g = source.group();
  int nt = target.size();
  bool first = true;
  for (const auto& [key, c] : terms) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c << "*";
    os << "(" << g->subgroup_name(key.first) << ": " << key.second / nt << " -> " << key.second % nt << ")";
  }
  return first ? "0" : os.str();
}

SpanHom compose_spans(const SpanHom& f, const SpanHom& h) {
  const auto& g = f.source.group();
  int top = f.source.top();
  int nt = f.target.size(), nu = h.target.size();
  SpanHom out = SpanHom::zero(f.source, h.target);
  for (const auto& [kf, cf] : f.terms) {
    int k = kf.first, s = kf.second / nt, t = kf.second % nt;
    for (const auto& [kh, ch] : h.terms) {
      int l = kh.first, t2 = kh.second / nu, u = kh.second % nu;
      // Pullback of G/K -> T <- G/L; orbits are K-orbits of {yL : y.t2 = t}.
      std::vector<int> ys;
      for (int y : g->left_coset_reps(top, l))
        if (f.target.act(y, t2) == t) ys.push_back(y);
      std::vector<char> seen(ys.size(), 0);
      std::vector<int> coset_of(g->order(), -1);
      for (size_t i = 0; i < ys.size(); ++i)
        for (int z : g->sub(l).elems) coset_of[g->mul(ys[i], z)] = static_cast<int>(i);
      for (size_t i = 0; i < ys.size(); ++i) {
        if (seen[i]) continue;
        for (int x : g->sub(k).elems) seen[coset_of[g->mul(x, ys[i])]] = 1;
        int stab = g->meet(k, g->conj(ys[i], l));
        out.add(stab, s, h.target.act(ys[i], u), cf * ch);
      }
    }
  }
  return out;
}

std::pair<Int, Int> c_p_d_p(int p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("c_p_d_p: p must be an odd prime");
  Int half = Int(1) << ((p - 1) / 2);
  Int full = Int(1) << (p - 1);
  return {half - 1, (full - 1) / p + 1 - half};
}

}  // namespace equivar
