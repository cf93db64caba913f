// Slow, independent reference computations used only by tests.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

// Dihedral element as (rotation, reflection bit), multiplied by the textbook formula.
struct Dih {
  int m;
  std::pair<int, int> mul(std::pair<int, int> a, std::pair<int, int> b) const {
    int r = a.second ? a.first - b.first : a.first + b.first;
    return {((r % m) + m) % m, (a.second + b.second) % 2};
  }
  std::vector<std::pair<int, int>> elements() const {
    std::vector<std::pair<int, int>> v;
    for (int e = 0; e < 2; ++e)
      for (int i = 0; i < m; ++i) v.push_back({i, e});
    return v;
  }
};

// Generic group given by a product table on 0..n-1.
struct Table {
  int n;
  std::function<int(int, int)> mul;
  int inv(int a) const {
    for (int b = 0; b < n; ++b)
      if (mul(a, b) == 0) return b;
    return -1;
  }
};

using Set = std::set<int>;

// Every subgroup, found by checking closure of every subset (n <= 12).
inline std::vector<Set> all_subgroups_by_subsets(const Table& g) {
  std::vector<Set> out;
  for (std::uint32_t bits = 1; bits < (1u << g.n); ++bits) {
    if (!(bits & 1u)) continue;
    bool closed = true;
    for (int a = 0; a < g.n && closed; ++a)
      if (bits >> a & 1u)
        for (int b = 0; b < g.n && closed; ++b)
          if (bits >> b & 1u)
            if (!(bits >> g.mul(a, b) & 1u)) closed = false;
    if (!closed) continue;
    Set s;
    for (int a = 0; a < g.n; ++a)
      if (bits >> a & 1u) s.insert(a);
    out.push_back(s);
  }
  return out;
}

inline Set conjugate(const Table& g, int x, const Set& s) {
  Set out;
  for (int a : s) out.insert(g.mul(g.mul(x, a), g.inv(x)));
  return out;
}

inline int count_classes(const Table& g, const std::vector<Set>& subs) {
  std::set<Set> seen;
  int classes = 0;
  for (const auto& s : subs) {
    if (seen.count(s)) continue;
    ++classes;
    for (int x = 0; x < g.n; ++x) seen.insert(conjugate(g, x, s));
  }
  return classes;
}

// Left cosets of h in g as explicit sets.
inline std::vector<Set> left_cosets(const Table& g, const Set& h) {
  std::set<Set> cs;
  for (int x = 0; x < g.n; ++x) {
    Set c;
    for (int a : h) c.insert(g.mul(x, a));
    cs.insert(c);
  }
  return {cs.begin(), cs.end()};
}

// Number of cosets xH fixed by every element of k.
inline int fixed_cosets(const Table& g, const Set& h, const Set& k) {
  int n = 0;
  for (const auto& c : left_cosets(g, h)) {
    bool fixed = true;
    for (int a : k) {
      Set d;
      for (int y : c) d.insert(g.mul(a, y));
      if (d != c) fixed = false;
    }
    n += fixed;
  }
  return n;
}

// Double cosets K x H as explicit sets.
inline int count_double_cosets(const Table& g, const Set& k, const Set& h) {
  std::set<Set> ds;
  for (int x = 0; x < g.n; ++x) {
    Set d;
    for (int a : k)
      for (int b : h) d.insert(g.mul(g.mul(a, x), b));
    ds.insert(d);
  }
  return static_cast<int>(ds.size());
}

// All functions F : G -> {0..t-1} with F(h g) = h.F(g) for h in H (action given by `act`),
// as value vectors indexed by group element; G acts by (k.F)(g) = F(g k).
struct FunctionOrbits {
  std::map<int, int> orbits_by_size;  // orbit size -> count
  int fixed = 0;
  int total = 0;
};

inline FunctionOrbits coinduced_orbits(const Table& g, const Set& h, int t, const std::function<int(int, int)>& act) {
  std::vector<std::vector<int>> fns;
  std::vector<int> f(g.n, 0);
  std::function<void(int)> rec = [&](int i) {
    if (i == g.n) {
      for (int a : h)
        for (int x = 0; x < g.n; ++x)
          if (f[g.mul(a, x)] != act(a, f[x])) return;
      fns.push_back(f);
      return;
    }
    for (int v = 0; v < t; ++v) {
      f[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::set<std::vector<int>> seen;
  FunctionOrbits out;
  out.total = static_cast<int>(fns.size());
  for (const auto& fn : fns) {
    if (seen.count(fn)) continue;
    std::set<std::vector<int>> orb;
    for (int k = 0; k < g.n; ++k) {
      std::vector<int> img(g.n);
      for (int x = 0; x < g.n; ++x) img[x] = fn[g.mul(x, k)];
      orb.insert(img);
    }
    for (const auto& o : orb) seen.insert(o);
    out.orbits_by_size[static_cast<int>(orb.size())] += 1;
    if (orb.size() == 1) ++out.fixed;
  }
  return out;
}

}  // namespace oracle
