#pragma once

#include "equivar/groups.hpp"
#include "equivar/linalg.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace equivar {

/// Finite set with an action of the subgroup `top` of an ambient group.
/// act(g, x) is only meaningful for g in top.
class GSet {
 public:
  GSet() = default;
  GSet(GroupPtr g, int top, int n, std::vector<int> act);

  static GSet empty(GroupPtr g, int top);
  static GSet trivial(GroupPtr g, int top, int n);
  static GSet point(GroupPtr g, int top) { return trivial(std::move(g), top, 1); }
  /// top / sub, points indexed like Group::left_coset_reps(top, sub).
  static GSet cosets(GroupPtr g, int top, int sub);

  const GroupPtr& group() const { return g_; }
  int top() const { return top_; }
  int size() const { return n_; }
  int act(int g, int x) const { return act_[static_cast<size_t>(g) * n_ + x]; }

  /// Checks act(e,x) = x and act(g, act(h,x)) = act(gh, x).
  bool verify() const;

  std::vector<int> fixed_points(int h) const;
  int num_fixed(int h) const;
  int stabilizer(int x) const;  // ambient subgroup id (inside top)

  struct Orbit {
    int rep;   // least point
    int stab;  // stabilizer of rep
    std::vector<int> points;
  };
  std::vector<Orbit> orbits() const { return orbits_under(top_); }
  std::vector<Orbit> orbits_under(int h) const;
  /// orbit_index[x] for the top action.
  std::vector<int> orbit_index() const;

  GSet restrict(int h) const;

 private:
  GroupPtr g_;
  int top_ = 0;
  int n_ = 0;
  std::vector<int> act_;
};

/// Map of underlying sets; equivariance is checked by is_equivariant.
struct GMap {
  std::vector<int> val;
};
bool is_equivariant(const GSet& source, const GSet& target, const GMap& f);

GSet product(const GSet& a, const GSet& b);  // point (i,j) -> i*|b| + j
GSet disjoint_union(const GSet& a, const GSet& b);
GSet multiple(const GSet& a, int k);

/// K x_H T for an H-set T (H = T.top() <= K). Point (coset i, t) -> i*|T| + t, cosets as left_coset_reps(K, H).
GSet induce(const GSet& t, int k);

/// Right cosets H g_i of H in K and the action data needed for Map^H(K, T).
class CoinductionIndex {
 public:
  CoinductionIndex(const GSet& t, int k);

  const GSet& fiber() const { return t_; }
  int top() const { return k_; }
  int slots() const { return static_cast<int>(reps_.size()); }
  const std::vector<int>& reps() const { return reps_; }
  std::int64_t count() const { return count_; }

  std::uint64_t encode(const std::vector<int>& v) const;
  std::vector<int> decode(std::uint64_t code) const;
  /// (k . F)(g) = F(g k) for k in K.
  std::uint64_t act(int k, std::uint64_t code) const;
  /// F(g) for any g in K.
  int value_at(const std::vector<int>& vals, int g) const;
  /// Slot j and h in H with g = h g_j.
  std::pair<int, int> split(int g) const;

  struct OrbitRec {
    std::uint64_t rep;  // least code in the orbit
    int stab;
    std::int64_t size;
  };
  /// All K-orbits of Map^H(K, T), in increasing order of least code.
  void for_each_orbit(const std::function<void(const OrbitRec&)>& fn) const;
  std::vector<OrbitRec> orbits() const;

 private:
  GSet t_;
  int k_;
  std::vector<int> reps_;
  std::vector<int> slot_of_;   // ambient element -> slot of its right coset, -1 outside K
  std::vector<int> perm_;      // [k * slots + i] -> j with g_i k = h g_j
  std::vector<int> hpart_;     // matching h
  std::vector<std::uint64_t> pow_;
  std::int64_t count_ = 0;
};

/// Map^H(K, T) materialized (points are function codes listed in `codes` order).
GSet coinduce(const GSet& t, int k, std::vector<std::uint64_t>* codes = nullptr);

/// Canonical form for G-set isomorphism: top-conjugacy class representative -> multiplicity.
using OrbitType = std::map<int, std::int64_t>;
OrbitType iso_type(const GSet& x);
OrbitType coinduction_type(const CoinductionIndex& ci);
bool gsets_isomorphic(const GSet& a, const GSet& b);
std::int64_t orbit_type_size(const Group& g, int top, const OrbitType& t);

/// Marks |(top/H)^K| over top-local class representatives (rows H, columns K).
Mat table_of_marks(const Group& g, int top);

struct DependentProduct {
  GSet pi;        // G x_K Map^H(K, T0)
  GSet base;      // G / K
  std::vector<int> hprime;  // pi -> base
};
/// Pi_g(T) for g : G/H -> G/K with T0 the H-set fiber over eH.
DependentProduct dependent_product(const GSet& t0, int k, int top);

/// Exponential diagram for h : A -> G/H and g : G/H -> G/K.
/// Convention: Map^H(K, A0) uses F(hk) = h F(k) and (k.F)(x) = F(xk), so f'(xH, F) = x . F(x^{-1}).
struct ExponentialDiagram {
  GSet A, X, Y, Pi, XPi;
  GMap h, g, fprime, gprime, hprime;
};
ExponentialDiagram exponential_diagram(const GSet& a, const std::vector<int>& h_to_cosets, int sub_h, int sub_k);

/// mu_N as a D_{2m}-set through O(2): zeta_m rotates by N/m steps, tau reflects.
GSet circle_points(GroupPtr dihedral, int n);

}  // namespace equivar
