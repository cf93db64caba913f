#pragma once

#include "equivar/abgrp.hpp"
#include "equivar/gsets.hpp"
#include "equivar/linalg.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace equivar {

/// Canonical span basis of the representable A_X at every level s <= X.top().
///
/// A basis element at level s is a pair (t, x) with t <= s and t fixing x, up to s-conjugation;
/// it stands for the span X <- s/t -> s/s. Canonical form: x is the least point of its s-orbit
/// and t is the least id in its class under the stabilizer of x in s.
class RepBasis {
 public:
  explicit RepBasis(GSet x);

  const GSet& set() const { return x_; }
  const GroupPtr& group() const { return x_.group(); }
  int top() const { return x_.top(); }

  int size(int s) const { return static_cast<int>(level(s).elems.size()); }
  std::pair<int, int> elem(int s, int i) const { return level(s).elems[i]; }
  /// Index of the canonical form of (t, x) at level s.
  int index(int s, int t, int x) const;
  std::string label(int s, int i) const;

  SparseVec res(int s, int u, int i) const;  // res^s_u of basis element i
  int tr(int u, int s, int i) const;         // tr_u^s is a basis element
  int conj(int g, int s, int i) const;       // c_g : level s -> level gsg^{-1}

 private:
  struct Level {
    std::vector<int> orbit_rep;  // point -> least point of its s-orbit
    std::vector<int> trans;      // point y -> h in s with h . rep = y
    std::vector<int> stab;       // point -> stabilizer in s (meaningful at reps)
    std::vector<std::pair<int, int>> elems;
    std::map<std::pair<int, int>, int> index;
  };
  const Level& level(int s) const;

  GSet x_;
  mutable std::vector<std::unique_ptr<Level>> levels_;
};

struct MackeyElement {
  int level;
  SparseVec v;
};

/// Realized Mackey functor over (ambient group, top): every subgroup s <= top is a level
/// Z^{n_s} / rels(s), with res, tr and conj given on generators.
class Mackey {
 public:
  Mackey() = default;

  /// A_X with no relations. Carries Green data when X is a single point.
  static Mackey representable(const GSet& x);
  /// A_X modulo the subfunctor generated by `relations`.
  static Mackey presented(const GSet& x, const std::vector<MackeyElement>& relations);
  /// Zero functor over (g, top).
  static Mackey zero(GroupPtr g, int top);

  const GroupPtr& group() const { return g_; }
  int top() const { return top_; }
  const std::vector<int>& levels() const { return subs_; }
  bool has_level(int s) const { return s >= 0 && s < static_cast<int>(pos_.size()) && pos_[s] >= 0; }

  int ngens(int s) const { return static_cast<int>(lv(s).labels.size()); }
  const std::string& label(int s, int i) const { return lv(s).labels[i]; }
  const Lattice& rels(int s) const { return lv(s).rels; }
  FgAbelianGroup value(int s) const;

  const SparseMat& res(int s, int u) const;
  const SparseMat& tr(int u, int s) const;
  const SparseMat& conj(int g, int s) const;

  Vec reduce(int s, const Vec& v) const { return rels(s).reduce(v); }
  bool is_zero_at(int s, const Vec& v) const { return rels(s).contains(v); }

  bool has_green() const { return green_; }
  /// Product of generators i, j at level s (Green data).
  const SparseVec& mul(int s, int i, int j) const;
  SparseVec multiply(int s, const SparseVec& a, const SparseVec& b) const;
  /// Unit at level s (Green data).
  const SparseVec& unit(int s) const;

  /// Representable data when this is a quotient of A_X with generators = span basis.
  const std::shared_ptr<const RepBasis>& rep() const { return rep_; }

  /// Lattices S(s) of the subfunctor generated by `elems`, plus existing relations.
  std::vector<Lattice> generated_subfunctor(const std::vector<MackeyElement>& elems, bool ideal) const;
  /// Quotient by the sub-Mackey functor generated by `elems`.
  Mackey quotient(const std::vector<MackeyElement>& elems) const;
  /// Quotient by the Green ideal generated by `elems`; requires Green data.
  Mackey quotient_by_congruence(const std::vector<MackeyElement>& elems) const;
  /// Replaces all relation lattices (must be a subfunctor containing the old ones).
  Mackey with_relations(std::vector<Lattice> rels) const;

  /// Double coset formula, well-definedness, transitivity and conjugation axioms.
  bool check_axioms(std::string* why = nullptr) const;
  /// Green distributivity (Frobenius reciprocity) and associativity on all generator triples.
  bool check_green(std::string* why = nullptr) const;

  /// Pull back along an injective homomorphism phi : Q -> G whose image is a subgroup of top.
  /// The result lives over (Q, Q.whole()).
  Mackey pullback(const GroupHom& phi) const;
  /// Restriction to the subgroup k <= top (same ambient group).
  Mackey restrict(int k) const;
  /// M^N over Q = top/N given the quotient map pi : G -> Q (levels H containing N, reindexed by H/N).
  Mackey fixed_points_functor(int n, const GroupHom& pi) const;
  /// Geometric fixed points for N normal in top: kill levels not containing N, reindex over Q.
  /// Requires representable data; the result is presented over Q by A_{X^N}.
  Mackey geometric_fixed_points(int n, const GroupHom& pi) const;

  std::string to_json(bool pretty = false) const;
  std::string show() const;

  // Construction helpers for other modules.
  struct Level {
    int sub = 0;
    std::vector<std::string> labels;
    Lattice rels;
  };
  Mackey(GroupPtr g, int top, std::vector<Level> levels);
  void set_res(int s, int u, SparseMat m);
  void set_tr(int u, int s, SparseMat m);
  void set_conj(int g, int s, SparseMat m);
  void set_green(std::vector<std::vector<SparseVec>> table, std::vector<SparseVec> units);
  void set_rep(std::shared_ptr<const RepBasis> r) { rep_ = std::move(r); }

 private:
  const Level& lv(int s) const;
  size_t pair_key(int a, int b) const { return static_cast<size_t>(pos_[a]) * subs_.size() + pos_[b]; }

  GroupPtr g_;
  int top_ = 0;
  std::vector<int> subs_;
  std::vector<int> pos_;  // subgroup id -> level index, -1 if absent
  std::vector<Level> levels_;
  std::vector<SparseMat> res_, tr_;  // by pair_key(s, u) for u <= s
  std::vector<SparseMat> conj_;      // [g * nlevels + level]
  bool green_ = false;
  std::vector<std::vector<SparseVec>> mul_;  // per level, i * n + j
  std::vector<SparseVec> unit_;
  std::shared_ptr<const RepBasis> rep_;
};

/// Levelwise maps on generators (indexed like src.levels()).
struct MackeyMap {
  std::vector<SparseMat> at;
};

/// Checks that f : M -> N is well defined and commutes with res, tr and conj.
bool verify_morphism(const Mackey& m, const Mackey& n, const MackeyMap& f, std::string* why = nullptr);

/// The morphism A_X / R -> N determined by images of the orbit generators:
/// images[i] in N(Stab(x_i)) for the i-th orbit representative x_i of X.
MackeyMap morphism_from_images(const Mackey& m, const Mackey& n, const std::vector<SparseVec>& images);

/// Identity-on-generators candidate between two quotients of the same representable.
MackeyMap identity_map(const Mackey& m);

struct IsoCertificate {
  bool found = false;
  bool invariants_differ = false;  // a genuine refutation
  std::string reason;
  MackeyMap forward, backward;
  std::string to_json() const;
};

/// Verifies a pair of candidate inverse morphisms; reports levels with different invariants.
IsoCertificate certify_iso(const Mackey& m, const Mackey& n, const MackeyMap& fwd, const MackeyMap& bwd);
/// Seeded search: identity on generator images 1 -> 1 in both directions (both sides quotients of
/// representables on a single orbit), after comparing invariant factors.
IsoCertificate mackey_iso(const Mackey& m, const Mackey& n);
/// Completes a levelwise surjective candidate f : M -> N by solving for preimages of the generators
/// of N, then certifies the pair.
IsoCertificate iso_from_forward(const Mackey& m, const Mackey& n, const MackeyMap& fwd);

/// Constant Z over D_2 as A / (2 - [D_2/e]).
Mackey constant_Z(const GroupPtr& d2);

}  // namespace equivar
