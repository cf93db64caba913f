#pragma once

#include "equivar/burnside.hpp"
#include "equivar/groups.hpp"
#include "equivar/linalg.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace equivar {

// ---------------------------------------------------------------- expressions

struct TambaraNode;
using TambaraExpr = std::shared_ptr<const TambaraNode>;

enum class TambaraOp { Var, Literal, Sum, Product, Res, Tr, Norm, Conj };

/// Expression tree whose nodes carry the subgroup (level) where their value lives.
/// Res/Tr/Norm nodes record the level of their child in `from`; Conj records the element.
struct TambaraNode {
  TambaraOp op;
  int level = 0;
  int from = 0;
  int elem = 0;
  int var = 0;  // 0 = a, 1 = b
  Int literal = 0;
  std::vector<TambaraExpr> kids;
};

TambaraExpr tvar(int var, int level);
TambaraExpr tlit(const Int& v, int level);
TambaraExpr tsum(std::vector<TambaraExpr> kids, int level);
TambaraExpr tprod(std::vector<TambaraExpr> kids, int level);
TambaraExpr tres(const Group& g, TambaraExpr x, int to);
TambaraExpr ttr(const Group& g, TambaraExpr x, int to);
TambaraExpr tnorm(const Group& g, TambaraExpr x, int to);
TambaraExpr tconj(const Group& g, TambaraExpr x, int elem);

/// Checks that every edge joins matching levels.
bool well_formed(const Group& g, const TambaraExpr& e);
std::string to_text(const Group& g, const TambaraExpr& e);
std::string to_latex(const Group& g, const TambaraExpr& e);
std::string to_json(const Group& g, const TambaraExpr& e);
/// Substitutes b = 0 and removes everything that becomes zero or an identity.
TambaraExpr substitute_b_zero(const Group& g, const TambaraExpr& e);

// ---------------------------------------------------------------- reciprocity

/// One G-orbit of Map^H(top, {a, b}): function values by right coset slot and the stabilizer.
struct ReciprocityOrbit {
  std::uint32_t table;  // bit i = 1 when F takes the value b on slot i
  int stab;
};

/// Orbits of Map^H(top, {a, b}) with T trivial, enumerated on bit masks (slots <= 32).
/// Each orbit is listed once by its least mask.
std::vector<ReciprocityOrbit> reciprocity_orbits(const Group& g, int top, int h);

/// One factor of a summand: N_L^K c_{gamma^{-1}} res^H_{gamma L gamma^{-1}} (x_var).
struct ReciprocityFactor {
  int gamma;  // representative with gamma^{-1} least in its double coset H gamma K
  int l;
  int var;
};
/// Factors for the orbit F with stabilizer K, in increasing order of gamma^{-1}.
std::vector<ReciprocityFactor> reciprocity_factors(const Group& g, int top, int h, const ReciprocityOrbit& f);

/// The symbolic N_H^top(a + b): one summand tr_K^top(prod of factors) per orbit, in canonical order
/// (stabilizer order descending, then function table). Budgeted on the number of summands.
TambaraExpr reciprocity_sum(const Group& g, int top, int h, std::size_t max_summands = 200000);
/// The dihedral special case built from palindromic and free words of length p (H = <tau>).
TambaraExpr reciprocity_sum_dihedral(const GroupPtr& d2p);

struct WordSets {
  std::vector<std::string> x;  // nonconstant words fixed by tau (letter i is the value at zeta^i), sorted
  std::vector<std::string> y;  // least representatives of free orbits, sorted
};
WordSets dihedral_words(int p);

// ---------------------------------------------------------------- instances

/// A Tambara functor on a finite group with elements given by coefficient vectors at each level.
class TambaraInstance {
 public:
  virtual ~TambaraInstance() = default;
  virtual const GroupPtr& group() const = 0;
  virtual std::string name() const = 0;
  virtual int dim(int level) const = 0;
  virtual Vec integer(int level, const Int& n) const = 0;
  virtual Vec add(int level, const Vec& a, const Vec& b) const = 0;
  virtual Vec mul(int level, const Vec& a, const Vec& b) const = 0;
  virtual Vec res(int s, int u, const Vec& a) const = 0;
  virtual Vec tr(int u, int s, const Vec& a) const = 0;
  virtual Vec norm(int u, int s, const Vec& a) const = 0;
  virtual Vec conj(int g, int s, const Vec& a) const = 0;
  virtual bool equal(int, const Vec& a, const Vec& b) const { return a == b; }
  virtual std::string show(int level, const Vec& a) const = 0;
  /// N_H^K(a + b) computed without reciprocity.
  virtual Vec brute_norm_of_sum(int h, int k, const Vec& a, const Vec& b) const = 0;
  /// A random admissible input at the given level.
  virtual Vec random_element(int level, std::mt19937_64& rng) const = 0;
};

/// The Burnside Tambara functor: A(L) in the basis of local class representatives; norms by
/// coinduction (enumerated when small, by the marks formula otherwise).
std::unique_ptr<TambaraInstance> burnside_tambara(GroupPtr g);
/// Fixed-point Tambara functor of Z/n (n = 0 for Z) with trivial action: tr is multiplication by
/// the index and N is the power by the index.
std::unique_ptr<TambaraInstance> fixed_point_tambara(GroupPtr g, long long n);

Vec evaluate(const TambaraInstance& r, const TambaraExpr& e, const Vec& a, const Vec& b);

/// Evaluates N_H^top(a + b) by the reciprocity formula for each input pair, grouping summands whose
/// factors agree as maps on the instance. `orbits` comes from reciprocity_orbits(g, top, h).
std::vector<Vec> evaluate_reciprocity(const TambaraInstance& r, int top, int h, const std::vector<ReciprocityOrbit>& orbits,
                                      const std::vector<std::pair<Vec, Vec>>& inputs);

struct ReciprocityCheck {
  std::string group, sub, instance;
  int summands = 0;
  int trials = 0;
  int failures = 0;
  std::string first_failure;
};
/// Formula against brute force for `trials` random pairs.
ReciprocityCheck verify_reciprocity(const TambaraInstance& r, int top, int h, int trials, std::uint64_t seed);

}  // namespace equivar
