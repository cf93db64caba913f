#pragma once

#include "equivar/gsets.hpp"
#include "equivar/linalg.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace equivar {

class BurnsideRing;
using BurnsidePtr = std::shared_ptr<const BurnsideRing>;

/// A(top) for a subgroup `top` of an ambient group. Basis: [top/K] for K in local_class_reps(top).
class BurnsideRing {
 public:
  /// Shared per (group, top); the table of marks is computed once.
  static BurnsidePtr get(const GroupPtr& g, int top);

  const GroupPtr& group() const { return g_; }
  int top() const { return top_; }
  int rank() const { return static_cast<int>(reps_.size()); }
  const std::vector<int>& reps() const { return reps_; }
  /// Basis position of the top-conjugacy class of K <= top.
  int index_of(int k) const { return pos_.at(g_->local_rep(top_, k)); }
  const Mat& marks_table() const { return marks_; }

  /// marks[j] = |X^{reps[j]}| for the element with coefficient vector a.
  Vec marks(const Vec& a) const;
  /// Inverse of marks(); throws std::domain_error if the result is not integral.
  Vec from_marks(const Vec& phi) const;

  std::string basis_name(int i) const;

 private:
  BurnsideRing(GroupPtr g, int top);
  GroupPtr g_;
  int top_;
  std::vector<int> reps_;
  std::map<int, int> pos_;
  Mat marks_;
};

struct BurnsideElement {
  BurnsidePtr ring;
  Vec coeffs;

  static BurnsideElement zero(BurnsidePtr r);
  static BurnsideElement one(BurnsidePtr r);
  static BurnsideElement basis(BurnsidePtr r, int k);  // [top/K]
  static BurnsideElement integer(BurnsidePtr r, const Int& n);

  bool is_effective() const;
  Vec marks() const { return ring->marks(coeffs); }
  std::string to_string() const;

  BurnsideElement operator+(const BurnsideElement& o) const;
  BurnsideElement operator-(const BurnsideElement& o) const;
  BurnsideElement operator*(const BurnsideElement& o) const;
  BurnsideElement scaled(const Int& k) const;
  bool operator==(const BurnsideElement& o) const { return ring == o.ring && coeffs == o.coeffs; }
};

/// Class of a G-set (over top = X.top()).
BurnsideElement burnside_class(const GSet& x);
/// A G-set representing an effective element.
GSet realize_effective(const BurnsideElement& a);

/// Parses "[G/D2] + 2[G/mu_3] - 1" style expressions over the ring.
BurnsideElement parse_burnside(const BurnsidePtr& r, const std::string& text);

BurnsideElement res(const BurnsideElement& a, int h);
BurnsideElement tr(const BurnsideElement& b, int k);
/// c_g : A(H) -> A(gHg^{-1}).
BurnsideElement conj(const BurnsideElement& b, int g);
/// N_H^K by coinduction; requires an effective input.
BurnsideElement norm(const BurnsideElement& b, int k);
/// The polynomial mark formula for N_H^K; valid on all elements.
Vec norm_marks(const BurnsideElement& b, int k);

// ---------------------------------------------------------------- span category

/// Integer combination of spans S <- G/K -> T. A term is the orbit of (K, p) with p in (S x T)^K
/// under simultaneous conjugation; the key is its least representative.
struct SpanHom {
  GSet source, target;
  std::map<std::pair<int, int>, Int> terms;  // (K, point of source x target) -> coefficient

  static SpanHom zero(const GSet& s, const GSet& t);
  static SpanHom identity(const GSet& s);
  /// Span S <-a- Z -b-> T from explicit maps.
  static SpanHom from_maps(const GSet& s, const GSet& t, const GSet& z, const std::vector<int>& a, const std::vector<int>& b);

  /// Canonical key for the span G/K -> (s, t).
  std::pair<int, int> canonical(int k, int s, int t) const;
  void add(int k, int s, int t, const Int& c);
  bool is_effective() const;
  SpanHom operator+(const SpanHom& o) const;
  bool operator==(const SpanHom& o) const { return terms == o.terms; }
  std::string to_string() const;
};

/// g after f for f : S -> T and g : T -> U.
SpanHom compose_spans(const SpanHom& f, const SpanHom& g);

/// (c_p, d_p) = (2^{(p-1)/2} - 1, (2^{p-1} - 1)/p + 1 - 2^{(p-1)/2}).
std::pair<Int, Int> c_p_d_p(int p);

}  // namespace equivar
