#pragma once

#include "equivar/burnside.hpp"
#include "equivar/mackey.hpp"

#include <string>
#include <vector>

namespace equivar {

/// An effective span S <-a- Z -b-> T materialized as an explicit G-set Z.
struct SpanApex {
  GSet z;
  std::vector<int> a, b;
};
/// Requires an effective span.
SpanApex span_apex(const SpanHom& f);

/// Image of the generator (level, point u of the source) of A_S under the map A_S -> A_T induced by
/// the span: the level-orbits of the fiber over u, each as a span basis element of A_T.
SparseVec apply_span(const SpanApex& f, const RepBasis& target, int level, int u);

/// Reflexive coequalizer A_{U + T} => A_T with d_i = (r_i, id_T) and s_0 the inclusion of T.
/// The presented functor is A_T modulo r_0(u) = r_1(u) for u in U.
struct EffectiveCoequalizerPresentation {
  GSet u, t;
  SpanHom r0, r1;  // U -> T, both effective

  SpanHom d(int i) const;
  SpanHom s0() const;
  /// Effective legs and d_i s_0 = id.
  bool check(std::string* why = nullptr) const;
  Mackey realize() const;
};

/// Constant Z over the order-2 subgroup h (ambient group g): A/(2 - [h/e]) with d_0 = [h/e], d_1 = 2.
EffectiveCoequalizerPresentation constant_Z_presentation(const GroupPtr& g, int h);
/// A_T itself (U empty).
EffectiveCoequalizerPresentation free_presentation(const GSet& t);

/// Box product of two presented functors over the same (group, top): A_{S x T} modulo
/// rel(M) x T and S x rel(N).
Mackey box(const Mackey& m, const Mackey& n);

/// N_H^K of an effective span of H-sets: Map^H(K, S) <- Map^H(K, Z) -> Map^H(K, T).
SpanHom norm_span(const SpanHom& f, int k);

/// N_H^K of the presented functor: A_{Map^H(K,T)} modulo N(d_0)(F) = N(d_1)(F) for each orbit F of
/// Map^H(K, U + T).
Mackey norm_mackey(const EffectiveCoequalizerPresentation& p, int k);

/// The G-set x transported along conjugation by g: top becomes g top g^{-1}.
GSet conjugate_gset(const GSet& x, int g);
EffectiveCoequalizerPresentation conjugate_presentation(const EffectiveCoequalizerPresentation& p, int g);
/// c_g M over g top g^{-1} (same ambient group).
Mackey conjugation_transport(const Mackey& m, int g);

/// Phi^{mu_d} of a presented D_{2m}-Mackey functor (top = whole group), over D_{2m/d}. Pass `q` to
/// land over an existing copy of D_{2m/d}.
Mackey geometric_fixed_points_dihedral(const Mackey& m, int d, GroupPtr q = nullptr);

}  // namespace equivar
