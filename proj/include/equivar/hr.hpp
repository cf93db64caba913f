#pragma once

#include "equivar/abgrp.hpp"
#include "equivar/boxnorm.hpp"
#include "equivar/mackey.hpp"

#include <string>
#include <vector>

namespace equivar {

// ---------------------------------------------------------------- discrete E_sigma-rings

/// A ring whose additive group is (Z/n)^rank (n = 0 for free), with structure constants and an
/// anti-involution tau, both on the additive basis.
struct RingWithAntiInvolution {
  std::string name;
  int rank = 1;
  long long modulus = 0;
  std::vector<std::vector<Vec>> mul;  // mul[i][j] = e_i e_j
  Vec one;
  Mat tau;  // columns are tau(e_j)
  std::vector<std::string> labels;

  Vec reduce(Vec v) const;
  Vec times(const Vec& a, const Vec& b) const;
  Vec apply_tau(const Vec& a) const;
  /// Two-sided action of a (x) b in R (x) R^op: x -> a x b. The Weyl action on R (x) R^op is
  /// a (x) b -> tau(b) (x) tau(a).
  Vec act(const Vec& a, const Vec& b, const Vec& x) const;
  /// tau is an involutive anti-homomorphism fixing 1, and the two-sided action is equivariant.
  bool check(std::string* why = nullptr) const;

  static RingWithAntiInvolution integers_mod(long long n);  // Z/n with tau = id; Z when n = 0, zero when n = 1
  static RingWithAntiInvolution gaussian();                 // Z[i] with complex conjugation
};

/// The fixed-point D_2-Mackey functor of a ring with anti-involution: M(D2/e) = R, M(D2/D2) = R^tau,
/// res the inclusion, tr = 1 + tau, Weyl action tau. The Green product at the fixed level is the
/// restriction of the product of R.
class DiscreteEsigmaRing {
 public:
  /// Throws std::invalid_argument when tau is not an involutive anti-homomorphism.
  static DiscreteEsigmaRing from_ring_with_anti_involution(RingWithAntiInvolution r);

  const RingWithAntiInvolution& ring() const { return r_; }
  const Mackey& mackey() const { return m_; }
  const GroupPtr& group() const { return m_.group(); }
  /// Coordinates of the fixed level in terms of R (columns).
  const Mat& fixed_basis() const { return fixed_; }

  /// The ring checks, the norm N(a) = a (x) tau(a) preserves the fixed level, the fixed unit restricts
  /// to 1, and the Mackey and Green axioms.
  bool check(std::string* why = nullptr) const;

  /// True when 1 generates M as a Mackey functor, i.e. M is a quotient of the Burnside functor.
  bool unit_generated() const;
  /// Modulus of the underlying ring when unit_generated().
  long long cyclic_modulus() const;

 private:
  RingWithAntiInvolution r_;
  Mackey m_;
  Mat fixed_;
};

/// Presentation of the quotient of A over h (inside ambient g) by 2 = [h/e] (when |h| = 2) and
/// n = 0 (when n > 0; n = 1 gives zero). For n = 0 and |h| = 2 this is the constant Mackey functor Z.
EffectiveCoequalizerPresentation ring_presentation(const GroupPtr& g, int h, long long n);
/// The presentation of M over the subgroup h of order 2 in g; requires unit_generated().
EffectiveCoequalizerPresentation esigma_presentation(const DiscreteEsigmaRing& m, const GroupPtr& g, int h);
/// Certifies that the realized presentation over D2 is the fixed-point functor (1 -> 1).
IsoCertificate presentation_certificate(const DiscreteEsigmaRing& m);

// ---------------------------------------------------------------- bar complex

/// A Mackey map between two quotients of A_pt over (g, g.whole()) sending 1 to 1.
struct BarMap {
  MackeyMap map;
  std::string name;
};

/// The twisted module structures on the two normed ends of the bar construction.
struct TwistedModules {
  Mackey left;    // N_{D2}^{D2m} M
  Mackey middle;  // N_e^{D2m} iota^* M
  Mackey right;   // N_{z D2 z^-1}^{D2m} c_z M
  BarMap psi_r;   // left box middle -> left
  BarMap psi_l;   // middle box right -> right
  /// Unit and associativity of both actions as matrix equalities at every level.
  bool check(std::string* why = nullptr) const;
};
/// g must be dihedral of order 2m with m odd or m = 1.
TwistedModules twisted_module_structures(const DiscreteEsigmaRing& m, const GroupPtr& g);

struct BarComplex {
  GroupPtr group;
  TwistedModules ends;
  std::vector<Mackey> terms;                  // terms[k] = left box middle^k box right
  std::vector<std::vector<BarMap>> faces;     // faces[k][i] : terms[k] -> terms[k-1]
  std::vector<std::vector<BarMap>> degens;    // degens[k][i] : terms[k] -> terms[k+1]

  /// d_i d_j = d_{j-1} d_i (i < j), s_i s_j = s_{j+1} s_i (i <= j), and the mixed identities.
  bool check_simplicial(std::string* why = nullptr) const;
  /// Alternating-sum and normalized differentials square to zero at every level.
  bool check_d_squared(std::string* why = nullptr) const;
};

/// Degrees 0..top_degree of the Real Hochschild bar construction over g = D2m, m odd (or m = 1).
/// Supports rings generated by their unit; top_degree is capped by budgets().max_bar_degree.
BarComplex hr_complex(const DiscreteEsigmaRing& m, const GroupPtr& g, int top_degree);

/// Degree-zero Real Hochschild homology: the coequalizer of the two degree-1 faces.
Mackey hr0(const DiscreteEsigmaRing& m, const GroupPtr& g);
Mackey hr0(const BarComplex& b);

/// Levelwise homology of the normalized complex, indexed like the levels of the terms.
struct HrHomology {
  int degree = 0;
  std::vector<int> levels;
  std::vector<FgAbelianGroup> groups;
  std::string describe(const Group& g) const;
};
HrHomology hr_homology(const BarComplex& b, int n);

/// Phi^{mu_d} applied to HR_k^{D2m}, certified against HR_k^{D(2m/d)} for k = 0..max_degree.
struct PhiCertificate {
  int m = 1, d = 1, max_degree = 0;
  std::vector<IsoCertificate> degree;  // simplicial terms
  IsoCertificate hr0;                  // degree-zero homology
  bool found() const;
  std::string to_json() const;
};
/// The small side is built over the group produced by the geometric fixed points.
PhiCertificate phi_compatibility_check(const DiscreteEsigmaRing& m, int dihedral_m, int d, int max_degree);

}  // namespace equivar
