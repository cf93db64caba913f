#pragma once

#include "equivar/linalg.hpp"

#include <string>
#include <vector>

namespace equivar {

/// Finitely generated abelian group Z^ngens / (column span of rels).
class FgAbelianGroup {
 public:
  FgAbelianGroup() = default;
  FgAbelianGroup(int ngens, Mat rels);
  static FgAbelianGroup free(int rank);
  static FgAbelianGroup cyclic(const Int& n);  // Z/n, Z when n == 0

  int ngens() const { return ngens_; }
  const Mat& rels() const { return rels_; }

  /// Invariant factors d_1 | d_2 | ... with units dropped; free summands appear as 0 at the end.
  const std::vector<Int>& invariant_factors() const { return inv_; }
  int rank() const;
  std::vector<Int> torsion() const;
  bool is_zero() const { return inv_.empty(); }
  bool is_free() const { return torsion().empty(); }
  bool isomorphic(const FgAbelianGroup& o) const { return inv_ == o.inv_; }
  std::string describe() const;  // "Z^2 + Z/2"

 private:
  int ngens_ = 0;
  Mat rels_;
  std::vector<Int> inv_;
};

std::vector<Int> invariant_factors(int ngens, const Mat& rels);

/// Homomorphism given on generators; columns are images of source generators.
struct AbHom {
  FgAbelianGroup source, target;
  Mat matrix;
  /// Well-definedness certificate: matrix * source.rels = target.rels * witness.
  Mat witness;
};

/// Builds an AbHom and checks it respects relations; throws otherwise.
AbHom make_hom(const FgAbelianGroup& s, const FgAbelianGroup& t, const Mat& m);

struct IsoInvariants {
  int rank = 0;
  std::vector<Int> torsion;
  bool operator==(const IsoInvariants& o) const { return rank == o.rank && torsion == o.torsion; }
};
IsoInvariants iso_invariants(const FgAbelianGroup& a);

FgAbelianGroup cokernel(const AbHom& f);
/// Kernel as a presented group; generators are the columns of `gens` (in source coordinates).
FgAbelianGroup kernel(const AbHom& f, Mat* gens = nullptr);
FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b);
FgAbelianGroup tensor(const FgAbelianGroup& a, const FgAbelianGroup& b);

/// ker(d_out) / im(d_in) for a complex  A --d_in--> B --d_out--> C.
FgAbelianGroup homology(const AbHom& d_in, const AbHom& d_out);

/// Subquotient of presented data: lattice L (columns of `sub_gens`, in Z^n) modulo lattice S <= L.
/// Returns the presentation in the basis of L; throws if S is not inside L.
FgAbelianGroup subquotient(const Mat& sub_gens, const Mat& rel_gens, Mat* basis = nullptr);

}  // namespace equivar
