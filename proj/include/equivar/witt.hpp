#pragma once

#include "equivar/abgrp.hpp"
#include "equivar/hr.hpp"
#include "equivar/mackey.hpp"

#include <string>
#include <vector>

namespace equivar {

/// W_{k+1}(M;p) = HR_0^{D_{2p^k}}(M)^{mu_{p^k}}, a D2-diagram with two levels.
struct WittLevel {
  int p = 3, k = 0;
  GroupPtr group;    // D_{2p^k}
  Mackey hr0;        // over group
  Mackey value;      // over the tower's D2
  int top_sub = 0;   // D_{2p^k} inside group
  int under_sub = 0; // mu_{p^k} inside group

  FgAbelianGroup top() const { return hr0.value(top_sub); }
  FgAbelianGroup under() const { return hr0.value(under_sub); }
  /// res from the fixed level to the underlying level.
  AbHom res() const;
  AbHom tr() const;
};

/// A map of two-level diagrams, one AbHom per level.
struct LevelPair {
  AbHom top, under;
};

/// Truncations W_1 .. W_{K+1} with R_k, F_k : W_{k+1} -> W_k and V_k : W_k -> W_{k+1}, k = 1..K.
struct WittTower {
  int p = 3;
  GroupPtr d2;
  std::vector<WittLevel> levels;  // levels[k] = W_{k+1}
  std::vector<LevelPair> R, F, V; // index k - 1

  const LevelPair& r(int k) const { return R.at(k - 1); }
  const LevelPair& f(int k) const { return F.at(k - 1); }
  const LevelPair& v(int k) const { return V.at(k - 1); }

  /// R and F commute with the diagram restriction, V with the diagram transfer, and
  /// R_{k-1} F_k = F_{k-1} R_k for every k >= 2.
  bool check(std::string* why = nullptr) const;
  std::string to_json() const;
};

/// Throws BudgetExceeded when p^k > budgets().max_witt_index; p must be an odd prime.
WittLevel truncated_witt(const DiscreteEsigmaRing& m, int p, int k);
/// Levels 0..K with all operators; cost is dominated by hr0 over D_{2p^K}.
WittTower witt_tower(const DiscreteEsigmaRing& m, int p, int K);

/// Single operators; each builds the two truncations involved.
LevelPair restriction_R(const DiscreteEsigmaRing& m, int p, int k);
LevelPair frobenius_F(const DiscreteEsigmaRing& m, int p, int k);
LevelPair verschiebung_V(const DiscreteEsigmaRing& m, int p, int k);

/// Per truncation k = 0..K: coker(R_k - F_k : W_{k+1} -> W_k) at each level. There is no Frobenius
/// below W_1, so k = 0 reports W_1 itself and is marked as an artifact.
struct WittCoinvariants {
  int p = 3, K = 0;
  std::vector<FgAbelianGroup> top, under;
  std::vector<bool> stable;  // stable[k]: agrees with truncation k - 1 at both levels
  bool artifact_at_zero = true;
  std::string to_json() const;
};
WittCoinvariants witt_coinvariants_F(const WittTower& t);
WittCoinvariants witt_coinvariants_F(const DiscreteEsigmaRing& m, int p, int K);

/// Two homomorphisms with the same source and target agree modulo the target relations.
bool same_map(const AbHom& a, const AbHom& b);
AbHom compose(const AbHom& g, const AbHom& f);  // g o f
AbHom subtract(const AbHom& a, const AbHom& b);
AbHom scalar(const FgAbelianGroup& a, const Int& k);

// ---------------------------------------------------------------- classical oracle

/// Classical p-typical Witt vectors of Z, through ghost components only.
namespace classical_witt {

/// w_n = sum_{i <= n} p^i a_i^{p^{n-i}}.
Vec ghost(int p, const Vec& a);
/// Columns: ghost vectors of the Witt vectors e_0, ..., e_{n-1} of length n (a Z-basis of W_n(Z;p)).
Mat ghost_basis(int p, int n);
/// True when w lies in the ghost image of W_n(Z;p): w_i = w_{i-1} mod p^i.
bool in_ghost_image(int p, const Vec& w);

/// Operators in the basis of ghost_basis: F, R : W_{n+1} -> W_n, V : W_n -> W_{n+1}.
Mat frobenius(int p, int n);
Mat restriction(int p, int n);
Mat verschiebung(int p, int n);

/// coker(R - F : W_{K+1} -> W_K); W_1 = Z when K = 0.
FgAbelianGroup coinvariants(int p, int K);

}  // namespace classical_witt

}  // namespace equivar
