#pragma once

#include <bitset>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace equivar {

constexpr int kMaxOrder = 256;
using Mask = std::bitset<kMaxOrder>;

struct Subgroup {
  std::vector<int> elems;  // sorted element indices
  Mask mask;
  int order() const { return static_cast<int>(elems.size()); }
};

class Group;
using GroupPtr = std::shared_ptr<const Group>;

/// Finite group given by its multiplication table, with the full subgroup lattice.
///
/// Subgroups get global ids sorted by (order, sorted element list), so id 0 is the trivial
/// subgroup and the last id is the whole group. Conjugacy classes are represented by their
/// least id.
class Group {
 public:
  /// D_{2m}: element (i, eps) has index eps*m + i; product (i,e)(j,d) = (i + (-1)^e j, e + d).
  static GroupPtr dihedral(int m);
  static GroupPtr cyclic(int n);
  static GroupPtr symmetric(int n);
  static GroupPtr alternating(int n);
  /// Permutation group generated by `gens` (images of 0..degree-1).
  static GroupPtr from_permutations(int degree, const std::vector<std::vector<int>>& gens, std::string name);
  /// Abstract group from a multiplication table (identity must be index 0).
  static GroupPtr from_table(std::vector<int> mul, int n, std::vector<std::string> labels, std::string name);

  int order() const { return n_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int inv(int a) const { return inv_[a]; }
  int identity() const { return 0; }
  int conj_elem(int g, int x) const { return mul(mul(g, x), inv(g)); }
  int elem_order(int g) const;
  const std::string& label(int g) const { return labels_[g]; }
  const std::string& name() const { return name_; }

  bool is_dihedral() const { return dihedral_m_ > 0; }
  int dihedral_m() const { return dihedral_m_; }
  int dihedral_index(int i, int eps) const;  // element (i mod m, eps)
  int zeta() const { return dihedral_index(1, 0); }
  int tau() const { return dihedral_index(0, 1); }
  const std::vector<std::vector<int>>& perm_generators() const { return perm_gens_; }
  int perm_degree() const { return perm_degree_; }
  const std::vector<int>& perm_of(int g) const { return perms_.at(g); }

  /// Checks associativity (exhaustive for |G| <= 64, sampled above), identity and inverses.
  bool verify_axioms() const;

  // ---- subgroup lattice
  int num_subgroups() const { return static_cast<int>(subs_.size()); }
  const Subgroup& sub(int s) const { return subs_[s]; }
  int trivial() const { return 0; }
  int whole() const { return num_subgroups() - 1; }
  int sub_order(int s) const { return subs_[s].order(); }
  bool contains(int s, int g) const { return subs_[s].mask.test(g); }
  bool le(int t, int s) const { return le_[t * num_subgroups() + s]; }
  int conj(int g, int s) const { return conj_[g * num_subgroups() + s]; }
  int meet(int s, int t) const;
  int join(int s, int t) const;
  int generated(const std::vector<int>& gens) const;
  int find(const Mask& m) const;  // -1 if not a subgroup
  int normalizer(int s) const { return normalizer_[s]; }
  bool is_normal(int s, int in) const;

  int class_of(int s) const { return class_of_[s]; }
  int class_rep(int s) const { return classes_[class_of_[s]].front(); }
  int num_classes() const { return static_cast<int>(classes_.size()); }
  const std::vector<int>& class_members(int c) const { return classes_[c]; }
  /// Class representatives (least ids) in order of class index.
  std::vector<int> class_reps() const;

  /// All subgroups of s.
  std::vector<int> subgroups_of(int s) const;
  /// Subgroups of s up to conjugacy by elements of s; least id per class, sorted.
  std::vector<int> local_class_reps(int s) const;
  /// The representative (least id) of the s-conjugacy class of t <= s.
  int local_rep(int s, int t) const;

  /// Representatives of left cosets g*t in s (t <= s), least element per coset.
  std::vector<int> left_coset_reps(int s, int t) const;
  /// Representatives of right cosets t*g in s.
  std::vector<int> right_coset_reps(int s, int t) const;
  /// Representatives of double cosets k \ s / h, least element per double coset, ascending.
  std::vector<int> double_coset_reps(int s, int k, int h) const;

  /// Weyl group N(H)/H with section (coset representatives, index 0 = identity coset).
  GroupPtr weyl_group(int s, std::vector<int>* section = nullptr) const;

  std::string subgroup_name(int s) const;
  /// Parses names such as "e", "G", "D2", "D6", "D2[1]", "mu_3", "mu3", "C4", "H12".
  int parse_subgroup(const std::string& name) const;

  /// JSON-ready descriptor: type, m or generators.
  std::string descriptor() const;

 private:
  Group() = default;
  void build_lattice();

  int n_ = 0;
  std::vector<int> mul_, inv_;
  std::vector<std::string> labels_;
  std::string name_;
  int dihedral_m_ = 0;
  int perm_degree_ = 0;
  std::vector<std::vector<int>> perm_gens_;
  std::vector<std::vector<int>> perms_;

  std::vector<Subgroup> subs_;
  std::unordered_map<Mask, int> index_;
  std::vector<char> le_;
  std::vector<int> conj_;
  std::vector<int> normalizer_;
  std::vector<int> class_of_;
  std::vector<std::vector<int>> classes_;
};

/// Homomorphism given by element images.
struct GroupHom {
  GroupPtr src, dst;
  std::vector<int> img;

  int operator()(int g) const { return img[g]; }
  int map_subgroup(int s) const;
  bool is_homomorphism() const;
  bool is_injective() const;
};

/// D_{2k} -> D_{2m} (k | m) sending zeta_k to zeta_m^{m/k} and tau to zeta_m^offset tau.
GroupHom dihedral_embedding(const GroupPtr& small, const GroupPtr& big, int offset = 0);
/// D_{2m} -> D_{2m/d}, (i, eps) -> (i mod m/d, eps); kernel mu_d.
GroupHom dihedral_quotient(const GroupPtr& big, const GroupPtr& small);

/// Ambient subgroup ids of D_{2m}.
int dihedral_rotation_subgroup(const Group& g, int k);            // mu_k, k | m
int dihedral_reflection_subgroup(const Group& g, int k, int j = 0);  // <zeta^{m/k}, zeta^j tau>

}  // namespace equivar
