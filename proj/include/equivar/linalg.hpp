#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <utility>
#include <vector>

namespace equivar {

using Int = boost::multiprecision::cpp_int;

using Vec = std::vector<Int>;

/// Sparse column: sorted (row, nonzero value) pairs.
using SparseVec = std::vector<std::pair<int, Int>>;

/// Dense integer matrix, row-major.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : r_(rows), c_(cols), a_(static_cast<size_t>(rows) * cols) {}

  static Mat identity(int n);
  static Mat from_rows(const std::vector<std::vector<long long>>& rows);
  static Mat from_columns(int rows, const std::vector<Vec>& cols);

  int rows() const { return r_; }
  int cols() const { return c_; }
  Int& operator()(int i, int j) { return a_[static_cast<size_t>(i) * c_ + j]; }
  const Int& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * c_ + j]; }

  Vec column(int j) const;
  Vec row(int i) const;
  Mat transpose() const;
  bool is_zero() const;
  bool operator==(const Mat& o) const { return r_ == o.r_ && c_ == o.c_ && a_ == o.a_; }

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Vec operator*(const Vec& v) const;

  /// Horizontal concatenation [this | o].
  Mat hcat(const Mat& o) const;
  Mat block(int r0, int c0, int nr, int nc) const;

  std::vector<std::vector<std::string>> to_strings() const;

 private:
  int r_ = 0, c_ = 0;
  std::vector<Int> a_;
};

Int det(const Mat& m);

/// Sparse matrix stored by columns; column j is the image of basis vector j.
struct SparseMat {
  int rows = 0;
  std::vector<SparseVec> cols;

  SparseMat() = default;
  SparseMat(int r, int c) : rows(r), cols(static_cast<size_t>(c)) {}
  static SparseMat identity(int n);
  static SparseMat from_dense(const Mat& m);

  int ncols() const { return static_cast<int>(cols.size()); }
  Mat dense() const;
  SparseVec apply(const SparseVec& v) const;
  Vec apply(const Vec& v) const;
  SparseMat operator*(const SparseMat& o) const;
  SparseMat operator+(const SparseMat& o) const;
  SparseMat operator-(const SparseMat& o) const;
  SparseMat scaled(const Int& k) const;
  bool operator==(const SparseMat& o) const { return rows == o.rows && cols == o.cols; }
};

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Int& kb = 1);
Vec to_dense(const SparseVec& v, int n);
SparseVec to_sparse(const Vec& v);

/// Subgroup of Z^n kept in row echelon form (Hermite-style, positive pivots).
class Lattice {
 public:
  Lattice() = default;
  explicit Lattice(int dim) : dim_(dim) {}

  int dim() const { return dim_; }
  int rank() const { return static_cast<int>(basis_.size()); }
  const std::vector<Vec>& basis() const { return basis_; }

  /// Returns true when the span grew.
  bool add(Vec v);
  bool add(const SparseVec& v) { return add(to_dense(v, dim_)); }
  void add_all(const Lattice& o);

  bool contains(const Vec& v) const;
  bool contains(const SparseVec& v) const { return contains(to_dense(v, dim_)); }
  bool contains(const Lattice& o) const;

  /// Canonical representative of v modulo the lattice.
  Vec reduce(Vec v) const;

  Mat matrix() const;  // dim x rank, basis vectors as columns

 private:
  int dim_ = 0;
  std::vector<Vec> basis_;  // sorted by pivot position
  std::vector<int> piv_;
};

struct SmithForm {
  Mat U, D, V;  // U * M * V = D
  std::vector<Int> diag;  // nonzero diagonal entries, divisibility chain
};

/// Smith normal form with unimodular transforms; pivots chosen by minimal absolute value.
SmithForm smith(const Mat& m);

/// Basis (columns) of the integer kernel {x : M x = 0}.
Mat integer_kernel(const Mat& m);

/// Solve M x = b over Z; returns false when no integral solution exists.
bool solve_integer(const Mat& m, const Vec& b, Vec& x);

std::string to_string(const Int& v);

}  // namespace equivar
