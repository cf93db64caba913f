#include "equivar/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace equivar {

namespace {

Int floor_div(const Int& a, const Int& b) {
  Int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) q -= 1;
  return q;
}

// g = s*a + t*b with g = gcd(a, b) >= 0
void ext_gcd(const Int& a, const Int& b, Int& g, Int& s, Int& t) {
  Int r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    Int q = r0 / r1;
    Int tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = s0 - q * s1;
    s0 = s1;
    s1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (r0 < 0) {
    r0 = -r0;
    s0 = -s0;
    t0 = -t0;
  }
  g = r0;
  s = s0;
  t = t0;
}

}  // namespace

std::string to_string(const Int& v) { return v.str(); }

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::from_rows(const std::vector<std::vector<long long>>& rows) {
  int r = static_cast<int>(rows.size());
  int c = r ? static_cast<int>(rows[0].size()) : 0;
  Mat m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rows[i][j];
  return m;
}

Mat Mat::from_columns(int rows, const std::vector<Vec>& cols) {
  Mat m(rows, static_cast<int>(cols.size()));
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  return m;
}

Vec Mat::column(int j) const {
  Vec v(r_);
  for (int i = 0; i < r_; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row(int i) const {
  return Vec(a_.begin() + static_cast<long>(i) * c_, a_.begin() + static_cast<long>(i + 1) * c_);
}

Mat Mat::transpose() const {
  Mat t(c_, r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const Int& x) { return x == 0; });
}

Mat Mat::operator*(const Mat& o) const {
  if (c_ != o.r_) throw std::invalid_argument("matrix product: shape mismatch");
  Mat p(r_, o.c_);
  for (int i = 0; i < r_; ++i)
    for (int k = 0; k < c_; ++k) {
      const Int& x = (*this)(i, k);
      if (x == 0) continue;
      for (int j = 0; j < o.c_; ++j)
        if (o(k, j) != 0) p(i, j) += x * o(k, j);
    }
  return p;
}

Mat Mat::operator+(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix sum: shape mismatch");
  Mat s = *this;
  for (size_t i = 0; i < a_.size(); ++i) s.a_[i] += o.a_[i];
  return s;
}

Mat Mat::operator-(const Mat& o) const {
  if (r_ != o.r_ || c_ != o.c_) throw std::invalid_argument("matrix difference: shape mismatch");
  Mat s = *this;
  for (size_t i = 0; i < a_.size(); ++i) s.a_[i] -= o.a_[i];
  return s;
}

Vec Mat::operator*(const Vec& v) const {
  if (static_cast<int>(v.size()) != c_) throw std::invalid_argument("matrix-vector: shape mismatch");
  Vec out(r_);
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j)
      if (v[j] != 0 && (*this)(i, j) != 0) out[i] += (*this)(i, j) * v[j];
  return out;
}

Mat Mat::hcat(const Mat& o) const {
  if (r_ != o.r_) throw std::invalid_argument("hcat: row mismatch");
  Mat m(r_, c_ + o.c_);
  for (int i = 0; i < r_; ++i) {
    for (int j = 0; j < c_; ++j) m(i, j) = (*this)(i, j);
    for (int j = 0; j < o.c_; ++j) m(i, c_ + j) = o(i, j);
  }
  return m;
}

Mat Mat::block(int r0, int c0, int nr, int nc) const {
  Mat m(nr, nc);
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

std::vector<std::vector<std::string>> Mat::to_strings() const {
  std::vector<std::vector<std::string>> out(r_, std::vector<std::string>(c_));
  for (int i = 0; i < r_; ++i)
    for (int j = 0; j < c_; ++j) out[i][j] = (*this)(i, j).str();
  return out;
}

Int det(const Mat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: non-square");
  // Bareiss fraction-free elimination
  int n = m.rows();
  if (n == 0) return 1;
  Mat a = m;
  Int sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a(k, k) == 0) {
      int sw = -1;
      for (int i = k + 1; i < n; ++i)
        if (a(i, k) != 0) {
          sw = i;
          break;
        }
      if (sw < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(sw, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

// ---------------------------------------------------------------- sparse

SparseMat SparseMat::identity(int n) {
  SparseMat s(n, n);
  for (int i = 0; i < n; ++i) s.cols[i] = {{i, Int(1)}};
  return s;
}

SparseMat SparseMat::from_dense(const Mat& m) {
  SparseMat s(m.rows(), m.cols());
  for (int j = 0; j < m.cols(); ++j)
    for (int i = 0; i < m.rows(); ++i)
      if (m(i, j) != 0) s.cols[j].emplace_back(i, m(i, j));
  return s;
}

Mat SparseMat::dense() const {
  Mat m(rows, ncols());
  for (int j = 0; j < ncols(); ++j)
    for (const auto& [i, v] : cols[j]) m(i, j) = v;
  return m;
}

SparseVec sparse_add(const SparseVec& a, const SparseVec& b, const Int& kb) {
  SparseVec out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, kb * b[j].second);
      ++j;
    } else {
      Int s = a[i].second + kb * b[j].second;
      if (s != 0) out.emplace_back(a[i].first, s);
      ++i;
      ++j;
    }
  }
  return out;
}

Vec to_dense(const SparseVec& v, int n) {
  Vec d(n);
  for (const auto& [i, x] : v) d[i] = x;
  return d;
}

SparseVec to_sparse(const Vec& v) {
  SparseVec s;
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i] != 0) s.emplace_back(i, v[i]);
  return s;
}

SparseVec SparseMat::apply(const SparseVec& v) const {
  SparseVec acc;
  for (const auto& [j, x] : v) acc = sparse_add(acc, cols[j], x);
  return acc;
}

Vec SparseMat::apply(const Vec& v) const {
  Vec out(rows);
  for (int j = 0; j < ncols(); ++j) {
    if (v[j] == 0) continue;
    for (const auto& [i, x] : cols[j]) out[i] += x * v[j];
  }
  return out;
}

SparseMat SparseMat::operator*(const SparseMat& o) const {
  if (ncols() != o.rows) throw std::invalid_argument("sparse product: shape mismatch");
  SparseMat p(rows, o.ncols());
  for (int j = 0; j < o.ncols(); ++j) p.cols[j] = apply(o.cols[j]);
  return p;
}

SparseMat SparseMat::operator+(const SparseMat& o) const {
  if (rows != o.rows || ncols() != o.ncols()) throw std::invalid_argument("sparse sum: shape mismatch");
  SparseMat s(rows, ncols());
  for (int j = 0; j < ncols(); ++j) s.cols[j] = sparse_add(cols[j], o.cols[j]);
  return s;
}

SparseMat SparseMat::operator-(const SparseMat& o) const {
  if (rows != o.rows || ncols() != o.ncols()) throw std::invalid_argument("sparse difference: shape mismatch");
  SparseMat s(rows, ncols());
  for (int j = 0; j < ncols(); ++j) s.cols[j] = sparse_add(cols[j], o.cols[j], Int(-1));
  return s;
}

SparseMat SparseMat::scaled(const Int& k) const {
  SparseMat s(rows, ncols());
  if (k == 0) return s;
  for (int j = 0; j < ncols(); ++j) {
    s.cols[j] = cols[j];
    for (auto& e : s.cols[j]) e.second *= k;
  }
  return s;
}

// ---------------------------------------------------------------- lattice

namespace {
int lead(const Vec& v) {
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i] != 0) return i;
  return -1;
}
}  // namespace

bool Lattice::add(Vec v) {
  if (static_cast<int>(v.size()) != dim_) throw std::invalid_argument("lattice: dimension mismatch");
  bool changed = false;
  for (;;) {
    int p = lead(v);
    if (p < 0) return changed;
    auto it = std::lower_bound(piv_.begin(), piv_.end(), p);
    size_t k = static_cast<size_t>(it - piv_.begin());
    if (it == piv_.end() || *it != p) {
      if (v[p] < 0)
        for (auto& x : v) x = -x;
      piv_.insert(it, p);
      basis_.insert(basis_.begin() + static_cast<long>(k), std::move(v));
      // reduce later rows' entries is unnecessary; reduce this row against later pivots
      Vec& nb = basis_[k];
      for (size_t q = k + 1; q < basis_.size(); ++q) {
        int pq = piv_[q];
        if (nb[pq] == 0) continue;
        Int f = floor_div(nb[pq], basis_[q][pq]);
        if (f != 0)
          for (int i = pq; i < dim_; ++i) nb[i] -= f * basis_[q][i];
      }
      return true;
    }
    Vec& b = basis_[k];
    if (v[p] % b[p] == 0) {
      Int f = v[p] / b[p];
      for (int i = p; i < dim_; ++i) v[i] -= f * b[i];
      continue;
    }
    Int g, s, t;
    ext_gcd(b[p], v[p], g, s, t);
    Int bq = b[p] / g, vq = v[p] / g;
    Vec nb(dim_), nv(dim_);
    for (int i = p; i < dim_; ++i) {
      nb[i] = s * b[i] + t * v[i];
      nv[i] = bq * v[i] - vq * b[i];
    }
    b = std::move(nb);
    v = std::move(nv);
    changed = true;
  }
}

void Lattice::add_all(const Lattice& o) {
  for (const auto& b : o.basis_) add(b);
}

Vec Lattice::reduce(Vec v) const {
  for (size_t k = 0; k < basis_.size(); ++k) {
    int p = piv_[k];
    if (v[p] == 0) continue;
    Int f = floor_div(v[p], basis_[k][p]);
    if (f != 0)
      for (int i = p; i < dim_; ++i) v[i] -= f * basis_[k][i];
  }
  return v;
}

bool Lattice::contains(const Vec& v) const {
  Vec r = reduce(v);
  return lead(r) < 0;
}

bool Lattice::contains(const Lattice& o) const {
  for (const auto& b : o.basis_)
    if (!contains(b)) return false;
  return true;
}

Mat Lattice::matrix() const { return Mat::from_columns(dim_, basis_); }

// ---------------------------------------------------------------- smith

SmithForm smith(const Mat& m) {
  int r = m.rows(), c = m.cols();
  SmithForm sf;
  Mat A = m;
  Mat U = Mat::identity(r), V = Mat::identity(c);
  auto swap_rows = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < c; ++k) std::swap(A(i, k), A(j, k));
    for (int k = 0; k < r; ++k) std::swap(U(i, k), U(j, k));
  };
  auto swap_cols = [&](int i, int j) {
    if (i == j) return;
    for (int k = 0; k < r; ++k) std::swap(A(k, i), A(k, j));
    for (int k = 0; k < c; ++k) std::swap(V(k, i), V(k, j));
  };
  // row_i += f * row_j
  auto add_row = [&](int i, int j, const Int& f) {
    for (int k = 0; k < c; ++k)
      if (A(j, k) != 0) A(i, k) += f * A(j, k);
    for (int k = 0; k < r; ++k)
      if (U(j, k) != 0) U(i, k) += f * U(j, k);
  };
  auto add_col = [&](int i, int j, const Int& f) {
    for (int k = 0; k < r; ++k)
      if (A(k, j) != 0) A(k, i) += f * A(k, j);
    for (int k = 0; k < c; ++k)
      if (V(k, j) != 0) V(k, i) += f * V(k, j);
  };
  int t = 0;
  while (t < r && t < c) {
    // pivot of minimal absolute value in the remaining block
    int pi = -1, pj = -1;
    Int best = 0;
    for (int i = t; i < r; ++i)
      for (int j = t; j < c; ++j)
        if (A(i, j) != 0) {
          Int av = abs(A(i, j));
          if (pi < 0 || av < best) {
            best = av;
            pi = i;
            pj = j;
          }
        }
    if (pi < 0) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    for (;;) {
      bool dirty = false;
      for (int i = t + 1; i < r; ++i) {
        if (A(i, t) == 0) continue;
        Int q = floor_div(A(i, t), A(t, t));
        add_row(i, t, -q);
        if (A(i, t) != 0) {
          swap_rows(t, i);
          dirty = true;
        }
      }
      for (int j = t + 1; j < c; ++j) {
        if (A(t, j) == 0) continue;
        Int q = floor_div(A(t, j), A(t, t));
        add_col(j, t, -q);
        if (A(t, j) != 0) {
          swap_cols(t, j);
          dirty = true;
        }
      }
      if (dirty) continue;
      // divisibility of the remaining block
      int bad_i = -1;
      for (int i = t + 1; i < r && bad_i < 0; ++i)
        for (int j = t + 1; j < c; ++j)
          if (A(i, j) % A(t, t) != 0) {
            bad_i = i;
            break;
          }
      if (bad_i < 0) break;
      add_row(t, bad_i, Int(1));
    }
    if (A(t, t) < 0) {
      for (int k = 0; k < c; ++k) A(t, k) = -A(t, k);
      for (int k = 0; k < r; ++k) U(t, k) = -U(t, k);
    }
    sf.diag.push_back(A(t, t));
    ++t;
  }
  sf.U = std::move(U);
  sf.D = std::move(A);
  sf.V = std::move(V);
  return sf;
}

Mat integer_kernel(const Mat& m) {
  SmithForm sf = smith(m);
  int rk = static_cast<int>(sf.diag.size());
  return sf.V.block(0, rk, m.cols(), m.cols() - rk);
}

bool solve_integer(const Mat& m, const Vec& b, Vec& x) {
  SmithForm sf = smith(m);
  Vec ub = sf.U * b;
  int rk = static_cast<int>(sf.diag.size());
  Vec y(m.cols());
  for (int i = 0; i < m.rows(); ++i) {
    if (i < rk) {
      if (ub[i] % sf.diag[i] != 0) return false;
      y[i] = ub[i] / sf.diag[i];
    } else if (ub[i] != 0) {
      return false;
    }
  }
  x = sf.V * y;
  return true;
}

}  // namespace equivar
