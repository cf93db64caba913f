#include "equivar/abgrp.hpp"

#include <sstream>
#include <stdexcept>

namespace equivar {

std::vector<Int> invariant_factors(int ngens, const Mat& rels) {
  std::vector<Int> out;
  int nz = 0;
  if (rels.cols() > 0 && ngens > 0) {
    SmithForm sf = smith(rels);
    for (const auto& d : sf.diag) {
      if (d != 1) out.push_back(d);
    }
    nz = static_cast<int>(sf.diag.size());
  }
  for (int i = nz; i < ngens; ++i) out.push_back(0);
  return out;
}

FgAbelianGroup::FgAbelianGroup(int ngens, Mat rels) : ngens_(ngens), rels_(std::move(rels)) {
  if (rels_.cols() > 0 && rels_.rows() != ngens_) throw std::invalid_argument("FgAbelianGroup: relation shape");
  if (rels_.cols() == 0) rels_ = Mat(ngens_, 0);
  inv_ = equivar::invariant_factors(ngens_, rels_);
}

FgAbelianGroup FgAbelianGroup::free(int rank) { return FgAbelianGroup(rank, Mat(rank, 0)); }

FgAbelianGroup FgAbelianGroup::cyclic(const Int& n) {
  Mat r(1, 1);
  r(0, 0) = n;
  return FgAbelianGroup(1, n == 0 ? Mat(1, 0) : r);
}

int FgAbelianGroup::rank() const {
  int r = 0;
  for (const auto& d : inv_)
    if (d == 0) ++r;
  return r;
}

std::vector<Int> FgAbelianGroup::torsion() const {
  std::vector<Int> t;
  for (const auto& d : inv_)
    if (d != 0) t.push_back(d);
  return t;
}

std::string FgAbelianGroup::describe() const {
  std::ostringstream os;
  bool first = true;
  if (rank() > 0) {
    os << "Z";
    if (rank() > 1) os << "^" << rank();
    first = false;
  }
  for (const auto& d : torsion()) {
    if (!first) os << " + ";
    os << "Z/" << d;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

AbHom make_hom(const FgAbelianGroup& s, const FgAbelianGroup& t, const Mat& m) {
  if (m.rows() != t.ngens() || m.cols() != s.ngens()) throw std::invalid_argument("make_hom: shape");
  AbHom h{s, t, m, Mat(t.rels().cols(), s.rels().cols())};
  Mat img = m * s.rels();
  for (int j = 0; j < img.cols(); ++j) {
    Vec x;
    if (t.rels().cols() == 0) {
      if (!img.column(j).empty())
        for (const auto& v : img.column(j))
          if (v != 0) throw std::invalid_argument("make_hom: relations not respected");
      continue;
    }
    if (!solve_integer(t.rels(), img.column(j), x)) throw std::invalid_argument("make_hom: relations not respected");
    for (int i = 0; i < static_cast<int>(x.size()); ++i) h.witness(i, j) = x[i];
  }
  return h;
}

IsoInvariants iso_invariants(const FgAbelianGroup& a) { return {a.rank(), a.torsion()}; }

FgAbelianGroup cokernel(const AbHom& f) {
  return FgAbelianGroup(f.target.ngens(), f.target.rels().hcat(f.matrix));
}

FgAbelianGroup kernel(const AbHom& f, Mat* gens) {
  // x in Z^s with f(x) in span(target rels); project kernel of [f | -R] to the first block
  int ns = f.source.ngens();
  Mat R = f.target.rels();
  Mat negR(R.rows(), R.cols());
  for (int i = 0; i < R.rows(); ++i)
    for (int j = 0; j < R.cols(); ++j) negR(i, j) = -R(i, j);
  Mat big = f.matrix.hcat(negR);
  Mat K = big.rows() == 0 ? Mat::identity(big.cols()) : integer_kernel(big);
  Lattice L(ns);
  for (int j = 0; j < K.cols(); ++j) {
    Vec v(ns);
    for (int i = 0; i < ns; ++i) v[i] = K(i, j);
    L.add(v);
  }
  Mat basis = L.matrix();
  if (gens) *gens = basis;
  return subquotient(basis, f.source.rels());
}

FgAbelianGroup subquotient(const Mat& sub_gens, const Mat& rel_gens, Mat* basis) {
  Lattice L(sub_gens.rows());
  for (int j = 0; j < sub_gens.cols(); ++j) L.add(sub_gens.column(j));
  Mat B = L.matrix();
  if (basis) *basis = B;
  int k = B.cols();
  Mat coords(k, rel_gens.cols());
  for (int j = 0; j < rel_gens.cols(); ++j) {
    Vec x;
    if (k == 0) {
      for (const auto& v : rel_gens.column(j))
        if (v != 0) throw std::invalid_argument("subquotient: relations outside sublattice");
      continue;
    }
    if (!solve_integer(B, rel_gens.column(j), x)) throw std::invalid_argument("subquotient: relations outside sublattice");
    for (int i = 0; i < k; ++i) coords(i, j) = x[i];
  }
  return FgAbelianGroup(k, coords);
}

FgAbelianGroup direct_sum(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  int n = a.ngens() + b.ngens();
  Mat r(n, a.rels().cols() + b.rels().cols());
  for (int i = 0; i < a.ngens(); ++i)
    for (int j = 0; j < a.rels().cols(); ++j) r(i, j) = a.rels()(i, j);
  for (int i = 0; i < b.ngens(); ++i)
    for (int j = 0; j < b.rels().cols(); ++j) r(a.ngens() + i, a.rels().cols() + j) = b.rels()(i, j);
  return FgAbelianGroup(n, r);
}

FgAbelianGroup tensor(const FgAbelianGroup& a, const FgAbelianGroup& b) {
  // presentation: Ra (x) I  and  I (x) Rb  (Kronecker products)
  int na = a.ngens(), nb = b.ngens();
  int ra = a.rels().cols(), rb = b.rels().cols();
  Mat r(na * nb, ra * nb + na * rb);
  for (int x = 0; x < ra; ++x)
    for (int j = 0; j < nb; ++j)
      for (int i = 0; i < na; ++i) r(i * nb + j, x * nb + j) = a.rels()(i, x);
  for (int i = 0; i < na; ++i)
    for (int y = 0; y < rb; ++y)
      for (int j = 0; j < nb; ++j) r(i * nb + j, ra * nb + i * rb + y) = b.rels()(j, y);
  return FgAbelianGroup(na * nb, r);
}

FgAbelianGroup homology(const AbHom& d_in, const AbHom& d_out) {
  Mat comp = d_out.matrix * d_in.matrix;
  for (int j = 0; j < comp.cols(); ++j) {
    Vec x;
    Vec col = comp.column(j);
    bool zero = true;
    for (const auto& v : col)
      if (v != 0) zero = false;
    if (zero) continue;
    if (d_out.target.rels().cols() == 0 || !solve_integer(d_out.target.rels(), col, x))
      throw std::invalid_argument("homology: composite of differentials is nonzero");
  }
  Mat kgens;
  kernel(d_out, &kgens);
  Mat rel = d_in.target.rels().hcat(d_in.matrix);
  return subquotient(kgens, rel);
}

}  // namespace equivar
