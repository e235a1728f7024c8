#pragma once

// Sparse matrices over the rationals with exact rank / kernel / homology
// computations.  Rank uses fraction-free (Bareiss) elimination over the
// integers after clearing denominators row by row, so no intermediate
// rounding or fraction blow-up beyond the determinant bound can occur.

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "gradual/errors.hpp"
#include "gradual/rational.hpp"

namespace gradual {

class SparseMatrix {
public:
  SparseMatrix() : nr_(0), nc_(0) {}
  SparseMatrix(std::size_t rows, std::size_t cols) : nr_(rows), nc_(cols) {}

  std::size_t rows() const { return nr_; }
  std::size_t cols() const { return nc_; }

  void set(std::size_t r, std::size_t c, const Rat& v) {
    check_index(r, c);
    if (v == 0)
      ent_.erase({r, c});
    else
      ent_[{r, c}] = v;
  }

  void add(std::size_t r, std::size_t c, const Rat& v) {
    check_index(r, c);
    auto it = ent_.find({r, c});
    if (it == ent_.end()) {
      if (v != 0) ent_[{r, c}] = v;
      return;
    }
    it->second += v;
    if (it->second == 0) ent_.erase(it);
  }

  Rat get(std::size_t r, std::size_t c) const {
    check_index(r, c);
    auto it = ent_.find({r, c});
    return it == ent_.end() ? Rat(0) : it->second;
  }

  const std::map<std::pair<std::size_t, std::size_t>, Rat>& entries() const { return ent_; }

  bool is_zero() const { return ent_.empty(); }

  SparseMatrix transpose() const {
    SparseMatrix t(nc_, nr_);
    for (const auto& [rc, v] : ent_) t.ent_[{rc.second, rc.first}] = v;
    return t;
  }

  static SparseMatrix identity(std::size_t n) {
    SparseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.ent_[{i, i}] = 1;
    return m;
  }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.nc_ != b.nr_)
      fail(ErrorKind::ShapeMismatch, "matrix product: inner dimensions disagree");
    SparseMatrix c(a.nr_, b.nc_);
    // group b's entries by row for the sparse-sparse product
    std::vector<std::vector<std::pair<std::size_t, Rat>>> brow(b.nr_);
    for (const auto& [rc, v] : b.ent_) brow[rc.first].push_back({rc.second, v});
    for (const auto& [rc, av] : a.ent_)
      for (const auto& [bc, bv] : brow[rc.second]) c.add(rc.first, bc, av * bv);
    return c;
  }

  friend SparseMatrix operator+(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.nr_ != b.nr_ || a.nc_ != b.nc_)
      fail(ErrorKind::ShapeMismatch, "matrix sum: shapes disagree");
    SparseMatrix c = a;
    for (const auto& [rc, v] : b.ent_) c.add(rc.first, rc.second, v);
    return c;
  }

  friend SparseMatrix operator*(const Rat& s, const SparseMatrix& a) {
    SparseMatrix c(a.nr_, a.nc_);
    if (s == 0) return c;
    for (const auto& [rc, v] : a.ent_) c.ent_[rc] = s * v;
    return c;
  }

  friend SparseMatrix operator-(const SparseMatrix& a, const SparseMatrix& b) {
    return a + Rat(-1) * b;
  }

  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
    return a.nr_ == b.nr_ && a.nc_ == b.nc_ && a.ent_ == b.ent_;
  }

private:
  void check_index(std::size_t r, std::size_t c) const {
    if (r >= nr_ || c >= nc_)
      fail(ErrorKind::ShapeMismatch, "matrix index out of range");
  }

  std::size_t nr_, nc_;
  std::map<std::pair<std::size_t, std::size_t>, Rat> ent_;
};

inline std::size_t rank(const SparseMatrix& m) {
  const std::size_t nr = m.rows(), nc = m.cols();
  if (nr == 0 || nc == 0 || m.is_zero()) return 0;
  // integer matrix: each row scaled by the lcm of its denominators
  std::vector<std::vector<Int>> a(nr, std::vector<Int>(nc, 0));
  std::vector<Int> scale(nr, 1);
  for (const auto& [rc, v] : m.entries())
    scale[rc.first] = lcm(scale[rc.first], denominator(v));
  for (const auto& [rc, v] : m.entries())
    a[rc.first][rc.second] = numerator(v) * (scale[rc.first] / denominator(v));

  std::size_t r = 0;
  Int prev = 1;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t piv = r;
    while (piv < nr && a[piv][c] == 0) ++piv;
    if (piv == nr) continue;
    if (piv != r) std::swap(a[piv], a[r]);
    for (std::size_t i = r + 1; i < nr; ++i) {
      for (std::size_t j = c + 1; j < nc; ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;  // exact by Bareiss
      a[i][c] = 0;
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

inline std::size_t kernel_dim(const SparseMatrix& m) { return m.cols() - rank(m); }

// Dimension of ker(d_out)/im(d_in) for a two-step complex
//   prev --d_in--> middle --d_out--> next.
// Throws if the composite is not identically zero.
inline std::size_t homology_dim(const SparseMatrix& d_out, const SparseMatrix& d_in) {
  if (d_out.cols() != d_in.rows())
    fail(ErrorKind::ShapeMismatch, "homology: middle dimensions disagree");
  if (!(d_out * d_in).is_zero())
    fail(ErrorKind::CompositionNonzero, "homology: composite differential is nonzero");
  return kernel_dim(d_out) - rank(d_in);
}

}  // namespace gradual
