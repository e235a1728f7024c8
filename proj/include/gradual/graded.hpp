#pragma once

// Grading bookkeeping: ℤ or ℤ/2 degrees, Koszul signs of permutations,
// the total-dimension invariant of a graded vector space, and supertraces.

#include <cstdlib>
#include <string>
#include <vector>

#include "gradual/errors.hpp"
#include "gradual/sparse.hpp"

namespace gradual {

enum class GradingMode { Z, Z2 };

// parity of a (possibly negative) degree
inline int parity(int degree) { return ((degree % 2) + 2) % 2; }

// Koszul sign of reordering a word of homogeneous elements.
// `par[i]` is the parity of the i-th element in the original order;
// `perm[p]` is the original index placed at output position p.  The sign is
// (-1) to the number of inverted pairs whose members are both odd.
inline int koszul_sign(const std::vector<std::size_t>& perm, const std::vector<int>& par) {
  if (perm.size() != par.size())
    fail(ErrorKind::ShapeMismatch, "koszul_sign: permutation/parity length mismatch");
  int exp = 0;
  for (std::size_t p = 0; p < perm.size(); ++p)
    for (std::size_t q = p + 1; q < perm.size(); ++q)
      if (perm[p] > perm[q]) exp += par[perm[p]] * par[perm[q]];
  return (exp % 2 == 0) ? 1 : -1;
}

// Total dimension of a graded space with the given homogeneous basis degrees:
// (number of even basis vectors) - (sum of even degrees) + (sum of odd degrees).
// In ℤ/2 mode the meaningful invariant is only the parity dim_even + dim_odd mod 2,
// which is what this returns there.
inline long long total_dimension(const std::vector<int>& degrees, GradingMode mode) {
  if (mode == GradingMode::Z2) return static_cast<long long>(degrees.size() % 2);
  long long t = 0;
  for (int d : degrees) {
    if (parity(d) == 0)
      t += 1 - d;
    else
      t += d;
  }
  return t;
}

// Supertrace of a square matrix whose rows/columns are indexed by a basis of
// the given parities: sum of even diagonal entries minus sum of odd ones.
inline Rat supertrace(const SparseMatrix& m, const std::vector<int>& par) {
  if (m.rows() != m.cols() || m.rows() != par.size())
    fail(ErrorKind::ShapeMismatch, "supertrace: matrix/parity shape mismatch");
  Rat t = 0;
  for (std::size_t i = 0; i < par.size(); ++i) {
    Rat d = m.get(i, i);
    t += (par[i] == 0) ? d : -d;
  }
  return t;
}

}  // namespace gradual
