#pragma once

// Finite-dimensional graded / super Lie algebras given by structure
// constants [e_i, e_j] = Σ_k N_ij^k e_k, their validation (graded
// antisymmetry, degree homogeneity, graded Jacobi), adjoint matrices,
// supertrace characters, and the module constructions used by the duality
// checks: duals, and the character-twisted shifted dual.
//
// Basis order is normalized on construction: even basis vectors first, then
// odd ones, each block keeping its input order.

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "gradual/errors.hpp"
#include "gradual/graded.hpp"
#include "gradual/rational.hpp"
#include "gradual/sparse.hpp"

namespace gradual {

struct ValidationReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

class LieAlgebra {
public:
  using Bracket = std::map<int, Rat>;  // k -> N_ij^k

  GradingMode mode = GradingMode::Z;
  std::vector<std::string> names;
  std::vector<int> deg;

  std::size_t dim() const { return names.size(); }
  int par(std::size_t i) const { return parity(deg[i]); }

  std::size_t n_even() const {
    std::size_t n = 0;
    for (std::size_t i = 0; i < dim(); ++i) n += (par(i) == 0);
    return n;
  }
  std::size_t n_odd() const { return dim() - n_even(); }

  const Bracket& bracket(std::size_t i, std::size_t j) const {
    static const Bracket empty;
    auto it = br_.find({i, j});
    return it == br_.end() ? empty : it->second;
  }

  std::size_t index(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return i;
    fail(ErrorKind::InvalidInput, "unknown basis element '" + n + "'");
  }

  // [u, x] for x = Σ c_k e_k, as a coefficient vector over the basis.
  std::map<int, Rat> ad_apply(std::size_t u, const std::map<int, Rat>& x) const {
    std::map<int, Rat> r;
    for (const auto& [k, c] : x)
      for (const auto& [l, n] : bracket(u, k)) {
        r[l] += c * n;
        if (r[l] == 0) r.erase(l);
      }
    return r;
  }

  // Degrees summed into the total-dimension invariant |g|; in ℤ/2 mode this
  // is the parity (dim even + dim odd) mod 2.
  long long total_dim() const { return total_dimension(deg, mode); }

  // Builds the algebra from brackets given on arbitrary pairs in the input
  // basis order.  Missing transposes are filled in by graded antisymmetry
  //   N_ji^k = -(-1)^{|e_i||e_j|} N_ij^k;
  // pairs given on both sides must agree with that rule, and [e,e] for even
  // e must be absent or zero.  Violations raise InvalidInput.
  static LieAlgebra build(GradingMode mode, const std::vector<std::string>& in_names,
                          const std::vector<int>& in_deg,
                          const std::map<std::pair<int, int>, Bracket>& in_br) {
    if (in_names.size() != in_deg.size())
      fail(ErrorKind::InvalidInput, "generator name/degree count mismatch");
    for (std::size_t i = 0; i < in_names.size(); ++i)
      for (std::size_t j = i + 1; j < in_names.size(); ++j)
        if (in_names[i] == in_names[j])
          fail(ErrorKind::InvalidInput, "duplicate generator '" + in_names[i] + "'");
    if (mode == GradingMode::Z2)
      for (int d : in_deg)
        if (d != 0 && d != 1)
          fail(ErrorKind::InvalidInput, "Z2 mode requires degrees 0 or 1");

    LieAlgebra a;
    a.mode = mode;
    // stable partition: evens first
    std::vector<int> remap(in_names.size());
    for (int pass : {0, 1})
      for (std::size_t i = 0; i < in_names.size(); ++i)
        if (parity(in_deg[i]) == pass) {
          remap[i] = static_cast<int>(a.names.size());
          a.names.push_back(in_names[i]);
          a.deg.push_back(in_deg[i]);
        }

    for (const auto& [ij, b] : in_br) {
      auto [i0, j0] = ij;
      if (i0 < 0 || j0 < 0 || i0 >= static_cast<int>(in_names.size()) ||
          j0 >= static_cast<int>(in_names.size()))
        fail(ErrorKind::InvalidInput, "bracket index out of range");
      int i = remap[i0], j = remap[j0];
      Bracket nb;
      for (const auto& [k, c] : b)
        if (c != 0) nb[remap[k]] = c;
      a.insert_bracket(i, j, nb);
    }
    return a;
  }

  // Structure validation as a report (loaders reject only hard
  // contradictions; everything else is surfaced here).
  ValidationReport validate() const {
    ValidationReport rep;
    auto note = [&](const std::string& s) { rep.problems.push_back(s); };
    const std::size_t n = dim();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        int sgn = (par(i) * par(j)) % 2 == 0 ? -1 : 1;  // N_ji = sgn * N_ij
        Bracket expect;
        for (const auto& [k, c] : bracket(i, j)) {
          Rat v = Rat(sgn) * c;
          if (v != 0) expect[k] = v;
        }
        if (expect != bracket(j, i))
          note("antisymmetry fails on [" + names[i] + "," + names[j] + "]");
        for (const auto& [k, c] : bracket(i, j)) {
          bool hom = mode == GradingMode::Z ? deg[k] == deg[i] + deg[j]
                                            : par(k) == (par(i) + par(j)) % 2;
          if (!hom)
            note("bracket [" + names[i] + "," + names[j] + "] has inhomogeneous term " +
                 names[k]);
        }
      }
    // graded Jacobi in derivation form:
    // [e_i,[e_j,e_k]] = [[e_i,e_j],e_k] + (-1)^{|e_i||e_j|} [e_j,[e_i,e_k]]
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = j; k < n; ++k) {
          std::map<int, Rat> lhs = ad_apply(i, bracket(j, k));
          std::map<int, Rat> rhs = ad_apply(j, bracket(i, k));
          int sgn = (par(i) * par(j)) % 2 == 0 ? 1 : -1;
          for (auto& [l, c] : rhs) c *= sgn;
          for (const auto& [l, c] : bracket(i, j)) {
            for (const auto& [m, d] : bracket(l, k)) {
              rhs[m] += c * d;
              if (rhs[m] == 0) rhs.erase(m);
            }
          }
          if (lhs != rhs)
            note("Jacobi fails on (" + names[i] + "," + names[j] + "," + names[k] + ")");
        }
    return rep;
  }

private:
  void insert_bracket(int i, int j, const Bracket& b) {
    if (i == j && par(i) == 0) {
      if (!b.empty()) fail(ErrorKind::InvalidInput, "[e,e] must vanish for even e");
      return;
    }
    store(i, j, b);
    if (i == j) return;
    int sgn = (par(i) * par(j)) % 2 == 0 ? -1 : 1;
    Bracket flip;
    for (const auto& [k, c] : b) {
      Rat v = Rat(sgn) * c;
      if (v != 0) flip[k] = v;
    }
    store(j, i, flip);
  }

  void store(int i, int j, const Bracket& b) {
    auto it = br_.find({i, j});
    if (it != br_.end()) {
      if (it->second != b)
        fail(ErrorKind::InvalidInput, "contradictory brackets for [" + names[i] + "," +
                                          names[j] + "]");
      return;
    }
    if (!b.empty()) br_[{i, j}] = b;
  }

  std::map<std::pair<int, int>, Bracket> br_;
};

// Matrix of ad(e_i) over the basis: column j holds the coefficients of
// [e_i, e_j].
inline SparseMatrix adjoint_matrix(const LieAlgebra& a, std::size_t i) {
  SparseMatrix m(a.dim(), a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j)
    for (const auto& [k, c] : a.bracket(i, j)) m.set(k, j, c);
  return m;
}

inline std::vector<int> basis_parities(const LieAlgebra& a) {
  std::vector<int> p(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) p[i] = a.par(i);
  return p;
}

// The character u ↦ str(ad_u) evaluated on the basis.
inline std::vector<Rat> supertrace_character(const LieAlgebra& a) {
  std::vector<Rat> chi(a.dim());
  std::vector<int> par = basis_parities(a);
  for (std::size_t i = 0; i < a.dim(); ++i) chi[i] = supertrace(adjoint_matrix(a, i), par);
  return chi;
}

inline bool is_unimodular(const LieAlgebra& a) {
  for (const Rat& c : supertrace_character(a))
    if (c != 0) return false;
  return true;
}

// Left module given by action matrices rho[i] = action of e_i.
struct LieModule {
  const LieAlgebra* alg = nullptr;
  std::vector<std::string> names;
  std::vector<int> deg;
  std::vector<SparseMatrix> rho;

  std::size_t dim() const { return names.size(); }
  int par(std::size_t p) const { return parity(deg[p]); }

  // module axiom rho([u,v]) = rho(u)rho(v) - (-1)^{|u||v|} rho(v)rho(u),
  // plus degree homogeneity of each action matrix
  ValidationReport validate() const {
    ValidationReport rep;
    const LieAlgebra& a = *alg;
    if (rho.size() != a.dim()) {
      rep.problems.push_back("action matrix count does not match algebra dimension");
      return rep;
    }
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (rho[i].rows() != dim() || rho[i].cols() != dim()) {
        rep.problems.push_back("action of " + a.names[i] + " has wrong shape");
        return rep;
      }
      for (const auto& [rc, v] : rho[i].entries()) {
        bool hom = a.mode == GradingMode::Z
                       ? deg[rc.first] == deg[rc.second] + a.deg[i]
                       : parity(deg[rc.first]) == (parity(deg[rc.second]) + a.par(i)) % 2;
        if (!hom) {
          rep.problems.push_back("action of " + a.names[i] + " is not degree-homogeneous");
          break;
        }
      }
    }
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        SparseMatrix lhs(dim(), dim());
        for (const auto& [k, c] : a.bracket(i, j)) lhs = lhs + c * rho[k];
        int sgn = (a.par(i) * a.par(j)) % 2 == 0 ? 1 : -1;
        SparseMatrix rhs = rho[i] * rho[j] - Rat(sgn) * (rho[j] * rho[i]);
        if (!(lhs == rhs)) {
          rep.problems.push_back("module axiom fails on (" + a.names[i] + "," + a.names[j] +
                                 ")");
          return rep;
        }
      }
    return rep;
  }
};

inline LieModule trivial_module(const LieAlgebra& a) {
  LieModule m;
  m.alg = &a;
  m.names = {"1"};
  m.deg = {0};
  m.rho.assign(a.dim(), SparseMatrix(1, 1));
  return m;
}

inline LieModule adjoint_module(const LieAlgebra& a) {
  LieModule m;
  m.alg = &a;
  m.names = a.names;
  m.deg = a.deg;
  for (std::size_t i = 0; i < a.dim(); ++i) m.rho.push_back(adjoint_matrix(a, i));
  return m;
}

// Contragredient left action on the dual basis:
//   (u·ν)(m) = -(-1)^{|u||ν|} ν(u·m),
// so column p of the new action is -(-1)^{|u||m_p|} times row p of rho(u).
inline LieModule dual_module(const LieModule& m) {
  const LieAlgebra& a = *m.alg;
  LieModule d;
  d.alg = m.alg;
  for (const std::string& n : m.names) d.names.push_back(n + "*");
  for (int dg : m.deg) d.deg.push_back(a.mode == GradingMode::Z ? -dg : dg);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    SparseMatrix r(m.dim(), m.dim());
    for (const auto& [pq, v] : m.rho[i].entries()) {
      int sgn = (a.par(i) * m.par(pq.first)) % 2 == 0 ? 1 : -1;
      r.set(pq.second, pq.first, Rat(-sgn) * v);
    }
    d.rho.push_back(r);
  }
  return d;
}

// Shifted character-twisted dual.  `right[i]` is the right action of e_i on
// the dual: ν·u = ν∘rho(u) plus the twist str(ad_u)·ν, i.e. rho(u)^T + χ_u.
// `left` is the same structure converted to a left module through the
// antipode (u·ν = -(-1)^{|u||ν|} ν·u), which is what the homology complexes
// consume.  Carrier degrees are the dual degrees shifted up by the total
// dimension of the algebra; Koszul signs use the intrinsic (unshifted)
// parity of the dual basis vector.
struct TwistedDualModule {
  LieModule left;
  std::vector<SparseMatrix> right;
};

inline TwistedDualModule twisted_dual_module(const LieAlgebra& a, const LieModule& m,
                                             const std::vector<Rat>* character = nullptr) {
  std::vector<Rat> chi = character ? *character : supertrace_character(a);
  long long shift = a.total_dim();
  TwistedDualModule t;
  t.left.alg = &a;
  for (const std::string& n : m.names) t.left.names.push_back(n + "~");
  for (int dg : m.deg) {
    long long nd = a.mode == GradingMode::Z ? -static_cast<long long>(dg) + shift
                                            : (dg + shift) % 2;
    t.left.deg.push_back(static_cast<int>(nd));
  }
  for (std::size_t i = 0; i < a.dim(); ++i) {
    SparseMatrix r = m.rho[i].transpose();
    if (chi[i] != 0) r = r + chi[i] * SparseMatrix::identity(m.dim());
    t.right.push_back(r);
    SparseMatrix l(m.dim(), m.dim());
    for (const auto& [qp, v] : r.entries()) {
      int sgn = (a.par(i) * m.par(qp.second)) % 2 == 0 ? 1 : -1;
      l.set(qp.first, qp.second, Rat(-sgn) * v);
    }
    t.left.rho.push_back(l);
  }
  return t;
}

}  // namespace gradual
