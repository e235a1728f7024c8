#pragma once

// Chevalley–Eilenberg complexes of a graded Lie algebra with coefficients
// in a finite-dimensional module, over the free graded-commutative algebra
// on the dual generators.
//
// Conventions fixed here and relied on throughout:
//   * dual generator of a basis element of degree d has degree 1-d (parity
//     flipped), so duals of even elements are odd and vice versa;
//   * d x^k = -½ Σ_{p,q} (-1)^{|e_p|(|e_q|+1)} N_pq^k x^p x^q;
//   * on module cochains
//       D(μ⊗m) = (dμ)⊗m + Σ_u (-1)^{|e_u||μ|} x^u μ ⊗ ρ(e_u)m;
//   * a twist by an odd scalar 1-cochain ξ adds ξ·μ⊗m (left) or the
//     equivalent -ξ·μ⊗m (right);
//   * chains pair diagonally with cochains, ⟨∂X, A⟩ = -(-1)^{|X|}⟨X, DA⟩,
//     which determines the boundary matrices from the cochain matrices of
//     the dual module.
//
// Complexes are graded by word length in the dual generators; every graded
// piece is finite-dimensional, so all ranks are exact.

#include <map>
#include <utility>
#include <vector>

#include "gradual/errors.hpp"
#include "gradual/formal.hpp"
#include "gradual/lie.hpp"
#include "gradual/sparse.hpp"

namespace gradual {

inline GenSet dual_context(const LieAlgebra& a) {
  std::vector<std::string> names;
  std::vector<int> deg;
  for (std::size_t i = 0; i < a.dim(); ++i) {
    names.push_back(a.names[i] + "*");
    deg.push_back(a.mode == GradingMode::Z ? 1 - a.deg[i] : parity(a.deg[i] + 1));
  }
  return GenSet::make(std::move(names), std::move(deg));
}

inline VecField ce_derivation(const LieAlgebra& a, const GenSet& duals) {
  VecField d = VecField::zero(duals);
  for (std::size_t p = 0; p < a.dim(); ++p)
    for (std::size_t q = 0; q < a.dim(); ++q) {
      const auto& br = a.bracket(static_cast<int>(p), static_cast<int>(q));
      if (br.empty()) continue;
      Elem xpxq = mul(Elem::gen(duals, p), Elem::gen(duals, q));
      if (xpxq.is_zero()) continue;
      int sgn = (a.par(p) * (a.par(q) + 1)) % 2 == 0 ? 1 : -1;
      for (const auto& [k, n] : br)
        d.coeff[k] = d.coeff[k] + (Rat(-sgn, 2) * n) * xpxq;
    }
  return d;
}

// Σ_u str(ad_{e_u}) x^u; odd basis elements contribute nothing since their
// adjoint matrices have empty diagonal.
inline Elem supertrace_cocycle(const LieAlgebra& a, const GenSet& duals) {
  Elem r(&duals);
  std::vector<Rat> chi = supertrace_character(a);
  for (std::size_t u = 0; u < a.dim(); ++u) r = r + chi[u] * Elem::gen(duals, u);
  return r;
}

inline Elem ce_divergence(const LieAlgebra& a, const GenSet& duals) {
  return divergence(ce_derivation(a, duals));
}

// Cochain complex C^k = span{ μ⊗m : μ a dual word of length k }.
class CochainComplex {
public:
  CochainComplex(const LieAlgebra& a, LieModule m, const Elem* twist = nullptr,
                 bool twist_left = true)
      : alg_(&a), mod_(std::move(m)), duals_(dual_context(a)),
        dce_(ce_derivation(a, duals_)), twist_(&duals_) {
    if (mod_.alg != &a)
      fail(ErrorKind::ShapeMismatch, "cochain complex: module is over a different algebra");
    if (twist != nullptr) {
      for (const auto& [mo, c] : twist->terms()) {
        if (mo.size() != duals_.size())
          fail(ErrorKind::ShapeMismatch, "twist lives on a different generator context");
        twist_.add(mo, twist_left ? c : -c);
      }
      if (!twist_.is_zero()) {
        auto p = twist_.hom_parity();
        if (!p || *p != 1)
          fail(ErrorKind::NotMaurerCartan, "twist must be parity-odd");
        if (!(apply(dce_, twist_) + mul(twist_, twist_)).is_zero())
          fail(ErrorKind::NotMaurerCartan, "twist fails the Maurer-Cartan equation");
      }
    }
  }

  CochainComplex(const CochainComplex&) = delete;
  CochainComplex& operator=(const CochainComplex&) = delete;

  const LieAlgebra& algebra() const { return *alg_; }
  const LieModule& module() const { return mod_; }
  const GenSet& duals() const { return duals_; }
  const VecField& derivation() const { return dce_; }

  using BasisElement = std::pair<Mono, std::size_t>;  // (dual word, carrier index)

  const std::vector<BasisElement>& basis(int k) {
    auto it = bases_.find(k);
    if (it != bases_.end()) return it->second;
    std::vector<BasisElement> b;
    if (k >= 0) {
      std::vector<Mono> monos;
      monomials_of_order(duals_, k, monos);
      for (const Mono& mo : monos)
        for (std::size_t p = 0; p < mod_.dim(); ++p) b.emplace_back(mo, p);
    }
    auto& slot = bases_[k] = std::move(b);
    auto& idx = index_[k];
    for (std::size_t j = 0; j < slot.size(); ++j) idx[slot[j]] = j;
    return slot;
  }

  std::size_t dim(int k) { return basis(k).size(); }

  // D : C^k → C^{k+1}; rows indexed by basis(k+1), columns by basis(k).
  const SparseMatrix& matrix(int k) {
    auto it = mats_.find(k);
    if (it != mats_.end()) return it->second;
    const auto& src = basis(k);
    basis(k + 1);
    const auto& tgt = index_.at(k + 1);
    auto tgt_index = [&](const Mono& mo, std::size_t p) {
      auto hit = tgt.find({mo, p});
      if (hit == tgt.end())
        fail(ErrorKind::Internal, "cochain image leaves the expected graded piece");
      return hit->second;
    };
    SparseMatrix d(dim(k + 1), src.size());
    for (std::size_t j = 0; j < src.size(); ++j) {
      const auto& [mo, c] = src[j];
      Elem base = Elem::monomial(duals_, mo);
      int mpar = mono_parity(duals_, mo);
      Elem im = apply(dce_, base);
      for (const auto& [m2, v] : im.terms()) d.add(tgt_index(m2, c), j, v);
      for (std::size_t u = 0; u < alg_->dim(); ++u) {
        const SparseMatrix& rho = mod_.rho[u];
        Elem xu = mul(Elem::gen(duals_, u), base);
        if (xu.is_zero()) continue;
        Rat scale((alg_->par(u) * mpar) % 2 == 0 ? 1 : -1);
        for (const auto& [rc, w] : rho.entries()) {
          if (rc.second != c) continue;
          for (const auto& [m2, v] : xu.terms())
            d.add(tgt_index(m2, rc.first), j, scale * v * w);
        }
      }
      if (!twist_.is_zero()) {
        Elem tw = mul(twist_, base);
        for (const auto& [m2, v] : tw.terms()) d.add(tgt_index(m2, c), j, v);
      }
    }
    return mats_.emplace(k, std::move(d)).first->second;
  }

  // dim H^k for k = 0..max_degree; verifies D∘D = 0 on the way.
  std::vector<std::size_t> cohomology(int max_degree) {
    std::vector<std::size_t> dims;
    for (int k = 0; k <= max_degree; ++k) {
      SparseMatrix din = k == 0 ? SparseMatrix(dim(0), 0) : matrix(k - 1);
      dims.push_back(homology_dim(matrix(k), din));
    }
    return dims;
  }

private:
  const LieAlgebra* alg_;
  LieModule mod_;
  GenSet duals_;
  VecField dce_;
  Elem twist_;
  std::map<int, std::vector<BasisElement>> bases_;
  std::map<int, std::map<BasisElement, std::size_t>> index_;
  std::map<int, SparseMatrix> mats_;
};

// Diagonal pairing normalization between a word of dual generators and the
// matching word of shifted basis elements: product of factorials of the
// even-dual exponents times the reversal sign on the odd duals.
inline Rat chain_pairing_weight(const GenSet& duals, const Mono& m) {
  Rat w = 1;
  int odd = 0;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (duals.par[i] == 0)
      for (int r = 2; r <= m[i]; ++r) w *= r;
    else
      odd += m[i];
  }
  return (odd * (odd - 1) / 2) % 2 == 0 ? w : -w;
}

// Chain complex C_k(g, M); boundary matrices are the pairing transforms of
// the cochain matrices of M*, so that ⟨D(A), X⟩ = -(-1)^{|A|}⟨A, ∂X⟩ for a
// cochain A of M* and a chain X, where |A| is the full parity of A and
// ⟨ν_β⊗φ_p, X_α⊗m_q⟩ = δ_αβ δ_qp (-1)^{|φ_p||ν_α|} · weight(ν_α).
class ChainComplex {
public:
  ChainComplex(const LieAlgebra& a, const LieModule& m)
      : alg_(&a), co_(a, dual_module(m)) {}

  ChainComplex(const ChainComplex&) = delete;
  ChainComplex& operator=(const ChainComplex&) = delete;

  const GenSet& duals() { return co_.duals(); }
  std::size_t dim(int k) { return co_.dim(k); }
  const std::vector<CochainComplex::BasisElement>& basis(int k) { return co_.basis(k); }

  // ∂ : C_k → C_{k-1}; rows indexed by basis(k-1), columns by basis(k).
  const SparseMatrix& boundary(int k) {
    auto it = mats_.find(k);
    if (it != mats_.end()) return it->second;
    SparseMatrix b(dim(k - 1), dim(k));
    if (k > 0) {
      const SparseMatrix& d = co_.matrix(k - 1);
      const auto& src = basis(k);
      const auto& tgt = basis(k - 1);
      for (const auto& [rc, v] : d.entries()) {
        const auto& [ma, q] = src[rc.first];
        const auto& [mg, p] = tgt[rc.second];
        int spar = mono_parity(co_.duals(), ma) + parity(co_.module().deg[q]);
        Rat coef = Rat(spar % 2 == 0 ? 1 : -1) * v * weight(ma, q) / weight(mg, p);
        b.add(rc.second, rc.first, coef);
      }
    }
    return mats_.emplace(k, std::move(b)).first->second;
  }

  // dim H_k for k = 0..max_degree; verifies ∂∘∂ = 0 on the way.
  std::vector<std::size_t> homology(int max_degree) {
    std::vector<std::size_t> dims;
    for (int k = 0; k <= max_degree; ++k)
      dims.push_back(homology_dim(boundary(k), boundary(k + 1)));
    return dims;
  }

  Rat weight(const Mono& m, std::size_t p) {
    Rat w = chain_pairing_weight(co_.duals(), m);
    int s = parity(co_.module().deg[p]) * mono_parity(co_.duals(), m);
    return s % 2 == 0 ? w : -w;
  }

private:
  const LieAlgebra* alg_;
  CochainComplex co_;
  std::map<int, SparseMatrix> mats_;
};

inline bool hazewinkel_eligible(const LieAlgebra& a) {
  if (a.mode != GradingMode::Z) return false;
  for (int d : a.deg)
    if (d != 0) return false;
  return true;
}

// dim H_i(g, (M*)^tw) against dim H^{n-i}(g, M*) for an ordinary Lie
// algebra of dimension n.
struct HazewinkelReport {
  std::vector<std::size_t> homology_twisted;
  std::vector<std::size_t> cohomology_dual;
  bool match = true;
};

inline HazewinkelReport hazewinkel_check(const LieAlgebra& a, const LieModule& m) {
  if (!hazewinkel_eligible(a))
    fail(ErrorKind::InvalidInput, "duality check requires an ungraded Lie algebra");
  const int n = static_cast<int>(a.dim());
  HazewinkelReport rep;
  TwistedDualModule tw = twisted_dual_module(a, m);
  ChainComplex ch(a, tw.left);
  rep.homology_twisted = ch.homology(n);
  CochainComplex co(a, dual_module(m));
  rep.cohomology_dual = co.cohomology(n);
  for (int i = 0; i <= n; ++i)
    if (rep.homology_twisted[i] != rep.cohomology_dual[n - i]) rep.match = false;
  return rep;
}

}  // namespace gradual
