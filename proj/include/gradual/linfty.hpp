#pragma once

// Strong homotopy Lie structures presented dually: a degree-+1 square-zero
// derivation ℓ, with no constant term, on the free graded-commutative
// algebra over the dual generators, stored up to a truncation order T.
//
// Cohomology is computed in the quotient by monomials of order > T.  When
// the differential (plus an optional Maurer-Cartan twist) shifts word
// length uniformly by σ, the complex splits into finite bigraded slices
// (internal degree d, word length w); a slice is reliable exactly when its
// outgoing order w+σ still fits under the truncation, which is also where
// the T vs T+1 recomputation agrees.  Per-degree dimensions aggregate the
// reliable slices, so truncation-boundary artifacts never enter them.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gradual/ce.hpp"
#include "gradual/errors.hpp"
#include "gradual/formal.hpp"
#include "gradual/lie.hpp"
#include "gradual/sparse.hpp"

namespace gradual {

struct SliceRow {
  int degree = 0;
  int order = 0;
  std::size_t dim = 0;
  bool stable = false;
};

struct DegreeRow {
  int degree = 0;
  std::size_t dim = 0;
  bool stable = false;
};

struct LinftyCohomology {
  bool order_graded = false;  // bigraded exact path vs whole-quotient fallback
  int shift = 1;
  int truncation = 0;
  std::vector<SliceRow> slices;
  std::vector<DegreeRow> degrees;
};

struct ConjectureRow {
  int degree = 0;
  std::size_t untwisted = 0;
  std::size_t twisted_complement = 0;  // dim H^{|g|-degree} of the twisted complex
  bool equal = false;
};

struct ConjectureEvidence {
  int total_dim = 0;
  std::vector<ConjectureRow> rows;
  bool symmetric = true;
};

class Linfty {
public:
  Linfty(std::vector<std::string> names, std::vector<int> degrees,
         const std::vector<std::map<Mono, Rat>>& coeffs, int truncation = -1)
      : ctx_(GenSet::make(std::move(names), std::move(degrees))) {
    if (coeffs.size() != ctx_.size())
      fail(ErrorKind::ShapeMismatch, "derivation must assign a value to each generator");
    ell_ = VecField::zero(ctx_);
    int max_order = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      for (const auto& [m, c] : coeffs[i]) {
        ell_.coeff[i].add(m, c);
        max_order = std::max(max_order, mono_order(m));
      }
    trunc_ = truncation > 0 ? truncation : std::max(8, 2 * max_order + 2);
  }

  Linfty(const Linfty&) = delete;
  Linfty& operator=(const Linfty&) = delete;

  const GenSet& ctx() const { return ctx_; }
  const VecField& derivation() const { return ell_; }
  int truncation() const { return trunc_; }

  // dimension count of the underlying space: a dual generator of degree d
  // stands for an element of degree 1-d
  int total_dim() const {
    std::vector<int> deg;
    for (int d : ctx_.degree) deg.push_back(1 - d);
    return total_dimension(deg, GradingMode::Z);
  }

  ValidationReport validate() const {
    ValidationReport rep;
    for (std::size_t i = 0; i < ctx_.size(); ++i) {
      const Elem& v = ell_.coeff[i];
      if (v.is_zero()) continue;
      if (v.coeff(Mono(ctx_.size(), 0)) != 0)
        rep.problems.push_back("derivation on " + ctx_.names[i] + " has a constant term");
      auto d = v.hom_degree();
      if (!d || *d != ctx_.degree[i] + 1) {
        rep.problems.push_back("derivation on " + ctx_.names[i] +
                               " is not homogeneous of degree " +
                               std::to_string(ctx_.degree[i] + 1));
      }
      Elem sq = truncate_order(apply(ell_, v), trunc_);
      if (!sq.is_zero())
        rep.problems.push_back("square on " + ctx_.names[i] + " fails at " +
                               mono_str(ctx_, sq.terms().begin()->first));
    }
    return rep;
  }

  bool minimal() const {
    for (const Elem& v : ell_.coeff)
      for (const auto& [m, c] : v.terms())
        if (mono_order(m) == 1) return false;
    return true;
  }

  bool hypothesis_h() const {
    for (std::size_t i = 0; i < ctx_.size(); ++i)
      if (ctx_.par[i] == 0 && !ell_.coeff[i].is_zero()) return false;
    return true;
  }

  // ∇(ℓ), checked to be a degree-1 cocycle up to the truncation
  Elem divergence_cocycle() const {
    Elem dv = divergence(ell_);
    if (!dv.is_zero()) {
      auto d = dv.hom_degree();
      if (!d || *d != 1)
        fail(ErrorKind::NotClosed, "divergence of the derivation is not of degree 1");
      if (!truncate_order(apply(ell_, dv), trunc_).is_zero())
        fail(ErrorKind::NotClosed, "divergence of the derivation is not a cocycle");
    }
    return dv;
  }

  LinftyCohomology truncated_cohomology(const Elem* twist, int min_degree, int max_degree,
                                        int trunc_override = -1) {
    const int T = trunc_override > 0 ? trunc_override : trunc_;
    Elem xi = rebased_twist(twist, T);
    LinftyCohomology out;
    out.truncation = T;
    std::set<int> shifts;
    for (const Elem& v : ell_.coeff)
      for (const auto& [m, c] : v.terms()) shifts.insert(mono_order(m) - 1);
    for (const auto& [m, c] : xi.terms()) shifts.insert(mono_order(m));
    out.order_graded = shifts.size() <= 1;
    if (out.order_graded) {
      out.shift = shifts.empty() ? 1 : *shifts.begin();
      const int sigma = out.shift;
      for (int d = min_degree; d <= max_degree; ++d) {
        std::size_t total = 0;
        bool deg_stable = true;
        for (int w = 0; w <= T; ++w) {
          if (slice_basis(d, w).empty()) continue;
          SliceRow row{d, w, slice_h(d, w, sigma, xi, T), false};
          row.stable =
              w + sigma <= T && row.dim == slice_h(d, w, sigma, xi, T + 1);
          if (row.stable)
            total += row.dim;
          else if (w + sigma <= T)
            deg_stable = false;
          out.slices.push_back(row);
        }
        out.degrees.push_back({d, total, deg_stable});
      }
    } else {
      for (int d = min_degree; d <= max_degree; ++d) {
        std::size_t at_t = quotient_h(d, xi, T);
        std::size_t at_t1 = quotient_h(d, xi, T + 1);
        out.degrees.push_back({d, at_t, at_t == at_t1});
      }
    }
    return out;
  }

  ConjectureEvidence conjecture_evidence(int trunc_override = -1) {
    if (!validate().ok())
      fail(ErrorKind::InvalidInput, "structure fails validation");
    if (!minimal())
      fail(ErrorKind::InvalidInput, "duality evidence requires a minimal structure");
    ConjectureEvidence ev;
    ev.total_dim = total_dim();
    const int top = std::max(ev.total_dim, 0);
    LinftyCohomology untw = truncated_cohomology(nullptr, 0, top, trunc_override);
    Elem xi = divergence_cocycle();
    LinftyCohomology tw = truncated_cohomology(&xi, 0, top, trunc_override);
    for (int d = 0; ev.total_dim >= 0 && d <= ev.total_dim; ++d) {
      ConjectureRow row;
      row.degree = d;
      row.untwisted = untw.degrees[d].dim;
      row.twisted_complement = tw.degrees[ev.total_dim - d].dim;
      row.equal = row.untwisted == row.twisted_complement;
      if (!row.equal) ev.symmetric = false;
      ev.rows.push_back(row);
    }
    return ev;
  }

private:
  Elem rebased_twist(const Elem* twist, int T) {
    Elem xi(&ctx_);
    if (twist == nullptr) return xi;
    for (const auto& [m, c] : twist->terms()) {
      if (m.size() != ctx_.size())
        fail(ErrorKind::ShapeMismatch, "twist lives on a different generator context");
      xi.add(m, c);
    }
    if (xi.is_zero()) return xi;
    auto d = xi.hom_degree();
    if (!d || *d != 1) fail(ErrorKind::NotMaurerCartan, "twist must have degree 1");
    if (!truncate_order(apply(ell_, xi) + mul(xi, xi), T).is_zero())
      fail(ErrorKind::NotMaurerCartan, "twist fails the Maurer-Cartan equation");
    return xi;
  }

  const std::vector<Mono>& slice_basis(int d, int w) {
    auto key = std::make_pair(d, w);
    auto it = bases_.find(key);
    if (it != bases_.end()) return it->second;
    std::vector<Mono> b;
    if (w >= 0) {
      std::vector<Mono> monos;
      monomials_of_order(ctx_, w, monos);
      for (Mono& m : monos)
        if (mono_degree(ctx_, m) == d) b.push_back(std::move(m));
    }
    return bases_.emplace(key, std::move(b)).first->second;
  }

  // differential slice (d, w) → (d+1, w+σ) in the order-≤cap quotient
  SparseMatrix slice_matrix(int d, int w, int sigma, const Elem& xi, int cap) {
    const auto& src = slice_basis(d, w);
    const auto& tgt = w + sigma <= cap ? slice_basis(d + 1, w + sigma) : empty_;
    std::map<Mono, std::size_t> index;
    for (std::size_t r = 0; r < tgt.size(); ++r) index[tgt[r]] = r;
    SparseMatrix mat(tgt.size(), src.size());
    if (tgt.empty()) return mat;
    for (std::size_t j = 0; j < src.size(); ++j) {
      Elem base = Elem::monomial(ctx_, src[j]);
      Elem im = apply(ell_, base);
      if (!xi.is_zero()) im = im + mul(xi, base);
      for (const auto& [m, c] : im.terms()) {
        auto hit = index.find(m);
        if (hit == index.end())
          fail(ErrorKind::Internal, "differential leaves the expected slice");
        mat.add(hit->second, j, c);
      }
    }
    return mat;
  }

  std::size_t slice_h(int d, int w, int sigma, const Elem& xi, int cap) {
    return homology_dim(slice_matrix(d, w, sigma, xi, cap),
                        slice_matrix(d - 1, w - sigma, sigma, xi, cap));
  }

  // fallback for differentials that mix word lengths: whole degree-d piece
  // of the order-≤cap quotient
  std::size_t quotient_h(int d, const Elem& xi, int cap) {
    auto degree_basis = [&](int dd) {
      std::vector<Mono> b;
      for (int w = 0; w <= cap; ++w)
        for (const Mono& m : slice_basis(dd, w)) b.push_back(m);
      return b;
    };
    auto full_matrix = [&](int dd) {
      std::vector<Mono> src = degree_basis(dd);
      std::vector<Mono> tgt = degree_basis(dd + 1);
      std::map<Mono, std::size_t> index;
      for (std::size_t r = 0; r < tgt.size(); ++r) index[tgt[r]] = r;
      SparseMatrix mat(tgt.size(), src.size());
      for (std::size_t j = 0; j < src.size(); ++j) {
        Elem base = Elem::monomial(ctx_, src[j]);
        Elem im = apply(ell_, base);
        if (!xi.is_zero()) im = im + mul(xi, base);
        im = truncate_order(im, cap);
        for (const auto& [m, c] : im.terms()) {
          auto hit = index.find(m);
          if (hit == index.end())
            fail(ErrorKind::Internal, "differential leaves the expected degree");
          mat.add(hit->second, j, c);
        }
      }
      return mat;
    };
    return homology_dim(full_matrix(d), full_matrix(d - 1));
  }

  GenSet ctx_;
  VecField ell_;
  int trunc_ = 8;
  std::map<std::pair<int, int>, std::vector<Mono>> bases_;
  const std::vector<Mono> empty_;
};

// the quadratic structure of an ordinary graded Lie algebra, for the
// cross-check against the direct complex construction
inline Linfty linfty_from_algebra(const LieAlgebra& a, int truncation = -1) {
  if (a.mode != GradingMode::Z)
    fail(ErrorKind::InvalidInput,
         "quadratic structures are extracted from integer-graded algebras");
  GenSet duals = dual_context(a);
  VecField dce = ce_derivation(a, duals);
  std::vector<std::map<Mono, Rat>> coeffs;
  for (const Elem& v : dce.coeff) coeffs.push_back(v.terms());
  return Linfty(duals.names, duals.degree, coeffs, truncation);
}

}  // namespace gradual
