#pragma once

// Homological transfer computing the deformed Berezinian and the dualizing
// character of a graded Lie algebra.
//
// The arena is the space of "bimonomials" A⊗X with A a word in the dual
// generators and X a word in the basis itself.  On it live
//   d(A⊗X)  = Σ_u (-1)^{|e_u||A|} x^u A ⊗ e_u X        (Koszul differential)
//   Δ(A⊗X)  = Σ_u (-1)^{|e_u||A|} ∂A/∂x^u ⊗ ∂X/∂e_u    (dual Koszul)
// whose anticommutator is diagonal:  dΔ + Δd = λ·id with
//   λ = (n+m) + degP - degQ,
//   degP = Σ even-basis exponents on the right + odd-dual exponents on the
//          left,  degQ = the complementary count,
// and λ = 0 exactly on the line through B = x¹…xⁿ ⊗ ε₁…ε_m.  That gives a
// Hodge triple (s = Δ/λ off the line, t = projection onto B).
//
// The perturbed differential replaces the product e_u X by the star product
// e_u ⋆ X transported from the enveloping algebra:
//   ∂(A⊗X) = d_CE(A)⊗X + Σ_u (-1)^{|e_u||A|} x^u A ⊗ (e_u ⋆ X).
// The perturbation x = ∂ - d strictly lowers the right word length while s
// lowers it by one, so the perturbation series
//   α = Σ (-s x)^k,   β = Σ (-x s)^k
// terminate.  B̃ = α(B) is the deformed Berezinian; the character is read
// off from r(u)·B = t(β(B̃ ⋆ u)).

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "gradual/ce.hpp"
#include "gradual/env.hpp"
#include "gradual/errors.hpp"
#include "gradual/formal.hpp"
#include "gradual/lie.hpp"

namespace gradual {

class Transfer {
public:
  using Key = std::pair<Mono, Mono>;  // (left dual word, right basis word)
  using Bi = std::map<Key, Rat>;

  explicit Transfer(const LieAlgebra& a)
      : alg_(&a), duals_(dual_context(a)), dce_(ce_derivation(a, duals_)), pbw_(a) {
    n_ = a.n_even();
    m_ = a.dim() - n_;
    bl_.assign(a.dim(), 0);
    br_.assign(a.dim(), 0);
    for (std::size_t i = 0; i < n_; ++i) bl_[i] = 1;
    for (std::size_t j = n_; j < a.dim(); ++j) br_[j] = 1;
  }

  Transfer(const Transfer&) = delete;
  Transfer& operator=(const Transfer&) = delete;

  const LieAlgebra& algebra() const { return *alg_; }
  const GenSet& left() const { return duals_; }
  const GenSet& right() const { return pbw_.sym(); }
  Pbw& pbw() { return pbw_; }

  static void add(Bi& b, const Mono& l, const Mono& r, const Rat& c) {
    if (c == 0) return;
    Key k{l, r};
    auto it = b.find(k);
    if (it == b.end()) {
      b[k] = c;
    } else {
      it->second += c;
      if (it->second == 0) b.erase(it);
    }
  }

  static Bi combine(const Bi& a, const Bi& b, const Rat& scale = 1) {
    Bi r = a;
    for (const auto& [k, c] : b) add(r, k.first, k.second, scale * c);
    return r;
  }

  Bi single(const Mono& l, const Mono& r, const Rat& c = 1) const {
    Bi b;
    add(b, l, r, c);
    return b;
  }

  Bi base() const { return single(bl_, br_); }

  int lambda(const Key& k) const {
    int degp = 0, degq = 0;
    for (std::size_t u = 0; u < alg_->dim(); ++u) {
      if (alg_->par(u) == 0) {
        degp += k.second[u];
        degq += k.first[u];
      } else {
        degp += k.first[u];
        degq += k.second[u];
      }
    }
    return static_cast<int>(n_ + m_) + degp - degq;
  }

  Bi d(const Bi& w) const {
    Bi out;
    for (const auto& [k, c] : w) {
      Elem ae = Elem::monomial(duals_, k.first);
      Elem xe = Elem::monomial(right(), k.second);
      int apar = mono_parity(duals_, k.first);
      for (std::size_t u = 0; u < alg_->dim(); ++u) {
        Elem la = mul(Elem::gen(duals_, u), ae);
        if (la.is_zero()) continue;
        Elem rx = mul(Elem::gen(right(), u), xe);
        if (rx.is_zero()) continue;
        Rat sgn((alg_->par(u) * apar) % 2 == 0 ? 1 : -1);
        for (const auto& [ml, cl] : la.terms())
          for (const auto& [mr, cr] : rx.terms()) add(out, ml, mr, c * sgn * cl * cr);
      }
    }
    return out;
  }

  Bi laplace(const Bi& w) const {
    Bi out;
    for (const auto& [k, c] : w) {
      Elem ae = Elem::monomial(duals_, k.first);
      Elem xe = Elem::monomial(right(), k.second);
      int apar = mono_parity(duals_, k.first);
      for (std::size_t u = 0; u < alg_->dim(); ++u) {
        Elem la = deriv(ae, u);
        if (la.is_zero()) continue;
        Elem rx = deriv(xe, u);
        if (rx.is_zero()) continue;
        Rat sgn((alg_->par(u) * apar) % 2 == 0 ? 1 : -1);
        for (const auto& [ml, cl] : la.terms())
          for (const auto& [mr, cr] : rx.terms()) add(out, ml, mr, c * sgn * cl * cr);
      }
    }
    return out;
  }

  // s: Δ/λ away from the B-line, 0 on it.
  Bi homotopy(const Bi& w) const {
    Bi out;
    for (const auto& [k, c] : w) {
      int l = lambda(k);
      if (l == 0) continue;
      Bi piece = laplace(single(k.first, k.second, c));
      for (const auto& [k2, c2] : piece) add(out, k2.first, k2.second, c2 / l);
    }
    return out;
  }

  // t: projection onto the B-line.
  Bi project(const Bi& w) const {
    auto it = w.find({bl_, br_});
    Bi out;
    if (it != w.end()) add(out, bl_, br_, it->second);
    return out;
  }

  Bi perturbed(const Bi& w) {
    Bi out;
    for (const auto& [k, c] : w) {
      Elem ae = Elem::monomial(duals_, k.first);
      int apar = mono_parity(duals_, k.first);
      Elem im = apply(dce_, ae);
      for (const auto& [ml, cl] : im.terms()) add(out, ml, k.second, c * cl);
      for (std::size_t u = 0; u < alg_->dim(); ++u) {
        Elem la = mul(Elem::gen(duals_, u), ae);
        if (la.is_zero()) continue;
        const Elem& st = star_left(u, k.second);
        if (st.is_zero()) continue;
        Rat sgn((alg_->par(u) * apar) % 2 == 0 ? 1 : -1);
        for (const auto& [ml, cl] : la.terms())
          for (const auto& [mr, cr] : st.terms()) add(out, ml, mr, c * sgn * cl * cr);
      }
    }
    return out;
  }

  Bi perturbation(const Bi& w) { return combine(perturbed(w), d(w), -1); }

  Bi alpha(const Bi& w) { return series(w, /*s_first=*/true); }
  Bi beta(const Bi& w) { return series(w, /*s_first=*/false); }

  Bi sprime(const Bi& w) { return alpha(homotopy(w)); }
  Bi tprime(const Bi& w) { return alpha(project(beta(w))); }

  const Bi& berezinian() {
    if (!btilde_) btilde_ = alpha(base());
    return *btilde_;
  }

  // B̃ together with the structural guarantees of the transfer: ∂-closed
  // and concentrated in the top degree.
  const Bi& deformed_berezinian() {
    const Bi& bt = berezinian();
    if (!perturbed(bt).empty())
      fail(ErrorKind::NotClosed, "deformed Berezinian is not closed");
    auto deg = bidegree(bt);
    if (!deg || *deg != expected_degree())
      fail(ErrorKind::NotClosed, "deformed Berezinian sits in the wrong degree");
    return bt;
  }

  Bi right_star(const Bi& w, std::size_t u) {
    Bi out;
    for (const auto& [k, c] : w) {
      Elem st = pbw_.star(Elem::monomial(right(), k.second), Elem::gen(right(), u));
      for (const auto& [mr, cr] : st.terms()) add(out, k.first, mr, c * cr);
    }
    return out;
  }

  // r(u) from the B-coefficient of β(B̃ ⋆ u), cross-checked against the
  // perturbed projection t' = id - ∂s' - s'∂ applied to B̃ ⋆ u.
  std::vector<Rat> character() {
    const Bi bt = berezinian();
    std::vector<Rat> r;
    for (std::size_t u = 0; u < alg_->dim(); ++u) {
      Bi w = right_star(bt, u);
      Bi bw = beta(w);
      auto it = bw.find({bl_, br_});
      Rat ru = it == bw.end() ? Rat(0) : it->second;
      Bi check = combine(combine(w, perturbed(sprime(w)), -1), sprime(perturbed(w)), -1);
      if (check != combine(Bi{}, bt, ru))
        fail(ErrorKind::TransferInconsistent,
             "character extraction disagrees with the perturbed projection");
      r.push_back(ru);
    }
    return r;
  }

  // homogeneous degree (parity in the parity-only mode) of a bicomplex
  // element, or nothing when inhomogeneous
  std::optional<int> bidegree(const Bi& w) const {
    std::optional<int> deg;
    for (const auto& [k, c] : w) {
      int dk = 0;
      if (alg_->mode == GradingMode::Z) {
        for (std::size_t u = 0; u < alg_->dim(); ++u)
          dk += k.first[u] * duals_.degree[u] + k.second[u] * right().degree[u];
      } else {
        dk = (mono_parity(duals_, k.first) + mono_parity(right(), k.second)) % 2;
      }
      if (!deg)
        deg = dk;
      else if (*deg != dk)
        return std::nullopt;
    }
    return deg;
  }

  int expected_degree() const { return total_dimension(alg_->deg, alg_->mode); }

private:
  const Elem& star_left(std::size_t u, const Mono& x) {
    auto key = std::make_pair(u, x);
    auto it = star_cache_.find(key);
    if (it != star_cache_.end()) return it->second;
    Elem st = pbw_.star(Elem::gen(right(), u), Elem::monomial(right(), x));
    return star_cache_.emplace(std::move(key), std::move(st)).first->second;
  }

  int right_order(const Bi& w) const {
    int o = 0;
    for (const auto& [k, c] : w) o = std::max(o, mono_order(k.second));
    return o;
  }

  Bi series(const Bi& w, bool s_first) {
    Bi acc = w;
    Bi cur = w;
    int guard = right_order(w) + 2;
    while (!cur.empty()) {
      if (--guard < 0) fail(ErrorKind::Internal, "perturbation series fails to terminate");
      cur = s_first ? homotopy(perturbation(cur)) : perturbation(homotopy(cur));
      for (auto& [k, c] : cur) c = -c;
      acc = combine(acc, cur);
    }
    return acc;
  }

  const LieAlgebra* alg_;
  GenSet duals_;
  VecField dce_;
  Pbw pbw_;
  std::size_t n_ = 0, m_ = 0;
  Mono bl_, br_;
  std::optional<Bi> btilde_;
  std::map<std::pair<std::size_t, Mono>, Elem> star_cache_;
};

struct MainTheoremReport {
  std::vector<Rat> character;
  std::vector<Rat> str_ad;
  bool character_match = true;
  bool closed = false;
  std::optional<int> degree;
  int expected_degree = 0;
  bool degree_match = false;
};

inline MainTheoremReport verify_main_theorem(Transfer& t) {
  MainTheoremReport rep;
  const auto& bt = t.berezinian();
  rep.closed = t.perturbed(bt).empty();
  rep.degree = t.bidegree(bt);
  rep.expected_degree = t.expected_degree();
  rep.degree_match = rep.degree && *rep.degree == rep.expected_degree;
  rep.character = t.character();
  rep.str_ad = supertrace_character(t.algebra());
  for (std::size_t u = 0; u < rep.character.size(); ++u)
    if (rep.character[u] != rep.str_ad[u]) rep.character_match = false;
  return rep;
}

}  // namespace gradual
