#pragma once

// Universal enveloping algebra of a graded Lie algebra in its PBW basis,
// the symmetrization isomorphism Φ: S(g) → U(g) and its inverse, the star
// product X ⋆ Y = Φ⁻¹(Φ(X)Φ(Y)) transported to S(g), the Hopf structure
// maps on primitives, and the Lie–Poisson bracket on S(g) used to check the
// leading terms of ⋆.
//
// Words are sequences of basis indices.  A word is PBW-normal when its
// letters are nondecreasing and odd letters are strict; rewriting uses
//   e_j e_i = (-1)^{|e_i||e_j|} e_i e_j + [e_j, e_i]   (j > i)
//   ε ε     = ½ [ε, ε]                                  (ε odd)
// which terminates because each step lowers (length, inversions)
// lexicographically.

#include <algorithm>
#include <map>
#include <utility>
#include <vector>

#include "gradual/errors.hpp"
#include "gradual/formal.hpp"
#include "gradual/lie.hpp"

namespace gradual {

using Word = std::vector<int>;

// Linear combination of PBW-normal words.
class UElem {
public:
  UElem() : alg_(nullptr) {}
  explicit UElem(const LieAlgebra* a) : alg_(a) {}

  const LieAlgebra* alg() const { return alg_; }
  const std::map<Word, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Word& w, const Rat& c) {
    if (c == 0) return;
    auto it = t_.find(w);
    if (it == t_.end()) {
      t_[w] = c;
    } else {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Rat coeff(const Word& w) const {
    auto it = t_.find(w);
    return it == t_.end() ? Rat(0) : it->second;
  }

  friend UElem operator+(const UElem& a, const UElem& b) {
    UElem r = a.t_.empty() ? b : a;
    if (a.t_.empty()) return r;
    for (const auto& [w, c] : b.t_) r.add(w, c);
    return r;
  }

  friend UElem operator*(const Rat& s, const UElem& a) {
    UElem r(a.alg_);
    if (s == 0) return r;
    for (const auto& [w, c] : a.t_) r.t_[w] = s * c;
    return r;
  }

  friend UElem operator-(const UElem& a, const UElem& b) { return a + Rat(-1) * b; }

  friend bool operator==(const UElem& a, const UElem& b) { return a.t_ == b.t_; }

private:
  const LieAlgebra* alg_;
  std::map<Word, Rat> t_;
};

// PBW machinery bound to one algebra; caches Φ on monomials.
class Pbw {
public:
  explicit Pbw(const LieAlgebra& a) : alg_(&a) {
    sym_ = GenSet::make(a.names, a.deg);
  }

  const LieAlgebra& algebra() const { return *alg_; }
  // S(g) is the free graded-commutative algebra on the basis of g.
  const GenSet& sym() const { return sym_; }

  bool is_normal(const Word& w) const {
    for (std::size_t p = 0; p + 1 < w.size(); ++p) {
      if (w[p] > w[p + 1]) return false;
      if (w[p] == w[p + 1] && alg_->par(w[p]) == 1) return false;
    }
    return true;
  }

  UElem normal_form(std::map<Word, Rat> work) const {
    UElem out(alg_);
    while (!work.empty()) {
      auto it = work.begin();
      Word w = it->first;
      Rat c = it->second;
      work.erase(it);
      if (c == 0) continue;
      std::size_t p = 0;
      for (; p + 1 < w.size(); ++p)
        if (w[p] > w[p + 1] || (w[p] == w[p + 1] && alg_->par(w[p]) == 1)) break;
      if (p + 1 >= w.size()) {
        out.add(w, c);
        continue;
      }
      int i = w[p], j = w[p + 1];
      auto substitute = [&](const LieAlgebra::Bracket& b, const Rat& scale) {
        for (const auto& [k, n] : b) {
          Word sub;
          sub.reserve(w.size() - 1);
          sub.insert(sub.end(), w.begin(), w.begin() + p);
          sub.push_back(k);
          sub.insert(sub.end(), w.begin() + p + 2, w.end());
          work[sub] += scale * n * c;
          if (work[sub] == 0) work.erase(sub);
        }
      };
      if (i == j) {
        substitute(alg_->bracket(i, i), Rat(1, 2));
      } else {
        int sgn = (alg_->par(i) * alg_->par(j)) % 2 == 0 ? 1 : -1;
        Word sw = w;
        std::swap(sw[p], sw[p + 1]);
        work[sw] += Rat(sgn) * c;
        if (work[sw] == 0) work.erase(sw);
        substitute(alg_->bracket(i, j), Rat(1));
      }
    }
    return out;
  }

  UElem one() const {
    UElem r(alg_);
    r.add({}, 1);
    return r;
  }

  UElem u_gen(std::size_t i) const {
    UElem r(alg_);
    r.add({static_cast<int>(i)}, 1);
    return r;
  }

  UElem u_mul(const UElem& a, const UElem& b) const {
    std::map<Word, Rat> raw;
    for (const auto& [wa, ca] : a.terms())
      for (const auto& [wb, cb] : b.terms()) {
        Word w = wa;
        w.insert(w.end(), wb.begin(), wb.end());
        raw[w] += ca * cb;
        if (raw[w] == 0) raw.erase(w);
      }
    return normal_form(std::move(raw));
  }

  // Φ on a monomial u_1…u_k: (1/k!) Σ_σ ε(σ) u_{σ(1)}…u_{σ(k)}.  Distinct
  // letter arrangements are enumerated once; each stands for ∏ aᵢ!
  // index-permutations of equal (necessarily even) letters, all with the
  // same Koszul sign.
  const UElem& symmetrize_mono(const Mono& m) {
    auto it = phi_.find(m);
    if (it != phi_.end()) return it->second;
    Word sorted;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (int r = 0; r < m[i]; ++r) sorted.push_back(static_cast<int>(i));
    Rat factor = 1;  // ∏ aᵢ! / k!
    for (int e : m)
      for (int r = 2; r <= e; ++r) factor *= r;
    for (std::size_t r = 2; r <= sorted.size(); ++r) factor /= r;
    std::map<Word, Rat> raw;
    Word w = sorted;
    do {
      int exp = 0;
      for (std::size_t p = 0; p < w.size(); ++p)
        for (std::size_t q = p + 1; q < w.size(); ++q)
          if (w[p] > w[q]) exp += alg_->par(w[p]) * alg_->par(w[q]);
      raw[w] += (exp % 2 == 0) ? factor : -factor;
      if (raw[w] == 0) raw.erase(w);
    } while (std::next_permutation(w.begin(), w.end()));
    return phi_.emplace(m, normal_form(std::move(raw))).first->second;
  }

  UElem symmetrize(const Elem& x) {
    UElem r(alg_);
    for (const auto& [m, c] : x.terms()) r = r + c * symmetrize_mono(m);
    return r;
  }

  // Φ⁻¹ by descending induction on word length: the top-length part of
  // Φ(monomial) is the sorted word itself with coefficient 1.
  Elem desymmetrize(const UElem& u) {
    Elem x(&sym_);
    UElem rest = u;
    while (!rest.is_zero()) {
      std::size_t d = 0;
      for (const auto& [w, c] : rest.terms()) d = std::max(d, w.size());
      Elem top(&sym_);
      for (const auto& [w, c] : rest.terms())
        if (w.size() == d) {
          Mono m(sym_.size(), 0);
          for (int l : w) m[l] += 1;
          top.add(m, c);
        }
      x = x + top;
      rest = rest - symmetrize(top);
      // symmetrize(top) reproduces exactly the length-d part of rest
    }
    return x;
  }

  Elem star(const Elem& x, const Elem& y) {
    return desymmetrize(u_mul(symmetrize(x), symmetrize(y)));
  }

  // antipode: S(u) = -u on primitives, extended as the Koszul
  // anti-automorphism S(u_1…u_k) = (-1)^k (reversal sign) u_k…u_1
  UElem antipode(const UElem& u) const {
    std::map<Word, Rat> raw;
    for (const auto& [w, c] : u.terms()) {
      Word rev(w.rbegin(), w.rend());
      int odd = 0;
      for (int l : w) odd += alg_->par(l);
      int exp = w.size() + (odd * (odd - 1)) / 2;
      raw[rev] += (exp % 2 == 0) ? c : -c;
      if (raw[rev] == 0) raw.erase(rev);
    }
    return normal_form(std::move(raw));
  }

  Rat counit(const UElem& u) const { return u.coeff({}); }

  // coproduct of a normal word: all splittings into complementary subwords,
  // with the Koszul sign for the letters routed left crossing the earlier
  // letters routed right.  Subwords of a normal word are normal.
  std::map<std::pair<Word, Word>, Rat> coproduct(const UElem& u) const {
    std::map<std::pair<Word, Word>, Rat> r;
    for (const auto& [w, c] : u.terms()) {
      const std::size_t k = w.size();
      for (std::size_t mask = 0; mask < (std::size_t(1) << k); ++mask) {
        Word l, rt;
        int exp = 0, right_par = 0;
        for (std::size_t p = 0; p < k; ++p) {
          if (mask & (std::size_t(1) << p)) {
            l.push_back(w[p]);
            exp += alg_->par(w[p]) * right_par;  // w[p] goes left, crosses earlier rights
          } else {
            rt.push_back(w[p]);
            right_par += alg_->par(w[p]);
          }
        }
        auto key = std::make_pair(l, rt);
        r[key] += (exp % 2 == 0) ? c : -c;
        if (r[key] == 0) r.erase(key);
      }
    }
    return r;
  }

  // Lie-Poisson bracket on S(g): the biderivation extending the bracket of
  // g, via {e_i, -} = the derivation with coefficients [e_i, e_j] and
  //   {a·e_l, x} = a·{e_l, x} + (-1)^{|e_l||x|} {a, x}·e_l.
  Elem poisson(const Elem& f, const Elem& g) {
    Elem r(&sym_);
    for (const auto& [ma, ca] : f.terms())
      for (const auto& [mb, cb] : g.terms())
        r = r + (ca * cb) * poisson_mono(ma, mb);
    return r;
  }

private:
  Elem ad_derivation(std::size_t i, const Elem& x) {
    VecField d = VecField::zero(sym_);
    for (std::size_t j = 0; j < sym_.size(); ++j) {
      Elem cj(&sym_);
      for (const auto& [k, n] : alg_->bracket(i, j)) {
        Mono m(sym_.size(), 0);
        m[k] = 1;
        cj.add(m, n);
      }
      d.coeff[j] = cj;
    }
    return apply(d, x);
  }

  Elem poisson_mono(const Mono& a, const Mono& b) {
    int last = -1;
    for (std::size_t i = a.size(); i-- > 0;)
      if (a[i] > 0) {
        last = static_cast<int>(i);
        break;
      }
    Elem bx = Elem::monomial(sym_, b);
    if (last < 0) return Elem::zero(sym_);
    Mono head = a;
    head[last] -= 1;
    Elem lhs = mul(Elem::monomial(sym_, head), ad_derivation(last, bx));
    int sgn = (sym_.par[last] * mono_parity(sym_, b)) % 2 == 0 ? 1 : -1;
    Elem rhs = mul(poisson_mono(head, b), Elem::gen(sym_, last));
    return lhs + Rat(sgn) * rhs;
  }

  const LieAlgebra* alg_;
  GenSet sym_;
  std::map<Mono, UElem> phi_;
};

// Left module on Hom(M,N): (u·f)(m) = u·f(m) - (-1)^{|u||f|} f(u·m).
// Basis: matrix units E_{a,p} (m_p ↦ n_a) flattened as a*dim(M)+p.
inline LieModule hom_module(const LieModule& m, const LieModule& n) {
  const LieAlgebra& alg = *m.alg;
  LieModule h;
  h.alg = m.alg;
  for (std::size_t a = 0; a < n.dim(); ++a)
    for (std::size_t p = 0; p < m.dim(); ++p) {
      h.names.push_back(n.names[a] + "(" + m.names[p] + ")");
      h.deg.push_back(alg.mode == GradingMode::Z ? n.deg[a] - m.deg[p]
                                                 : parity(n.deg[a] + m.deg[p]));
    }
  auto id = [&](std::size_t a, std::size_t p) { return a * m.dim() + p; };
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    SparseMatrix r(h.dim(), h.dim());
    for (std::size_t a = 0; a < n.dim(); ++a)
      for (std::size_t p = 0; p < m.dim(); ++p) {
        for (const auto& [ba, v] : n.rho[i].entries())
          if (ba.second == a) r.add(id(ba.first, p), id(a, p), v);
        int fpar = (parity(n.deg[a]) + m.par(p)) % 2;
        int sgn = (alg.par(i) * fpar) % 2 == 0 ? 1 : -1;
        for (const auto& [pq, v] : m.rho[i].entries())
          if (pq.first == p) r.add(id(a, pq.second), id(a, p), Rat(-sgn) * v);
      }
    h.rho.push_back(r);
  }
  return h;
}

// Left module on N ⊗ M*: u·(n⊗α) = (u·n)⊗α + (-1)^{|u||n|} n⊗(u·α).
// Basis flattened as a*dim(M*)+p, matching hom_module's layout so that the
// isomorphism φ(n⊗α)(m) = n·α(m) is the identity on basis labels.
inline LieModule tensor_with_dual(const LieModule& n, const LieModule& m) {
  const LieAlgebra& alg = *n.alg;
  LieModule md = dual_module(m);
  LieModule t;
  t.alg = n.alg;
  for (std::size_t a = 0; a < n.dim(); ++a)
    for (std::size_t p = 0; p < md.dim(); ++p) {
      t.names.push_back(n.names[a] + "⊗" + md.names[p]);
      t.deg.push_back(alg.mode == GradingMode::Z ? n.deg[a] + md.deg[p]
                                                 : parity(n.deg[a] + md.deg[p]));
    }
  auto id = [&](std::size_t a, std::size_t p) { return a * md.dim() + p; };
  for (std::size_t i = 0; i < alg.dim(); ++i) {
    SparseMatrix r(t.dim(), t.dim());
    for (std::size_t a = 0; a < n.dim(); ++a)
      for (std::size_t p = 0; p < md.dim(); ++p) {
        for (const auto& [ba, v] : n.rho[i].entries())
          if (ba.second == a) r.add(id(ba.first, p), id(a, p), v);
        int sgn = (alg.par(i) * parity(n.deg[a])) % 2 == 0 ? 1 : -1;
        for (const auto& [qp, v] : md.rho[i].entries())
          if (qp.second == p) r.add(id(a, qp.first), id(a, p), Rat(sgn) * v);
      }
    t.rho.push_back(r);
  }
  return t;
}

}  // namespace gradual
