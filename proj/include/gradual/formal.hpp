#pragma once

// Free graded-commutative algebra on a finite set of homogeneous generators:
// polynomials in the even generators (Laurent polynomials when `laurent` is
// set) tensored with the exterior algebra on the odd ones.  Provides products,
// left partial derivatives, vector fields (= derivations), divergence, the
// odd-Laurent integral and the induced pairing.
//
// Sign conventions used throughout:
//  * monomials are stored sorted by generator index; multiplying two sorted
//    monomials picks up (-1) for every pair of odd factors that crosses;
//  * ∂/∂x_j is a left derivative: it anticommutes past the odd factors
//    standing left of x_j, so ∂/∂x2 (x1 x2) = -x1 for odd x1, x2;
//  * a vector field ξ = Σ f_i ∂/∂x_i acts by ξ(g) = Σ f_i · (∂g/∂x_i).

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gradual/errors.hpp"
#include "gradual/graded.hpp"
#include "gradual/rational.hpp"

namespace gradual {

// Generator context.  `degree[i]` is the ℤ-degree (or 0/1 in parity-only
// settings); `par[i]` drives every sign.  Odd generators square to zero;
// even generators admit negative exponents exactly when `laurent` is set.
struct GenSet {
  std::vector<std::string> names;
  std::vector<int> degree;
  std::vector<int> par;
  bool laurent = false;

  std::size_t size() const { return names.size(); }

  std::size_t index(const std::string& n) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == n) return i;
    fail(ErrorKind::InvalidInput, "unknown generator '" + n + "'");
  }

  static GenSet make(std::vector<std::string> names, std::vector<int> degrees,
                     bool laurent = false) {
    GenSet g;
    g.names = std::move(names);
    g.degree = std::move(degrees);
    if (g.names.size() != g.degree.size())
      fail(ErrorKind::ShapeMismatch, "GenSet: name/degree count mismatch");
    g.par.reserve(g.degree.size());
    for (int d : g.degree) g.par.push_back(parity(d));
    g.laurent = laurent;
    return g;
  }
};

using Mono = std::vector<int>;  // exponent per generator, in GenSet order

inline int mono_order(const Mono& m) {
  int o = 0;
  for (int e : m) o += e;
  return o;
}

inline int mono_degree(const GenSet& gs, const Mono& m) {
  int d = 0;
  for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gs.degree[i];
  return d;
}

inline int mono_parity(const GenSet& gs, const Mono& m) {
  int p = 0;
  for (std::size_t i = 0; i < m.size(); ++i) p += m[i] * gs.par[i];
  return ((p % 2) + 2) % 2;
}

// A finite 𝕜-linear combination of monomials.
class Elem {
public:
  Elem() : gs_(nullptr) {}
  explicit Elem(const GenSet* gs) : gs_(gs) {}

  static Elem zero(const GenSet& gs) { return Elem(&gs); }

  static Elem constant(const GenSet& gs, const Rat& c) {
    Elem e(&gs);
    e.add(Mono(gs.size(), 0), c);
    return e;
  }

  static Elem gen(const GenSet& gs, std::size_t i) {
    Elem e(&gs);
    Mono m(gs.size(), 0);
    m[i] = 1;
    e.add(m, 1);
    return e;
  }

  static Elem monomial(const GenSet& gs, const Mono& m, const Rat& c = 1) {
    Elem e(&gs);
    e.add(m, c);
    return e;
  }

  const GenSet& gens() const {
    if (!gs_) fail(ErrorKind::Internal, "Elem without generator context");
    return *gs_;
  }
  const GenSet* gens_ptr() const { return gs_; }

  const std::map<Mono, Rat>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add(const Mono& m, const Rat& c) {
    if (c == 0) return;
    check_mono(m);
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_[m] = c;
    } else {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Rat coeff(const Mono& m) const {
    auto it = t_.find(m);
    return it == t_.end() ? Rat(0) : it->second;
  }

  // parity of a parity-homogeneous element; nullopt for 0 or mixed parity
  std::optional<int> hom_parity() const {
    std::optional<int> p;
    for (const auto& [m, c] : t_) {
      int q = mono_parity(*gs_, m);
      if (!p)
        p = q;
      else if (*p != q)
        return std::nullopt;
    }
    return p;
  }

  std::optional<int> hom_degree() const {
    std::optional<int> d;
    for (const auto& [m, c] : t_) {
      int e = mono_degree(*gs_, m);
      if (!d)
        d = e;
      else if (*d != e)
        return std::nullopt;
    }
    return d;
  }

  friend Elem operator+(const Elem& a, const Elem& b) {
    Elem r = a.t_.empty() ? b : a;
    if (a.t_.empty()) return r;
    for (const auto& [m, c] : b.t_) r.add(m, c);
    return r;
  }

  friend Elem operator-(const Elem& a, const Elem& b) { return a + Rat(-1) * b; }

  friend Elem operator*(const Rat& s, const Elem& a) {
    Elem r(a.gs_);
    if (s == 0) return r;
    for (const auto& [m, c] : a.t_) r.t_[m] = s * c;
    return r;
  }

  friend bool operator==(const Elem& a, const Elem& b) { return a.t_ == b.t_; }

private:
  void check_mono(const Mono& m) const {
    if (!gs_ || m.size() != gs_->size())
      fail(ErrorKind::ShapeMismatch, "monomial length does not match generator count");
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (gs_->par[i] == 1 && (m[i] < 0 || m[i] > 1))
        fail(ErrorKind::ShapeMismatch, "odd generator exponent outside {0,1}");
      if (gs_->par[i] == 0 && m[i] < 0 && !gs_->laurent)
        fail(ErrorKind::ShapeMismatch, "negative exponent outside Laurent mode");
    }
  }

  const GenSet* gs_;
  std::map<Mono, Rat> t_;
};

// Product of two monomials; returns the Koszul sign, or 0 if an odd
// generator collides.  Merging two sorted words keeps the relative order
// inside each factor, so the sign counts, for each odd generator of b, the
// odd generators of a with strictly larger index.
inline int mono_mul(const GenSet& gs, const Mono& a, const Mono& b, Mono& out) {
  out.resize(a.size());
  int exp = 0, odd_tail = 0;  // odd_tail = odd letters of a with index > i
  for (std::size_t i = a.size(); i-- > 0;) {
    if (gs.par[i] == 1) {
      if (a[i] + b[i] > 1) return 0;
      if (b[i] == 1) exp += odd_tail;
      odd_tail += a[i];
    }
    out[i] = a[i] + b[i];
  }
  return (exp % 2 == 0) ? 1 : -1;
}

inline Elem mul(const Elem& a, const Elem& b) {
  const GenSet& gs = a.gens();
  Elem r(&gs);
  Mono m;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = mono_mul(gs, ma, mb, m);
      if (s != 0) r.add(m, Rat(s) * ca * cb);
    }
  return r;
}

// Left partial derivative with respect to generator j.
inline Elem deriv(const Elem& a, std::size_t j) {
  const GenSet& gs = a.gens();
  Elem r(&gs);
  for (const auto& [m, c] : a.terms()) {
    if (m[j] == 0) continue;
    Mono d = m;
    d[j] -= 1;
    if (gs.par[j] == 1) {
      int exp = 0;
      for (std::size_t i = 0; i < j; ++i) exp += m[i] * gs.par[i];
      r.add(d, (exp % 2 == 0) ? c : -c);
    } else {
      r.add(d, Rat(m[j]) * c);
    }
  }
  return r;
}

// Derivation ξ = Σ coeff[i] ∂/∂(generator i).
struct VecField {
  const GenSet* gs = nullptr;
  std::vector<Elem> coeff;

  static VecField zero(const GenSet& gs) {
    VecField v;
    v.gs = &gs;
    v.coeff.assign(gs.size(), Elem(&gs));
    return v;
  }

  // parity of the field as an operator when homogeneous: |coeff_i| + |x_i|
  std::optional<int> hom_parity() const {
    std::optional<int> p;
    for (std::size_t i = 0; i < coeff.size(); ++i) {
      if (coeff[i].is_zero()) continue;
      auto q = coeff[i].hom_parity();
      if (!q) return std::nullopt;
      int op = (*q + gs->par[i]) % 2;
      if (!p)
        p = op;
      else if (*p != op)
        return std::nullopt;
    }
    return p;
  }
};

inline Elem apply(const VecField& v, const Elem& f) {
  Elem r(&f.gens());
  for (std::size_t i = 0; i < v.coeff.size(); ++i) {
    if (v.coeff[i].is_zero()) continue;
    r = r + mul(v.coeff[i], deriv(f, i));
  }
  return r;
}

// Divergence ∇(ξ) = Σ (-1)^{|f_i||x_i|} ∂f_i/∂x_i, applied term by term so
// parity-inhomogeneous coefficients are handled componentwise.
inline Elem divergence(const VecField& v) {
  const GenSet& gs = *v.gs;
  Elem r(&gs);
  for (std::size_t i = 0; i < v.coeff.size(); ++i) {
    if (gs.par[i] == 0) {
      r = r + deriv(v.coeff[i], i);
      continue;
    }
    for (const auto& [m, c] : v.coeff[i].terms()) {
      int sgn = (mono_parity(gs, m) * gs.par[i]) % 2 == 0 ? 1 : -1;
      r = r + Rat(sgn) * deriv(Elem::monomial(gs, m, c), i);
    }
  }
  return r;
}

// Commutator of derivations, determined by its values on generators.
// Both fields must be parity-homogeneous.
inline VecField vf_bracket(const VecField& a, const VecField& b) {
  auto pa = a.hom_parity(), pb = b.hom_parity();
  if (!pa || !pb)
    fail(ErrorKind::InvalidInput, "vf_bracket: fields must be parity-homogeneous");
  int sgn = (*pa * *pb) % 2 == 0 ? 1 : -1;
  VecField r = VecField::zero(*a.gs);
  for (std::size_t i = 0; i < r.coeff.size(); ++i)
    r.coeff[i] = apply(a, b.coeff[i]) - Rat(sgn) * apply(b, a.coeff[i]);
  return r;
}

// Multiplication operator f·(-) composed with ξ: the field with coefficients
// f·coeff_i, i.e. (fξ)(g) = f·ξ(g).
inline VecField vf_scale(const Elem& f, const VecField& v) {
  VecField r = VecField::zero(*v.gs);
  for (std::size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] = mul(f, v.coeff[i]);
  return r;
}

// Integral over the odd generators and formal residue in the even ones:
// the coefficient of (∏ even gens)^(-1) · (∏ odd gens).  Only meaningful in
// Laurent mode (otherwise that coefficient cannot occur and 0 is returned).
inline Rat formal_integral(const Elem& f) {
  const GenSet& gs = f.gens();
  Mono target(gs.size());
  for (std::size_t i = 0; i < gs.size(); ++i) target[i] = gs.par[i] == 1 ? 1 : -1;
  if (!gs.laurent) {
    bool has_even = false;
    for (int p : gs.par) has_even |= (p == 0);
    if (has_even)
      fail(ErrorKind::InvalidInput, "formal_integral: even generators require Laurent mode");
  }
  return f.coeff(target);
}

inline Rat pairing(const Elem& f, const Elem& g) { return formal_integral(mul(f, g)); }

// Adjoint of a vector field with respect to the pairing: ξ*(f) = ξ(f) + ∇(ξ)·f.
inline Elem adjoint_apply(const VecField& v, const Elem& f) {
  return apply(v, f) + mul(divergence(v), f);
}

// All monomials of the given total order (Laurent exponents excluded:
// this enumerates the polynomial part only, odd exponents in {0,1}).
inline std::string mono_str(const GenSet& gs, const Mono& m) {
  std::string s;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!s.empty()) s += " ";
    s += gs.names[i];
    if (m[i] != 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

inline void monomials_of_order(const GenSet& gs, int order, std::vector<Mono>& out) {
  Mono cur(gs.size(), 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == gs.size()) {
      if (left == 0) out.push_back(cur);
      return;
    }
    int cap = gs.par[i] == 1 ? std::min(1, left) : left;
    for (int e = 0; e <= cap; ++e) {
      cur[i] = e;
      self(self, i + 1, left - e);
    }
    cur[i] = 0;
  };
  rec(rec, 0, order);
}

inline Elem truncate_order(const Elem& f, int max_order) {
  Elem r(&f.gens());
  for (const auto& [m, c] : f.terms())
    if (mono_order(m) <= max_order) r.add(m, c);
  return r;
}

}  // namespace gradual
