// Acceptance gate: one pass/fail line per criterion, exit 0 only when every
// criterion holds.  All comparisons are exact rational identities.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "catalog_builders.hpp"
#include "gradual/io.hpp"

using namespace gradual;

namespace {

const std::string kCatalog = std::string(GRADUAL_SOURCE_DIR) + "/catalog/";

struct Checker {
  long long failures = 0;
  std::string first;

  void expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures == 0) first = what;
    ++failures;
  }
  bool ok() const { return failures == 0; }
};

std::vector<std::pair<std::string, LieAlgebra>> load_catalog() {
  std::vector<std::pair<std::string, LieAlgebra>> out;
  for (const char* name :
       {"abelian1", "abelian2", "abelian3", "abelian4", "nonabelian2",
        "heisenberg3", "sl2", "solvable_lambda2", "solvable_lambda_m3",
        "super_he", "super3"}) {
    io::json j = io::read_json_file(kCatalog + name + ".json");
    out.emplace_back(name, io::algebra_from_json(j));
  }
  return out;
}

Linfty load_linfty(const std::string& name) {
  return io::linfty_from_json(io::read_json_file(kCatalog + name + ".json"));
}

Elem order_part(const Elem& f, int k) {
  Elem r = Elem::zero(f.gens());
  for (const auto& [m, c] : f.terms())
    if (mono_order(m) == k) r.add(m, c);
  return r;
}

// ---------------------------------------------------------------------------

bool criterion_characters(Checker& c) {
  auto algebras = load_catalog();
  c.expect(algebras.size() >= 10, "catalog holds fewer than 10 algebras");
  for (const auto& [name, a] : algebras) {
    Transfer t(a);
    MainTheoremReport rep = verify_main_theorem(t);
    c.expect(rep.character_match, name + ": character differs from supertrace");
    c.expect(rep.character == supertrace_character(a), name + ": componentwise mismatch");
    c.expect(rep.closed, name + ": deformed Berezinian is not closed");
    c.expect(rep.degree_match, name + ": |B| != total dimension");
    c.expect(rep.degree && *rep.degree == total_dimension(a.deg, a.mode),
             name + ": reported degree is wrong");
  }
  return c.ok();
}

bool criterion_hodge(Checker& c) {
  using Bi = Transfer::Bi;
  std::mt19937 rng(101);
  for (const auto& [name, a] : load_catalog()) {
    Transfer t(a);
    const Bi& bt = t.berezinian();
    for (int trial = 0; trial < 200; ++trial) {
      Bi w = t.single(cat::random_mono(rng, t.left(), 0, 2),
                      cat::random_mono(rng, t.right(), 0, 2));
      // plain decomposition: ds + sd = id - t, dt = td, t^2 = t,
      // s^2 = st = ts = 0
      Bi hodge = Transfer::combine(t.d(t.homotopy(w)), t.homotopy(t.d(w)));
      c.expect(hodge == Transfer::combine(w, t.project(w), -1),
               name + ": ds + sd != id - t");
      c.expect(t.d(t.project(w)) == t.project(t.d(w)), name + ": dt != td");
      c.expect(t.project(t.project(w)) == t.project(w), name + ": t^2 != t");
      c.expect(t.homotopy(t.homotopy(w)).empty(), name + ": s^2 != 0");
      c.expect(t.homotopy(t.project(w)).empty(), name + ": st != 0");
      c.expect(t.project(t.homotopy(w)).empty(), name + ": ts != 0");
      // perturbed decomposition with the transferred operators
      Bi ph = Transfer::combine(t.perturbed(t.sprime(w)), t.sprime(t.perturbed(w)));
      c.expect(ph == Transfer::combine(w, t.tprime(w), -1),
               name + ": perturbed homotopy identity fails");
      c.expect(t.perturbed(t.tprime(w)) == t.tprime(t.perturbed(w)),
               name + ": perturbed dt != td");
      c.expect(t.tprime(t.tprime(w)) == t.tprime(w), name + ": t'^2 != t'");
      c.expect(t.sprime(t.sprime(w)).empty(), name + ": s'^2 != 0");
      c.expect(t.sprime(t.tprime(w)).empty(), name + ": s't' != 0");
      c.expect(t.tprime(t.sprime(w)).empty(), name + ": t's' != 0");
    }
    c.expect(t.perturbed(bt).empty(), name + ": base line not closed");
    c.expect(t.tprime(bt) == bt, name + ": base line not reproduced");
  }
  return c.ok();
}

bool criterion_eigenvalue(Checker& c) {
  using Bi = Transfer::Bi;
  std::mt19937 rng(102);
  for (const auto& [name, a] : load_catalog()) {
    Transfer t(a);
    for (int trial = 0; trial < 100; ++trial) {
      Mono l = cat::random_mono(rng, t.left(), 0, 3);
      Mono r = cat::random_mono(rng, t.right(), 0, 3);
      Bi w = t.single(l, r);
      Bi comm = Transfer::combine(t.laplace(t.d(w)), t.d(t.laplace(w)));
      c.expect(comm == Transfer::combine(Bi{}, w, Rat(t.lambda({l, r}))),
               name + ": commutator is not the scaling operator");
    }
  }
  return c.ok();
}

bool criterion_duality(Checker& c) {
  auto algebras = load_catalog();
  int seen = 0;
  for (const auto& [name, a] : algebras) {
    if (!hazewinkel_eligible(a) || a.dim() > 3) continue;
    ++seen;
    LieModule adj = adjoint_module(a);
    for (const LieModule& m : {trivial_module(a), adj, dual_module(adj)}) {
      HazewinkelReport rep = hazewinkel_check(a, m);
      c.expect(rep.match, name + ": twisted homology misses the complement");
      c.expect(rep.homology_twisted.size() == a.dim() + 1, name + ": wrong table size");
    }
  }
  c.expect(seen >= 6, "expected six ungraded catalog algebras of dim <= 3");
  return c.ok();
}

bool criterion_divergence(Checker& c) {
  for (const auto& [name, a] : load_catalog()) {
    GenSet duals = dual_context(a);
    c.expect(ce_divergence(a, duals) == supertrace_cocycle(a, duals),
             name + ": derivation divergence is not the supertrace cocycle");
  }
  return c.ok();
}

bool criterion_field_identities(Checker& c) {
  std::mt19937 rng(103);
  GenSet gs = GenSet::make({"x", "y", "u", "v"}, {0, 2, 1, 1}, /*laurent=*/true);
  for (int trial = 0; trial < 100; ++trial) {
    int pxi = trial % 2;
    VecField xi = VecField::zero(gs);
    for (std::size_t i = 0; i < gs.size(); ++i)
      xi.coeff[i] = cat::random_hom_elem(rng, gs, (pxi + gs.par[i]) % 2, -2, 2);
    c.expect(formal_integral(divergence(xi)) == 0, "divergence integral is nonzero");

    int pf = (trial / 2) % 2;
    Elem f = cat::random_hom_elem(rng, gs, pf, -2, 2);
    Elem g = cat::random_hom_elem(rng, gs, trial % 3 == 0 ? 0 : 1, -2, 2);
    int sgn = (pxi * pf) % 2 == 0 ? 1 : -1;
    c.expect(pairing(adjoint_apply(xi, f), g) ==
                 Rat(-sgn) * pairing(f, apply(xi, g)),
             "adjoint pairing identity fails");
    c.expect(divergence(vf_scale(f, xi)) ==
                 mul(f, divergence(xi)) + Rat(sgn) * apply(xi, f),
             "divergence product rule fails");

    int peta = (trial / 3) % 2;
    VecField eta = VecField::zero(gs);
    for (std::size_t i = 0; i < gs.size(); ++i)
      eta.coeff[i] = cat::random_hom_elem(rng, gs, (peta + gs.par[i]) % 2, -2, 2);
    int sxe = (pxi * peta) % 2 == 0 ? 1 : -1;
    c.expect(divergence(vf_bracket(xi, eta)) ==
                 apply(xi, divergence(eta)) - Rat(sxe) * apply(eta, divergence(xi)),
             "divergence bracket rule fails");
  }
  return c.ok();
}

bool criterion_periodic_family(Checker& c) {
  for (int n = 1; n <= 4; ++n) {
    std::string tag = "n=" + std::to_string(n);
    Linfty s = load_linfty("periodic_n" + std::to_string(n));
    c.expect(s.validate().ok(), tag + ": invalid structure");
    c.expect(s.divergence_cocycle().is_zero(), tag + ": nonzero divergence");
    c.expect(s.total_dim() == 2 * n, tag + ": wrong total dimension");
    LinftyCohomology h = s.truncated_cohomology(nullptr, 0, 2 * n + 1);
    for (const DegreeRow& r : h.degrees) {
      c.expect(r.stable, tag + ": unstable degree row");
      std::size_t want = (r.degree % 2 == 0 && r.degree <= 2 * n) ? 1 : 0;
      c.expect(r.dim == want, tag + ": wrong dimension in degree " +
                                  std::to_string(r.degree));
    }
    ConjectureEvidence ev = s.conjecture_evidence();
    c.expect(ev.symmetric, tag + ": duality table is not symmetric");
    c.expect(ev.total_dim == 2 * n, tag + ": wrong duality shift");
    c.expect(ev.rows.size() == static_cast<std::size_t>(2 * n + 1),
             tag + ": wrong table length");
    for (const ConjectureRow& r : ev.rows)
      c.expect(r.equal, tag + ": unequal duality row");
  }
  return c.ok();
}

bool criterion_polynomial_family(Checker& c) {
  for (int n = 1; n <= 5; ++n) {
    std::string tag = "n=" + std::to_string(n);
    Linfty s = load_linfty("twist_shift_n" + std::to_string(n));
    c.expect(s.validate().ok(), tag + ": invalid structure");
    c.expect(!s.hypothesis_h(), tag + ": finiteness hypothesis not reported false");
    if (n >= 2) c.expect(s.minimal(), tag + ": structure not minimal");
    Elem dv = s.divergence_cocycle();
    LinftyCohomology untw = s.truncated_cohomology(nullptr, 0, 1);
    LinftyCohomology tw = s.truncated_cohomology(&dv, 0, 1);
    auto dims = [&c, &tag](const LinftyCohomology& h) {
      std::vector<std::size_t> out;
      for (const DegreeRow& r : h.degrees) {
        c.expect(r.stable, tag + ": unstable degree row");
        out.push_back(r.dim);
      }
      return out;
    };
    c.expect(dims(untw) ==
                 std::vector<std::size_t>{1, static_cast<std::size_t>(n)},
             tag + ": untwisted dimensions differ");
    c.expect(dims(tw) ==
                 std::vector<std::size_t>{0, static_cast<std::size_t>(n - 1)},
             tag + ": twisted dimensions differ");
  }
  return c.ok();
}

bool criterion_slice_family(Checker& c) {
  for (int n = 1; n <= 3; ++n) {
    std::string tag = "n=" + std::to_string(n);
    Linfty s = load_linfty("order_slices_n" + std::to_string(n));
    c.expect(s.validate().ok(), tag + ": invalid structure");
    c.expect(s.divergence_cocycle().is_zero(), tag + ": nonzero divergence");
    c.expect(s.total_dim() == 3, tag + ": wrong total dimension");
    LinftyCohomology h = s.truncated_cohomology(nullptr, 0, 1);
    c.expect(h.order_graded, tag + ": slices are not order-graded");
    int stable_rows = 0;
    for (const SliceRow& r : h.slices) {
      if (!r.stable) continue;
      ++stable_rows;
      std::size_t want = r.degree == 0
                             ? 1
                             : static_cast<std::size_t>(std::min(r.order, n));
      c.expect(r.dim == want, tag + ": wrong slice at degree " +
                                  std::to_string(r.degree) + " order " +
                                  std::to_string(r.order));
    }
    c.expect(stable_rows > 2 * n, tag + ": stability window too small");
  }
  return c.ok();
}

bool criterion_cross_path(Checker& c) {
  // Quadratic structures match the direct complex.  The direct complex is
  // graded by word length k and the derivation preserves the weight
  // w = sum of exponents times generator degrees, while the vector-field path
  // grades by the shifted degree d = k - w; so the d-th dimension must equal
  // the sum of the (k, k - d) block dimensions of the direct complex.
  int compared = 0;
  for (const auto& [name, a] : load_catalog()) {
    if (a.mode != GradingMode::Z) continue;
    Linfty s = linfty_from_algebra(a);
    LinftyCohomology h = s.truncated_cohomology(nullptr, -6, 6);
    CochainComplex co(a, trivial_module(a));
    const GenSet& duals = co.duals();
    auto weight = [&](const Mono& mo) {
      long long w = 0;
      for (std::size_t i = 0; i < mo.size(); ++i)
        w += static_cast<long long>(mo[i]) * (1 - duals.degree[i]);
      return w;
    };
    auto pick = [&](int k, long long w) {
      std::vector<std::size_t> idx;
      if (k < 0) return idx;
      const auto& b = co.basis(k);
      for (std::size_t j = 0; j < b.size(); ++j)
        if (weight(b[j].first) == w) idx.push_back(j);
      return idx;
    };
    auto block = [&](int k, long long w) {
      std::vector<std::size_t> cols = pick(k, w);
      std::vector<std::size_t> rows = pick(k + 1, w);
      SparseMatrix r(rows.size(), cols.size());
      if (k < 0) return r;
      std::map<std::size_t, std::size_t> colpos, rowpos;
      for (std::size_t j = 0; j < cols.size(); ++j) colpos[cols[j]] = j;
      for (std::size_t i = 0; i < rows.size(); ++i) rowpos[rows[i]] = i;
      for (const auto& [rc, v] : co.matrix(k).entries()) {
        auto cj = colpos.find(rc.second);
        if (cj == colpos.end()) continue;
        auto ri = rowpos.find(rc.first);
        c.expect(ri != rowpos.end(), name + ": derivation leaves the weight block");
        if (ri != rowpos.end()) r.add(ri->second, cj->second, v);
      }
      return r;
    };
    c.expect(h.order_graded, name + ": quadratic derivation is not order-graded");
    for (const SliceRow& r : h.slices) {
      if (!r.stable) continue;
      ++compared;
      std::size_t direct = homology_dim(block(r.order, r.order - r.degree),
                                        block(r.order - 1, r.order - r.degree));
      c.expect(r.dim == direct, name + ": dimensions split in degree " +
                                    std::to_string(r.degree) + " order " +
                                    std::to_string(r.order));
    }
    // when every generator sits in degree zero the two gradings coincide
    bool flat = true;
    for (int d : a.deg) flat = flat && d == 0;
    if (flat) {
      int top = static_cast<int>(a.dim());
      std::vector<std::size_t> ce = co.cohomology(top);
      LinftyCohomology h0 = s.truncated_cohomology(nullptr, 0, top);
      for (const DegreeRow& r : h0.degrees) {
        c.expect(r.stable, name + ": unstable quadratic row");
        c.expect(r.dim == ce[r.degree], name + ": word-length table differs in degree " +
                                            std::to_string(r.degree));
      }
    }
  }
  c.expect(compared >= 50, "too few stable rows were compared");
  // the boundary is adjoint to the differential on every basis pair
  for (const auto& [name, a] : cat::all()) {
    LieModule m = trivial_module(a);
    LieModule md = dual_module(m);
    ChainComplex ch(a, m);
    CochainComplex co(a, dual_module(m));
    const GenSet& duals = co.duals();
    auto weight = [&](const Mono& lam, std::size_t q) {
      Rat w = chain_pairing_weight(duals, lam);
      if ((md.par(q) * mono_parity(duals, lam)) % 2 == 1) w = -w;
      return w;
    };
    for (int k = 1; k <= static_cast<int>(a.dim()) + 1; ++k) {
      const SparseMatrix& del = ch.boundary(k);
      const SparseMatrix& dm = co.matrix(k - 1);
      const auto& src = ch.basis(k);
      const auto& tgt = ch.basis(k - 1);
      for (std::size_t alpha = 0; alpha < src.size(); ++alpha)
        for (std::size_t gamma = 0; gamma < tgt.size(); ++gamma) {
          int parA = (mono_parity(duals, tgt[gamma].first) +
                      md.par(tgt[gamma].second)) % 2;
          Rat lhs = dm.get(alpha, gamma) *
                    weight(src[alpha].first, src[alpha].second);
          Rat rhs = del.get(gamma, alpha) *
                    weight(tgt[gamma].first, tgt[gamma].second);
          if (parA == 0) rhs = -rhs;
          c.expect(lhs == rhs, name + ": pairing transform mismatch at k=" +
                                   std::to_string(k));
        }
    }
  }
  return c.ok();
}

bool criterion_pbw(Checker& c) {
  std::mt19937 rng(104);
  for (const auto& [name, a] : load_catalog()) {
    Pbw p(a);
    const GenSet& gs = p.sym();
    // symmetrization round-trip on every basis word of order <= 5
    for (int k = 0; k <= 5; ++k) {
      std::vector<Mono> monos;
      monomials_of_order(gs, k, monos);
      for (const Mono& mo : monos) {
        Word w;
        for (std::size_t i = 0; i < mo.size(); ++i)
          for (int r = 0; r < mo[i]; ++r) w.push_back(i);
        UElem u(&a);
        u.add(w, 1);
        c.expect(p.symmetrize(p.desymmetrize(u)) == u,
                 name + ": round-trip differs on a word of order " +
                     std::to_string(k));
      }
    }
    // associativity of the star product on random triples
    for (int trial = 0; trial < 50; ++trial) {
      Elem f = Elem::monomial(gs, cat::random_mono(rng, gs, 0, 1));
      Elem g = Elem::monomial(gs, cat::random_mono(rng, gs, 0, 1));
      Elem h = Elem::monomial(gs, cat::random_mono(rng, gs, 0, 1));
      c.expect(p.star(p.star(f, g), h) == p.star(f, p.star(g, h)),
               name + ": star product fails associativity");
    }
    // expansion: top order is the product, next order half the bracket
    for (int trial = 0; trial < 50; ++trial) {
      Mono mf = cat::random_mono(rng, gs, 0, 2);
      Mono mg = cat::random_mono(rng, gs, 0, 2);
      Elem f = Elem::monomial(gs, mf), g = Elem::monomial(gs, mg);
      int pq = mono_order(mf) + mono_order(mg);
      Elem st = p.star(f, g);
      c.expect(order_part(st, pq) == mul(f, g), name + ": top order differs");
      c.expect(order_part(st, pq - 1) == Rat(1, 2) * p.poisson(f, g),
               name + ": subleading order differs");
      for (const auto& [mo, co] : st.terms())
        c.expect(mono_order(mo) <= pq, name + ": star raises the order");
    }
  }
  return c.ok();
}

}  // namespace

int main() {
  struct Row {
    int num;
    const char* name;
    bool (*fn)(Checker&);
    double limit;
  };
  const Row rows[] = {
      {1, "dualizing character equals the adjoint supertrace", criterion_characters, 5.0},
      {2, "Hodge operator identities on random bimonomials", criterion_hodge, 0},
      {3, "Laplacian commutator acts by the counting eigenvalue", criterion_eigenvalue, 0},
      {4, "twisted homology equals complementary cohomology", criterion_duality, 2.0},
      {5, "structure divergence equals the supertrace cocycle", criterion_divergence, 0},
      {6, "integral, adjoint, and divergence rules for formal fields", criterion_field_identities, 0},
      {7, "periodic two-generator family with symmetric duality table", criterion_periodic_family, 3.0},
      {8, "polynomial family dimensions shift down under the twist", criterion_polynomial_family, 0},
      {9, "three-generator family order slices", criterion_slice_family, 0},
      {10, "quadratic structures agree with the direct complex and pairing", criterion_cross_path, 0},
      {11, "symmetrization round-trip and star product expansion", criterion_pbw, 10.0},
  };

  bool all_ok = true;
  for (const Row& row : rows) {
    Checker c;
    bool body_ok = false;
    std::string thrown;
    auto t0 = std::chrono::steady_clock::now();
    try {
      body_ok = row.fn(c);
    } catch (const std::exception& e) {
      thrown = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool in_time = row.limit <= 0 || secs <= row.limit;
    bool pass = body_ok && thrown.empty() && in_time;
    all_ok = all_ok && pass;
    std::printf("%s  %2d  %s  (%.2fs)\n", pass ? "PASS" : "FAIL", row.num,
                row.name, secs);
    if (!thrown.empty()) std::printf("          threw: %s\n", thrown.c_str());
    if (!c.ok())
      std::printf("          %lld failed check(s); first: %s\n", c.failures,
                  c.first.c_str());
    if (!in_time)
      std::printf("          exceeded the %.0fs budget\n", row.limit);
  }
  return all_ok ? 0 : 1;
}
