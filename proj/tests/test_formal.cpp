#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "catalog_builders.hpp"
#include "gradual/formal.hpp"

using namespace gradual;

namespace {
// even x (degree 0 in Laurent tests), odd theta
GenSet poly_ctx() { return GenSet::make({"x", "th"}, {2, 1}); }
GenSet laurent_ctx() { return GenSet::make({"x", "th"}, {0, 1}, /*laurent=*/true); }
}  // namespace

TEST_CASE("generator sets compute parities from degrees") {
  GenSet gs = GenSet::make({"a", "b", "c"}, {0, -1, 3});
  CHECK(gs.par == std::vector<int>{0, 1, 1});
  CHECK(gs.index("c") == 2);
  CHECK_THROWS_AS(gs.index("zz"), Error);
}

TEST_CASE("odd generators square to zero and anticommute") {
  GenSet gs = GenSet::make({"u", "v"}, {1, 1});
  Elem u = Elem::gen(gs, 0), v = Elem::gen(gs, 1);
  CHECK(mul(u, u).is_zero());
  CHECK(mul(u, v) == Rat(-1) * mul(v, u));
  CHECK_FALSE(mul(u, v).is_zero());
}

TEST_CASE("monomial constraints are enforced") {
  GenSet gs = poly_ctx();
  CHECK_THROWS_AS(Elem::monomial(gs, {0, 2}), Error);   // odd exponent 2
  CHECK_THROWS_AS(Elem::monomial(gs, {-1, 0}), Error);  // negative without Laurent
  GenSet lg = laurent_ctx();
  CHECK_FALSE(Elem::monomial(lg, {-3, 1}).is_zero());
}

TEST_CASE("left derivative signs") {
  GenSet gs = GenSet::make({"u", "v"}, {1, 1});
  Elem uv = mul(Elem::gen(gs, 0), Elem::gen(gs, 1));
  CHECK(deriv(uv, 0) == Elem::gen(gs, 1));
  CHECK(deriv(uv, 1) == Rat(-1) * Elem::gen(gs, 0));
  GenSet pg = poly_ctx();
  Elem x3 = Elem::monomial(pg, {3, 0});
  CHECK(deriv(x3, 0) == Rat(3) * Elem::monomial(pg, {2, 0}));
}

TEST_CASE("product rule for the left derivative on random elements") {
  std::mt19937 rng(5u);
  GenSet gs = GenSet::make({"x", "u", "v"}, {2, 1, 1});
  for (int trial = 0; trial < 40; ++trial) {
    int pf = trial % 2;
    Elem f = cat::random_hom_elem(rng, gs, pf, 0, 3);
    Elem g = cat::random_hom_elem(rng, gs, trial % 3 == 0 ? 0 : 1, 0, 3);
    for (std::size_t j = 0; j < gs.size(); ++j) {
      int sgn = (gs.par[j] * pf) % 2 == 0 ? 1 : -1;
      CHECK(deriv(mul(f, g), j) == mul(deriv(f, j), g) + Rat(sgn) * mul(f, deriv(g, j)));
    }
  }
}

TEST_CASE("homogeneity bookkeeping") {
  GenSet gs = poly_ctx();
  Elem a = Elem::monomial(gs, {1, 1});  // degree 3, parity 1
  CHECK(a.hom_degree() == 3);
  CHECK(a.hom_parity() == 1);
  Elem b = a + Elem::monomial(gs, {1, 0});
  CHECK_FALSE(b.hom_degree().has_value());
  CHECK(mono_order({4, 1}) == 5);
}

TEST_CASE("divergence of basic fields") {
  GenSet gs = laurent_ctx();
  // x d/dx has divergence 1, th d/dth has divergence -1
  VecField xi = VecField::zero(gs);
  xi.coeff[0] = Elem::gen(gs, 0);
  CHECK(divergence(xi) == Elem::constant(gs, 1));
  VecField eta = VecField::zero(gs);
  eta.coeff[1] = Elem::gen(gs, 1);
  CHECK(divergence(eta) == Elem::constant(gs, -1));
  // [x d/dx, d/dx] = -d/dx
  VecField ddx = VecField::zero(gs);
  ddx.coeff[0] = Elem::constant(gs, 1);
  VecField br = vf_bracket(xi, ddx);
  CHECK(br.coeff[0] == Elem::constant(gs, -1));
  CHECK(br.coeff[1].is_zero());
}

TEST_CASE("integral extracts the residue-times-top-odd coefficient") {
  GenSet gs = laurent_ctx();
  CHECK(formal_integral(Elem::monomial(gs, {-1, 1})) == 1);
  CHECK(formal_integral(Elem::monomial(gs, {-1, 0})) == 0);
  CHECK(formal_integral(Elem::monomial(gs, {0, 1})) == 0);
  CHECK(formal_integral(Elem::monomial(gs, {-1, 1}, Rat(5, 2))) == Rat(5, 2));
  // even generators demand Laurent mode
  GenSet pg = poly_ctx();
  CHECK_THROWS_AS(formal_integral(Elem::constant(pg, 1)), Error);
  // purely odd contexts integrate without Laurent mode
  GenSet og = GenSet::make({"u", "v"}, {1, 1});
  CHECK(formal_integral(mul(Elem::gen(og, 0), Elem::gen(og, 1))) == 1);
}

TEST_CASE("Stokes, adjoint, and divergence rules on random Laurent data") {
  std::mt19937 rng(11u);
  GenSet gs = GenSet::make({"x", "y", "u", "v"}, {0, 2, 1, 1}, /*laurent=*/true);
  for (int trial = 0; trial < 30; ++trial) {
    int pxi = trial % 2;
    VecField xi = VecField::zero(gs);
    for (std::size_t i = 0; i < gs.size(); ++i)
      xi.coeff[i] = cat::random_hom_elem(rng, gs, (pxi + gs.par[i]) % 2, -2, 2);
    REQUIRE(xi.hom_parity() == pxi);

    // Stokes: the divergence of any field integrates to zero
    CHECK(formal_integral(divergence(xi)) == 0);

    int pf = (trial / 2) % 2;
    Elem f = cat::random_hom_elem(rng, gs, pf, -2, 2);
    Elem g = cat::random_hom_elem(rng, gs, trial % 3 == 0 ? 0 : 1, -2, 2);

    // adjoint identity <xi*(f), g> = -(-1)^{|xi||f|} <f, xi(g)>
    int sgn = (pxi * pf) % 2 == 0 ? 1 : -1;
    CHECK(pairing(adjoint_apply(xi, f), g) == Rat(-sgn) * pairing(f, apply(xi, g)));

    // product rule div(f xi) = f div(xi) + (-1)^{|f||xi|} xi(f)
    CHECK(divergence(vf_scale(f, xi)) ==
          mul(f, divergence(xi)) + Rat(sgn) * apply(xi, f));

    // bracket rule div([xi, eta]) = xi(div eta) - (-1)^{|xi||eta|} eta(div xi)
    int peta = (trial / 3) % 2;
    VecField eta = VecField::zero(gs);
    for (std::size_t i = 0; i < gs.size(); ++i)
      eta.coeff[i] = cat::random_hom_elem(rng, gs, (peta + gs.par[i]) % 2, -2, 2);
    int sxe = (pxi * peta) % 2 == 0 ? 1 : -1;
    CHECK(divergence(vf_bracket(xi, eta)) ==
          apply(xi, divergence(eta)) - Rat(sxe) * apply(eta, divergence(xi)));
  }
}

TEST_CASE("order filtering utilities") {
  GenSet gs = poly_ctx();
  std::vector<Mono> out;
  monomials_of_order(gs, 2, out);
  // x^2 and x·th
  CHECK(out.size() == 2);
  Elem f = Elem::monomial(gs, {3, 0}) + Elem::monomial(gs, {1, 1}) + Elem::constant(gs, 2);
  Elem t = truncate_order(f, 2);
  CHECK(t == Elem::monomial(gs, {1, 1}) + Elem::constant(gs, 2));
}
