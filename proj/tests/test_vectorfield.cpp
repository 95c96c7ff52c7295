#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "vectorfield.hpp"

using namespace cartan;

namespace {

const Signature sig44{4, 4};
const Signature sig54{5, 4};
const Signature sig45{4, 5};

SuperPoly x(const Signature& s, int i) { return SuperPoly::variable(s, i); }
VectorField dd(const Signature& s, int r) { return VectorField::partial_field(s, r); }

VectorField xd(const Signature& s, int i, int r) {
  return VectorField::term(SuperPoly::variable(s, i), r);
}

VectorField random_field(const Signature& s, int parity, int max_w, Rng& rng) {
  VectorField D(s);
  for (int r = 1; r <= s.dim(); ++r) {
    if (rng() % 2) continue;
    int fpar = parity ^ (s.odd_index(r) ? 1 : 0);
    D.coeff(r) = random_homogeneous(s, fpar, max_w, rng);
  }
  return D;
}

}  // namespace

TEST_CASE("apply") {
  CHECK(dd(sig44, 1).apply(x(sig44, 1) * x(sig44, 1)) == x(sig44, 1).scaled(2));
  CHECK(xd(sig44, 1, 2).apply(x(sig44, 2)) == x(sig44, 1));
  // x5 d6 applied to x6 x7 via super-Leibniz.
  CHECK(xd(sig44, 5, 6).apply(x(sig44, 6) * x(sig44, 7)) == x(sig44, 5) * x(sig44, 7));
}

TEST_CASE("bracket examples") {
  VectorField lhs = bracket(xd(sig44, 1, 2), xd(sig44, 2, 1));
  CHECK(lhs == xd(sig44, 1, 1) - xd(sig44, 2, 2));
  CHECK(bracket(dd(sig44, 1), dd(sig44, 2)).is_zero());
  CHECK(bracket(dd(sig44, 5), xd(sig44, 5, 5)) == dd(sig44, 5));
  VectorField mixed = dd(sig44, 1) + dd(sig44, 5);
  CHECK_THROWS_AS(bracket(mixed, dd(sig44, 1)), std::domain_error);
}

TEST_CASE("bracket equals operator commutator on random data") {
  Rng rng(3);
  for (int t = 0; t < 200; ++t) {
    int pd = rng() % 2, pe = rng() % 2;
    VectorField D = random_field(sig44, pd, 2, rng);
    VectorField E = random_field(sig44, pe, 2, rng);
    SuperPoly f = random_homogeneous(sig44, rng() % 2, 2, rng);
    int sign = (pd && pe) ? -1 : 1;
    SuperPoly lhs = bracket(D, E).apply(f);
    SuperPoly rhs = D.apply(E.apply(f)) - E.apply(D.apply(f)).scaled(sign);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("super-Jacobi and antisymmetry on random fields") {
  Rng rng(5);
  for (int t = 0; t < 1000; ++t) {
    int px = rng() % 2, py = rng() % 2, pz = rng() % 2;
    VectorField X = random_field(sig44, px, 2, rng);
    VectorField Y = random_field(sig44, py, 2, rng);
    VectorField Z = random_field(sig44, pz, 2, rng);
    CHECK((bracket(X, Y) + bracket(Y, X).scaled((px && py) ? -1 : 1)).is_zero());
    VectorField j = bracket(X, bracket(Y, Z)).scaled((px && pz) ? -1 : 1) +
                    bracket(Y, bracket(Z, X)).scaled((py && px) ? -1 : 1) +
                    bracket(Z, bracket(X, Y)).scaled((pz && py) ? -1 : 1);
    CHECK(j.is_zero());
  }
}

TEST_CASE("divergence") {
  CHECK(divergence(xd(sig44, 1, 1)) == SuperPoly::constant(sig44, 1));
  CHECK(divergence(xd(sig44, 5, 5)) == SuperPoly::constant(sig44, -1));
  for (int r = 1; r <= 8; ++r) CHECK(divergence(dd(sig44, r)).is_zero());
}

TEST_CASE("d_ij") {
  VectorField v = d_ij(1, 2, x(sig44, 1) * x(sig44, 2));
  CHECK(v == xd(sig44, 2, 2) - xd(sig44, 1, 1));
  CHECK(d_ij(3, 5, SuperPoly::constant(sig44, 1)).is_zero());
  CHECK(d_ij(2, 2, x(sig44, 2) * x(sig44, 3)).is_zero());  // even i = j cancels
  // Odd i = j survives: D_ii(f) = -2 d_i(f) d_i for odd i.
  VectorField w = d_ij(5, 5, x(sig44, 5) * x(sig44, 6));
  CHECK(w == VectorField::term(x(sig44, 6).scaled(-2), 5));
}

TEST_CASE("d_h examples (m=4, r=2)") {
  IndexMaps maps{Family::H, 4, 4};
  CHECK(d_h(x(sig44, 1), maps) == dd(sig44, 3));
  CHECK(d_h(x(sig44, 1) * x(sig44, 3), maps) == xd(sig44, 3, 3) - xd(sig44, 1, 1));
  CHECK(d_h(SuperPoly::constant(sig44, 1), maps).is_zero());
}

TEST_CASE("d_k examples (m=5, r=2)") {
  IndexMaps maps{Family::K, 5, 4};
  CHECK(d_k(SuperPoly::constant(sig54, 1), maps) == dd(sig54, 5).scaled(2));
  CHECK(d_k(x(sig54, 1), maps) == dd(sig54, 3) + xd(sig54, 1, 5));
  VectorField lhs = bracket(d_k(x(sig54, 1), maps), d_k(x(sig54, 3), maps));
  CHECK(lhs == dd(sig54, 5).scaled(2));
}

TEST_CASE("d_ho examples (m=4, n=4)") {
  IndexMaps maps{Family::HO, 4, 4};
  CHECK(d_ho(x(sig44, 1), maps) == dd(sig44, 5));
  // i = 5 is odd and f = x5 is odd, so the Koszul factor is -1.
  CHECK(d_ho(x(sig44, 5), maps) == -dd(sig44, 1));
  CHECK(d_ho(SuperPoly::constant(sig44, 1), maps).is_zero());
}

TEST_CASE("d_ko examples (m=4, n=5)") {
  IndexMaps maps{Family::KO, 4, 5};
  CHECK(d_ko(SuperPoly::constant(sig45, 1), maps) == dd(sig45, 9).scaled(-2));
  CHECK(d_ko(x(sig45, 9), maps) == -euler(sig45, 4) - xd(sig45, 9, 9).scaled(2));
  CHECK(d_ko(x(sig45, 1), maps) == dd(sig45, 5) - xd(sig45, 1, 9));
}

TEST_CASE("div_lambda examples (m=4)") {
  IndexMaps maps{Family::SKO, 4, 5};
  Rat lam = make_rat(2, 3);
  CHECK(div_lambda(x(sig45, 9), lam, maps) == SuperPoly::constant(sig45, lam * 8));
  CHECK(div_lambda(x(sig45, 9), 0, maps).is_zero());
  CHECK(div_lambda(SuperPoly::constant(sig45, 1), lam, maps).is_zero());
  // Hand-check with explicit signs: d1 d5 (x1 x5) = 1, |f| odd.
  CHECK(div_lambda(x(sig45, 1) * x(sig45, 5), lam, maps) ==
        SuperPoly::constant(sig45, -2));
}

TEST_CASE("bracket_formula matches the commutator, all families") {
  struct Case {
    Family fam;
    Signature sig;
  };
  const Case cases[] = {{Family::H, sig44},  {Family::K, sig54},
                        {Family::HO, sig44}, {Family::KO, sig45},
                        {Family::SHO, sig44}, {Family::SKO, sig45}};
  for (const auto& c : cases) {
    IndexMaps maps{c.fam, c.sig.m, c.sig.n};
    Rng rng(31 + static_cast<int>(c.fam));
    for (int t = 0; t < 500; ++t) {
      SuperPoly f = random_homogeneous(c.sig, rng() % 2, 3, rng);
      SuperPoly g = random_homogeneous(c.sig, rng() % 2, 3, rng);
      if (f.is_zero() || g.is_zero()) continue;
      VectorField lhs = bracket(d_x(c.fam, f, maps), d_x(c.fam, g, maps));
      CHECK(lhs == bracket_formula(c.fam, f, g, maps));
    }
  }
}

TEST_CASE("bracket_formula hand examples") {
  IndexMaps mh{Family::H, 4, 4};
  CHECK(bracket_formula(Family::H, x(sig44, 1), x(sig44, 3), mh) ==
        bracket(d_h(x(sig44, 1), mh), d_h(x(sig44, 3), mh)));
  IndexMaps mk{Family::K, 5, 4};
  CHECK(bracket_formula(Family::K, x(sig54, 1), x(sig54, 3), mk) ==
        dd(sig54, 5).scaled(2));
  for (int i = 1; i <= 9; ++i) {
    if (i == 5) continue;
    CHECK(bracket_formula(Family::K, SuperPoly::constant(sig54, 1), x(sig54, i), mk) ==
          bracket(d_k(SuperPoly::constant(sig54, 1), mk), d_k(x(sig54, i), mk)));
  }
}

TEST_CASE("d_x maps homogeneous input to parity-homogeneous output") {
  struct Case {
    Family fam;
    Signature sig;
  };
  const Case cases[] = {{Family::H, sig44}, {Family::K, sig54},
                        {Family::HO, sig44}, {Family::KO, sig45}};
  for (const auto& c : cases) {
    IndexMaps maps{c.fam, c.sig.m, c.sig.n};
    Rng rng(41);
    for (int t = 0; t < 200; ++t) {
      SuperPoly f = random_homogeneous(c.sig, rng() % 2, 3, rng);
      if (f.is_zero()) continue;
      CHECK(d_x(c.fam, f, maps).parity() != Parity::Mixed);
    }
  }
}

TEST_CASE("index maps") {
  IndexMaps h{Family::H, 4, 4};
  CHECK(h.iprime(1) == 3);
  CHECK(h.iprime(3) == 1);
  CHECK(h.iprime(6) == 6);
  CHECK(h.tau(1) == 1);
  CHECK(h.tau(3) == -1);
  CHECK(h.tau(6) == 1);
  CHECK_FALSE(h.nu().has_value());
  IndexMaps k{Family::K, 5, 4};
  CHECK(k.nu() == 5);
  IndexMaps ko{Family::KO, 4, 5};
  CHECK(ko.iprime(1) == 5);
  CHECK(ko.iprime(8) == 4);
  CHECK(ko.nu() == 9);
  IndexMaps sko{Family::SKO, 4, 5};
  CHECK(sko.nu() == 9);
}
