#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "superpoly.hpp"

using namespace cartan;

namespace {

const Signature sig44{4, 4};

SuperPoly x(int i) { return SuperPoly::variable(sig44, i); }

// Independent super-Leibniz oracle: differentiate a product term-by-term by
// expanding the monomial as a factor list and applying the product rule with
// explicit Koszul signs. Used to pin the signs of partial().
SuperPoly leibniz_partial_oracle(int r, const SuperPoly& p) {
  const Signature& sig = p.sig();
  SuperPoly out(sig);
  for (const auto& [mono, c] : p.terms()) {
    // Factor list: even variables with multiplicity, then odd ascending.
    std::vector<int> factors;
    for (int i = 0; i < sig.m; ++i)
      for (int e = 0; e < mono.even[i]; ++e) factors.push_back(i + 1);
    for (int j = sig.m + 1; j <= sig.dim(); ++j)
      if (mono.has_odd(j, sig.m)) factors.push_back(j);
    int dr_parity = sig.odd_index(r) ? 1 : 0;
    for (size_t k = 0; k < factors.size(); ++k) {
      if (factors[k] != r) continue;
      // d_r passes the prefix factors[0..k).
      int prefix_parity = 0;
      for (size_t t = 0; t < k; ++t)
        if (sig.odd_index(factors[t])) prefix_parity ^= 1;
      int sign = (dr_parity && prefix_parity) ? -1 : 1;
      SuperPoly term = SuperPoly::constant(sig, c * sign);
      for (size_t t = 0; t < factors.size(); ++t) {
        if (t == k) continue;
        term = term * SuperPoly::variable(sig, factors[t]);
      }
      out = out + term;
    }
  }
  return out;
}

}  // namespace

TEST_CASE("mono_mul basics") {
  Mono x1 = mono_var(sig44, 1);
  auto sq = mono_mul(x1, x1);
  CHECK(sq.sign == 1);
  CHECK(sq.mono.even[0] == 2);
  auto cube = mono_mul(sq.mono, x1);
  CHECK(cube.sign == 1);
  CHECK(cube.mono.even[0] == 3);

  Mono x5 = mono_var(sig44, 5);
  CHECK(mono_mul(x5, x5).sign == 0);  // Grassmann square-zero

  Mono x6 = mono_var(sig44, 6);
  auto p = mono_mul(x6, x5);
  CHECK(p.sign == -1);  // one transposition
  CHECK(p.mono.odd == mono_mul(x5, x6).mono.odd);
}

TEST_CASE("poly_mul examples") {
  SuperPoly a = x(1) + x(5);
  SuperPoly b = x(1) - x(5);
  CHECK(a * b == x(1) * x(1));  // cross terms cancel, x5^2 = 0

  SuperPoly p = x(1) * x(2) + x(5) * x(6);
  CHECK(p * SuperPoly::constant(sig44, 1) == p);

  // x5 x6 x7 x8: even number of transpositions overall.
  SuperPoly q = (x(5) * x(6)) * (x(7) * x(8));
  REQUIRE(q.term_count() == 1);
  CHECK(q.terms().begin()->second == 1);
}

TEST_CASE("partial examples") {
  SuperPoly x1cubed = x(1) * x(1) * x(1);
  CHECK(partial(1, x1cubed) == (x(1) * x(1)).scaled(3));
  CHECK(partial(6, x(5) * x(6)) == -x(5));
  for (int r = 1; r <= 8; ++r)
    for (int s = 1; s <= 8; ++s) {
      SuperPoly d = partial(r, x(s));
      if (r == s)
        CHECK(d == SuperPoly::constant(sig44, 1));
      else
        CHECK(d.is_zero());
    }
}

TEST_CASE("weight") {
  Weights ones = all_ones(sig44);
  CHECK(*(x(1) * x(2)).weight(ones) == 2);
  Weights gk = ones;
  gk[3] = 2;  // gamma_4 = 2
  CHECK(*x(4).weight(gk) == 2);
  CHECK_FALSE((x(1) + x(1) * x(2)).weight(ones).has_value());
  CHECK_THROWS_AS((void)SuperPoly::zero(sig44).weight(ones), std::domain_error);
}

TEST_CASE("random_homogeneous determinism") {
  Rng r1(1), r2(1);
  SuperPoly a = random_homogeneous(sig44, 0, 3, r1);
  SuperPoly b = random_homogeneous(sig44, 0, 3, r2);
  CHECK(a == b);
  CHECK(a.parity() != Parity::Mixed);
  Rng r3(99);
  CHECK(random_homogeneous(sig44, 1, 0, r3).is_zero());
}

TEST_CASE("supercommutativity and associativity on random pairs") {
  Rng rng(7);
  for (int t = 0; t < 1000; ++t) {
    int pa = rng() % 2, pb = rng() % 2;
    SuperPoly a = random_homogeneous(sig44, pa, 3, rng);
    SuperPoly b = random_homogeneous(sig44, pb, 3, rng);
    int sign = (pa && pb) ? -1 : 1;
    CHECK(a * b == (b * a).scaled(sign));
  }
  for (int t = 0; t < 200; ++t) {
    SuperPoly a = random_homogeneous(sig44, rng() % 2, 2, rng);
    SuperPoly b = random_homogeneous(sig44, rng() % 2, 2, rng);
    SuperPoly c = random_homogeneous(sig44, rng() % 2, 2, rng);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("super-Leibniz rule for every partial") {
  Rng rng(11);
  for (int t = 0; t < 300; ++t) {
    int pf = rng() % 2;
    SuperPoly f = random_homogeneous(sig44, pf, 3, rng);
    SuperPoly g = random_homogeneous(sig44, rng() % 2, 3, rng);
    for (int r = 1; r <= 8; ++r) {
      int sign = (sig44.odd_index(r) && pf) ? -1 : 1;
      SuperPoly lhs = partial(r, f * g);
      SuperPoly rhs = partial(r, f) * g + (f * partial(r, g)).scaled(sign);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("partial matches the term-expansion oracle") {
  Rng rng(13);
  for (int t = 0; t < 200; ++t) {
    SuperPoly f = random_homogeneous(sig44, rng() % 2, 4, rng);
    for (int r = 1; r <= 8; ++r) CHECK(partial(r, f) == leibniz_partial_oracle(r, f));
  }
}

TEST_CASE("partials super-commute") {
  Rng rng(17);
  for (int t = 0; t < 200; ++t) {
    SuperPoly f = random_homogeneous(sig44, rng() % 2, 4, rng);
    for (int r = 1; r <= 8; ++r)
      for (int s = r; s <= 8; ++s) {
        int sign = (sig44.odd_index(r) && sig44.odd_index(s)) ? -1 : 1;
        CHECK(partial(r, partial(s, f)) == partial(s, partial(r, f)).scaled(sign));
      }
  }
}

TEST_CASE("monomials_of_weight counts") {
  Weights ones = all_ones(sig44);
  CHECK(monomials_of_weight(sig44, ones, 0).size() == 1);
  CHECK(monomials_of_weight(sig44, ones, 1).size() == 8);
  CHECK(monomials_of_weight(sig44, ones, 2).size() == 32);  // 10 + 16 + 6
  // K(5,4) gamma: weight of x_5 is 2.
  Signature k54{5, 4};
  Weights gk = all_ones(k54);
  gk[4] = 2;
  CHECK(monomials_of_weight(k54, gk, 2).size() == 33);
}
