#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "families.hpp"

using namespace cartan;

namespace {

std::vector<FamilyConfig> default_configs() {
  return {
      {Family::W, 4, 4},   {Family::S, 4, 4},
      {Family::H, 4, 4},   {Family::K, 5, 4},
      {Family::HO, 4, 4},  {Family::SHO, 4, 4},
      {Family::KO, 4, 5},  {Family::SKO, 4, 5, Rat(0)},
      {Family::SKO, 4, 5, Rat(1)}, {Family::SKO, 4, 5, make_rat(2, 3)},
  };
}

}  // namespace

TEST_CASE("config validation and derived data") {
  CHECK_THROWS_AS(Algebra({Family::H, 5, 4}), std::invalid_argument);
  CHECK_THROWS_AS(Algebra({Family::K, 4, 4}), std::invalid_argument);
  CHECK_THROWS_AS(Algebra({Family::HO, 4, 5}), std::invalid_argument);
  CHECK_THROWS_AS(Algebra({Family::KO, 4, 4}), std::invalid_argument);
  CHECK_THROWS_AS(Algebra({Family::SKO, 4, 4}), std::invalid_argument);

  FamilyConfig k{Family::K, 5, 4};
  CHECK(k.depth() == 2);
  CHECK(k.gamma()[4] == 2);
  CHECK(k.nu() == 5);
  FamilyConfig w{Family::W, 4, 4};
  CHECK(w.depth() == 1);
  CHECK(w.gamma() == Weights(8, 1));
  FamilyConfig sko{Family::SKO, 4, 5, make_rat(2, 3)};
  CHECK(sko.depth() == 2);
  CHECK(sko.gamma()[8] == 2);
  CHECK(sko.name() == "SKO(4,5;2/3)");
}

TEST_CASE("component dimensions") {
  Algebra w({Family::W, 4, 4});
  CHECK(w.component(-1).dim() == 8);
  CHECK(w.component(0).dim() == 64);
  CHECK_THROWS_AS(w.component(-2), std::out_of_range);

  Algebra s({Family::S, 4, 4});
  CHECK(s.component(-1).dim() == 8);
  CHECK(s.component(0).dim() == 63);

  Algebra k({Family::K, 5, 4});
  CHECK(k.component(-2).dim() == 1);
  CHECK(k.component(-1).dim() == 8);
}

TEST_CASE("basis elements are weight- and parity-homogeneous") {
  for (const FamilyConfig& cfg : default_configs()) {
    Algebra alg(cfg);
    Weights gamma = cfg.gamma();
    for (int j = -cfg.depth(); j <= 1; ++j) {
      const GradedComponent& comp = alg.component(j);
      CHECK(comp.certified);
      for (const VectorField& v : comp.basis) {
        CHECK(v.parity() != Parity::Mixed);
        auto w = v.weight(gamma);
        REQUIRE(w.has_value());
        CHECK(*w == j);
      }
    }
  }
}

TEST_CASE("spanning-set generators match the computed components") {
  for (const FamilyConfig& cfg : default_configs()) {
    CAPTURE(cfg.name());
    Algebra alg(cfg);
    for (int j = -cfg.depth(); j <= 0; ++j) {
      CAPTURE(j);
      FieldSpan bullets(&alg.coords());
      for (const VectorField& g : alg.bullet_generators(j)) bullets.add(g);
      CHECK(bullets.equals(alg.span(j)));
    }
  }
}

TEST_CASE("SKO degree-0 generator coefficient: m-reading holds, n-reading fails") {
  FamilyConfig n_reading{Family::SKO, 4, 5, Rat(1)};
  n_reading.sko_weight_uses_n = true;
  Algebra alg(n_reading);
  FieldSpan bullets(&alg.coords());
  for (const VectorField& g : alg.bullet_generators(0)) bullets.add(g);
  CHECK_FALSE(bullets.equals(alg.span(0)));
}

TEST_CASE("membership") {
  Signature sig44{4, 4};
  Algebra w({Family::W, 4, 4});
  CHECK(w.member(VectorField::term(SuperPoly::variable(sig44, 1), 1)));

  Algebra s({Family::S, 4, 4});
  VectorField diag = VectorField::term(SuperPoly::variable(sig44, 1), 1) -
                     VectorField::term(SuperPoly::variable(sig44, 2), 2);
  CHECK(s.member(diag));
  CHECK_FALSE(s.member(VectorField::term(SuperPoly::variable(sig44, 1), 1)));

  IndexMaps ho_maps{Family::HO, 4, 4};
  Algebra sho({Family::SHO, 4, 4});
  SuperPoly x1 = SuperPoly::variable(sig44, 1), x2 = SuperPoly::variable(sig44, 2);
  SuperPoly x5 = SuperPoly::variable(sig44, 5);
  CHECK(divergence(d_ho(x1 * x2, ho_maps)).is_zero());
  CHECK(sho.member_prime(d_ho(x1 * x2, ho_maps)));
  CHECK_FALSE(divergence(d_ho(x1 * x5, ho_maps)).is_zero());
  CHECK_FALSE(sho.member_prime(d_ho(x1 * x5, ho_maps)));

  Signature sig45{4, 5};
  IndexMaps ko_maps{Family::KO, 4, 5};
  SuperPoly x9 = SuperPoly::variable(sig45, 9);
  Algebra sko0({Family::SKO, 4, 5, Rat(0)});
  CHECK(sko0.member_prime(d_ko(x9, ko_maps)));
  Algebra sko1({Family::SKO, 4, 5, Rat(1)});
  CHECK_FALSE(sko1.member_prime(d_ko(x9, ko_maps)));

  VectorField mixed = VectorField::partial_field(sig44, 1) +
                      VectorField::partial_field(sig44, 5);
  CHECK_THROWS_AS((void)w.member(mixed), std::domain_error);
}

TEST_CASE("transitivity at degree 0 (spot check)") {
  for (FamilyConfig cfg : {FamilyConfig{Family::W, 4, 4},
                           FamilyConfig{Family::K, 5, 4}}) {
    Algebra alg(cfg);
    const auto& zero_basis = alg.component(0).basis;
    const auto& minus1 = alg.component(-1).basis;
    // Rows: coordinates of [e_a, d] over all d in degree -1; kernel must be 0.
    CoordIndex stacked;
    std::vector<SparseRow> cols(zero_basis.size());
    for (size_t a = 0; a < zero_basis.size(); ++a) {
      int block = 0;
      for (const VectorField& d : minus1) {
        SparseRow r = field_coords(bracket(zero_basis[a], d), stacked);
        for (auto& [c, v] : r) cols[a].emplace_back(c + block, v);
        block += 1 << 20;
      }
      std::sort(cols[a].begin(), cols[a].end(),
                [](const auto& p, const auto& q) { return p.first < q.first; });
    }
    // Transpose into equations over the a-variables.
    std::map<int, SparseRow> eqs;
    for (size_t a = 0; a < cols.size(); ++a)
      for (const auto& [c, v] : cols[a]) eqs[c].emplace_back(static_cast<int>(a), v);
    std::vector<SparseRow> rows;
    for (auto& [c, r] : eqs) rows.push_back(std::move(r));
    CHECK(nullspace_of_rows(rows, static_cast<int>(cols.size())).empty());
  }
}

TEST_CASE("truncated algebra: W(4,4) structure constants") {
  Algebra alg({Family::W, 4, 4});
  TruncatedAlgebra t = build_truncated(alg, 1);
  CHECK(t.jmin == -1);
  CHECK(t.comp(-1).dim() == 8);
  CHECK(t.comp(1).dim() == 256);

  // [d_a, x_i d_r] = delta_{ai} d_r: locate x_1 d_2 in the degree-0 basis.
  Signature sig{4, 4};
  VectorField x1d2 = VectorField::term(SuperPoly::variable(sig, 1), 2);
  auto coords = alg.span(0).coords_of(x1d2);
  REQUIRE(coords.has_value());
  int b = -1;
  for (size_t k = 0; k < coords->size(); ++k)
    if (!is_zero((*coords)[k])) {
      REQUIRE(b == -1);
      b = static_cast<int>(k);
      CHECK((*coords)[k] == 1);
    }
  const auto& table = t.brackets.at({-1, 0});
  for (int a = 0; a < 8; ++a) {
    // Degree -1 basis is d_1..d_8 in order.
    CHECK(t.comp(-1).basis[a] == VectorField::partial_field(sig, a + 1));
    if (a == 0) {
      REQUIRE(table[a][b].size() == 1);
      VectorField got = VectorField::zero(sig);
      for (const auto& [k, v] : table[a][b])
        got = got + t.comp(-1).basis[k].scaled(v);
      CHECK(got == VectorField::partial_field(sig, 2));
    } else {
      CHECK(table[a][b].empty());
    }
  }

  std::string text = t.serialize();
  CHECK(text.rfind("cartan-truncated-algebra v1\n", 0) == 0);
  CHECK(text.find("config W(4,4)") != std::string::npos);
  CHECK(t.serialize() == text);  // deterministic
}

TEST_CASE("truncated algebra: stored brackets reproduce the field brackets") {
  Algebra alg({Family::K, 5, 4});
  TruncatedAlgebra t = build_truncated(alg, 0);
  int nonzero_mm = 0;
  const auto& mm = t.brackets.at({-1, -1});
  for (size_t a = 0; a < mm.size(); ++a)
    for (size_t b = 0; b < mm[a].size(); ++b)
      if (!mm[a][b].empty()) ++nonzero_mm;
  // [D_K(x_i), D_K(x_j)] is nonzero exactly when j = i'.
  CHECK(nonzero_mm == 8);

  Rng rng(51);
  for (const auto& [degs, table] : t.brackets) {
    const auto& A = t.comp(degs.first).basis;
    const auto& B = t.comp(degs.second).basis;
    for (int trial = 0; trial < 40; ++trial) {
      if (A.empty() || B.empty()) break;
      size_t a = rng() % A.size(), b = rng() % B.size();
      VectorField got = VectorField::zero(t.cfg.sig());
      for (const auto& [k, v] : table[a][b])
        got = got + t.comp(degs.first + degs.second).basis[k].scaled(v);
      CHECK(got == bracket(A[a], B[b]));
    }
  }
}

TEST_CASE("S(4,4) is divergence-free across the window") {
  Algebra alg({Family::S, 4, 4});
  for (int j = -1; j <= 1; ++j)
    for (const VectorField& v : alg.component(j).basis)
      CHECK(divergence(v).is_zero());
}

TEST_CASE("SKO(4,5) degree -2 piece from the derived brackets") {
  for (const Rat& lam : {Rat(0), Rat(1), make_rat(2, 3)}) {
    Algebra alg({Family::SKO, 4, 5, lam});
    CHECK(alg.component(-2).dim() == 1);
    CHECK(alg.component(-1).dim() == 8);
  }
}
