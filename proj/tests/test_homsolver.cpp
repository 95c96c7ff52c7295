#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "homsolver.hpp"

using namespace cartan;

namespace {

FamilyConfig small_w() { return FamilyConfig{Family::W, 2, 2, Rat(0), false}; }

int sgn(int a, int b) { return (a && b) ? -1 : 1; }

// Naive dense incremental Gaussian eliminator, independent of RowEchelon and
// of the Bareiss path: plain fraction arithmetic, first nonzero pivot.
struct DenseElim {
  int cols;
  std::vector<std::vector<Rat>> rows;  // reduced, one pivot each
  std::vector<int> pivot;

  explicit DenseElim(int c) : cols(c) {}
  int rank() const { return static_cast<int>(rows.size()); }

  void insert(std::vector<Rat> v) {
    for (size_t r = 0; r < rows.size(); ++r) {
      const Rat f = v[pivot[r]];  // copy: the loop below overwrites v[pivot[r]]
      if (is_zero(f)) continue;
      for (int c = 0; c < cols; ++c) v[c] -= f * rows[r][c];
    }
    int p = -1;
    for (int c = 0; c < cols; ++c)
      if (!is_zero(v[c])) {
        p = c;
        break;
      }
    if (p < 0) return;
    Rat inv = Rat(1) / v[p];
    for (int c = 0; c < cols; ++c) v[c] *= inv;
    rows.push_back(std::move(v));
    pivot.push_back(p);
  }
};

// Rows of the twisted super-Jacobi residual for one triple, generated through
// sigma_image at unit parameter vectors rather than through the solver's
// accumulator. include_z: the third slot also carries a sigma block (phase-1
// domain triples); otherwise z is a fixed positive-degree field (phase-2).
void triple_rows(const SigmaParam& sp, CoordIndex& cx, int i, int j,
                 const VectorField* z_fixed, int k, DenseElim& el) {
  const Signature sig = sp.cfg.sig();
  const VectorField& x = sp.domain[i];
  const VectorField& y = sp.domain[j];
  const VectorField& z = z_fixed ? *z_fixed : sp.domain[k];
  int px = sp.domain_parity[i], py = sp.domain_parity[j];
  int pz = z_fixed ? z.parity_bit_or() : sp.domain_parity[k];
  VectorField byz = bracket(y, z), bzx = bracket(z, x), bxy = bracket(x, y);
  if (z_fixed && !bxy.is_zero()) return;  // phase-2 needs [x,y] = 0

  std::vector<int> slots{i};
  if (j != i) slots.push_back(j);
  if (!z_fixed && k != i && k != j) slots.push_back(k);
  std::map<int, std::vector<std::pair<int, Rat>>> by_coord;
  std::vector<Rat> t(sp.total_params, Rat(0));
  for (int s : slots) {
    for (size_t q = 0; q < sp.block[s].size(); ++q) {
      int col = sp.offset[s] + static_cast<int>(q);
      t[col] = Rat(1);
      VectorField res = VectorField::zero(sig);
      if (s == i) res = res + bracket(sigma_image(sp, t, i), byz).scaled(Rat(sgn(px, pz)));
      if (s == j) res = res + bracket(sigma_image(sp, t, j), bzx).scaled(Rat(sgn(py, px)));
      if (!z_fixed && s == k)
        res = res + bracket(sigma_image(sp, t, k), bxy).scaled(Rat(sgn(pz, py)));
      t[col] = Rat(0);
      for (const auto& [coord, val] : field_coords(res, cx))
        by_coord[coord].emplace_back(col, val);
    }
  }
  for (const auto& [coord, entries] : by_coord) {
    std::vector<Rat> row(sp.total_params, Rat(0));
    for (const auto& [col, val] : entries) row[col] += val;
    el.insert(std::move(row));
  }
}

}  // namespace

TEST_CASE("sigma parametrization contains id and every generated row kills it") {
  Algebra alg(small_w());
  SigmaParam sp = build_sigma(alg);
  CHECK(static_cast<int>(sp.id_coords.size()) == sp.total_params);
  // sigma(id_coords) reproduces the domain basis elementwise.
  for (size_t i = 0; i < sp.domain.size(); ++i)
    CHECK(sigma_image(sp, sp.id_coords, i) == sp.domain[i]);
  HomNullspace ns = solve_hom_nullspace(alg, sp);
  CHECK(ns.id_rows_zero);
  CHECK(ns.reverified);
  REQUIRE(ns.basis.size() == 1);
  // The single nullspace direction is a nonzero multiple of id.
  Rat ratio = 0;
  for (int c = 0; c < sp.total_params; ++c) {
    if (is_zero(sp.id_coords[c])) {
      CHECK(is_zero(ns.basis[0][c]));
      continue;
    }
    Rat r = ns.basis[0][c] / sp.id_coords[c];
    if (is_zero(ratio)) ratio = r;
    CHECK(ratio == r);
  }
  CHECK(!is_zero(ratio));
}

TEST_CASE("independent dense oracle reproduces the nullspace dimension") {
  Algebra alg(small_w());
  SigmaParam sp = build_sigma(alg);
  HomNullspace ns = solve_hom_nullspace(alg, sp);
  CoordIndex& cx = alg.coords();
  int N = static_cast<int>(sp.domain.size());
  DenseElim el(sp.total_params);
  std::vector<int> nullity_trace;
  for (int i = 0; i < N; ++i)
    for (int j = i; j < N; ++j) {
      for (int k = j; k < N; ++k) triple_rows(sp, cx, i, j, nullptr, k, el);
      nullity_trace.push_back(sp.total_params - el.rank());
    }
  for (int l = 1; l <= sp.codomain_max; ++l)
    for (const VectorField& z : alg.component(l).basis)
      for (int i = 0; i < N; ++i)
        for (int j = i; j < N; ++j) triple_rows(sp, cx, i, j, &z, 0, el);
  // Exhaustive row set, no early exit: the nullity matches the solver's.
  CHECK(sp.total_params - el.rank() == static_cast<int>(ns.basis.size()));
  // Nullity is monotone non-increasing as the row set grows.
  for (size_t s = 1; s < nullity_trace.size(); ++s)
    CHECK(nullity_trace[s] <= nullity_trace[s - 1]);
}

TEST_CASE("multiplicative filter leaves exactly zero and id") {
  Algebra alg(small_w());
  HomPipeline p = run_hom_pipeline(alg);
  CHECK(p.mult.status == Status::Pass);
  CHECK(p.mult.zero_and_id_only);
  REQUIRE(p.mult.solutions.size() == 2);
  bool saw_zero = false, saw_id = false;
  for (const auto& s : p.mult.solutions) {
    bool all_zero = true;
    for (const Rat& c : s) all_zero = all_zero && is_zero(c);
    if (all_zero) saw_zero = true;
    if (s == p.param.id_coords) saw_id = true;
  }
  CHECK(saw_zero);
  CHECK(saw_id);
}

TEST_CASE("depth-2 pipeline with implied rows and codomain stability") {
  FamilyConfig cfg{Family::K, 5, 4, Rat(0), false};
  Algebra alg(cfg);
  HomPipeline p = run_hom_pipeline(alg);
  REQUIRE(p.nullspace.basis.size() == 1);
  CHECK(p.mult.status == Status::Pass);
  CHECK(p.mult.zero_and_id_only);
  CHECK(verify_prop_minus1(alg, p).status == Status::Pass);
  CHECK(verify_prop_zero(alg, p).status == Status::Pass);
  Report ir = implied_rows_check(alg, p);
  CHECK(ir.status == Status::Pass);
  CHECK(ir.dims.at("checked") > 0);
  CHECK(codomain_sensitivity(alg, p).status == Status::Pass);
}

TEST_CASE("theorem step annihilator is zero and the degenerate variant inverts") {
  Algebra alg(small_w());
  CHECK(verify_theorem_step(alg, 1, false).status == Status::Pass);
  CHECK(verify_theorem_step(alg, 2, false).status == Status::Pass);
  CHECK(verify_theorem_step(alg, 1, true).status == Status::Fail);
}

TEST_CASE("kernel lemma at W(4,4)") {
  FamilyConfig cfg{Family::W, 4, 4, Rat(0), false};
  Algebra alg(cfg);
  Report r = kernel_ad_check(alg, 1, false);
  CHECK(r.status == Status::Pass);
  CHECK(r.dims.at("kernel") == 56);
  CHECK(r.dims.at("bracket_span") == 55);
}

TEST_CASE("membership lemma exhausts the admissible tuples") {
  FamilyConfig cfg{Family::W, 4, 4, Rat(0), false};
  Algebra alg(cfg);
  Report r = yuanl1_check(alg);
  CHECK(r.status == Status::Pass);
  CHECK(r.dims.at("checked") > 1000);
}
