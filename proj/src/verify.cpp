#include "verify.hpp"

#include <array>
#include <json.hpp>
#include <memory>

namespace cartan {

namespace {

using nlohmann::json;

// Pipelines are expensive; several suites share one per config.
struct Cached {
  std::unique_ptr<Algebra> alg;
  std::unique_ptr<HomPipeline> pipeline;
};

std::string cache_key(const FamilyConfig& cfg) {
  return cfg.name() + (cfg.sko_weight_uses_n ? "#n" : "");
}

Cached& cache_slot(const FamilyConfig& cfg) {
  static std::map<std::string, Cached> cache;
  Cached& slot = cache[cache_key(cfg)];
  if (!slot.alg) slot.alg = std::make_unique<Algebra>(cfg);
  return slot;
}

Algebra& cached_algebra(const FamilyConfig& cfg) { return *cache_slot(cfg).alg; }

HomPipeline& cached_pipeline(const FamilyConfig& cfg, int codomain_max) {
  Cached& slot = cache_slot(cfg);
  if (!slot.pipeline || slot.pipeline->param.codomain_max != codomain_max)
    slot.pipeline = std::make_unique<HomPipeline>(
        run_hom_pipeline(*slot.alg, codomain_max));
  return *slot.pipeline;
}

bool presented_family(Family f) { return f != Family::W && f != Family::S; }

// Random parity-homogeneous element of the algebra: a small rational
// combination of component basis elements of one parity across the window
// [-depth, 2]. Coefficient weight stays <= 4 (degree <= 2 components).
VectorField random_member(Algebra& alg, int parity_bit, Rng& rng) {
  const FamilyConfig& cfg = alg.config();
  std::vector<const VectorField*> pool;
  for (int j = -cfg.depth(); j <= 2; ++j)
    for (const VectorField& v : alg.component(j).basis)
      if (v.parity_bit_or() == parity_bit) pool.push_back(&v);
  VectorField out = VectorField::zero(cfg.sig());
  if (pool.empty()) return out;
  for (int t = 0; t < 4; ++t) {
    long num = static_cast<long>(rng() % 7) - 3;
    long den = 1 + static_cast<long>(rng() % 3);
    const VectorField* pick = pool[rng() % pool.size()];
    out = out + pick->scaled(make_rat(num, den));
  }
  return out;
}

SuiteResult base_result(const std::string& name, const FamilyConfig& cfg,
                        const SuiteParams& p) {
  SuiteResult r;
  r.suite = name;
  r.config = cfg.name();
  r.seed = p.seed;
  return r;
}

void fail(SuiteResult& r, const std::string& ce) {
  r.status = Status::Fail;
  if (r.counterexample.empty()) r.counterexample = ce;
}

void merge_report(SuiteResult& r, const std::string& prefix, const Report& rep) {
  for (const auto& [k, v] : rep.dims) r.dims[prefix + k] = v;
  if (rep.status == Status::Fail) fail(r, prefix + rep.counterexample);
  else if (rep.status == Status::Inconclusive && r.status == Status::Pass)
    r.status = Status::Inconclusive;
}

SuiteResult suite_jacobi(const FamilyConfig& cfg, const SuiteParams& p) {
  SuiteResult r = base_result("jacobi", cfg, p);
  Algebra& alg = cached_algebra(cfg);
  Rng rng(p.seed);
  r.status = Status::Pass;
  for (long s = 0; s < p.samples; ++s) {
    int pa = rng() % 2, pb = rng() % 2, pc = rng() % 2;
    VectorField a = random_member(alg, pa, rng);
    VectorField b = random_member(alg, pb, rng);
    VectorField c = random_member(alg, pc, rng);
    VectorField lhs = bracket(bracket(a, b), c);
    VectorField rhs = bracket(a, bracket(b, c)) -
                      bracket(b, bracket(a, c)).scaled(make_rat(pa && pb ? -1 : 1));
    if (!(lhs == rhs)) {
      fail(r, "super-Jacobi residual nonzero at sample " + std::to_string(s));
      break;
    }
  }
  r.dims["samples"] = p.samples;
  return r;
}

SuiteResult suite_antisym(const FamilyConfig& cfg, const SuiteParams& p) {
  SuiteResult r = base_result("antisym", cfg, p);
  Algebra& alg = cached_algebra(cfg);
  Rng rng(p.seed);
  r.status = Status::Pass;
  for (long s = 0; s < p.samples; ++s) {
    int pa = rng() % 2, pb = rng() % 2;
    VectorField a = random_member(alg, pa, rng);
    VectorField b = random_member(alg, pb, rng);
    VectorField res =
        bracket(a, b) + bracket(b, a).scaled(make_rat(pa && pb ? -1 : 1));
    if (!res.is_zero()) {
      fail(r, "antisymmetry residual nonzero at sample " + std::to_string(s));
      break;
    }
  }
  r.dims["samples"] = p.samples;
  return r;
}

SuiteResult suite_bracket_formula(const FamilyConfig& cfg, const SuiteParams& p) {
  if (!presented_family(cfg.family))
    throw std::invalid_argument("bracket-formula requires a presented family");
  SuiteResult r = base_result("bracket-formula", cfg, p);
  const Signature sig = cfg.sig();
  const IndexMaps maps = cfg.maps();
  Rng rng(p.seed);
  r.status = Status::Pass;
  for (long s = 0; s < p.samples; ++s) {
    SuperPoly f = random_homogeneous(sig, rng() % 2, 4, rng);
    SuperPoly g = random_homogeneous(sig, rng() % 2, 4, rng);
    VectorField lhs = bracket(d_x(cfg.family, f, maps), d_x(cfg.family, g, maps));
    if (!(lhs == bracket_formula(cfg.family, f, g, maps))) {
      fail(r, "bracket-formula residual nonzero at sample " + std::to_string(s));
      break;
    }
  }
  r.dims["samples"] = p.samples;
  return r;
}

SuiteResult suite_grading(const FamilyConfig& cfg, const SuiteParams& p) {
  SuiteResult r = base_result("grading", cfg, p);
  Algebra& alg = cached_algebra(cfg);
  r.status = Status::Pass;
  for (int j = -cfg.depth(); j <= 0; ++j) {
    FieldSpan bullets(&alg.coords());
    for (const VectorField& g : alg.bullet_generators(j)) bullets.add(g);
    r.dims["dim[" + std::to_string(j) + "]"] = alg.component(j).dim();
    if (!bullets.equals(alg.span(j)))
      fail(r, "bullet span differs from the component at degree " +
                  std::to_string(j));
  }
  return r;
}

SuiteResult suite_transitivity(const FamilyConfig& cfg, const SuiteParams& p) {
  SuiteResult r = base_result("transitivity", cfg, p);
  Algebra& alg = cached_algebra(cfg);
  CoordIndex& cx = alg.coords();
  r.status = Status::Pass;
  const auto& minus1 = alg.component(-1).basis;
  for (int l = 0; l <= 2; ++l) {
    // Kernel of x -> ([x, d])_{d in degree -1}, per parity.
    std::array<std::vector<VectorField>, 2> parts;
    for (const VectorField& v : alg.component(l).basis)
      parts[v.parity_bit_or()].push_back(v);
    long kern = 0;
    for (int pbit = 0; pbit < 2; ++pbit) {
      std::vector<VectorField> start = parts[pbit];
      for (const VectorField& d : minus1) {
        if (start.empty()) break;
        std::map<int, SparseRow> eqs;
        for (size_t a = 0; a < start.size(); ++a)
          for (const auto& [c, v] : field_coords(bracket(start[a], d), cx))
            eqs[c].emplace_back(static_cast<int>(a), v);
        std::vector<SparseRow> rows;
        for (auto& [c, row] : eqs) rows.push_back(std::move(row));
        std::vector<VectorField> next;
        for (const SparseRow& sol :
             nullspace_of_rows(rows, static_cast<int>(start.size()))) {
          VectorField v = VectorField::zero(cfg.sig());
          for (const auto& [i, c] : sol) v = v + start[i].scaled(c);
          next.push_back(std::move(v));
        }
        start = std::move(next);
      }
      kern += static_cast<long>(start.size());
    }
    r.dims["kernel[" + std::to_string(l) + "]"] = kern;
    if (kern != 0)
      fail(r, "nonzero transitivity kernel at degree " + std::to_string(l));
  }
  return r;
}

SuiteResult suite_ll3(const FamilyConfig& cfg, const SuiteParams& p) {
  SuiteResult r = base_result("lemma-ll3", cfg, p);
  Algebra& alg = cached_algebra(cfg);
  std::optional<int> nu = cfg.nu();
  r.status = Status::Pass;
  long checked = 0;
  for (int i = 1; i <= cfg.sig().dim(); ++i) {
    if (nu && i == *nu) continue;
    Report lit = kernel_ad_check(alg, i, false);
    ++checked;
    if (lit.status != Status::Pass)
      fail(r, "literal form at i=" + std::to_string(i) + ": " +
                  lit.counterexample);
    if (presented_family(cfg.family)) {
      Report pres = kernel_ad_check(alg, i, true);
      ++checked;
      if (pres.status != Status::Pass)
        fail(r, "presented form at i=" + std::to_string(i) + ": " +
                    pres.counterexample);
    }
  }
  r.dims["checked"] = checked;
  return r;
}

SuiteResult suite_yuanl1(const FamilyConfig& cfg, const SuiteParams& p) {
  SuiteResult r = base_result("lemma-yuanl1", cfg, p);
  Algebra& alg = cached_algebra(cfg);
  Report rep = yuanl1_check(alg);
  r.status = rep.status;
  r.dims = rep.dims;
  r.counterexample = rep.counterexample;
  return r;
}

SuiteResult suite_prop(const std::string& name, const FamilyConfig& cfg,
                       const SuiteParams& p) {
  SuiteResult r = base_result(name, cfg, p);
  Algebra& alg = cached_algebra(cfg);
  HomPipeline& pipe = cached_pipeline(cfg, p.codomain_max);
  Report rep = name == "prop-minus1" ? verify_prop_minus1(alg, pipe)
                                     : verify_prop_zero(alg, pipe);
  r.status = rep.status;
  r.dims = rep.dims;
  r.counterexample = rep.counterexample;
  r.nullspace_dim = static_cast<long>(pipe.nullspace.basis.size());
  return r;
}

SuiteResult suite_theorem_step(const FamilyConfig& cfg, const SuiteParams& p) {
  SuiteResult r = base_result("theorem-step", cfg, p);
  Algebra& alg = cached_algebra(cfg);
  r.status = Status::Pass;
  for (int l = 1; l <= 2; ++l)
    merge_report(r, "l" + std::to_string(l) + ".", verify_theorem_step(alg, l));
  // Sanity inversion: with the bracket set emptied the annihilator must be
  // the whole component, i.e. the check must flip to FAIL.
  Report degen = verify_theorem_step(alg, 1, true);
  r.dims["degenerate_annihilator"] = degen.dims["annihilator"];
  if (degen.status != Status::Fail)
    fail(r, "degenerate variant did not invert");
  return r;
}

SuiteResult suite_hom_solve(const FamilyConfig& cfg, const SuiteParams& p) {
  SuiteResult r = base_result("hom-solve", cfg, p);
  Algebra& alg = cached_algebra(cfg);
  HomPipeline& pipe = cached_pipeline(cfg, p.codomain_max);
  r.nullspace_dim = static_cast<long>(pipe.nullspace.basis.size());
  r.dims["params"] = pipe.param.total_params;
  r.dims["domain"] = static_cast<long>(pipe.param.domain.size());
  r.dims["rows"] = pipe.nullspace.rows;
  r.dims["triples"] = pipe.nullspace.triples;
  r.dims["solutions"] = static_cast<long>(pipe.mult.solutions.size());
  r.status = pipe.mult.status;
  if (!pipe.nullspace.id_rows_zero) fail(r, "sigma = id violated a row");
  if (!pipe.nullspace.reverified) fail(r, "nullspace re-verification failed");
  if (pipe.mult.status == Status::Pass && !pipe.mult.zero_and_id_only)
    fail(r, "multiplicative set is not {0, id}");
  if (pipe.mult.status == Status::Fail && r.counterexample.empty())
    r.counterexample = pipe.mult.note;
  merge_report(r, "codomain.", codomain_sensitivity(alg, pipe));
  if (presented_family(cfg.family))
    merge_report(r, "implied.", implied_rows_check(alg, pipe));
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "jacobi",      "antisym",      "bracket-formula", "grading",
      "transitivity", "lemma-ll3",   "lemma-yuanl1",    "prop-minus1",
      "prop-zero",   "theorem-step", "hom-solve"};
  return names;
}

SuiteResult run_suite(const std::string& name, const FamilyConfig& cfg,
                      const SuiteParams& params) {
  cfg.validate();
  if (name == "jacobi") return suite_jacobi(cfg, params);
  if (name == "antisym") return suite_antisym(cfg, params);
  if (name == "bracket-formula") return suite_bracket_formula(cfg, params);
  if (name == "grading") return suite_grading(cfg, params);
  if (name == "transitivity") return suite_transitivity(cfg, params);
  if (name == "lemma-ll3") return suite_ll3(cfg, params);
  if (name == "lemma-yuanl1") return suite_yuanl1(cfg, params);
  if (name == "prop-minus1" || name == "prop-zero")
    return suite_prop(name, cfg, params);
  if (name == "theorem-step") return suite_theorem_step(cfg, params);
  if (name == "hom-solve") return suite_hom_solve(cfg, params);
  throw std::invalid_argument("unknown suite: " + name);
}

namespace {

json result_to_json(const SuiteResult& r) {
  json dims = json::object();
  for (const auto& [k, v] : r.dims) dims[k] = v;
  return json{{"suite", r.suite},
              {"config", r.config},
              {"status", status_name(r.status)},
              {"dims", dims},
              {"nullspace_dim", r.nullspace_dim},
              {"counterexample", r.counterexample},
              {"seed", r.seed},
              {"version", kVersion}};
}

FamilyConfig config_from_entry(const json& e) {
  FamilyConfig cfg;
  auto fam = family_from_name(e.at("family").get<std::string>());
  if (!fam) throw std::invalid_argument("unknown family in manifest");
  cfg.family = *fam;
  cfg.m = e.at("m").get<int>();
  cfg.n = e.at("n").get<int>();
  if (e.contains("lambda")) {
    auto lam = parse_rat(e.at("lambda").get<std::string>());
    if (!lam) throw std::invalid_argument("malformed lambda in manifest");
    cfg.lambda = *lam;
  }
  return cfg;
}

}  // namespace

std::string suite_json(const SuiteResult& r) {
  return result_to_json(r).dump(2);
}

ManifestRun run_manifest(const std::string& manifest_text) {
  json doc = json::parse(manifest_text);
  if (doc.is_object()) doc = doc.at("entries");
  if (!doc.is_array())
    throw std::invalid_argument("manifest must be an array of entries");
  ManifestRun run;
  for (const json& e : doc) {
    FamilyConfig cfg = config_from_entry(e);
    SuiteParams params;
    if (e.contains("samples")) params.samples = e.at("samples").get<long>();
    if (e.contains("seed"))
      params.seed = e.at("seed").get<unsigned long long>();
    SuiteResult r = run_suite(e.at("suite").get<std::string>(), cfg, params);
    if (r.status == Status::Fail) run.overall = Status::Fail;
    else if (r.status == Status::Inconclusive && run.overall == Status::Pass)
      run.overall = Status::Inconclusive;
    run.results.push_back(std::move(r));
  }
  return run;
}

std::string manifest_json(const ManifestRun& run) {
  json results = json::array();
  for (const SuiteResult& r : run.results) results.push_back(result_to_json(r));
  return json{{"version", kVersion},
              {"overall", status_name(run.overall)},
              {"results", results}}
      .dump(2);
}

}  // namespace cartan
