#define CARTAN_API __attribute__((visibility("default")))
#include "cartan.h"

#include <cstdlib>
#include <cstring>

#include "parser.hpp"
#include "verify.hpp"

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

cartan::FamilyConfig to_config(const cartan_config* cfg) {
  if (!cfg || !cfg->family) throw std::invalid_argument("missing config");
  auto fam = cartan::family_from_name(cfg->family);
  if (!fam)
    throw std::invalid_argument(std::string("unknown family: ") + cfg->family);
  cartan::FamilyConfig out;
  out.family = *fam;
  out.m = cfg->m;
  out.n = cfg->n;
  if (cfg->lambda) {
    auto lam = cartan::parse_rat(cfg->lambda);
    if (!lam)
      throw std::invalid_argument(std::string("bad lambda: ") + cfg->lambda);
    out.lambda = *lam;
  }
  out.validate();
  return out;
}

int status_code(cartan::Status s) {
  switch (s) {
    case cartan::Status::Pass:
      return CARTAN_STATUS_PASS;
    case cartan::Status::Fail:
      return CARTAN_STATUS_FAIL;
    default:
      return CARTAN_STATUS_INCONCLUSIVE;
  }
}

// Runs fn, translating exceptions into error codes + g_last_error.
template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    return CARTAN_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return CARTAN_ERR_ARGUMENT;
  } catch (const cartan::ParseError& e) {
    g_last_error = e.what();
    return CARTAN_ERR_ARGUMENT;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return CARTAN_ERR_INTERNAL;
  }
}

}  // namespace

extern "C" {

CARTAN_API const char* cartan_version(void) { return cartan::kVersion; }

CARTAN_API void cartan_free(char* s) { std::free(s); }

CARTAN_API const char* cartan_last_error(void) { return g_last_error.c_str(); }

CARTAN_API int cartan_eval(const cartan_config* cfg, const char* expr,
                           char** out) {
  return guarded([&] {
    if (!expr || !out) throw std::invalid_argument("missing argument");
    cartan::FamilyConfig fc = to_config(cfg);
    cartan::EvalContext ctx{fc.family, fc.m, fc.n, fc.lambda};
    *out = dup_string(cartan::print_value(cartan::parse_expression(expr, ctx)));
  });
}

CARTAN_API int cartan_basis(const cartan_config* cfg, int degree, char** out) {
  return guarded([&] {
    if (!out) throw std::invalid_argument("missing argument");
    cartan::Algebra alg(to_config(cfg));
    if (degree < -alg.config().depth())
      throw std::invalid_argument("degree below the depth bound");
    std::string text;
    for (const cartan::VectorField& v : alg.component(degree).basis) {
      text += cartan::print_field(v);
      text += '\n';
    }
    *out = dup_string(text);
  });
}

CARTAN_API const char* const* cartan_suite_names(void) {
  static std::vector<const char*> names = [] {
    std::vector<const char*> v;
    for (const std::string& s : cartan::suite_names()) v.push_back(s.c_str());
    v.push_back(nullptr);
    return v;
  }();
  return names.data();
}

CARTAN_API int cartan_run_suite(const cartan_config* cfg, const char* suite,
                                long samples, unsigned long long seed,
                                char** out_json, int* out_status) {
  return guarded([&] {
    if (!suite || !out_json || !out_status)
      throw std::invalid_argument("missing argument");
    cartan::SuiteParams params;
    if (samples > 0) params.samples = samples;
    if (seed) params.seed = seed;
    cartan::SuiteResult r = cartan::run_suite(suite, to_config(cfg), params);
    *out_json = dup_string(cartan::suite_json(r));
    *out_status = status_code(r.status);
  });
}

CARTAN_API int cartan_solve_hom(const cartan_config* cfg, int codomain_max,
                                char** out_json, int* out_status) {
  return guarded([&] {
    if (!out_json || !out_status) throw std::invalid_argument("missing argument");
    cartan::SuiteParams params;
    if (codomain_max > 0) params.codomain_max = codomain_max;
    cartan::SuiteResult r =
        cartan::run_suite("hom-solve", to_config(cfg), params);
    *out_json = dup_string(cartan::suite_json(r));
    *out_status = status_code(r.status);
  });
}

CARTAN_API int cartan_run_manifest(const char* manifest_text, char** out_json,
                                   int* out_status) {
  return guarded([&] {
    if (!manifest_text || !out_json || !out_status)
      throw std::invalid_argument("missing argument");
    cartan::ManifestRun run = cartan::run_manifest(manifest_text);
    *out_json = dup_string(cartan::manifest_json(run));
    *out_status = status_code(run.overall);
  });
}

}  // extern "C"
