#include <CLI11.hpp>
#include <cartan.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

// Exit codes: 0 PASS / success, 1 FAIL, 2 INCONCLUSIVE or usage/parse error.
constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitError = 2;

struct ConfigArgs {
  std::string family;
  int m = 0;
  int n = 0;
  std::string lambda;

  cartan_config c_config() const {
    return cartan_config{family.c_str(), m, n,
                         lambda.empty() ? nullptr : lambda.c_str()};
  }
};

void add_config_flags(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("--family", args.family, "Family: W S H K HO KO SHO SKO")
      ->required();
  cmd->add_option("--m", args.m, "Number of even variables")->required();
  cmd->add_option("--n", args.n, "Number of odd variables")->required();
  cmd->add_option("--lambda", args.lambda,
                  "SKO deformation parameter, a rational like 2/3");
}

// Comment line naming the odd coordinate range for the active config; a
// diagnostic, so it goes to stderr and never mixes into the report stream.
void print_odd_header(const ConfigArgs& args) {
  if (args.n == 1)
    std::fprintf(stderr, "# odd indices: x%d\n", args.m + 1);
  else
    std::fprintf(stderr, "# odd indices: x%d..x%d\n", args.m + 1,
                 args.m + args.n);
}

int emit_report(const std::string& json, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << json << "\n";
    return kExitPass;
  }
  std::ofstream f(out_path);
  if (!f) {
    std::cerr << "error: cannot write " << out_path << "\n";
    return kExitError;
  }
  f << json << "\n";
  return kExitPass;
}

int status_exit(int status) {
  switch (status) {
    case CARTAN_STATUS_PASS:
      return kExitPass;
    case CARTAN_STATUS_FAIL:
      return kExitFail;
    default:
      return kExitError;
  }
}

int take_error() {
  std::cerr << "error: " << cartan_last_error() << "\n";
  return kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Cartan-type Lie superalgebra toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cartan_version());

  ConfigArgs cfg;
  std::string expr, out_path, manifest_path, suite;
  int degree = 0, codomain_max = 0;
  long samples = 0;
  unsigned long long seed = 0;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate an expression");
  add_config_flags(eval, cfg);
  eval->add_option("expr", expr, "Expression, e.g. \"bracket(x1*p2, x2*p1)\"")
      ->required();

  CLI::App* basis =
      app.add_subcommand("basis", "Print the basis of a graded component");
  add_config_flags(basis, cfg);
  basis->add_option("--degree", degree, "Degree of the component")->required();

  CLI::App* verify = app.add_subcommand(
      "verify", "Run one verification suite, or 'all' with a manifest");
  verify->add_option("suite", suite, "Suite name, or 'all'")->required();
  verify->add_option("--family", cfg.family, "Family: W S H K HO KO SHO SKO");
  verify->add_option("--m", cfg.m, "Number of even variables");
  verify->add_option("--n", cfg.n, "Number of odd variables");
  verify->add_option("--lambda", cfg.lambda, "SKO deformation parameter");
  verify->add_option("--samples", samples, "Sample count for randomized suites");
  verify->add_option("--seed", seed, "Seed for randomized suites");
  verify->add_option("--manifest", manifest_path, "Manifest file for 'all'");
  verify->add_option("--out", out_path, "Write the JSON report to a file");

  CLI::App* solve =
      app.add_subcommand("solve-hom", "Run the full Hom-structure pipeline");
  add_config_flags(solve, cfg);
  solve->add_option("--codomain-max", codomain_max,
                    "Upper degree of the sigma codomain window (default 2)");
  solve->add_option("--out", out_path, "Write the JSON report to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  if (eval->parsed()) {
    cartan_config c = cfg.c_config();
    char* out = nullptr;
    if (cartan_eval(&c, expr.c_str(), &out) != CARTAN_OK) return take_error();
    print_odd_header(cfg);
    std::cout << out << "\n";
    cartan_free(out);
    return kExitPass;
  }

  if (basis->parsed()) {
    cartan_config c = cfg.c_config();
    char* out = nullptr;
    if (cartan_basis(&c, degree, &out) != CARTAN_OK) return take_error();
    print_odd_header(cfg);
    int dim = 0;
    for (const char* p = out; *p; ++p) dim += (*p == '\n');
    std::cout << out;
    std::fprintf(stderr, "# dimension %d\n", dim);
    cartan_free(out);
    return kExitPass;
  }

  if (solve->parsed()) {
    cartan_config c = cfg.c_config();
    char* out = nullptr;
    int status = CARTAN_STATUS_INCONCLUSIVE;
    if (cartan_solve_hom(&c, codomain_max, &out, &status) != CARTAN_OK)
      return take_error();
    std::string json(out);
    cartan_free(out);
    int emit = emit_report(json, out_path);
    return emit != kExitPass ? emit : status_exit(status);
  }

  // verify
  if (suite == "all") {
    if (manifest_path.empty()) {
      std::cerr << "error: verify all requires --manifest\n";
      return kExitError;
    }
    std::ifstream f(manifest_path);
    if (!f) {
      std::cerr << "error: cannot read " << manifest_path << "\n";
      return kExitError;
    }
    std::ostringstream text;
    text << f.rdbuf();
    char* out = nullptr;
    int status = CARTAN_STATUS_INCONCLUSIVE;
    if (cartan_run_manifest(text.str().c_str(), &out, &status) != CARTAN_OK)
      return take_error();
    std::string json(out);
    cartan_free(out);
    int emit = emit_report(json, out_path);
    return emit != kExitPass ? emit : status_exit(status);
  }

  if (cfg.family.empty()) {
    std::cerr << "error: verify " << suite << " requires --family, --m, --n\n";
    return kExitError;
  }
  cartan_config c = cfg.c_config();
  char* out = nullptr;
  int status = CARTAN_STATUS_INCONCLUSIVE;
  if (cartan_run_suite(&c, suite.c_str(), samples, seed, &out, &status) !=
      CARTAN_OK)
    return take_error();
  std::string json(out);
  cartan_free(out);
  int emit = emit_report(json, out_path);
  return emit != kExitPass ? emit : status_exit(status);
}
