#pragma once

#include "homsolver.hpp"

namespace cartan {

inline constexpr const char* kVersion = "1.0.0";

struct SuiteParams {
  long samples = 500;
  unsigned long long seed = 7;
  int codomain_max = 2;
};

// One verification report; serialized with a stable JSON schema
// (suite, config, status, dims, nullspace_dim, counterexample, seed, version).
struct SuiteResult {
  std::string suite;
  std::string config;
  Status status = Status::Inconclusive;
  std::map<std::string, long> dims;
  long nullspace_dim = -1;  // -1 when the suite does not solve a system
  std::string counterexample;
  unsigned long long seed = 0;
};

const std::vector<std::string>& suite_names();

// Runs one named suite on one config. Deterministic in (name, cfg, params).
// Throws std::invalid_argument for unknown suites or inapplicable configs
// (e.g. bracket-formula on W/S).
SuiteResult run_suite(const std::string& name, const FamilyConfig& cfg,
                      const SuiteParams& params = {});

std::string suite_json(const SuiteResult& r);

// Manifest: JSON array (or {"entries": [...]}) of
// {suite, family, m, n, lambda?, samples?, seed?}. Entries run in order.
struct ManifestRun {
  std::vector<SuiteResult> results;
  Status overall = Status::Pass;
};

ManifestRun run_manifest(const std::string& manifest_text);
std::string manifest_json(const ManifestRun& run);

}  // namespace cartan
