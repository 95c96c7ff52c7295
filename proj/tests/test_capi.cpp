#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cartan.h>

#include <algorithm>
#include <cstring>
#include <string>

namespace {

cartan_config k54() { return cartan_config{"K", 5, 4, nullptr}; }

std::string take(char* s) {
  std::string out(s);
  cartan_free(s);
  return out;
}

}  // namespace

TEST_CASE("version string") {
  CHECK(std::strlen(cartan_version()) > 0);
}

TEST_CASE("eval through the C surface") {
  cartan_config c = k54();
  char* out = nullptr;
  REQUIRE(cartan_eval(&c, "D_K(1)", &out) == CARTAN_OK);
  CHECK(take(out) == "2*p5");

  out = nullptr;
  REQUIRE(cartan_eval(&c, "bracket(x1*p2, x2*p1)", &out) == CARTAN_OK);
  std::string printed = take(out);
  // Round-trip: re-evaluating the printed form is the identity on it.
  char* again = nullptr;
  REQUIRE(cartan_eval(&c, printed.c_str(), &again) == CARTAN_OK);
  CHECK(take(again) == printed);
}

TEST_CASE("basis of the depth component") {
  cartan_config c = k54();
  char* out = nullptr;
  REQUIRE(cartan_basis(&c, -2, &out) == CARTAN_OK);
  std::string text = take(out);
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
}

TEST_CASE("error paths set last_error and leave outputs alone") {
  cartan_config bad{"Q", 4, 4, nullptr};
  char* out = reinterpret_cast<char*>(0x1);
  CHECK(cartan_eval(&bad, "x1", &out) == CARTAN_ERR_ARGUMENT);
  CHECK(out == reinterpret_cast<char*>(0x1));
  CHECK(std::strstr(cartan_last_error(), "unknown family") != nullptr);

  cartan_config c = k54();
  CHECK(cartan_eval(&c, "x1 +", &out) == CARTAN_ERR_ARGUMENT);
  CHECK(cartan_eval(&c, "x99", &out) == CARTAN_ERR_ARGUMENT);

  cartan_config badk{"K", 4, 4, nullptr};  // K needs odd m
  CHECK(cartan_eval(&badk, "x1", &out) == CARTAN_ERR_ARGUMENT);

  cartan_config badlam{"SKO", 4, 5, "x"};
  CHECK(cartan_eval(&badlam, "x1", &out) == CARTAN_ERR_ARGUMENT);

  int status = 0;
  CHECK(cartan_run_suite(&c, "no-such-suite", 10, 1, &out, &status) ==
        CARTAN_ERR_ARGUMENT);
  char* json = nullptr;
  CHECK(cartan_run_manifest("not json", &json, &status) != CARTAN_OK);
}

TEST_CASE("suite list is NULL-terminated and runnable") {
  const char* const* names = cartan_suite_names();
  int count = 0;
  bool has_jacobi = false;
  for (; names[count]; ++count)
    if (std::string(names[count]) == "jacobi") has_jacobi = true;
  CHECK(count == 11);
  CHECK(has_jacobi);
}

TEST_CASE("suite run emits the stable JSON schema") {
  cartan_config c{"W", 2, 2, nullptr};
  char* json = nullptr;
  int status = -1;
  REQUIRE(cartan_run_suite(&c, "jacobi", 50, 7, &json, &status) == CARTAN_OK);
  CHECK(status == CARTAN_STATUS_PASS);
  std::string text = take(json);
  for (const char* field : {"\"suite\"", "\"config\"", "\"status\"", "\"dims\"",
                            "\"nullspace_dim\"", "\"counterexample\"",
                            "\"seed\"", "\"version\""})
    CHECK(text.find(field) != std::string::npos);
  CHECK(text.find("\"W(2,2)\"") != std::string::npos);
}

TEST_CASE("solve-hom reports the trivial solution pair") {
  cartan_config c{"W", 2, 2, nullptr};
  char* json = nullptr;
  int status = -1;
  REQUIRE(cartan_solve_hom(&c, 0, &json, &status) == CARTAN_OK);
  std::string text = take(json);
  CHECK(status == CARTAN_STATUS_PASS);
  CHECK(text.find("\"solutions\": 2") != std::string::npos);
}

TEST_CASE("manifest run aggregates entries") {
  const char* manifest = R"([
    {"suite": "antisym", "family": "W", "m": 2, "n": 2, "samples": 30},
    {"suite": "grading", "family": "H", "m": 4, "n": 4}
  ])";
  char* json = nullptr;
  int status = -1;
  REQUIRE(cartan_run_manifest(manifest, &json, &status) == CARTAN_OK);
  CHECK(status == CARTAN_STATUS_PASS);
  std::string text = take(json);
  CHECK(text.find("\"overall\": \"PASS\"") != std::string::npos);
  CHECK(text.find("\"H(4,4)\"") != std::string::npos);
}
