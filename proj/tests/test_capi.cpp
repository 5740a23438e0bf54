// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "json.hpp"

#include "ospchar/ospchar.h"

#include <filesystem>
#include <memory>
#include <random>
#include <string>

namespace {

struct Ctx {
  ospc_context* p = nullptr;
  Ctx() { REQUIRE(ospc_context_create(&p) == OSPC_OK); }
  ~Ctx() { ospc_context_destroy(p); }
};

std::string take(char* s) {
  std::string out = s ? s : "";
  ospc_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(ospc_status_name(OSPC_OK)) == "ok");
  CHECK(std::string(ospc_status_name(OSPC_ERR_LIMIT)) == "limit-exceeded");
  CHECK(std::string(ospc_version()) == "1.0.0");
  CHECK(ospc_context_create(nullptr) == OSPC_ERR_INVALID_ARGUMENT);
  ospc_context_destroy(nullptr);
  ospc_series_destroy(nullptr);
  ospc_qseries_destroy(nullptr);
  ospc_table_destroy(nullptr);
  ospc_string_free(nullptr);
}

TEST_CASE("characters") {
  Ctx c;
  ospc_series* s = nullptr;
  REQUIRE(ospc_char_theta(c.p, 1, 1, &s) == OSPC_OK);
  size_t n = 0;
  CHECK(ospc_series_term_count(s, &n) == OSPC_OK);
  CHECK(n == 4);
  const int64_t w[] = {-2};
  char* coeff = nullptr;
  CHECK(ospc_series_coefficient(s, w, 1, &coeff) == OSPC_OK);
  CHECK(take(coeff) == "1");
  char* out = nullptr;
  REQUIRE(ospc_series_render(s, OSPC_FORMAT_JSON, &out) == OSPC_OK);
  auto j = nlohmann::json::parse(take(out));
  CHECK(j["terms"].size() == 4);
  CHECK(ospc_series_render(s, OSPC_FORMAT_CSV, &out) == OSPC_ERR_INVALID_ARGUMENT);
  ospc_series_destroy(s);

  const int64_t mu[] = {1, 0};
  REQUIRE(ospc_char_weyl(c.p, OSPC_SP, mu, 2, 0, &s) == OSPC_OK);
  CHECK(ospc_series_term_count(s, &n) == OSPC_OK);
  CHECK(n == 4);
  ospc_series_destroy(s);

  ospc_qseries* q = nullptr;
  const int64_t zero[] = {0};
  REQUIRE(ospc_char_branching(c.p, zero, zero, 1, 4, &q) == OSPC_OK);
  REQUIRE(ospc_qseries_render(q, OSPC_FORMAT_JSON, &out) == OSPC_OK);
  CHECK(nlohmann::json::parse(take(out))["terms"][0][1] == "1");
  ospc_qseries_destroy(q);
  REQUIRE(ospc_char_wmodule(c.p, zero, zero, 1, 1, 2, 4, &q) == OSPC_OK);
  ospc_qseries_destroy(q);
}

TEST_CASE("errors are reported through status codes") {
  Ctx c;
  ospc_series* s = nullptr;
  const int64_t bad[] = {0, 1};
  CHECK(ospc_char_weyl(c.p, OSPC_SP, bad, 2, 1, &s) == OSPC_ERR_INVALID_ARGUMENT);
  CHECK(s == nullptr);
  CHECK(std::string(ospc_last_error(c.p)).size() > 0);
  CHECK(ospc_char_theta(c.p, 1, 1, &s) == OSPC_OK);
  CHECK(std::string(ospc_last_error(c.p)).empty());
  ospc_series_destroy(s);
  s = nullptr;
  CHECK(ospc_char_theta(c.p, 7, 1, &s) == OSPC_ERR_LIMIT);
  CHECK(ospc_char_theta(c.p, 1, 99, &s) == OSPC_ERR_LIMIT);
  CHECK(ospc_char_theta(c.p, 1, 1, nullptr) == OSPC_ERR_INVALID_ARGUMENT);
  CHECK(ospc_char_verma(c.p, OSPC_SP, nullptr, 1, 1, &s) == OSPC_ERR_INVALID_ARGUMENT);
  CHECK(ospc_char_theta(nullptr, 1, 1, &s) == OSPC_ERR_INVALID_ARGUMENT);
  CHECK(ospc_context_set_limits(c.p, 9, 4) == OSPC_ERR_INVALID_ARGUMENT);
  REQUIRE(ospc_context_set_limits(c.p, 2, 3) == OSPC_OK);
  CHECK(ospc_char_theta(c.p, 1, 4, &s) == OSPC_ERR_LIMIT);
  CHECK(ospc_context_set_workers(c.p, 0) == OSPC_ERR_INVALID_ARGUMENT);

  ospc_qseries* q = nullptr;
  const int64_t zero[] = {0};
  CHECK(ospc_char_wmodule(c.p, zero, zero, 1, 1, 0, 2, &q) == OSPC_ERR_INVALID_ARGUMENT);
  // k = -3/2 makes the level critical for n = 1
  CHECK(ospc_char_wmodule(c.p, zero, zero, 1, -3, 2, 2, &q) != OSPC_OK);
  ospc_table* t = nullptr;
  CHECK(ospc_table_decompose(c.p, 2, 2, 1, &t) == OSPC_ERR_DOMAIN);
}

TEST_CASE("verifications") {
  Ctx c;
  char* report = nullptr;
  REQUIRE(ospc_verify_triple_product(c.p, 1, 6, OSPC_FORMAT_JSON, &report) == OSPC_OK);
  auto j = nlohmann::json::parse(take(report));
  CHECK(j["status"] == "pass");
  REQUIRE(ospc_verify_bijections(c.p, 2, 0, OSPC_FORMAT_TEXT, &report) == OSPC_OK);
  CHECK(take(report).find("pass") != std::string::npos);
  REQUIRE(ospc_verify_delta_lemma(c.p, 2, 50, 7, OSPC_FORMAT_JSON, &report) == OSPC_OK);
  CHECK(nlohmann::json::parse(take(report))["status"] == "pass");
  CHECK(ospc_verify_triple_product(c.p, 1, 2, OSPC_FORMAT_CSV, &report) == OSPC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("tables") {
  Ctx c;
  const auto dir = std::filesystem::temp_directory_path() / ("ospchar_capi_" + std::to_string(std::random_device{}()));
  REQUIRE(ospc_context_set_cache_dir(c.p, dir.string().c_str()) == OSPC_OK);
  ospc_table* t = nullptr;
  size_t n = 0;
  REQUIRE(ospc_table_admissible(c.p, OSPC_SET_PC, 4, 1, 2, &t) == OSPC_OK);
  CHECK(ospc_table_size(t, &n) == OSPC_OK);
  CHECK(n == 3);
  char* out = nullptr;
  REQUIRE(ospc_table_render(t, OSPC_FORMAT_CSV, &out) == OSPC_OK);
  CHECK(take(out) == "mu_coords\n0 0\n1 0\n1 1\n");
  ospc_table_destroy(t);

  REQUIRE(ospc_table_decompose(c.p, 2, 4, 1, &t) == OSPC_OK);
  REQUIRE(ospc_table_render(t, OSPC_FORMAT_JSON, &out) == OSPC_OK);
  CHECK(nlohmann::json::parse(take(out))["ell"] == "-17/7");
  ospc_table_destroy(t);

  REQUIRE(ospc_table_w_fusion(c.p, 2, 4, 7, &t) == OSPC_OK);
  char* report = nullptr;
  CHECK(ospc_verify_fusion_axioms(c.p, t, OSPC_FORMAT_JSON, &report) == OSPC_OK);
  CHECK(nlohmann::json::parse(take(report))["status"] == "pass");
  REQUIRE(ospc_table_render(t, OSPC_FORMAT_JSON, &out) == OSPC_OK);
  auto first = take(out);
  ospc_table_destroy(t);
  CHECK(std::filesystem::exists(dir / "w-fusion_C_n2_p4_q7.json"));
  // second build comes from the cache and renders identically
  REQUIRE(ospc_table_w_fusion(c.p, 2, 4, 7, &t) == OSPC_OK);
  REQUIRE(ospc_table_render(t, OSPC_FORMAT_JSON, &out) == OSPC_OK);
  CHECK(take(out) == first);
  ospc_table_destroy(t);

  REQUIRE(ospc_table_affine_fusion(c.p, 1, 1, &t) == OSPC_OK);
  REQUIRE(ospc_table_render(t, OSPC_FORMAT_TEXT, &out) == OSPC_OK);
  CHECK(take(out).find("(1) * (1) = (0)") != std::string::npos);
  ospc_table_destroy(t);

  REQUIRE(ospc_table_osp_fusion(c.p, 2, 4, 1, &t) == OSPC_OK);
  CHECK(ospc_verify_fusion_axioms(c.p, t, OSPC_FORMAT_TEXT, &report) == OSPC_OK);
  ospc_string_free(report);
  ospc_table_destroy(t);
  CHECK(ospc_table_size(nullptr, &n) == OSPC_ERR_INVALID_ARGUMENT);
  std::filesystem::remove_all(dir);
}
