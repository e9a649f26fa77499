#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "padicmf/newform.hpp"

using namespace padicmf;
using nlohmann::ordered_json;

namespace {

ordered_json small_doc() {
  return ordered_json::parse(R"({
    "name": "toy", "level": 1, "weight": 12,
    "nebentypus": {"modulus": 1, "values": [[0, 1]]},
    "coeffs": ["1", "-24", "252", "-1472", "4830", "-6048"]
  })");
}

}  // namespace

TEST_CASE("Delta file ingests as level 1 weight 12 and matches the built-in record") {
  const NewformData f = load_newform(PADICMF_TEST_DATA "/delta_1000.json");
  CHECK(f.level == 1);
  CHECK(f.weight == 12);
  CHECK(f.truncation() == 1000);
  CHECK(f.warnings.empty());
  CHECK(f.coeffs == delta_newform(1000).coeffs);
  CHECK(f.nebentypus(7) == 1);
}

TEST_CASE("CM and toy fixtures") {
  const NewformData cm = load_newform(PADICMF_TEST_DATA "/cm32a_500.json", true);
  CHECK(cm.level == 32);
  CHECK(cm.weight == 2);
  CHECK(cm.cm_verified);
  CHECK(cm.coeffs[5] == -2);
  CHECK(cm.nebentypus(2) == 0);
  CHECK(cm.nebentypus(5) == 1);
  const NewformData s = load_newform(PADICMF_TEST_DATA "/sigma1_500.json", true);
  CHECK(s.coeffs[5] == 6);
  CHECK_FALSE(s.cm_verified);
}

TEST_CASE("schema errors") {
  auto doc = small_doc();
  doc.erase("level");
  CHECK_THROWS_AS(parse_newform(doc), IngestError);

  doc = small_doc();
  doc["weight"] = "twelve";
  CHECK_THROWS_AS(parse_newform(doc), IngestError);

  doc = small_doc();
  doc["coeffs"] = ordered_json::array();
  CHECK_THROWS_AS(parse_newform(doc), IngestError);

  doc = small_doc();
  doc["coeffs"][2] = "25x";
  CHECK_THROWS_AS(parse_newform(doc), IngestError);

  doc = small_doc();
  doc["nebentypus"] = ordered_json::parse(R"({"modulus": 4, "values": [[1, 1]]})");
  CHECK_THROWS_AS(parse_newform(doc), IngestError);

  doc = small_doc();
  doc["nebentypus"] = ordered_json::parse(R"({"modulus": 4, "values": [[2, 1], [1, 1], [3, 1]]})");
  CHECK_THROWS_AS(parse_newform(doc), IngestError);

  CHECK_THROWS_AS(parse_newform(ordered_json::array()), IngestError);
  CHECK_THROWS_AS(load_newform("/nonexistent/file.json"), IngestError);
}

TEST_CASE("eigenform normalization") {
  auto doc = small_doc();
  doc["coeffs"][0] = "2";
  CHECK_THROWS_AS(parse_newform(doc), IngestError);
  doc["eigenform"] = false;
  CHECK_NOTHROW(parse_newform(doc));
}

TEST_CASE("missing nebentypus defaults to trivial with a warning") {
  auto doc = small_doc();
  doc.erase("nebentypus");
  const NewformData f = parse_newform(doc);
  CHECK(f.neb_modulus == 1);
  REQUIRE(f.warnings.size() == 1);
  CHECK(f.warnings[0].find("nebentypus") != std::string::npos);
}

TEST_CASE("multiplicativity failures warn, or throw when strict") {
  auto doc = small_doc();
  doc["coeffs"][5] = "6048";
  const NewformData f = parse_newform(doc);
  REQUIRE_FALSE(f.warnings.empty());
  CHECK(f.warnings[0].find("6") != std::string::npos);
  CHECK_THROWS_AS(parse_newform(doc, true), IngestError);
  CHECK_NOTHROW(parse_newform(small_doc(), true));
}

TEST_CASE("integer and string coefficients, arbitrary size") {
  auto doc = small_doc();
  doc["eigenform"] = false;
  doc["coeffs"] = ordered_json::array({1, "123456789012345678901234567890", -5});
  const NewformData f = parse_newform(doc);
  CHECK(f.coeffs[2] == mpz_class("123456789012345678901234567890"));
  CHECK(f.coeffs[3] == -5);
  const QExpansion e = f.expansion(7, 3);
  CHECK(e.coeff(3).balanced() == -5);
}

TEST_CASE("newform_to_json round trip of the header fields") {
  const NewformData f = parse_newform(small_doc());
  const ordered_json j = newform_to_json(f);
  CHECK(j["name"] == "toy");
  CHECK(j["level"] == 1);
  CHECK(j["weight"] == 12);
  CHECK(j["truncation"] == 6);
  CHECK(j.dump() == newform_to_json(parse_newform(small_doc())).dump());
}
