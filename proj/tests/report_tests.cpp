#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>

#include "stabcert/report.hpp"

using namespace stabcert;

TEST_CASE("json layout carries the schema") {
  const auto report = certify_range(5, 150, 1, true);
  const auto j = report_to_json(report);
  REQUIRE(j.at("schema_version") == "1");
  REQUIRE(j.at("config").at("max_m") == 5);
  REQUIRE(j.at("config").at("prime_bound") == 150);
  REQUIRE_FALSE(j.at("config").contains("jobs"));  // reports are jobs-independent
  REQUIRE(j.at("summary").contains("covered_by_table"));
  REQUIRE(j.at("summary").contains("theorem3_verified"));
  REQUIRE(j.at("certificates").size() == 10);
  const auto& first = j.at("certificates").at(0);
  REQUIRE(first.at("m") == 1);
  REQUIRE(first.at("factor") == "g1");
  REQUIRE(first.at("base_case").contains("expression"));
  REQUIRE(first.at("base_case").contains("is_cube"));
  REQUIRE(first.at("method").contains("type"));
  REQUIRE(first.at("method").contains("modulus_or_prime"));
  REQUIRE(first.at("window").contains("indices_checked"));
  REQUIRE(first.at("status") == "CERTIFIED");
  REQUIRE(j.at("exemplar_checks").size() == 2);
}

TEST_CASE("json round-trips bit-identically") {
  for (bool exemplar : {false, true}) {
    const auto report = certify_range(40, 150, 2, exemplar);
    const std::string dumped = dump_report_json(report);
    const auto parsed = report_from_json(nlohmann::json::parse(dumped));
    REQUIRE(dump_report_json(parsed) == dumped);
  }
}

TEST_CASE("unresolved certificates serialize with a null method") {
  const auto report = certify_range(26, 7);
  const auto j = report_to_json(report);
  bool saw_unresolved = false;
  for (const auto& cert : j.at("certificates")) {
    if (cert.at("status") == "UNRESOLVED") {
      saw_unresolved = true;
      REQUIRE(cert.at("method").at("type") == "none");
      REQUIRE(cert.at("method").at("modulus_or_prime").is_null());
      REQUIRE(cert.at("window").at("indices_checked") == 0);
    }
  }
  REQUIRE(saw_unresolved);
  const auto parsed = report_from_json(report_to_json(report));
  REQUIRE(dump_report_json(parsed) == dump_report_json(report));
}

TEST_CASE("csv has one row per certificate") {
  const auto report = certify_range(12, 150);
  const std::string csv = report_to_csv(report);
  std::istringstream lines(csv);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) ++count;
  REQUIRE(count == 1 + 24);
  REQUIRE(csv.rfind("m,factor,base_expression", 0) == 0);
}

TEST_CASE("text summary names unresolved entries") {
  const auto text = report_to_text(certify_range(26, 7));
  REQUIRE(text.find("theorem3_verified: false") != std::string::npos);
  REQUIRE(text.find("m=26 g1") != std::string::npos);
}
