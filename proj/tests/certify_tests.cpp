#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "stabcert/certify.hpp"
#include "stabcert/report.hpp"
#include "stabcert/sequences.hpp"

using namespace stabcert;

TEST_CASE("builtin tables carry the published residue data") {
  const auto [g1, g2] = builtin_tables();
  const std::vector<std::uint64_t> g1_moduli{7, 13, 19, 31, 37, 43};
  const std::vector<std::uint64_t> g2_moduli{7, 13, 19, 31, 37};
  std::vector<std::uint64_t> seen;
  for (const auto& [k, classes] : g1.entries) seen.push_back(k);
  REQUIRE(seen == g1_moduli);
  seen.clear();
  for (const auto& [k, classes] : g2.entries) seen.push_back(k);
  REQUIRE(seen == g2_moduli);
  REQUIRE(g2.entries.count(43) == 0);

  REQUIRE(g1.entries.at(19) == std::set<std::uint64_t>{2, 4, 15, 17});
  REQUIRE(g2.entries.at(7) == std::set<std::uint64_t>{1, 2, 3, 4, 5, 6});
  // every class is closed under negation and avoids 0
  for (const SieveTable* table : {&g1, &g2}) {
    for (const auto& [k, classes] : table->entries) {
      for (std::uint64_t r : classes) {
        REQUIRE(r >= 1);
        REQUIRE(r < k);
        REQUIRE(classes.count(k - r) == 1);
      }
    }
  }
}

TEST_CASE("table_covers picks the smallest covering modulus") {
  const auto [g1, g2] = builtin_tables();
  REQUIRE(table_covers(3, g1) == 7);
  REQUIRE_FALSE(table_covers(4342, g1).has_value());
  // 7 = -6 (mod 13) and 13 carries +-6 for g2, so 13 covers before 31 does
  REQUIRE(table_covers(7, g2) == 13);
  REQUIRE(table_covers(1, g2) == 7);
}

TEST_CASE("residuals") {
  const auto [g1, g2] = builtin_tables();
  REQUIRE(residuals(10, g2).empty());
  REQUIRE(residuals(100, g1) == std::vector<long long>{26, 44, 47, 86});
  // full interval counts, exact; the source text's 267/88 count m = 0 as well
  REQUIRE(residuals(10000, g1).size() == 266);
  REQUIRE(residuals(10000, g2).size() == 87);
}

TEST_CASE("search_prime") {
  REQUIRE(search_prime(3, Factor::g1, 150) == 7);
  REQUIRE(search_prime(4342, Factor::g1, 150) == 73);
  REQUIRE(search_prime(26, Factor::g1, 150) == 73);
  REQUIRE_FALSE(search_prime(26, Factor::g1, 7).has_value());
  // m=2730 (g2) has no certifying prime below 150 under the even-index job;
  // 229 is the smallest that works
  REQUIRE_FALSE(search_prime(2730, Factor::g2, 150).has_value());
  REQUIRE(search_prime(2730, Factor::g2, 250) == 229);
}

TEST_CASE("exemplar sieves, verified exactly") {
  REQUIRE(sieve_indices(Factor::g1, 4342, 73, 2, 2).pass);
  // The reference exemplar p=67 for m=2730 fails the even-index job: the orbit
  // value at index 6 maps to 45, a cube mod 67 (cross-checked in exact
  // arithmetic). It passes only the odd-index variant, which rigid
  // divisibility already covers.
  const auto fail = sieve_indices(Factor::g2, 2730, 67, 2, 2);
  REQUIRE_FALSE(fail.pass);
  REQUIRE(fail.witness_index == 6);
  REQUIRE(fail.witness_residue == 45);
  REQUIRE(sieve_indices(Factor::g2, 2730, 67, 1, 2).pass);
  REQUIRE(sieve_indices(Factor::g2, 2730, 67, 3, 2).pass);
}

TEST_CASE("certify_m pipeline") {
  const auto tables = builtin_tables();

  const auto special = certify_m(1, Factor::g2, tables, 150);
  REQUIRE(special.status == CertStatus::certified);
  REQUIRE(special.method.type == MethodType::special_case);
  REQUIRE(special.method.modulus_or_prime == 7);
  REQUIRE(special.base_case.is_cube);  // x_2(1) = 1 = 1^3, recorded honestly

  const auto table_cert = certify_m(3, Factor::g1, tables, 150);
  REQUIRE(table_cert.status == CertStatus::certified);
  REQUIRE(table_cert.method.type == MethodType::table_modulus);
  REQUIRE(table_cert.method.modulus_or_prime == 7);
  REQUIRE(table_cert.base_case.expression == "m^2+1 = 10");
  REQUIRE_FALSE(table_cert.base_case.is_cube);

  const auto searched = certify_m(4342, Factor::g1, tables, 150);
  REQUIRE(searched.status == CertStatus::certified);
  REQUIRE(searched.method.type == MethodType::searched_prime);
  REQUIRE(searched.method.modulus_or_prime == 73);
  REQUIRE(searched.window.indices_checked > 0);

  const auto unresolved = certify_m(26, Factor::g1, tables, 7);
  REQUIRE(unresolved.status == CertStatus::unresolved);
  REQUIRE(unresolved.method.type == MethodType::none);
  REQUIRE_FALSE(unresolved.method.modulus_or_prime.has_value());

  REQUIRE_THROWS_AS(certify_m(-3, Factor::g1, tables, 150), std::invalid_argument);
}

TEST_CASE("reduce_negative") {
  REQUIRE(reduce_negative(-3) == 3);
  REQUIRE(reduce_negative(-1) == 1);
  REQUIRE(reduce_negative(-4342) == 4342);
  REQUIRE_THROWS_AS(reduce_negative(5), std::invalid_argument);
}

TEST_CASE("certify_range small batches") {
  const auto report = certify_range(10, 150);
  REQUIRE(report.certificates.size() == 20);
  REQUIRE(report.unresolved == 0);
  REQUIRE(report.theorem3_verified);
  REQUIRE(report.special == 1);
  REQUIRE(report.covered_by_table == 19);
  REQUIRE(report.searched == 0);
  // ordering: ascending m, g1 before g2
  for (std::size_t i = 0; i < report.certificates.size(); ++i) {
    REQUIRE(report.certificates[i].m == static_cast<long long>(i / 2) + 1);
    REQUIRE(report.certificates[i].which == (i % 2 == 0 ? Factor::g1 : Factor::g2));
  }
}

TEST_CASE("certify_range with a prime bound too small for residuals") {
  const auto report = certify_range(10000, 5);
  REQUIRE_FALSE(report.theorem3_verified);
  // every residual of both tables is unresolved; nothing else is
  REQUIRE(report.unresolved == 266 + 87);
  REQUIRE(report.special == 1);
}

TEST_CASE("certify_range is deterministic across worker counts") {
  const auto once = dump_report_json(certify_range(300, 150, 1));
  const auto parallel = dump_report_json(certify_range(300, 150, 8));
  REQUIRE(once == parallel);
}

TEST_CASE("exemplar-check mode records the reference primes") {
  const auto report = certify_range(5, 150, 2, true);
  REQUIRE(report.exemplar_checks.size() == 2);
  REQUIRE(report.exemplar_checks[0].m == 4342);
  REQUIRE(report.exemplar_checks[0].pass);
  REQUIRE(report.exemplar_checks[1].m == 2730);
  REQUIRE_FALSE(report.exemplar_checks[1].pass);
}

TEST_CASE("table classes genuinely certify: three samples per class") {
  const auto [g1, g2] = builtin_tables();
  for (const SieveTable* table : {&g1, &g2}) {
    for (const auto& [k, classes] : table->entries) {
      for (std::uint64_t r : classes) {
        for (int step = 0; step < 3; ++step) {
          const long long m = static_cast<long long>(r + static_cast<std::uint64_t>(step) * k);
          if (m > 10000) break;
          CAPTURE(factor_name(table->which), k, r, m);
          REQUIRE(sieve_indices(table->which, m, k, 2, 2).pass);
        }
      }
    }
  }
}

TEST_CASE("certification soundness: certified m have exact non-cube values") {
  const auto tables = builtin_tables();
  for (long long m = 1; m <= 50; ++m) {
    for (Factor which : {Factor::g1, Factor::g2}) {
      const auto cert = certify_m(m, which, tables, 150);
      if (cert.status != CertStatus::certified) continue;
      const bool special = cert.method.type == MethodType::special_case;
      const auto seq = factor_numerators(m, which, 6);
      for (int orbit_index = 1; orbit_index <= 5; ++orbit_index) {
        if (special && orbit_index == 1) continue;  // x_2(1) = 1 is the special cube
        CAPTURE(m, factor_name(which), orbit_index);
        REQUIRE_FALSE(is_perfect_pth_power(seq.at(orbit_index + 1), 3).has_value());
      }
    }
  }
}
