#pragma once

// The verification campaign for z^3 + 1/m^3: built-in sieve tables, per-m
// certification of both factors, residual prime search, the m = 1 special
// case, sign reduction, and the parallel batch driver. certify_m is pure;
// certify_range fans independent per-m work out to workers and merges into a
// canonically ordered report, so output is byte-identical for any job count.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "stabcert/errors.hpp"
#include "stabcert/exact.hpp"
#include "stabcert/modular.hpp"
#include "stabcert/polymod.hpp"
#include "stabcert/sequences.hpp"

namespace stabcert {

// Modulus -> certified residue classes of m, stored closed under negation mod k.
struct SieveTable {
  Factor which = Factor::g1;
  std::map<std::uint64_t, std::set<std::uint64_t>> entries;
};

inline std::pair<SieveTable, SieveTable> builtin_tables() {
  auto closed = [](std::uint64_t k, std::initializer_list<std::uint64_t> reps) {
    std::set<std::uint64_t> classes;
    for (std::uint64_t r : reps) {
      classes.insert(r % k);
      classes.insert((k - r % k) % k);
    }
    return classes;
  };
  SieveTable g1{Factor::g1, {}};
  g1.entries[7] = closed(7, {1, 3});
  g1.entries[13] = closed(13, {1, 2, 3, 6});
  g1.entries[19] = closed(19, {2, 4});
  g1.entries[31] = closed(31, {1, 3, 4, 6, 8, 9, 10, 11, 12});
  g1.entries[37] = closed(37, {3, 9, 17});
  g1.entries[43] = closed(43, {2, 5, 8, 10, 12, 13, 14, 15, 20});
  SieveTable g2{Factor::g2, {}};
  g2.entries[7] = closed(7, {1, 2, 3});
  g2.entries[13] = closed(13, {1, 2, 3, 4, 6});
  g2.entries[19] = closed(19, {3, 5});
  g2.entries[31] = closed(31, {1, 4, 7, 8, 9, 11, 14});
  g2.entries[37] = closed(37, {4, 7, 9, 12, 16, 17, 18});
  return {std::move(g1), std::move(g2)};
}

// Smallest table modulus whose class set contains m mod k, if any.
inline std::optional<std::uint64_t> table_covers(long long m, const SieveTable& table) {
  if (m < 1) throw std::invalid_argument("table_covers: m must be >= 1");
  for (const auto& [k, classes] : table.entries) {
    if (classes.count(reduce_mod(m, k)) != 0) return k;
  }
  return std::nullopt;
}

// Ascending list of m in [1, max_m] covered by no table modulus.
inline std::vector<long long> residuals(long long max_m, const SieveTable& table) {
  if (max_m < 1) throw std::invalid_argument("residuals: max_m must be >= 1");
  std::vector<long long> uncovered;
  for (long long m = 1; m <= max_m; ++m) {
    if (!table_covers(m, table)) uncovered.push_back(m);
  }
  return uncovered;
}

// Primes usable for the cube sieve: q == 1 (mod 3), ascending from 7.
inline std::vector<std::uint64_t> usable_sieve_primes(std::uint64_t bound) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t q = 7; q <= bound; q += 2) {
    if (q % 3 == 1 && is_prime_u64(q)) primes.push_back(q);
  }
  return primes;
}

// Smallest usable prime p <= prime_bound, p not dividing m, whose sieve passes.
inline std::optional<std::uint64_t> search_prime(long long m, Factor which,
                                                 std::uint64_t prime_bound,
                                                 std::uint64_t start_index = 2,
                                                 std::uint64_t step = 2) {
  if (m < 1) throw std::invalid_argument("search_prime: m must be >= 1");
  for (std::uint64_t p : usable_sieve_primes(prime_bound)) {
    if (reduce_mod(m, p) == 0) continue;
    if (sieve_indices(which, m, p, start_index, step).pass) return p;
  }
  return std::nullopt;
}

// Cube-freeness is sign-invariant, so a certificate for |m| certifies m < 0.
inline long long reduce_negative(long long m) {
  if (m >= 0) throw std::invalid_argument("reduce_negative: m must be negative");
  return -m;
}

enum class CertStatus { certified, unresolved };
enum class MethodType { table_modulus, searched_prime, special_case, none };

inline const char* method_type_name(MethodType t) {
  switch (t) {
    case MethodType::table_modulus: return "table_modulus";
    case MethodType::searched_prime: return "searched_prime";
    case MethodType::special_case: return "special_case";
    case MethodType::none: return "none";
  }
  return "none";
}

struct BaseCase {
  std::string expression;
  bool is_cube = false;
};

struct Method {
  MethodType type = MethodType::none;
  std::optional<std::uint64_t> modulus_or_prime;
};

struct Window {
  std::uint64_t tail = 0;
  std::uint64_t cycle = 0;
  std::uint64_t indices_checked = 0;
};

struct Certificate {
  long long m = 0;
  Factor which = Factor::g1;
  BaseCase base_case;
  Method method;
  Window window;
  CertStatus status = CertStatus::unresolved;
};

namespace detail {

inline Window window_of(const SieveResult& r) {
  return {r.tail_length, r.cycle_length, r.indices_checked};
}

}  // namespace detail

// Pipeline: exact base case (w_2 = m^2+1 resp. x_2 = m^4-m^2+1 not a cube),
// rigid divisibility transfers it to all even-position numerators (cited, not
// recomputed), then the even-orbit-index sieve with a table modulus or a
// searched prime. m = 1 on g2 is the special case: x_2(1) = 1 is a cube, so
// instead z^6+z^3+1 is checked irreducible mod 2 and every index n >= 2 is
// sieved mod 7.
inline Certificate certify_m(long long m, Factor which,
                             const std::pair<SieveTable, SieveTable>& tables,
                             std::uint64_t prime_bound) {
  if (m < 1) throw std::invalid_argument("certify_m: m must be >= 1 (reduce negatives first)");
  Certificate cert;
  cert.m = m;
  cert.which = which;

  if (which == Factor::g2 && m == 1) {
    cert.base_case = {"m^4-m^2+1 = 1", true};
    if (!poly_irreducible_mod_p({1, 0, 0, 1, 0, 0, 1}, 2))
      throw internal_contradiction_error("certify_m: z^6+z^3+1 failed its mod-2 irreducibility check");
    const SieveResult sieve = sieve_indices(Factor::g2, 1, 7, 2, 1);
    if (!sieve.pass)
      throw internal_contradiction_error("certify_m: the all-index sieve mod 7 failed for m = 1");
    cert.method = {MethodType::special_case, 7};
    cert.window = detail::window_of(sieve);
    cert.status = CertStatus::certified;
    return cert;
  }

  const BigInt bm = m;
  BigInt base_value;
  if (which == Factor::g1)
    base_value = bm * bm + 1;
  else
    base_value = bm * bm * bm * bm - bm * bm + 1;
  const bool base_is_cube = is_perfect_pth_power(base_value, 3).has_value();
  cert.base_case = {std::string(which == Factor::g1 ? "m^2+1 = " : "m^4-m^2+1 = ") +
                        base_value.str(),
                    base_is_cube};
  if (base_is_cube)
    throw internal_contradiction_error("certify_m: base value is a cube for m = " +
                                       std::to_string(m) + " (" + factor_name(which) + ")");

  const SieveTable& table = which == Factor::g1 ? tables.first : tables.second;
  if (const auto k = table_covers(m, table)) {
    const SieveResult sieve = sieve_indices(which, m, *k, 2, 2);
    if (!sieve.pass)
      throw internal_contradiction_error(
          "certify_m: table modulus " + std::to_string(*k) + " failed for m = " +
          std::to_string(m) + " (" + factor_name(which) + ")");
    cert.method = {MethodType::table_modulus, *k};
    cert.window = detail::window_of(sieve);
    cert.status = CertStatus::certified;
    return cert;
  }

  if (const auto p = search_prime(m, which, prime_bound)) {
    const SieveResult sieve = sieve_indices(which, m, *p, 2, 2);
    cert.method = {MethodType::searched_prime, *p};
    cert.window = detail::window_of(sieve);
    cert.status = CertStatus::certified;
    return cert;
  }

  cert.method = {MethodType::none, std::nullopt};
  cert.status = CertStatus::unresolved;
  return cert;
}

struct ExemplarCheck {
  long long m = 0;
  Factor which = Factor::g1;
  std::uint64_t prime = 0;
  bool pass = false;
};

struct BatchReport {
  long long max_m = 0;
  std::uint64_t prime_bound = 0;
  bool exemplar_check = false;
  std::vector<Certificate> certificates;  // ascending m, g1 before g2
  std::uint64_t covered_by_table = 0;
  std::uint64_t searched = 0;
  std::uint64_t special = 0;
  std::uint64_t unresolved = 0;
  bool theorem3_verified = false;
  std::vector<ExemplarCheck> exemplar_checks;
};

inline BatchReport certify_range(long long max_m, std::uint64_t prime_bound, unsigned jobs = 1,
                                 bool exemplar_check = false) {
  if (max_m < 1) throw std::invalid_argument("certify_range: max_m must be >= 1");
  if (jobs == 0) jobs = 1;
  const auto tables = builtin_tables();

  BatchReport report;
  report.max_m = max_m;
  report.prime_bound = prime_bound;
  report.exemplar_check = exemplar_check;
  report.certificates.resize(static_cast<std::size_t>(max_m) * 2);

  auto work = [&](long long lo, long long hi) {
    for (long long m = lo; m < hi; ++m) {
      report.certificates[static_cast<std::size_t>(m - 1) * 2] =
          certify_m(m, Factor::g1, tables, prime_bound);
      report.certificates[static_cast<std::size_t>(m - 1) * 2 + 1] =
          certify_m(m, Factor::g2, tables, prime_bound);
    }
  };

  if (jobs == 1 || max_m < 2) {
    work(1, max_m + 1);
  } else {
    const unsigned worker_count = std::min<unsigned>(jobs, static_cast<unsigned>(max_m));
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> failures(worker_count);
    const long long chunk = (max_m + worker_count - 1) / worker_count;
    for (unsigned w = 0; w < worker_count; ++w) {
      const long long lo = 1 + static_cast<long long>(w) * chunk;
      const long long hi = std::min<long long>(lo + chunk, max_m + 1);
      workers.emplace_back([&, w, lo, hi] {
        try {
          if (lo <= max_m) work(lo, hi);
        } catch (...) {
          failures[w] = std::current_exception();
        }
      });
    }
    for (auto& t : workers) t.join();
    for (const auto& failure : failures) {
      if (failure) std::rethrow_exception(failure);
    }
  }

  for (const Certificate& cert : report.certificates) {
    switch (cert.method.type) {
      case MethodType::table_modulus: ++report.covered_by_table; break;
      case MethodType::searched_prime: ++report.searched; break;
      case MethodType::special_case: ++report.special; break;
      case MethodType::none: break;
    }
    if (cert.status == CertStatus::unresolved) ++report.unresolved;
  }
  report.theorem3_verified = report.unresolved == 0;

  if (exemplar_check) {
    report.exemplar_checks.push_back(
        {4342, Factor::g1, 73, sieve_indices(Factor::g1, 4342, 73, 2, 2).pass});
    report.exemplar_checks.push_back(
        {2730, Factor::g2, 67, sieve_indices(Factor::g2, 2730, 67, 2, 2).pass});
  }
  return report;
}

}  // namespace stabcert
