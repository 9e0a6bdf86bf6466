#pragma once

// Degree classification and the desk-scale Diophantine oracles behind the
// stability results: base-case irreducibility of z^d + 1/c, the quadratic
// 2-adic factor bound, square-obstruction scans, Catalan and generalized
// Fermat searches, and the exact abc inequality checks. Every inequality here
// is decided by exact integer or rational comparison, never floating point.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stabcert/errors.hpp"
#include "stabcert/exact.hpp"
#include "stabcert/modular.hpp"
#include "stabcert/sequences.hpp"

namespace stabcert {

// ---------------------------------------------------------------------------
// Base-case irreducibility of f(z) = z^d + 1/c over Q. Writing f = z^d - a
// with a = -1/c, f is irreducible iff a is not a p-th power for any prime
// p | d and, when 4 | d, a is not in -4 Q^4. Concretely: c = -t^p for some
// prime p | d, or c = 4 w^4 with 4 | d, are exactly the reducible cases.
// ---------------------------------------------------------------------------

inline bool base_irreducible(int d, const BigInt& c) {
  if (d < 2) throw std::invalid_argument("base_irreducible: degree must be >= 2");
  if (c == 0) throw std::invalid_argument("base_irreducible: c must be nonzero");
  for (int p = 2; p <= d; ++p) {
    if (d % p != 0 || !is_prime_u64(static_cast<std::uint64_t>(p))) continue;
    if (is_perfect_pth_power(-c, static_cast<unsigned>(p))) return false;
  }
  if (d % 4 == 0 && c % 4 == 0 && is_perfect_pth_power(c / 4, 4)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Which unconditional stability case covers a given degree.
// ---------------------------------------------------------------------------

enum class StabilityCase {
  quadratic,                  // d = 2: handled by the 2-adic factor bound
  odd_d,                      // d >= 3 odd, 3 | d
  covered_by_danielson_fein,  // d > 3 odd, 3 does not divide d
  power_of_two,               // d = 2^r, r >= 2
  two_three,                  // d = 2^r 3^s, r, s >= 1
  two_five_seven,             // d = 2^r 5^s 7^t, r >= 1, d == 1 (mod 3)
  four_mod_12,                // d == 4 (mod 12)
  not_covered_unconditional,  // even d fitting no case (14, 20, 22, ...)
};

inline const char* stability_case_name(StabilityCase c) {
  switch (c) {
    case StabilityCase::quadratic: return "quadratic";
    case StabilityCase::odd_d: return "odd_d";
    case StabilityCase::covered_by_danielson_fein: return "covered_by_danielson_fein";
    case StabilityCase::power_of_two: return "power_of_two";
    case StabilityCase::two_three: return "two_three";
    case StabilityCase::two_five_seven: return "two_five_seven";
    case StabilityCase::four_mod_12: return "four_mod_12";
    case StabilityCase::not_covered_unconditional: return "not_covered_unconditional";
  }
  return "unknown";
}

struct Classification {
  int d = 0;
  StabilityCase stability_case = StabilityCase::not_covered_unconditional;
  int r = 0;  // exponent of 2
  int s = 0;  // exponent of 3 (two_three) or 5 (two_five_seven)
  int t = 0;  // exponent of 7 (two_five_seven)
  std::string abc_note;  // set for not_covered_unconditional
};

// Exact test of 1/14 < 1/d + 1/(d^2 - 1) by cross-multiplication.
inline bool d14_inequality_holds(long long d) {
  const BigInt bd = d;
  const BigInt d2m1 = bd * bd - 1;
  return bd * d2m1 < 14 * (d2m1 + bd);
}

inline Classification classify_stability(int d) {
  if (d < 2) throw std::invalid_argument("classify_stability: degree must be >= 2");
  Classification result;
  result.d = d;
  if (d == 2) {
    result.stability_case = StabilityCase::quadratic;
    return result;
  }
  if (d % 2 == 1) {
    result.stability_case =
        d % 3 == 0 ? StabilityCase::odd_d : StabilityCase::covered_by_danielson_fein;
    return result;
  }
  int rest = d;
  int r = 0, s3 = 0, s5 = 0, t7 = 0;
  while (rest % 2 == 0) { rest /= 2; ++r; }
  int rest3 = rest;
  while (rest3 % 3 == 0) { rest3 /= 3; ++s3; }
  if (rest == 1 && r >= 2) {
    result.stability_case = StabilityCase::power_of_two;
    result.r = r;
    return result;
  }
  if (rest3 == 1 && s3 >= 1) {
    result.stability_case = StabilityCase::two_three;
    result.r = r;
    result.s = s3;
    return result;
  }
  if (s3 == 0) {
    int rest57 = rest;
    while (rest57 % 5 == 0) { rest57 /= 5; ++s5; }
    while (rest57 % 7 == 0) { rest57 /= 7; ++t7; }
    if (rest57 == 1 && d % 3 == 1) {
      result.stability_case = StabilityCase::two_five_seven;
      result.r = r;
      result.s = s5;
      result.t = t7;
      return result;
    }
  }
  if (d % 12 == 4) {
    result.stability_case = StabilityCase::four_mod_12;
    return result;
  }
  result.stability_case = StabilityCase::not_covered_unconditional;
  result.abc_note =
      d14_inequality_holds(d)
          ? "conditional route: 1/14 < 1/d + 1/(d^2-1) holds, so the square case needs the "
            "dedicated even-index argument"
          : "conditional route: 1/14 >= 1/d + 1/(d^2-1), the exponent inequality excludes the "
            "square case";
  return result;
}

// ---------------------------------------------------------------------------
// Quadratic 2-adic factor bound: for odd c the iterate factor count of
// z^2 + 1/c is at most nu_2(1 + c); bound 1 iff c == 1 (mod 4). c = -1 gives
// the infinite sentinel (f^2(0) = 0).
// ---------------------------------------------------------------------------

inline Valuation quadratic_factor_bound(const BigInt& c) {
  if (c == 0 || c % 2 == 0)
    throw no_good_reduction_error("quadratic_factor_bound: c must be odd");
  const BigInt value = 1 + c;
  if (value == 0) return Valuation::infinite();
  return Valuation::finite(valuation_of_nonzero(value, 2));
}

// ---------------------------------------------------------------------------
// Square-obstruction scan for z^2 + 1/c: entry n certifies that the numerator
// a_{n+1} of f^{n+1}(0) is not a square, exactly for small indices and by a
// modular obstruction prime beyond the exact guard. Degenerate (preperiodic)
// orbits surface as zero values.
// ---------------------------------------------------------------------------

enum class SquareScanStatus {
  not_square_exact,  // a_{n+1} checked exactly, not a square
  obstruction_prime, // witnessed by a prime q: a_{n+1} mod q is a non-residue
  zero_value,        // a_{n+1} = 0: the orbit is preperiodic
  square_value,      // a_{n+1} is a perfect square; nothing to certify
  unknown,           // no obstruction found within q_bound
};

struct SquareScanEntry {
  int n = 0;
  SquareScanStatus status = SquareScanStatus::unknown;
  std::uint64_t obstruction_prime = 0;
};

struct SquareScanReport {
  long long c = 0;
  bool base_irreducible = false;
  std::vector<SquareScanEntry> entries;  // n = 1..N
  bool all_certified = false;
};

inline SquareScanReport quadratic_square_scan(long long c, int n_max, std::uint64_t q_bound) {
  if (c == 0) throw std::invalid_argument("quadratic_square_scan: c must be nonzero");
  SquareScanReport report;
  report.c = c;
  report.base_irreducible = base_irreducible(2, BigInt(c));
  const int exact_limit = default_orbit_guard(2);
  const NumeratorSeq exact_seq =
      numerators(2, BigInt(c), std::min(n_max + 1, exact_limit));
  report.all_certified = true;
  for (int n = 1; n <= n_max; ++n) {
    SquareScanEntry entry;
    entry.n = n;
    const int target = n + 1;  // a_{n+1} is the numerator of g(f^n(0)) with g = f
    if (target <= static_cast<int>(exact_seq.values.size())) {
      const BigInt& a = exact_seq.at(target);
      if (a == 0) {
        entry.status = SquareScanStatus::zero_value;
      } else if (is_perfect_pth_power(a, 2)) {
        entry.status = SquareScanStatus::square_value;
      } else {
        entry.status = SquareScanStatus::not_square_exact;
      }
    } else if (const auto q = pth_power_obstruction(2, c, target, 2, q_bound)) {
      entry.status = SquareScanStatus::obstruction_prime;
      entry.obstruction_prime = *q;
    } else {
      entry.status = SquareScanStatus::unknown;
    }
    report.all_certified = report.all_certified &&
                           (entry.status == SquareScanStatus::not_square_exact ||
                            entry.status == SquareScanStatus::obstruction_prime);
    report.entries.push_back(entry);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Catalan scan: all x^m - y^n = 1 with 1 <= x, y <= base_bound and
// 2 <= m, n <= exp_bound. Expected output is exactly (3, 2, 2, 3).
// ---------------------------------------------------------------------------

struct CatalanSolution {
  long long x = 0;
  long long y = 0;
  int m = 0;
  int n = 0;
  friend bool operator==(const CatalanSolution&, const CatalanSolution&) = default;
};

inline std::vector<CatalanSolution> catalan_scan(long long base_bound, int exp_bound) {
  if (base_bound < 2 || exp_bound < 2)
    throw std::invalid_argument("catalan_scan: bounds must be >= 2");
  std::vector<CatalanSolution> solutions;
  for (long long x = 2; x <= base_bound; ++x) {
    BigInt xm = x;
    for (int m = 2; m <= exp_bound; ++m) {
      xm *= x;
      const BigInt t = xm - 1;
      for (int n = 2; n <= exp_bound; ++n) {
        const auto y = is_perfect_pth_power(t, static_cast<unsigned>(n));
        if (y && *y >= 1 && *y <= base_bound)
          solutions.push_back({x, static_cast<long long>(*y), m, n});
      }
    }
  }
  return solutions;
}

// ---------------------------------------------------------------------------
// Generalized Fermat brute search: primitive solutions of x^p + y^q = z^r in
// the box |x|,|y|,|z| <= bound. Signs range over negatives only where the
// exponent is odd; z^r is enumerated and y recovered as an exact q-th root,
// so the work is quadratic in the bound rather than cubic.
// ---------------------------------------------------------------------------

struct FermatSolution {
  long long x = 0;
  long long y = 0;
  long long z = 0;
  friend bool operator==(const FermatSolution&, const FermatSolution&) = default;
  friend auto operator<=>(const FermatSolution&, const FermatSolution&) = default;
};

inline std::vector<FermatSolution> fermat_brute_search(int p, int q, int r, long long bound) {
  if (p < 2 || q < 2 || r < 2)
    throw std::invalid_argument("fermat_brute_search: exponents must be >= 2");
  if (bound < 1) throw std::invalid_argument("fermat_brute_search: bound must be >= 1");
  auto coprime = [](long long a, long long b) {
    return std::gcd(std::abs(a), std::abs(b)) == 1;
  };
  std::vector<FermatSolution> solutions;
  const long long z_lo = r % 2 == 1 ? -bound : 1;
  const long long x_lo = p % 2 == 1 ? -bound : 1;
  for (long long z = z_lo; z <= bound; ++z) {
    if (z == 0) continue;
    const BigInt zr = bigint_pow(BigInt(z), static_cast<std::uint64_t>(r));
    for (long long x = x_lo; x <= bound; ++x) {
      if (x == 0) continue;
      const BigInt t = zr - bigint_pow(BigInt(x), static_cast<std::uint64_t>(p));
      if (t == 0) continue;
      const auto root = is_perfect_pth_power(t, static_cast<unsigned>(q));
      if (!root) continue;
      const BigInt& y_big = *root;
      if (y_big == 0 || boost::multiprecision::abs(y_big) > bound) continue;
      const long long y = static_cast<long long>(y_big);
      if (q % 2 == 0 && y < 0) continue;  // canonical sign for even exponents
      if (coprime(x, y) && coprime(x, z) && coprime(y, z)) solutions.push_back({x, y, z});
    }
  }
  std::sort(solutions.begin(), solutions.end());
  return solutions;
}

// ---------------------------------------------------------------------------
// Exact abc inequality check: N = rad(abc), decides c < N^(7/4) as the integer
// comparison c^4 < N^7. The quality value is informational only.
// ---------------------------------------------------------------------------

struct AbcCheck {
  BigInt n_radical;
  bool holds_74 = false;
  double quality = 0.0;  // log c / log N, for reporting
};

namespace detail {

// Natural log of a positive BigInt through a 62-bit mantissa; reporting only.
inline double approx_log(const BigInt& n) {
  const unsigned bits = boost::multiprecision::msb(n);
  if (bits < 62) return std::log(static_cast<double>(n));
  const BigInt mantissa = n >> (bits - 62);
  return std::log(static_cast<double>(mantissa)) +
         static_cast<double>(bits - 62) * std::log(2.0);
}

}  // namespace detail

inline AbcCheck abc_inequality_check(const BigInt& a, const BigInt& b, const BigInt& c,
                                     const FactorEffort& effort = {}) {
  if (a < 1 || b < 1 || c < 1)
    throw std::invalid_argument("abc_inequality_check: a, b, c must be positive");
  if (a + b != c) throw std::invalid_argument("abc_inequality_check: a + b must equal c");
  using boost::multiprecision::gcd;
  if (gcd(a, b) != 1 || gcd(a, c) != 1 || gcd(b, c) != 1)
    throw std::invalid_argument("abc_inequality_check: a, b, c must be pairwise coprime");
  AbcCheck result;
  result.n_radical = radical(a * b * c, effort);
  result.holds_74 = bigint_pow(c, 4) < bigint_pow(result.n_radical, 7);
  const double log_n = detail::approx_log(result.n_radical);
  result.quality = log_n > 0.0 ? detail::approx_log(c) / log_n : 0.0;
  return result;
}

// The set of d in [d_min, d_max] where 1/14 < 1/d + 1/(d^2 - 1), by exact
// rational comparison. Documents which even uncovered degrees survive the
// exponent filter (exactly d <= 14).
inline std::set<int> d14_inequality_scan(int d_min, int d_max) {
  if (d_min < 3 || d_min > d_max)
    throw std::invalid_argument("d14_inequality_scan: need 3 <= d_min <= d_max");
  std::set<int> surviving;
  for (int d = d_min; d <= d_max; ++d) {
    if (d14_inequality_holds(d)) surviving.insert(d);
  }
  return surviving;
}

// ---------------------------------------------------------------------------
// Perfect-power scan of a_2 = 1 + c^(d-1) over a (d, c) box: every (d, c, p)
// with p | d prime and a_2 a perfect p-th power. For d >= 3 the only hit is
// (4, 2, 2) with a_2 = 9; d = 2 admits the whole family c = t^2 - 1.
// ---------------------------------------------------------------------------

struct A2Hit {
  int d = 0;
  long long c = 0;
  unsigned p = 0;
  friend bool operator==(const A2Hit&, const A2Hit&) = default;
};

inline std::vector<A2Hit> scan_a2(int d_min, int d_max, long long c_max) {
  if (d_min < 2 || d_min > d_max) throw std::invalid_argument("scan_a2: need 2 <= d_min <= d_max");
  if (c_max < 2) throw std::invalid_argument("scan_a2: c_max must be >= 2");
  std::vector<A2Hit> hits;
  for (int d = d_min; d <= d_max; ++d) {
    std::vector<unsigned> prime_divisors;
    for (int p = 2; p <= d; ++p) {
      if (d % p == 0 && is_prime_u64(static_cast<std::uint64_t>(p)))
        prime_divisors.push_back(static_cast<unsigned>(p));
    }
    for (long long c = -c_max; c <= c_max; ++c) {
      if (c > -2 && c < 2) continue;
      const BigInt a2 = 1 + bigint_pow(BigInt(c), static_cast<std::uint64_t>(d - 1));
      if (a2 == 0) continue;
      for (unsigned p : prime_divisors) {
        if (is_perfect_pth_power(a2, p)) hits.push_back({d, c, p});
      }
    }
  }
  return hits;
}

}  // namespace stabcert
