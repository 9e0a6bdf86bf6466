#pragma once

// Exact big-integer and rational arithmetic: perfect-power detection, integer
// roots, p-adic valuations, radicals, and bounded factorization. Values are
// immutable and safe to share across workers.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabcert/errors.hpp"

namespace stabcert {

using BigInt = boost::multiprecision::cpp_int;

// Canonical form: lowest terms, positive denominator, zero stored as 0/1.
using ExactRational = boost::multiprecision::cpp_rational;

// The two irreducible factors of z^3 + 1/m^3: g1 = z + 1/m, g2 = z^2 - z/m + 1/m^2.
enum class Factor { g1, g2 };

inline const char* factor_name(Factor f) { return f == Factor::g1 ? "g1" : "g2"; }

inline std::optional<Factor> factor_from_name(const std::string& s) {
  if (s == "g1") return Factor::g1;
  if (s == "g2") return Factor::g2;
  return std::nullopt;
}

inline BigInt bigint_pow(BigInt base, std::uint64_t exp) {
  BigInt result = 1;
  while (exp != 0) {
    if (exp & 1) result *= base;
    exp >>= 1;
    if (exp != 0) base *= base;
  }
  return result;
}

// cpp_rational requires a positive denominator at construction; this
// normalizes the sign into the numerator first.
inline ExactRational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw std::invalid_argument("make_rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return ExactRational(std::move(num), std::move(den));
}

// ---------------------------------------------------------------------------
// Machine-word primality (deterministic Miller-Rabin over the full u64 range).
// ---------------------------------------------------------------------------

inline std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod_u64(result, base, m);
    base = mul_mod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a known deterministic witness set for all n < 2^64.
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Integer roots and perfect powers (exact, no floating point).
// ---------------------------------------------------------------------------

// Largest r with r^p <= n. Newton iteration from above, then clamp.
inline BigInt integer_pth_root_floor(const BigInt& n, unsigned p) {
  if (n < 0) throw std::invalid_argument("integer_pth_root_floor: negative argument");
  if (p == 0) throw std::invalid_argument("integer_pth_root_floor: p must be >= 1");
  if (p == 1 || n <= 1) return n;
  const unsigned bits = boost::multiprecision::msb(n) + 1;
  BigInt r = BigInt(1) << (bits / p + 1);
  while (true) {
    BigInt next = ((p - 1) * r + n / bigint_pow(r, p - 1)) / p;
    if (next >= r) break;
    r = next;
  }
  while (bigint_pow(r, p) > n) --r;
  while (bigint_pow(r + 1, p) <= n) ++r;
  return r;
}

// The p-th root of n when n is a perfect p-th power; empty otherwise.
// Negative n with odd p carries the sign through; negative n with even p has no root.
inline std::optional<BigInt> is_perfect_pth_power(const BigInt& n, unsigned p) {
  if (p == 0) throw std::invalid_argument("is_perfect_pth_power: p must be >= 1");
  if (p == 1) return n;
  if (n < 0) {
    if (p % 2 == 0) return std::nullopt;
    auto root = is_perfect_pth_power(-n, p);
    if (root) return -*root;
    return std::nullopt;
  }
  BigInt r = integer_pth_root_floor(n, p);
  if (bigint_pow(r, p) == n) return r;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// p-adic valuation with a distinct infinity marker for 0.
// ---------------------------------------------------------------------------

struct Valuation {
  bool is_infinite = false;
  long long value = 0;

  static Valuation infinite() { return {true, 0}; }
  static Valuation finite(long long v) { return {false, v}; }

  friend bool operator==(const Valuation&, const Valuation&) = default;
};

inline long long valuation_of_nonzero(BigInt n, const BigInt& p) {
  long long v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

// nu_p(x): x = p^t * u with p dividing neither numerator nor denominator of u.
inline Valuation valuation(const ExactRational& x, long long p) {
  if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("valuation: p must be prime");
  if (x == 0) return Valuation::infinite();
  const BigInt bp = p;
  return Valuation::finite(valuation_of_nonzero(numerator(x), bp) -
                           valuation_of_nonzero(denominator(x), bp));
}

inline Valuation valuation(const BigInt& n, long long p) {
  return valuation(ExactRational(n), p);
}

// ---------------------------------------------------------------------------
// Bounded factorization and radicals. Certificates must be trustworthy, so an
// input that resists the configured effort raises an explicit error carrying
// the unfactored cofactor rather than succeeding probabilistically.
// ---------------------------------------------------------------------------

class factorization_error : public std::runtime_error {
 public:
  factorization_error(const std::string& message, BigInt cofactor)
      : std::runtime_error(message), cofactor_(std::move(cofactor)) {}

  const BigInt& cofactor() const { return cofactor_; }

 private:
  BigInt cofactor_;
};

enum class PrimalityVerdict { composite, prime, unproven };

// Deterministic below the known Miller-Rabin bound for the first 13 prime bases;
// beyond it a passing n stays "unproven" (never silently trusted).
inline PrimalityVerdict bigint_primality(const BigInt& n) {
  if (n < 2) return PrimalityVerdict::composite;
  if (n <= std::numeric_limits<std::uint64_t>::max())
    return is_prime_u64(static_cast<std::uint64_t>(n)) ? PrimalityVerdict::prime
                                                       : PrimalityVerdict::composite;
  static const std::uint64_t bases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (std::uint64_t a : bases) {
    if (n % a == 0) return PrimalityVerdict::composite;
  }
  BigInt d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : bases) {
    BigInt x = boost::multiprecision::powm(BigInt(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return PrimalityVerdict::composite;
  }
  static const BigInt deterministic_limit("3317044064679887385961981");
  return n < deterministic_limit ? PrimalityVerdict::prime : PrimalityVerdict::unproven;
}

struct FactorEffort {
  std::uint32_t trial_bound = 100000;
  std::uint32_t rho_attempts = 24;
  std::uint32_t rho_iterations = 1u << 20;
};

namespace detail {

// Brent-cycle Pollard rho; returns a nontrivial factor or 0 on budget exhaustion.
inline BigInt pollard_rho(const BigInt& n, std::uint32_t max_iterations, std::uint64_t seed) {
  if (n % 2 == 0) return 2;
  BigInt x = BigInt(seed % 1000003 + 2) % n;
  BigInt y = x;
  const BigInt c = BigInt(seed / 1000003 % 1000003 + 1) % n;
  BigInt d = 1;
  std::uint32_t iterations = 0;
  auto step = [&](const BigInt& v) { return (v * v + c) % n; };
  while (d == 1 && iterations < max_iterations) {
    x = step(x);
    y = step(step(y));
    d = boost::multiprecision::gcd(x >= y ? x - y : y - x, n);
    ++iterations;
  }
  if (d != 1 && d != n) return d;
  return 0;
}

}  // namespace detail

// Prime factorization of |n| as (prime, exponent) pairs, ascending.
inline std::vector<std::pair<BigInt, unsigned>> factorize(BigInt n,
                                                          const FactorEffort& effort = {}) {
  if (n == 0) throw std::invalid_argument("factorize: zero has no factorization");
  if (n < 0) n = -n;
  std::vector<std::pair<BigInt, unsigned>> factors;
  auto add = [&](const BigInt& p, unsigned e) {
    for (auto& [q, f] : factors) {
      if (q == p) {
        f += e;
        return;
      }
    }
    factors.emplace_back(p, e);
  };

  for (std::uint64_t t = 2; t <= effort.trial_bound && BigInt(t) * t <= n; t = (t == 2 ? 3 : t + 2)) {
    if (n % t == 0) {
      unsigned e = 0;
      while (n % t == 0) {
        n /= t;
        ++e;
      }
      add(BigInt(t), e);
    }
  }
  if (n == 1) {
    std::sort(factors.begin(), factors.end());
    return factors;
  }

  std::vector<BigInt> pending{n};
  while (!pending.empty()) {
    BigInt m = pending.back();
    pending.pop_back();
    switch (bigint_primality(m)) {
      case PrimalityVerdict::prime:
        add(m, 1);
        continue;
      case PrimalityVerdict::unproven:
        throw factorization_error("factorize: cofactor exceeds the provable primality range", m);
      case PrimalityVerdict::composite:
        break;
    }
    BigInt f = 0;
    for (std::uint32_t attempt = 0; attempt < effort.rho_attempts && f == 0; ++attempt) {
      f = detail::pollard_rho(m, effort.rho_iterations, 0x9e3779b97f4a7c15ull + attempt);
    }
    if (f == 0)
      throw factorization_error("factorize: rho budget exhausted on a composite cofactor", m);
    pending.push_back(f);
    pending.push_back(m / f);
  }
  std::sort(factors.begin(), factors.end());
  return factors;
}

// Product of the distinct primes dividing |n|.
inline BigInt radical(const BigInt& n, const FactorEffort& effort = {}) {
  if (n == 0) throw std::invalid_argument("radical: undefined for zero");
  BigInt result = 1;
  for (const auto& [p, e] : factorize(n, effort)) result *= p;
  return result;
}

}  // namespace stabcert
