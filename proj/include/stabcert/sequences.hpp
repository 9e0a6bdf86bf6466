#pragma once

// Exact orbit iterates of 0 under f(z) = z^d + 1/c, the numerator recurrence
// a_n = a_{n-1}^d + c^(d^{n-1}-1), and the numerator sequences w_n / x_n of the
// two factors g1, g2 when c = m^3. All exact paths sit behind a growth guard:
// a_n has Theta(d^n) digits, so anything large belongs to the modular path.

#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "stabcert/errors.hpp"
#include "stabcert/exact.hpp"

namespace stabcert {

inline int default_orbit_guard(int d) { return d == 2 ? 10 : 6; }

namespace detail {

// Hard cap on the bit size of a single exact value (~16 MiB).
constexpr std::uint64_t max_exact_bits = 1ull << 27;

inline void require_exact_size(int d, const BigInt& c, int n_count, int max_n_override) {
  if (d < 2) throw std::invalid_argument("orbit: degree must be >= 2");
  if (c == 0) throw std::invalid_argument("orbit: c must be nonzero");
  const int limit = max_n_override > 0 ? max_n_override : default_orbit_guard(d);
  if (n_count > limit)
    throw size_guard_error("exact orbit guard: n = " + std::to_string(n_count) +
                           " exceeds the limit " + std::to_string(limit) +
                           " for degree " + std::to_string(d) +
                           " (raise the override or use the modular path)");
  if (n_count < 1) return;
  const std::uint64_t c_bits = boost::multiprecision::msb(boost::multiprecision::abs(c)) + 1;
  const BigInt estimated_bits =
      bigint_pow(BigInt(d), static_cast<std::uint64_t>(n_count - 1)) * std::max<std::uint64_t>(c_bits, 2);
  if (estimated_bits > BigInt(max_exact_bits))
    throw size_guard_error("exact orbit guard: value size estimate exceeds " +
                           std::to_string(max_exact_bits) + " bits");
}

inline ExactRational rational_pow(const ExactRational& x, unsigned e) {
  return ExactRational(bigint_pow(numerator(x), e), bigint_pow(denominator(x), e));
}

}  // namespace detail

// f^1(0) .. f^N(0) in lowest terms. The denominator of entry n is |c|^(d^{n-1})
// with any sign normalized into the numerator.
inline std::vector<ExactRational> iterate_orbit_exact(int d, const BigInt& c, int n_count,
                                                      int max_n_override = 0) {
  detail::require_exact_size(d, c, n_count, max_n_override);
  std::vector<ExactRational> orbit;
  orbit.reserve(static_cast<std::size_t>(n_count));
  const ExactRational inv_c = make_rational(1, c);
  ExactRational x = 0;
  for (int n = 1; n <= n_count; ++n) {
    x = detail::rational_pow(x, static_cast<unsigned>(d)) + inv_c;
    orbit.push_back(x);
  }
  return orbit;
}

// a_1 = 1; a_n = a_{n-1}^d + c^(d^{n-1}-1). Satisfies a_n == 1 (mod c) and
// gcd(a_n, a_{n+1}) = 1; f^n(0) = a_n / c^(d^{n-1}).
struct NumeratorSeq {
  int d = 0;
  BigInt c;
  std::vector<BigInt> values;  // values[n-1] = a_n

  const BigInt& at(int n) const { return values.at(static_cast<std::size_t>(n - 1)); }
};

inline NumeratorSeq numerators(int d, const BigInt& c, int n_count, int max_n_override = 0) {
  detail::require_exact_size(d, c, n_count, max_n_override);
  NumeratorSeq seq{d, c, {}};
  if (n_count < 1) return seq;
  seq.values.reserve(static_cast<std::size_t>(n_count));
  seq.values.emplace_back(1);
  for (int n = 2; n <= n_count; ++n) {
    const BigInt exponent = bigint_pow(BigInt(d), static_cast<std::uint64_t>(n - 1)) - 1;
    seq.values.push_back(bigint_pow(seq.values.back(), static_cast<std::uint64_t>(d)) +
                         bigint_pow(c, static_cast<std::uint64_t>(exponent)));
  }
  return seq;
}

// Numerators, in lowest terms, of g_i(f^{n-1}(0)) for n = 2..N with c = m^3.
// w_2(m) = m^2 + 1 and x_2(m) = m^4 - m^2 + 1. The underlying sequence starts
// at w_1 = x_1 = 1, the numerator of g_i(0); see rigid_divisibility_check.
struct FactorNumeratorSeq {
  long long m = 0;
  Factor which = Factor::g1;
  std::vector<BigInt> values;  // values[n-2] = w_n (or x_n), n >= 2

  int max_index() const { return static_cast<int>(values.size()) + 1; }

  // Numerator index n >= 1; index 1 is the implicit leading 1.
  BigInt at(int n) const {
    if (n == 1) return 1;
    return values.at(static_cast<std::size_t>(n - 2));
  }
};

inline FactorNumeratorSeq factor_numerators(long long m, Factor which, int n_count,
                                            int max_n_override = 0) {
  if (m == 0) throw std::invalid_argument("factor_numerators: m must be nonzero");
  FactorNumeratorSeq seq{m, which, {}};
  if (n_count < 2) return seq;
  const BigInt c = bigint_pow(BigInt(m), 3);
  const auto orbit = iterate_orbit_exact(3, c, n_count - 1, max_n_override);
  const ExactRational inv_m = make_rational(1, BigInt(m));
  seq.values.reserve(orbit.size());
  for (const ExactRational& x : orbit) {
    ExactRational g;
    if (which == Factor::g1)
      g = x + inv_m;
    else
      g = x * x - x * inv_m + inv_m * inv_m;
    seq.values.push_back(numerator(g));
  }
  return seq;
}

// ---------------------------------------------------------------------------
// Rigid divisibility spot check: nu_p(x_n) > 0 implies nu_p(x_{kn}) = nu_p(x_n),
// and shared divisibility descends to the gcd index. Indices are numerator
// indices (x_1 = 1). A nonempty result signals a bug or a source discrepancy.
// ---------------------------------------------------------------------------

struct RigidViolation {
  long long prime = 0;
  int index_a = 0;
  int index_b = 0;
  std::string detail;
};

inline std::vector<RigidViolation> rigid_divisibility_check(const FactorNumeratorSeq& seq,
                                                            long long prime_bound,
                                                            int index_bound) {
  if (index_bound > seq.max_index())
    throw std::invalid_argument("rigid_divisibility_check: sequence shorter than index_bound");
  std::vector<RigidViolation> violations;
  for (long long p = 2; p <= prime_bound; ++p) {
    if (!is_prime_u64(static_cast<std::uint64_t>(p))) continue;
    std::vector<long long> v(static_cast<std::size_t>(index_bound) + 1, 0);
    for (int n = 1; n <= index_bound; ++n) {
      const BigInt value = seq.at(n);
      if (value == 0) {
        violations.push_back({p, n, 0, "zero element"});
        continue;
      }
      v[static_cast<std::size_t>(n)] = valuation_of_nonzero(value, BigInt(p));
    }
    for (int n = 1; n <= index_bound; ++n) {
      if (v[static_cast<std::size_t>(n)] <= 0) continue;
      for (int k = 2; n * k <= index_bound; ++k) {
        if (v[static_cast<std::size_t>(n * k)] != v[static_cast<std::size_t>(n)])
          violations.push_back({p, n, n * k,
                                "nu_p differs along index multiple: " +
                                    std::to_string(v[static_cast<std::size_t>(n)]) + " vs " +
                                    std::to_string(v[static_cast<std::size_t>(n * k)])});
      }
      for (int j = 1; j <= index_bound; ++j) {
        if (v[static_cast<std::size_t>(j)] <= 0) continue;
        const int g = std::gcd(n, j);
        if (v[static_cast<std::size_t>(g)] <= 0)
          violations.push_back({p, n, j, "shared prime misses the gcd index"});
      }
    }
  }
  return violations;
}

}  // namespace stabcert
