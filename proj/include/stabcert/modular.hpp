#pragma once

// Arithmetic modulo machine-word k: orbit tail/cycle extraction, p-th-power
// residue tables, g1/g2 evaluation, the even-index cube sieve, and the
// recurrence-mod-q obstruction test. Residue tables are immutable after
// construction and shareable across workers.

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabcert/errors.hpp"
#include "stabcert/exact.hpp"

namespace stabcert {

inline std::uint64_t reduce_mod(long long value, std::uint64_t k) {
  long long r = value % static_cast<long long>(k);
  if (r < 0) r += static_cast<long long>(k);
  return static_cast<std::uint64_t>(r);
}

inline std::uint64_t reduce_mod(const BigInt& value, std::uint64_t k) {
  BigInt r = value % k;
  if (r < 0) r += k;
  return static_cast<std::uint64_t>(r);
}

// a^{-1} mod k via extended Euclid; requires gcd(a, k) = 1.
inline std::optional<std::uint64_t> try_mod_inverse(std::uint64_t a, std::uint64_t k) {
  if (k < 2) return std::nullopt;
  a %= k;
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = static_cast<std::int64_t>(k), new_r = static_cast<std::int64_t>(a);
  while (new_r != 0) {
    const std::int64_t q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  if (r != 1) return std::nullopt;
  if (t < 0) t += static_cast<std::int64_t>(k);
  return static_cast<std::uint64_t>(t);
}

inline std::uint64_t mod_inverse(std::uint64_t a, std::uint64_t k) {
  auto inv = try_mod_inverse(a, k);
  if (!inv)
    throw modulus_unusable_error("mod_inverse: " + std::to_string(a) +
                                 " is not invertible mod " + std::to_string(k));
  return *inv;
}

// ---------------------------------------------------------------------------
// Orbit of 0 under x -> x^d + c^{-1} (mod k), split into tail and cycle by the
// first-repeat convention: the first revisited residue opens the cycle, so the
// tail and cycle are disjoint and |tail| + |cycle| <= k + 1.
// ---------------------------------------------------------------------------

struct OrbitModK {
  std::uint64_t k = 0;
  int d = 0;
  std::uint64_t c_inv = 0;
  std::vector<std::uint64_t> tail;
  std::vector<std::uint64_t> cycle;

  // s_n with s_0 = 0.
  std::uint64_t at(std::uint64_t n) const {
    if (n < tail.size()) return tail[n];
    return cycle[(n - tail.size()) % cycle.size()];
  }
};

inline OrbitModK orbit_mod_k(int d, const BigInt& c, std::uint64_t k) {
  if (d < 2) throw std::invalid_argument("orbit_mod_k: degree must be >= 2");
  if (k < 2) throw std::invalid_argument("orbit_mod_k: modulus must be >= 2");
  if (k > (1ull << 26)) throw std::invalid_argument("orbit_mod_k: modulus too large to tabulate");
  const std::uint64_t c_res = reduce_mod(c, k);
  const auto c_inv = try_mod_inverse(c_res, k);
  if (!c_inv)
    throw modulus_unusable_error("orbit_mod_k: gcd(c, k) != 1 for k = " + std::to_string(k));
  std::vector<std::int64_t> first_seen(k, -1);
  std::vector<std::uint64_t> seq;
  std::uint64_t x = 0;
  while (first_seen[x] < 0) {
    first_seen[x] = static_cast<std::int64_t>(seq.size());
    seq.push_back(x);
    x = (pow_mod_u64(x, static_cast<std::uint64_t>(d), k) + *c_inv) % k;
  }
  const auto entry = static_cast<std::size_t>(first_seen[x]);
  OrbitModK orbit{k, d, *c_inv, {}, {}};
  orbit.tail.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(entry));
  orbit.cycle.assign(seq.begin() + static_cast<std::ptrdiff_t>(entry), seq.end());
  return orbit;
}

inline OrbitModK orbit_mod_k(int d, long long c, std::uint64_t k) {
  return orbit_mod_k(d, BigInt(c), k);
}

// ---------------------------------------------------------------------------
// p-th-power residues mod k by enumeration. For prime k == 1 (mod p) the
// nonzero members form the index-p subgroup of size (k-1)/p.
// ---------------------------------------------------------------------------

struct ResidueSet {
  std::uint64_t k = 0;
  unsigned p = 0;
  std::vector<bool> members;

  bool contains(std::uint64_t r) const { return members[r % k]; }

  std::size_t count_nonzero() const {
    std::size_t n = 0;
    for (std::size_t r = 1; r < members.size(); ++r) n += members[r] ? 1 : 0;
    return n;
  }
};

inline ResidueSet pth_power_residues(std::uint64_t k, unsigned p) {
  if (k < 2) throw std::invalid_argument("pth_power_residues: modulus must be >= 2");
  if (k > (1ull << 26)) throw std::invalid_argument("pth_power_residues: modulus too large to tabulate");
  if (p == 0) throw std::invalid_argument("pth_power_residues: p must be >= 1");
  ResidueSet set{k, p, std::vector<bool>(k, false)};
  for (std::uint64_t x = 0; x < k; ++x) set.members[pow_mod_u64(x, p, k)] = true;
  return set;
}

// g1(x) = x + m^{-1}; g2(x) = x^2 - x m^{-1} + m^{-2}, all mod k.
inline std::uint64_t eval_g_mod_k(Factor which, long long m, std::uint64_t x, std::uint64_t k) {
  const std::uint64_t m_res = reduce_mod(m, k);
  const auto m_inv = try_mod_inverse(m_res, k);
  if (!m_inv)
    throw modulus_unusable_error("eval_g_mod_k: modulus " + std::to_string(k) + " divides m");
  x %= k;
  if (which == Factor::g1) return (x + *m_inv) % k;
  const std::uint64_t x2 = mul_mod_u64(x, x, k);
  const std::uint64_t xm = mul_mod_u64(x, *m_inv, k);
  const std::uint64_t m2 = mul_mod_u64(*m_inv, *m_inv, k);
  return ((x2 + k - xm) % k + m2) % k;
}

// ---------------------------------------------------------------------------
// The cube sieve. PASS means: for every orbit index n >= start_index with
// n == start_index (mod step), g_which(f^n(0)) mod k is not a cube. Decided on
// the finite window [start_index, |tail| + lcm(step, |cycle|) + |cycle|], which
// covers every (cycle position, index class) pair. Residue 0 counts as a cube.
// ---------------------------------------------------------------------------

struct SieveResult {
  bool pass = false;
  std::uint64_t modulus = 0;
  std::uint64_t witness_index = 0;    // first failing orbit index (FAIL only)
  std::uint64_t witness_residue = 0;  // its g-value mod k (FAIL only)
  std::uint64_t tail_length = 0;
  std::uint64_t cycle_length = 0;
  std::uint64_t indices_checked = 0;
};

inline SieveResult sieve_indices(Factor which, long long m, std::uint64_t k,
                                 std::uint64_t start_index, std::uint64_t step) {
  if (step == 0) throw std::invalid_argument("sieve_indices: step must be >= 1");
  if (!is_prime_u64(k)) throw std::invalid_argument("sieve_indices: modulus must be prime");
  if (k % 3 != 1)
    throw useless_modulus_error("sieve_indices: k = " + std::to_string(k) +
                                " is not 1 mod 3; every residue is a cube");
  const std::uint64_t m_res = reduce_mod(m, k);
  if (m_res == 0)
    throw modulus_unusable_error("sieve_indices: modulus " + std::to_string(k) + " divides m");
  const std::uint64_t c_res = mul_mod_u64(mul_mod_u64(m_res, m_res, k), m_res, k);
  const OrbitModK orbit = orbit_mod_k(3, static_cast<long long>(c_res), k);
  const ResidueSet cubes = pth_power_residues(k, 3);
  SieveResult result;
  result.modulus = k;
  result.tail_length = orbit.tail.size();
  result.cycle_length = orbit.cycle.size();
  // the window must reach a full lcm period past both the tail and the first
  // checked index, or a late start_index could leave cycle positions unseen
  const std::uint64_t window_end = std::max(orbit.tail.size(), start_index) +
                                   std::lcm(step, orbit.cycle.size()) + orbit.cycle.size();
  for (std::uint64_t n = start_index; n <= window_end; n += step) {
    const std::uint64_t value = eval_g_mod_k(which, m, orbit.at(n), k);
    ++result.indices_checked;
    if (cubes.contains(value)) {
      result.pass = false;
      result.witness_index = n;
      result.witness_residue = value;
      return result;
    }
  }
  result.pass = true;
  return result;
}

// ---------------------------------------------------------------------------
// Obstruction test for a_n being a p-th power: the smallest prime q <= q_bound
// with q == 1 (mod p), gcd(c, q) = 1, such that a_n mod q (computed entirely by
// the recurrence mod q) is nonzero and not a p-th-power residue. Empty means
// inconclusive, never a proof that a_n is a p-th power.
// ---------------------------------------------------------------------------

inline std::uint64_t numerator_mod_q(int d, long long c, int n, std::uint64_t q) {
  // a_1 = 1; a_i = a_{i-1}^d + c^(d^{i-1}-1), exponents reduced mod q-1 (Fermat,
  // valid because gcd(c, q) = 1).
  const std::uint64_t c_res = reduce_mod(c, q);
  std::uint64_t a = 1 % q;
  for (int i = 2; i <= n; ++i) {
    const std::uint64_t e =
        (pow_mod_u64(static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(i - 1), q - 1) +
         (q - 1) - 1) %
        (q - 1);
    a = (pow_mod_u64(a, static_cast<std::uint64_t>(d), q) + pow_mod_u64(c_res, e, q)) % q;
  }
  return a;
}

inline std::optional<std::uint64_t> pth_power_obstruction(int d, long long c, int n, unsigned p,
                                                          std::uint64_t q_bound) {
  if (p < 2 || d < 2 || d % static_cast<int>(p) != 0)
    throw std::invalid_argument("pth_power_obstruction: requires prime p dividing d");
  if (n < 1) throw std::invalid_argument("pth_power_obstruction: n must be >= 1");
  for (std::uint64_t q = 3; q <= q_bound; q += 2) {
    if (q % p != 1 || !is_prime_u64(q)) continue;
    if (reduce_mod(c, q) == 0) continue;
    const std::uint64_t a = numerator_mod_q(d, c, n, q);
    if (a == 0) continue;
    if (!pth_power_residues(q, p).contains(a)) return q;
  }
  return std::nullopt;
}

}  // namespace stabcert
