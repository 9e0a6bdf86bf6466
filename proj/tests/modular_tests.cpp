#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <numeric>
#include <vector>

#include "stabcert/exact.hpp"
#include "stabcert/modular.hpp"
#include "stabcert/polymod.hpp"
#include "stabcert/sequences.hpp"

using namespace stabcert;

namespace {

// Independent reducibility oracle: trial division by every monic polynomial of
// degree 1..n/2 over F_p. Deliberately shares nothing with the Frobenius test.
struct BrutePoly {
  std::vector<std::uint64_t> c;  // low -> high, trimmed
};

BrutePoly brute_rem(BrutePoly a, const BrutePoly& b, std::uint64_t p) {
  while (a.c.size() >= b.c.size() && !a.c.empty()) {
    const std::uint64_t factor = a.c.back();  // b is monic
    const std::size_t shift = a.c.size() - b.c.size();
    for (std::size_t i = 0; i < b.c.size(); ++i)
      a.c[shift + i] = (a.c[shift + i] + p - factor * b.c[i] % p) % p;
    while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
  }
  return a;
}

bool brute_irreducible(const std::vector<long long>& coeffs, std::uint64_t p) {
  BrutePoly f;
  for (long long v : coeffs) f.c.push_back(reduce_mod(v, p));
  while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
  const int n = static_cast<int>(f.c.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  for (int deg = 1; deg <= n / 2; ++deg) {
    std::vector<std::uint64_t> divisor(static_cast<std::size_t>(deg) + 1, 0);
    divisor.back() = 1;
    std::uint64_t combos = 1;
    for (int i = 0; i < deg; ++i) combos *= p;
    for (std::uint64_t code = 0; code < combos; ++code) {
      std::uint64_t rest = code;
      for (int i = 0; i < deg; ++i) {
        divisor[static_cast<std::size_t>(i)] = rest % p;
        rest /= p;
      }
      if (brute_rem(f, BrutePoly{divisor}, p).c.empty()) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("mod_inverse") {
  REQUIRE(mod_inverse(3, 7) == 5);
  REQUIRE(mod_inverse(27 % 7, 7) == 6);
  REQUIRE_THROWS_AS(mod_inverse(2, 4), modulus_unusable_error);
}

TEST_CASE("orbit_mod_k tail and cycle") {
  const auto orbit_a = orbit_mod_k(3, 27, 7);
  REQUIRE(orbit_a.tail == std::vector<std::uint64_t>{0, 6});
  REQUIRE(orbit_a.cycle == std::vector<std::uint64_t>{5});

  const auto orbit_b = orbit_mod_k(3, 1, 7);
  REQUIRE(orbit_b.tail == std::vector<std::uint64_t>{0, 1});
  REQUIRE(orbit_b.cycle == std::vector<std::uint64_t>{2});

  // first-repeat convention: 0 -> 1 -> 0 closes at s_0, so the tail is empty
  const auto orbit_c = orbit_mod_k(2, 1, 2);
  REQUIRE(orbit_c.tail.empty());
  REQUIRE(orbit_c.cycle == std::vector<std::uint64_t>{0, 1});

  REQUIRE_THROWS_AS(orbit_mod_k(3, 14, 7), modulus_unusable_error);
}

TEST_CASE("orbit_mod_k invariants on a grid") {
  for (int d : {2, 3, 4, 5}) {
    for (long long c : {1, 2, 3, 5, -1, -4}) {
      for (std::uint64_t k : {2ull, 3ull, 7ull, 13ull, 31ull, 101ull}) {
        if (reduce_mod(c, k) == 0) continue;
        const auto orbit = orbit_mod_k(d, c, k);
        CAPTURE(d, c, k);
        REQUIRE(!orbit.cycle.empty());
        REQUIRE(orbit.tail.size() + orbit.cycle.size() <= k + 1);
        if (!orbit.tail.empty()) REQUIRE(orbit.tail.front() == 0);
        // the recurrence holds across the concatenation and the cycle wrap
        auto step = [&](std::uint64_t x) {
          return (pow_mod_u64(x, static_cast<std::uint64_t>(d), k) + orbit.c_inv) % k;
        };
        for (std::uint64_t n = 0; n < orbit.tail.size() + 2 * orbit.cycle.size(); ++n)
          REQUIRE(orbit.at(n + 1) == step(orbit.at(n)));
        // tail and cycle are disjoint, cycle elements pairwise distinct
        for (auto t : orbit.tail)
          for (auto cy : orbit.cycle) REQUIRE(t != cy);
        for (std::size_t i = 0; i < orbit.cycle.size(); ++i)
          for (std::size_t j = i + 1; j < orbit.cycle.size(); ++j)
            REQUIRE(orbit.cycle[i] != orbit.cycle[j]);
      }
    }
  }
}

TEST_CASE("pth_power_residues") {
  const auto cubes7 = pth_power_residues(7, 3);
  std::vector<std::uint64_t> members;
  for (std::uint64_t r = 0; r < 7; ++r)
    if (cubes7.contains(r)) members.push_back(r);
  REQUIRE(members == std::vector<std::uint64_t>{0, 1, 6});

  const auto cubes13 = pth_power_residues(13, 3);
  members.clear();
  for (std::uint64_t r = 0; r < 13; ++r)
    if (cubes13.contains(r)) members.push_back(r);
  REQUIRE(members == std::vector<std::uint64_t>{0, 1, 5, 8, 12});

  const auto cubes5 = pth_power_residues(5, 3);  // cubing is a bijection mod 5
  REQUIRE(cubes5.count_nonzero() == 4);

  for (std::uint64_t k = 7; k <= 200; ++k) {
    if (!is_prime_u64(k) || k % 3 != 1) continue;
    REQUIRE(pth_power_residues(k, 3).count_nonzero() == (k - 1) / 3);
  }
}

TEST_CASE("eval_g_mod_k") {
  REQUIRE(eval_g_mod_k(Factor::g1, 3, 5, 7) == 3);
  REQUIRE(eval_g_mod_k(Factor::g2, 1, 2, 7) == 3);
  REQUIRE(eval_g_mod_k(Factor::g1, 1, 0, 13) == 1);
  REQUIRE_THROWS_AS(eval_g_mod_k(Factor::g1, 14, 0, 7), modulus_unusable_error);
}

TEST_CASE("sieve_indices") {
  const auto pass_g1 = sieve_indices(Factor::g1, 3, 7, 2, 2);
  REQUIRE(pass_g1.pass);
  REQUIRE(pass_g1.tail_length == 2);
  REQUIRE(pass_g1.cycle_length == 1);

  REQUIRE(sieve_indices(Factor::g2, 1, 7, 2, 1).pass);

  REQUIRE_THROWS_AS(sieve_indices(Factor::g1, 7, 7, 2, 2), modulus_unusable_error);
  REQUIRE_THROWS_AS(sieve_indices(Factor::g1, 3, 11, 2, 2), useless_modulus_error);

  // a FAIL carries its witness: m=2 is not a certified class mod 7 for g1
  const auto fail = sieve_indices(Factor::g1, 2, 7, 2, 2);
  REQUIRE_FALSE(fail.pass);
  REQUIRE(pth_power_residues(7, 3).contains(fail.witness_residue));
  REQUIRE(eval_g_mod_k(Factor::g1, 2, orbit_mod_k(3, 8, 7).at(fail.witness_index), 7) ==
          fail.witness_residue);
}

TEST_CASE("sieve depends only on m mod k") {
  for (long long m : {3, 10, 24, 1000, 4342}) {
    for (std::uint64_t k : {7ull, 13ull, 31ull, 73ull}) {
      if (reduce_mod(m, k) == 0) continue;
      const auto full = sieve_indices(Factor::g1, m, k, 2, 2);
      const auto reduced =
          sieve_indices(Factor::g1, static_cast<long long>(reduce_mod(m, k)), k, 2, 2);
      CAPTURE(m, k);
      REQUIRE(full.pass == reduced.pass);
      REQUIRE(full.witness_index == reduced.witness_index);
    }
  }
}

TEST_CASE("exact and modular orbits agree") {
  for (int d : {2, 3, 4, 5}) {
    for (long long c : {1, 2, 3, 5, -2, 7}) {
      const auto exact = iterate_orbit_exact(d, c, 6);
      for (std::uint64_t k : {7ull, 13ull, 19ull, 31ull, 43ull, 101ull}) {
        if (reduce_mod(c, k) == 0) continue;
        const auto orbit = orbit_mod_k(d, c, k);
        for (int n = 1; n <= 6; ++n) {
          const auto& value = exact[static_cast<std::size_t>(n - 1)];
          const std::uint64_t expected =
              mul_mod_u64(reduce_mod(numerator(value), k),
                          mod_inverse(reduce_mod(denominator(value), k), k), k);
          CAPTURE(d, c, k, n);
          REQUIRE(orbit.at(static_cast<std::uint64_t>(n)) == expected);
        }
      }
    }
  }
}

TEST_CASE("sieve soundness: PASS implies exact non-cubes at small even indices") {
  for (long long m : {1, 3, 4, 10, 23}) {
    for (Factor which : {Factor::g1, Factor::g2}) {
      // find any passing modulus the way the campaign would
      std::uint64_t passing = 0;
      for (std::uint64_t k : {7ull, 13ull, 19ull, 31ull, 37ull, 43ull, 61ull, 67ull, 73ull}) {
        if (reduce_mod(m, k) == 0) continue;
        if (sieve_indices(which, m, k, 2, 2).pass) {
          passing = k;
          break;
        }
      }
      if (passing == 0) continue;
      const auto seq = factor_numerators(m, which, 7);
      for (int orbit_index : {2, 4, 6}) {
        CAPTURE(m, factor_name(which), passing, orbit_index);
        REQUIRE_FALSE(is_perfect_pth_power(seq.at(orbit_index + 1), 3).has_value());
      }
    }
  }
}

TEST_CASE("poly_irreducible_mod_p") {
  REQUIRE(poly_irreducible_mod_p({1, 0, 0, 1, 0, 0, 1}, 2));  // z^6 + z^3 + 1
  REQUIRE_FALSE(poly_irreducible_mod_p({1, 0, 1}, 2));        // (z + 1)^2
  REQUIRE(poly_irreducible_mod_p({1, 0, 1}, 3));
  REQUIRE_THROWS_AS(poly_irreducible_mod_p({1, 0, 2}, 2), degree_drop_error);
}

TEST_CASE("poly_irreducible_mod_p agrees with brute-force enumeration") {
  for (std::uint64_t p : {2ull, 3ull, 5ull}) {
    for (int deg = 2; deg <= 4; ++deg) {
      std::uint64_t combos = 1;
      for (int i = 0; i < deg; ++i) combos *= p;
      for (std::uint64_t lead = 1; lead < p; ++lead) {
        for (std::uint64_t code = 0; code < combos; ++code) {
          std::vector<long long> coeffs(static_cast<std::size_t>(deg) + 1);
          std::uint64_t rest = code;
          for (int i = 0; i < deg; ++i) {
            coeffs[static_cast<std::size_t>(i)] = static_cast<long long>(rest % p);
            rest /= p;
          }
          coeffs.back() = static_cast<long long>(lead);
          CAPTURE(p, coeffs);
          REQUIRE(poly_irreducible_mod_p(coeffs, p) == brute_irreducible(coeffs, p));
        }
      }
    }
  }
}

TEST_CASE("degree_pattern_mod_p") {
  REQUIRE_THROWS_AS(degree_pattern_mod_p({1, 0, 1}, 2), non_squarefree_error);
  REQUIRE(degree_pattern_mod_p({1, 0, 1}, 5) == std::vector<int>{1, 1});
  REQUIRE(degree_pattern_mod_p({1, 0, 1}, 3) == std::vector<int>{2});
  // patterns sum to the degree
  std::uint64_t state = 42;
  for (int trial = 0; trial < 120; ++trial) {
    state = state * 6364136223846793005ull + 1442695040888963407ull;
    std::vector<long long> coeffs;
    const int deg = 2 + static_cast<int>(state % 7);
    for (int i = 0; i <= deg; ++i) {
      state = state * 6364136223846793005ull + 1442695040888963407ull;
      coeffs.push_back(static_cast<long long>(state % 19) - 9);
    }
    if (coeffs.back() == 0) coeffs.back() = 1;
    for (std::uint64_t p : {3ull, 5ull, 7ull, 11ull}) {
      try {
        const auto pattern = degree_pattern_mod_p(coeffs, p);
        int sum = 0;
        for (int d : pattern) sum += d;
        CAPTURE(p, coeffs);
        REQUIRE(sum == deg);
      } catch (const non_squarefree_error&) {
      } catch (const degree_drop_error&) {
      }
    }
  }
}

TEST_CASE("q_irreducibility_certificate") {
  const auto conclusive = q_irreducibility_certificate({1, 0, 1}, 50);
  REQUIRE(conclusive.conclusive);

  // (z^2 - 2)(z^2 - 3) = z^4 - 5z^2 + 6: reducible, every pattern splits
  const auto reducible = q_irreducibility_certificate({6, 0, -5, 0, 1}, 50);
  REQUIRE_FALSE(reducible.conclusive);
  REQUIRE_FALSE(reducible.possible_proper_degrees.empty());

  // 16z^16 + 32z^12 + 24z^8 + 8z^4 + 9, the cleared second iterate of z^4 + 1/2.
  // Golden value from an exact factorization oracle run ahead of time: the
  // polynomial is irreducible over Q, but every usable prime's degree pattern
  // admits a subset summing to 8, so the certificate must stay inconclusive
  // with 8 as the only surviving proper degree.
  std::vector<long long> quartic_iterate(17, 0);
  quartic_iterate[0] = 9;
  quartic_iterate[4] = 8;
  quartic_iterate[8] = 24;
  quartic_iterate[12] = 32;
  quartic_iterate[16] = 16;
  const auto cert = q_irreducibility_certificate(quartic_iterate, 200);
  REQUIRE_FALSE(cert.conclusive);
  REQUIRE(cert.possible_proper_degrees == std::vector<int>{8});
  REQUIRE(cert.patterns.size() >= 20);
  for (const auto& [p, pattern] : cert.patterns) {
    int sum = 0;
    for (int d : pattern) sum += d;
    REQUIRE(sum == 16);
  }
}

TEST_CASE("pth_power_obstruction") {
  REQUIRE(pth_power_obstruction(2, 3, 3, 2, 100) == 5);       // a_3 = 43, non-residue mod 5
  REQUIRE_FALSE(pth_power_obstruction(4, 2, 2, 2, 100));      // a_2 = 9 is a square
  REQUIRE(pth_power_obstruction(3, 2, 2, 3, 100) == 7);       // a_2 = 5, not a cube mod 7
  REQUIRE_THROWS_AS(pth_power_obstruction(3, 2, 2, 2, 100), std::invalid_argument);

  // the recurrence mod q matches the exact numerator mod q
  for (int d : {2, 3}) {
    for (long long c : {3, 5, -7}) {
      const auto seq = numerators(d, c, 6);
      for (std::uint64_t q : {5ull, 11ull, 13ull, 31ull}) {
        if (reduce_mod(c, q) == 0) continue;
        for (int n = 1; n <= 6; ++n) {
          CAPTURE(d, c, q, n);
          REQUIRE(numerator_mod_q(d, c, n, q) == reduce_mod(seq.at(n), q));
        }
      }
    }
  }
}
