#pragma once

// Finite-field polynomial tools: irreducibility mod p, distinct-degree factor
// patterns, and the common-refinement irreducibility certificate over Q.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "stabcert/errors.hpp"
#include "stabcert/exact.hpp"
#include "stabcert/modular.hpp"

namespace stabcert {
namespace fppoly {

// Dense coefficients low-to-high over F_p, trimmed of leading zeros.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline int degree(const Poly& a) { return static_cast<int>(a.size()) - 1; }

inline Poly reduce_coeffs(const std::vector<long long>& coeffs, std::uint64_t p) {
  Poly a(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) a[i] = reduce_mod(coeffs[i], p);
  trim(a);
  return a;
}

inline Poly mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + mul_mod_u64(a[i], b[j], p)) % p;
  }
  trim(c);
  return c;
}

inline Poly rem(Poly a, const Poly& b, std::uint64_t p) {
  const std::uint64_t lead_inv = mod_inverse(b.back(), p);
  while (degree(a) >= degree(b)) {
    const std::uint64_t factor = mul_mod_u64(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) {
      const std::uint64_t sub = mul_mod_u64(factor, b[i], p);
      a[shift + i] = (a[shift + i] + p - sub) % p;
    }
    trim(a);
  }
  return a;
}

inline Poly monic(Poly a, std::uint64_t p) {
  if (a.empty()) return a;
  const std::uint64_t inv = mod_inverse(a.back(), p);
  for (auto& c : a) c = mul_mod_u64(c, inv, p);
  return a;
}

inline Poly gcd(Poly a, Poly b, std::uint64_t p) {
  while (!b.empty()) {
    a = rem(std::move(a), b, p);
    std::swap(a, b);
  }
  return monic(std::move(a), p);
}

inline Poly sub(Poly a, const Poly& b, std::uint64_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline Poly pow_mod(Poly base, std::uint64_t e, const Poly& modulus, std::uint64_t p) {
  Poly result{1};
  base = rem(std::move(base), modulus, p);
  while (e != 0) {
    if (e & 1) result = rem(mul(result, base, p), modulus, p);
    base = rem(mul(base, base, p), modulus, p);
    e >>= 1;
  }
  return result;
}

inline Poly derivative(const Poly& a, std::uint64_t p) {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i)
    d.push_back(mul_mod_u64(a[i], static_cast<std::uint64_t>(i % p), p));
  trim(d);
  return d;
}

inline const Poly& x_poly() {
  static const Poly x{0, 1};
  return x;
}

}  // namespace fppoly

namespace detail {

inline fppoly::Poly reduced_or_throw(const std::vector<long long>& coeffs, std::uint64_t p) {
  if (coeffs.empty() || coeffs.back() == 0)
    throw std::invalid_argument("polynomial must have a nonzero leading coefficient");
  if (reduce_mod(coeffs.back(), p) == 0)
    throw degree_drop_error("leading coefficient vanishes mod " + std::to_string(p));
  return fppoly::reduce_coeffs(coeffs, p);
}

}  // namespace detail

// True iff the reduction mod p is irreducible over F_p: X^{p^n} == X (mod f)
// and gcd(X^{p^{n/q}} - X, f) = 1 for each prime q | n.
inline bool poly_irreducible_mod_p(const std::vector<long long>& coeffs, std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("poly_irreducible_mod_p: p must be prime");
  const fppoly::Poly f = fppoly::monic(detail::reduced_or_throw(coeffs, p), p);
  const int n = fppoly::degree(f);
  if (n <= 0) return false;
  if (n == 1) return true;

  // frob[j] = X^{p^j} mod f, built one Frobenius power at a time.
  std::vector<fppoly::Poly> frob(static_cast<std::size_t>(n) + 1);
  frob[0] = fppoly::x_poly();
  for (int j = 1; j <= n; ++j)
    frob[static_cast<std::size_t>(j)] =
        fppoly::pow_mod(frob[static_cast<std::size_t>(j - 1)], p, f, p);
  if (fppoly::sub(frob[static_cast<std::size_t>(n)], fppoly::x_poly(), p) != fppoly::Poly{})
    return false;
  for (int q = 2; q <= n; ++q) {
    if (n % q != 0 || !is_prime_u64(static_cast<std::uint64_t>(q))) continue;
    const auto diff = fppoly::sub(frob[static_cast<std::size_t>(n / q)], fppoly::x_poly(), p);
    if (fppoly::degree(fppoly::gcd(f, diff, p)) != 0) return false;
  }
  return true;
}

// Multiset of irreducible-factor degrees of the squarefree reduction mod p,
// by distinct-degree factorization. Degrees sum to deg(f).
inline std::vector<int> degree_pattern_mod_p(const std::vector<long long>& coeffs,
                                             std::uint64_t p) {
  if (!is_prime_u64(p)) throw std::invalid_argument("degree_pattern_mod_p: p must be prime");
  fppoly::Poly f = fppoly::monic(detail::reduced_or_throw(coeffs, p), p);
  if (fppoly::degree(f) <= 0) return {};
  if (fppoly::degree(fppoly::gcd(f, fppoly::derivative(f, p), p)) != 0)
    throw non_squarefree_error("reduction mod " + std::to_string(p) + " is not squarefree");

  std::vector<int> pattern;
  fppoly::Poly h = fppoly::x_poly();
  int i = 1;
  while (fppoly::degree(f) >= 2 * i) {
    h = fppoly::pow_mod(std::move(h), p, f, p);
    const auto g = fppoly::gcd(f, fppoly::sub(h, fppoly::x_poly(), p), p);
    if (fppoly::degree(g) > 0) {
      for (int count = fppoly::degree(g) / i; count > 0; --count) pattern.push_back(i);
      // divide the found factors out and keep the Frobenius reduced
      fppoly::Poly quotient;
      {
        fppoly::Poly num = f;
        const std::uint64_t lead_inv = mod_inverse(g.back(), p);
        quotient.assign(num.size() - g.size() + 1, 0);
        for (int d = fppoly::degree(num) - fppoly::degree(g); d >= 0; --d) {
          const std::uint64_t coeff =
              mul_mod_u64(num[static_cast<std::size_t>(d + fppoly::degree(g))], lead_inv, p);
          quotient[static_cast<std::size_t>(d)] = coeff;
          for (std::size_t j = 0; j < g.size(); ++j) {
            auto& slot = num[static_cast<std::size_t>(d) + j];
            slot = (slot + p - mul_mod_u64(coeff, g[j], p)) % p;
          }
        }
      }
      fppoly::trim(quotient);
      f = quotient;
      if (fppoly::degree(f) == 0) break;
      h = fppoly::rem(std::move(h), f, p);
    }
    ++i;
  }
  if (fppoly::degree(f) > 0) pattern.push_back(fppoly::degree(f));
  std::sort(pattern.begin(), pattern.end());
  return pattern;
}

// Common-refinement certificate: CONCLUSIVE when the degree patterns collected
// over usable primes admit no shared subset sum strictly between 0 and deg,
// which forces irreducibility over Q. INCONCLUSIVE is a value, not an error.
struct QIrredCertificate {
  bool conclusive = false;
  std::vector<std::pair<std::uint64_t, std::vector<int>>> patterns;
  std::vector<int> possible_proper_degrees;  // empty iff conclusive
};

inline QIrredCertificate q_irreducibility_certificate(const std::vector<long long>& coeffs,
                                                      std::uint64_t prime_budget) {
  if (coeffs.empty() || coeffs.back() == 0)
    throw std::invalid_argument("q_irreducibility_certificate: nonzero leading coefficient required");
  const int deg = static_cast<int>(coeffs.size()) - 1;
  QIrredCertificate cert;
  if (deg <= 1) {
    cert.conclusive = true;
    return cert;
  }
  std::vector<bool> possible(static_cast<std::size_t>(deg) + 1, true);
  for (std::uint64_t p = 2; p <= prime_budget; ++p) {
    if (!is_prime_u64(p)) continue;
    std::vector<int> pattern;
    try {
      pattern = degree_pattern_mod_p(coeffs, p);
    } catch (const degree_drop_error&) {
      continue;
    } catch (const non_squarefree_error&) {
      continue;
    }
    std::vector<bool> sums(static_cast<std::size_t>(deg) + 1, false);
    sums[0] = true;
    for (int d : pattern)
      for (int s = deg; s >= d; --s)
        if (sums[static_cast<std::size_t>(s - d)]) sums[static_cast<std::size_t>(s)] = true;
    for (int s = 0; s <= deg; ++s)
      if (!sums[static_cast<std::size_t>(s)]) possible[static_cast<std::size_t>(s)] = false;
    cert.patterns.emplace_back(p, std::move(pattern));
    bool any_proper = false;
    for (int s = 1; s < deg; ++s) any_proper = any_proper || possible[static_cast<std::size_t>(s)];
    if (!any_proper) {
      cert.conclusive = true;
      return cert;
    }
  }
  for (int s = 1; s < deg; ++s)
    if (possible[static_cast<std::size_t>(s)]) cert.possible_proper_degrees.push_back(s);
  return cert;
}

}  // namespace stabcert
