#pragma once

#include <stdexcept>
#include <string>

namespace stabcert {

// Exact-orbit growth guard tripped: iterate numerators have Theta(d^n) digits,
// so the exact path refuses sizes the modular path should handle instead.
class size_guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The modulus shares a factor with m (or c); orbits and g-values are undefined mod k.
class modulus_unusable_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// k != 1 (mod 3): cubing is a bijection mod k, every residue is a cube and the
// sieve can never pass.
class useless_modulus_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// 2-adic factor bound requires odd c (good reduction at 2).
class no_good_reduction_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Polynomial reduction mod p lost its leading coefficient.
class degree_drop_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Reduction mod p is not squarefree; the caller should pick another prime.
class non_squarefree_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A certification step contradicted an exact fact it depends on. This signals a
// bug in the engine or in its built-in data, never a property of the input.
class internal_contradiction_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace stabcert
