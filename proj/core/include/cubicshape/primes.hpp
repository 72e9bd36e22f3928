#pragma once

#include <utility>
#include <vector>

#include "cubicshape/arith.hpp"

namespace cubicshape {

// Primes up to `bound` (inclusive), from a sieve of Eratosthenes.
std::vector<i64> primes_up_to(i64 bound);

// Shared cached table of primes up to 10^6; thread-safe lazy init.
const std::vector<i64>& small_primes();

inline constexpr i64 kTrialDivisionBudget = 1'000'000;

bool is_prime(i64 n);  // deterministic Miller-Rabin on 64-bit

struct Factorization {
  std::vector<std::pair<i128, int>> factors;  // ascending primes
  // Cofactor left after trial division, only nonzero when it could not be
  // resolved within budget (see factor_for_squares).
  i128 unresolved = 1;
};

// Full factorization of |n| by trial division up to `budget`. Throws
// budget_error if a cofactor above budget^2 remains.
Factorization factor(i128 n, i64 budget = kTrialDivisionBudget);

// Every prime p with p^2 | n. Trial division up to `budget`; a remaining
// cofactor m < budget^3 is then either 1, a prime, a product of two primes or
// the square of a prime, and only the last case contributes. Larger unresolved
// cofactors raise budget_error.
std::vector<i128> primes_with_square_dividing(i128 n, i64 budget = kTrialDivisionBudget);

bool is_squarefree(i64 n);  // false for 0

}  // namespace cubicshape
