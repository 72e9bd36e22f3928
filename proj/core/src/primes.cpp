#include "cubicshape/primes.hpp"

#include <mutex>

namespace cubicshape {

std::vector<i64> primes_up_to(i64 bound) {
  std::vector<i64> out;
  if (bound < 2) return out;
  std::vector<bool> comp(static_cast<std::size_t>(bound) + 1, false);
  for (i64 i = 2; i <= bound; ++i) {
    if (comp[i]) continue;
    out.push_back(i);
    if (i <= bound / i)
      for (i64 j = i * i; j <= bound; j += i) comp[j] = true;
  }
  return out;
}

const std::vector<i64>& small_primes() {
  static const std::vector<i64> table = primes_up_to(kTrialDivisionBudget);
  return table;
}

namespace {

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

bool is_prime(i64 n) {
  if (n < 2) return false;
  for (i64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n == p) return true;
    if (n % p == 0) return false;
  }
  u64 d = static_cast<u64>(n) - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, static_cast<u64>(n));
    if (x == 1 || x == static_cast<u64>(n) - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, static_cast<u64>(n));
      if (x == static_cast<u64>(n) - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

// Trial division of |n| by primes <= budget; returns leftover cofactor.
i128 trial_divide(i128 n, i64 budget, std::vector<std::pair<i128, int>>& out) {
  i128 m = n < 0 ? -n : n;
  if (m == 0) throw invalid_input("cannot factor zero");
  const auto& ps = budget <= kTrialDivisionBudget ? small_primes() : primes_up_to(budget);
  for (i64 p : ps) {
    if (p > budget) break;
    if (static_cast<i128>(p) * p > m) break;
    if (m % p) continue;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  return m;
}

}  // namespace

Factorization factor(i128 n, i64 budget) {
  Factorization f;
  i128 m = trial_divide(n, budget, f.factors);
  if (m == 1) return f;
  i128 b = budget;
  if (m <= b * b || (m < (i128(1) << 63) && is_prime(static_cast<i64>(m)))) {
    f.factors.emplace_back(m, 1);
    return f;
  }
  f.unresolved = m;
  throw budget_error("factorization exceeds trial-division budget: " + to_string(n));
}

std::vector<i128> primes_with_square_dividing(i128 n, i64 budget) {
  std::vector<std::pair<i128, int>> fs;
  i128 m = trial_divide(n, budget, fs);
  std::vector<i128> out;
  for (auto& [p, e] : fs)
    if (e >= 2) out.push_back(p);
  if (m == 1) return out;
  i128 b = budget;
  if (m <= b * b) return out;  // m is prime
  if (m < b * b * b) {
    if (is_square(m)) out.push_back(isqrt(m));
    return out;
  }
  throw budget_error("discriminant exceeds trial-division budget: " + to_string(n));
}

bool is_squarefree(i64 n) {
  if (n == 0) return false;
  i64 m = n < 0 ? -n : n;
  for (i64 p : small_primes()) {
    if (p * p > m) return true;
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return false;
  }
  // No factor below 10^6: below 10^18 the cofactor has at most two prime
  // factors, so only the square of a large prime matters.
  if (m >= 1'000'000'000'000'000'000LL) throw budget_error("squarefree test exceeds trial-division budget");
  return !is_square(m);
}

}  // namespace cubicshape
