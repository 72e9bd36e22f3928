#include <cstdint>
#include <vector>

#include "cubicshape/counting.hpp"

namespace cubicshape {

namespace {

std::vector<std::uint8_t> squarefree_table(i64 N) {
  std::vector<std::uint8_t> sf(static_cast<std::size_t>(N) + 1, 1);
  sf[0] = 0;
  for (i64 p = 2; p * p <= N; ++p)
    for (i64 m = p * p; m <= N; m += p * p) sf[m] = 0;
  return sf;
}

}  // namespace

i64 count_A(i64 N, Mod9 residue) {
  if (N < 0) throw invalid_input("N must be non-negative");
  if (N == 0) return 0;
  const auto sf = squarefree_table(N);
  i64 count = 0;
  for (i64 a = 1; a <= N; ++a) {
    if (!sf[a]) continue;
    for (i64 b = 1; b <= N / a; ++b) {
      if (!sf[b] || gcd(a, b) != 1) continue;
      if (residue == Mod9::plus && (a - b) % 9 != 0) continue;
      if (residue == Mod9::minus && (a + b) % 9 != 0) continue;
      ++count;
    }
  }
  return count;
}

PureCounts pure_field_counts(i64 X) {
  if (X < 1) throw invalid_input("X must be at least 1");
  // shape (0,1,0): f = -u x^3 + v y^3, |disc| = 27 (uv)^2
  const i64 n1 = narrow(isqrt(i128(X - 1) / 27));
  // discriminant-9 shapes: |disc| = 3 (a'd')^2
  const i64 n9 = narrow(isqrt(i128(X - 1) / 3));
  PureCounts out;
  // coprime squarefree pairs have u^2 = v^2 (mod 9) iff u = +-v (mod 9)
  const i64 ordered1 = count_A(n1) - count_A(n1, Mod9::plus) - count_A(n1, Mod9::minus);
  out.q1 = ordered1 / 2;
  // the pair (1,1) is a reducible ring of discriminant -3
  const i64 plus = count_A(n9, Mod9::plus) - (n9 >= 1 ? 1 : 0);
  const i64 minus = count_A(n9, Mod9::minus);
  out.q9_1 = plus / 2;
  out.q9_2 = minus / 2;
  return out;
}

PureDiscCounts pure_counts_by_discriminant(i64 X) {
  if (X < 1) throw invalid_input("X must be at least 1");
  // 3k^2 < X with k >= ab, and m = ab^2 <= (ab)^{3/2} once a > b
  const i64 kmax = narrow(isqrt(i128(X - 1) / 3));
  const i64 M = narrow(isqrt(i128(kmax) * kmax * kmax)) + 1;
  std::vector<std::uint32_t> spf(static_cast<std::size_t>(M) + 1, 0);
  for (i64 p = 2; p <= M; ++p)
    if (spf[p] == 0)
      for (i64 m = p; m <= M; m += p)
        if (spf[m] == 0) spf[m] = static_cast<std::uint32_t>(p);
  PureDiscCounts out;
  for (i64 m = 2; m <= M; ++m) {
    i64 a = 1, b = 1, rest = m;
    bool cubefree = true;
    while (rest > 1) {
      i64 p = spf[rest];
      int e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      if (e >= 3) {
        cubefree = false;
        break;
      }
      (e == 1 ? a : b) *= p;
    }
    // m = ab^2 and a^2 b generate the same field; keep a > b
    if (!cubefree || b > a) continue;
    const bool type1 = (a * a - b * b) % 9 != 0;
    const i128 k = type1 ? i128(3) * a * b : i128(a) * b;
    if (3 * k * k >= X) continue;
    (type1 ? out.type1 : out.type2) += 1;
  }
  return out;
}

}  // namespace cubicshape
