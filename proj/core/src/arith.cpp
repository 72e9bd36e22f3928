#include "cubicshape/arith.hpp"

#include <algorithm>
#include <cmath>

namespace cubicshape {

i64 gcd(i64 a, i64 b) {
  u64 x = a < 0 ? u64(0) - u64(a) : u64(a);
  u64 y = b < 0 ? u64(0) - u64(b) : u64(b);
  while (y) {
    u64 t = x % y;
    x = y;
    y = t;
  }
  if (x > u64(INT64_MAX)) overflow("gcd exceeds 64-bit range");
  return static_cast<i64>(x);
}

i128 gcd(i128 a, i128 b) {
  u128 x = a < 0 ? u128(0) - u128(a) : u128(a);
  u128 y = b < 0 ? u128(0) - u128(b) : u128(b);
  while (y) {
    u128 t = x % y;
    x = y;
    y = t;
  }
  return static_cast<i128>(x);
}

i64 ext_gcd(i64 a, i64 b, i64& x, i64& y) {
  i128 old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    i128 q = old_r / r;
    i128 tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = narrow(old_s);
  y = narrow(old_t);
  return narrow(old_r);
}

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && static_cast<u128>(r) * r > n) --r;
  while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

u128 isqrt(u128 n) {
  if (n <= UINT64_MAX) return isqrt(static_cast<u64>(n));
  // Newton iteration from a floating estimate; sqrt(2^128) < 2^64.
  long double est = std::sqrt(static_cast<long double>(n));
  u128 r = est >= 18446744073709551615.0L ? u128(UINT64_MAX) : static_cast<u128>(est);
  auto sq_gt = [&](u128 x) { return x > UINT64_MAX || x * x > n; };
  while (r > 0 && sq_gt(r)) --r;
  while (!sq_gt(r + 1)) ++r;
  return r;
}

bool is_square(i128 n) {
  if (n < 0) return false;
  u128 r = isqrt(static_cast<u128>(n));
  return r * r == static_cast<u128>(n);
}
bool is_square(i64 n) { return is_square(static_cast<i128>(n)); }

i128 ipow(i128 base, unsigned e) {
  i128 r = 1;
  while (e--) r = mul(r, base);
  return r;
}

std::string to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 x = neg ? u128(0) - u128(v) : u128(v);
  std::string s;
  while (x) {
    s.push_back(char('0' + int(x % 10)));
    x /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

i128 parse_integer(std::string_view s) {
  if (s.empty()) throw invalid_input("empty integer");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    ++i;
  }
  std::string digits;
  int frac = 0;
  bool seen_dot = false, any = false;
  for (; i < s.size() && s[i] != 'e' && s[i] != 'E'; ++i) {
    char ch = s[i];
    if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      any = true;
      if (seen_dot) ++frac;
    } else if (ch == '_' || ch == '\'') {
      continue;
    } else {
      throw invalid_input("malformed integer: " + std::string(s));
    }
  }
  if (!any) throw invalid_input("malformed integer: " + std::string(s));
  int exp = 0;
  if (i < s.size()) {
    ++i;
    if (i >= s.size()) throw invalid_input("malformed exponent: " + std::string(s));
    bool eneg = false;
    if (s[i] == '+' || s[i] == '-') {
      eneg = s[i] == '-';
      ++i;
    }
    if (i >= s.size()) throw invalid_input("malformed exponent: " + std::string(s));
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') throw invalid_input("malformed exponent: " + std::string(s));
      exp = exp * 10 + (s[i] - '0');
      if (exp > 60) throw invalid_input("exponent too large: " + std::string(s));
    }
    if (eneg) exp = -exp;
  }
  exp -= frac;
  while (exp < 0) {
    if (digits.empty() || digits.back() != '0')
      throw invalid_input("not an integer: " + std::string(s));
    digits.pop_back();
    ++exp;
  }
  i128 v = 0;
  try {
    for (char ch : digits) v = add(mul(v, i128(10)), i128(ch - '0'));
    for (int k = 0; k < exp; ++k) v = mul(v, i128(10));
  } catch (const overflow_error&) {
    throw invalid_input("integer out of range: " + std::string(s));
  }
  return neg ? -v : v;
}

}  // namespace cubicshape
