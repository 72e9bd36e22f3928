#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cubicshape {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Error categories. The CLI maps invalid_input to exit code 1 and the other
// two to exit code 2.
struct invalid_input : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct overflow_error : std::overflow_error {
  using std::overflow_error::overflow_error;
};
struct budget_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void overflow(const char* what = "integer overflow") {
  throw overflow_error(what);
}

inline i64 add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}
inline i64 sub(i64 a, i64 b) {
  i64 r;
  if (__builtin_sub_overflow(a, b, &r)) overflow();
  return r;
}
inline i64 mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}
inline i128 add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) overflow();
  return r;
}
inline i128 sub(i128 a, i128 b) {
  i128 r;
  if (__builtin_sub_overflow(a, b, &r)) overflow();
  return r;
}
inline i128 mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) overflow();
  return r;
}

inline i64 narrow(i128 v) {
  if (v > INT64_MAX || v < INT64_MIN) overflow("value exceeds 64-bit range");
  return static_cast<i64>(v);
}

template <class T>
T abs_val(T v) {
  if (v < 0) {
    if (v == -v) overflow();
    return -v;
  }
  return v;
}

// Euclidean-style floor division and modulus for positive divisors.
template <class T>
T floor_div(T a, T b) {
  T q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
template <class T>
T ceil_div(T a, T b) {
  return -floor_div<T>(-a, b);
}
template <class T>
T mod_pos(T a, T m) {
  T r = a % m;
  return r < 0 ? r + (m < 0 ? -m : m) : r;
}

i64 gcd(i64 a, i64 b);
i128 gcd(i128 a, i128 b);

// Extended gcd: returns g = gcd(a,b) >= 0 with x*a + y*b = g.
i64 ext_gcd(i64 a, i64 b, i64& x, i64& y);

// floor(sqrt(n)) for n >= 0, exact.
u64 isqrt(u64 n);
u128 isqrt(u128 n);
inline i128 isqrt(i128 n) {
  if (n < 0) throw invalid_input("isqrt of negative value");
  return static_cast<i128>(isqrt(static_cast<u128>(n)));
}
inline i64 isqrt(i64 n) {
  if (n < 0) throw invalid_input("isqrt of negative value");
  return static_cast<i64>(isqrt(static_cast<u64>(n)));
}
bool is_square(i128 n);
bool is_square(i64 n);

// Checked integer power.
i128 ipow(i128 base, unsigned e);

std::string to_string(i128 v);
// Parses decimal integers, optionally written as "<mantissa>e<exp>" with an
// integral value (e.g. "1e10", "2.5e3").
i128 parse_integer(std::string_view s);

}  // namespace cubicshape
