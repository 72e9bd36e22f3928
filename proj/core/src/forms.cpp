#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>
#include <sstream>

#include "cubicshape/forms.hpp"
#include "cubicshape/primes.hpp"

namespace cubicshape {

Mat2 operator*(const Mat2& a, const Mat2& b) {
  return Mat2{add(mul(a.p, b.p), mul(a.q, b.u)), add(mul(a.p, b.q), mul(a.q, b.v)),
              add(mul(a.u, b.p), mul(a.v, b.u)), add(mul(a.u, b.q), mul(a.v, b.v))};
}

Mat2 power(const Mat2& g, unsigned e) {
  Mat2 r{};
  for (unsigned i = 0; i < e; ++i) r = r * g;
  return r;
}

Mat2 inverse_unimodular(const Mat2& g) {
  i64 det = g.det();
  if (det != 1 && det != -1) throw invalid_input("matrix is not unimodular");
  // inverse = adj / det, and 1/det = det for det = +-1
  return Mat2{mul(g.v, det), mul(-g.q, det), mul(-g.u, det), mul(g.p, det)};
}

std::pair<i64, i64> apply_column(const Mat2& g, i64 x, i64 y) {
  return {add(mul(g.p, x), mul(g.q, y)), add(mul(g.u, x), mul(g.v, y))};
}

std::string to_string(const QuadForm& q) {
  std::ostringstream os;
  os << q;
  return os.str();
}
std::string to_string(const CubicForm& f) {
  std::ostringstream os;
  os << f;
  return os.str();
}
std::string to_string(const Mat2& g) {
  std::ostringstream os;
  os << g;
  return os.str();
}
std::ostream& operator<<(std::ostream& os, const QuadForm& q) {
  return os << '(' << q.r << ',' << q.s << ',' << q.t << ')';
}
std::ostream& operator<<(std::ostream& os, const CubicForm& f) {
  return os << '(' << f.a << ',' << f.b << ',' << f.c << ',' << f.d << ')';
}
std::ostream& operator<<(std::ostream& os, const Mat2& g) {
  return os << "((" << g.p << ',' << g.q << "),(" << g.u << ',' << g.v << "))";
}

QuadForm make_quad(i64 r, i64 s, i64 t) {
  QuadForm q{r, s, t};
  if (r == 0 && s == 0 && t == 0) throw invalid_input("zero quadratic form");
  (void)disc(q);
  return q;
}

CubicForm make_cubic(i64 a, i64 b, i64 c, i64 d) {
  CubicForm f{a, b, c, d};
  (void)disc(f);
  return f;
}

i64 disc(const QuadForm& q) { return sub(mul(q.s, q.s), mul(i64(4), mul(q.r, q.t))); }

i128 disc(const CubicForm& f) {
  const i128 a = f.a, b = f.b, c = f.c, d = f.d;
  i128 bc = mul(b, c);
  i128 t1 = mul(bc, bc);
  i128 t2 = mul(mul(i128(4), a), mul(mul(c, c), c));
  i128 t3 = mul(mul(i128(4), d), mul(mul(b, b), b));
  i128 ad = mul(a, d);
  i128 t4 = mul(i128(27), mul(ad, ad));
  i128 t5 = mul(i128(18), mul(ad, bc));
  return add(sub(sub(sub(t1, t2), t3), t4), t5);
}

QuadForm adjoint(const QuadForm& q) { return QuadForm{q.t, sub(0, q.s), q.r}; }

QuadForm hessian(const CubicForm& f) {
  const i128 a = f.a, b = f.b, c = f.c, d = f.d;
  return QuadForm{narrow(sub(mul(b, b), mul(i128(3), mul(a, c)))),
                  narrow(sub(mul(b, c), mul(i128(9), mul(a, d)))),
                  narrow(sub(mul(c, c), mul(i128(3), mul(b, d))))};
}

i128 eval(const QuadForm& q, i64 x, i64 y) {
  const i128 X = x, Y = y;
  return add(add(mul(mul(i128(q.r), X), X), mul(mul(i128(q.s), X), Y)), mul(mul(i128(q.t), Y), Y));
}

i128 eval(const CubicForm& f, i64 x, i64 y) {
  const i128 X = x, Y = y;
  i128 x2 = mul(X, X), y2 = mul(Y, Y);
  return add(add(mul(i128(f.a), mul(x2, X)), mul(i128(f.b), mul(x2, Y))),
             add(mul(i128(f.c), mul(X, y2)), mul(i128(f.d), mul(y2, Y))));
}

QuadForm act(const Mat2& g, const QuadForm& q) {
  // X = p x + u y, Y = q x + v y
  const i128 r = q.r, s = q.s, t = q.t;
  const i128 P = g.p, Qc = g.q, U = g.u, V = g.v;
  i128 nr = add(add(mul(r, mul(P, P)), mul(s, mul(P, Qc))), mul(t, mul(Qc, Qc)));
  i128 nt = add(add(mul(r, mul(U, U)), mul(s, mul(U, V))), mul(t, mul(V, V)));
  i128 ns = add(add(mul(mul(i128(2), r), mul(P, U)), mul(s, add(mul(P, V), mul(Qc, U)))),
                mul(mul(i128(2), t), mul(Qc, V)));
  return QuadForm{narrow(nr), narrow(ns), narrow(nt)};
}

namespace {

// Homogeneous cubic polynomial coefficients [x^3, x^2y, xy^2, y^3].
using Cub = std::array<i128, 4>;
using Lin = std::array<i128, 2>;  // [x, y]

Cub lin3(const Lin& l1, const Lin& l2, const Lin& l3) {
  // product of three linear forms
  std::array<i128, 3> q{mul(l1[0], l2[0]), add(mul(l1[0], l2[1]), mul(l1[1], l2[0])), mul(l1[1], l2[1])};
  Cub c{};
  for (int i = 0; i < 3; ++i) {
    c[i] = add(c[i], mul(q[i], l3[0]));
    c[i + 1] = add(c[i + 1], mul(q[i], l3[1]));
  }
  return c;
}

}  // namespace

CubicForm act(const Mat2& g, const CubicForm& f) {
  i64 det = g.det();
  if (det != 1 && det != -1) throw invalid_input("twisted action requires det = +-1");
  Lin X{g.p, g.u}, Y{g.q, g.v};
  Cub xxx = lin3(X, X, X), xxy = lin3(X, X, Y), xyy = lin3(X, Y, Y), yyy = lin3(Y, Y, Y);
  Cub out{};
  for (int i = 0; i < 4; ++i) {
    out[i] = add(add(mul(i128(f.a), xxx[i]), mul(i128(f.b), xxy[i])),
                 add(mul(i128(f.c), xyy[i]), mul(i128(f.d), yyy[i])));
    out[i] = mul(out[i], i128(det));
  }
  return CubicForm{narrow(out[0]), narrow(out[1]), narrow(out[2]), narrow(out[3])};
}

i64 content(const QuadForm& q) {
  i64 g = gcd(gcd(q.r, q.s), q.t);
  if (g == 0) throw invalid_input("content of zero form");
  return g;
}

i64 content(const CubicForm& f) {
  i64 g = gcd(gcd(f.a, f.b), gcd(f.c, f.d));
  if (g == 0) throw invalid_input("content of zero form");
  return g;
}

QuadForm primitive_part(const QuadForm& q) {
  i64 g = content(q);
  return QuadForm{q.r / g, q.s / g, q.t / g};
}

CubicForm primitive_part(const CubicForm& f) {
  i64 g = content(f);
  return CubicForm{f.a / g, f.b / g, f.c / g, f.d / g};
}

namespace {

std::vector<i64> positive_divisors(i64 n) {
  std::vector<i64> divs{1};
  auto fac = factor(n);
  for (auto& [p, e] : fac.factors) {
    std::size_t cur = divs.size();
    i64 pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk = mul(pk, narrow(p));
      for (std::size_t i = 0; i < cur; ++i) divs.push_back(mul(divs[i], pk));
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

bool is_irreducible(const CubicForm& f0) {
  CubicForm f = primitive_part(f0);
  if (f.a == 0 || f.d == 0) return false;  // y or x divides f
  // A rational root x = p/q of f(x,1) in lowest terms has p | d and q | a,
  // and satisfies |p/q| <= 1 + max(|b|,|c|,|d|)/|a| (Cauchy).
  const i64 A = abs_val(f.a);
  const i64 M = std::max({abs_val(f.b), abs_val(f.c), abs_val(f.d)});
  auto qs = positive_divisors(A);
  auto ps = positive_divisors(abs_val(f.d));
  for (i64 q : qs) {
    // |p| <= q (1 + M/A), i.e. |p| A <= q (A + M)
    i128 lim = mul(i128(q), add(i128(A), i128(M)));
    for (i64 p : ps) {
      if (mul(i128(p), i128(A)) > lim) break;
      if (gcd(p, q) != 1) continue;
      if (eval(f, p, q) == 0 || eval(f, -p, q) == 0) return false;
    }
  }
  return true;
}

int kronecker(i64 D, i64 n) {
  if (n <= 0) throw invalid_input("kronecker symbol needs n >= 1");
  int k = 1;
  int v2 = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v2;
  }
  if (v2 > 0) {
    if ((D & 1) == 0) return 0;
    i64 r = mod_pos<i64>(D, 8);
    if ((v2 & 1) && (r == 3 || r == 5)) k = -k;
  }
  // Jacobi symbol (D/n) for odd n
  i64 a = mod_pos<i64>(D, n), m = n;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 r = m & 7;
      if (r == 3 || r == 5) k = -k;
    }
    std::swap(a, m);
    if ((a & 3) == 3 && (m & 3) == 3) k = -k;
    a %= m;
  }
  return m == 1 ? k : 0;
}

bool is_discriminant(i64 D) {
  i64 r = mod_pos<i64>(D, 4);
  return D != 0 && (r == 0 || r == 1);
}

bool is_fundamental(i64 D) {
  if (D == 1 || !is_discriminant(D)) return false;
  if (mod_pos<i64>(D, 4) == 1) return is_squarefree(D);
  i64 m = D / 4;
  i64 r = mod_pos<i64>(m, 4);
  return (r == 2 || r == 3) && is_squarefree(m);
}

int QuadIrr::sign() const {
  auto sgn = [](i128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); };
  if (b == 0 || D == 0) return sgn(a);
  if (a == 0) return sgn(b);
  if ((a > 0) == (b > 0)) return sgn(a);
  // opposite signs: compare a^2 with b^2 D
  u128 A = static_cast<u128>(a < 0 ? -a : a);
  u128 B = static_cast<u128>(b < 0 ? -b : b);
  u128 a2, b2, b2d;
  if (__builtin_mul_overflow(A, A, &a2) || __builtin_mul_overflow(B, B, &b2) ||
      __builtin_mul_overflow(b2, static_cast<u128>(D), &b2d))
    overflow("quadratic irrational comparison overflow");
  if (a2 == b2d) throw invalid_input("QuadIrr requires non-square D");
  int mag = a2 > b2d ? 1 : -1;  // sign of |a| - |b| sqrt D
  return a > 0 ? mag : -mag;
}

}  // namespace cubicshape
