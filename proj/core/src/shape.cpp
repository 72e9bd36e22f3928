#include "cubicshape/shape.hpp"

#include <algorithm>

namespace cubicshape {

const char* to_string(ShapeKind k) {
  switch (k) {
    case ShapeKind::definite: return "definite";
    case ShapeKind::indefinite: return "indefinite";
    case ShapeKind::square: return "square";
  }
  return "?";
}

bool ShapeLattice::contains(i64 x, i64 y) const {
  const auto& q = shape;
  if (kind == ShapeKind::square) return mod_pos<i128>(mul(i128(3), i128(y)), i128(D)) == 0;
  i128 b = x, c = y;
  i128 e1 = sub(mul(i128(q.s), b), mul(i128(q.r), c));
  i128 e2 = sub(mul(i128(q.s), c), mul(i128(q.t), b));
  return e1 % mul(i128(3), i128(q.t)) == 0 && e2 % mul(i128(3), i128(q.r)) == 0;
}

i64 ShapeLattice::row_residue(i64 y) const {
  return narrow(mod_pos<i128>(mul(i128(y / ystep), i128(xoff)), i128(xmod)));
}

ShapeLattice lattice_for(const QuadForm& q) {
  ShapeLattice L;
  L.shape = q;
  L.D = disc(q);
  if (content(q) != 1) throw invalid_input("shape must be primitive: " + to_string(q));
  if (L.D == 0) throw invalid_input("shape has zero discriminant");
  if (L.D < 0 && q.r < 0) throw invalid_input("shape cannot be negative definite");
  if (L.D > 0 && !is_square(L.D)) {
    // the sector test only needs epsilon^6; keep going without the matrix
    // generator when the unit is too large for 64-bit entries
    try {
      L.so = so_q_info(q);
    } catch (const overflow_error&) {
      L.so = SOInfo{};
      L.generator_overflow = true;
    }
  } else {
    L.so = so_q_info(q);
  }
  if (L.D > 0 && is_square(L.D)) {
    L.kind = ShapeKind::square;
    L.sqrtD = isqrt(L.D);
    if (!(q.t == 0 && q.s == L.sqrtD && 0 <= q.r && q.r < q.s))
      throw invalid_input("square shape must be reduced r x^2 + s xy with 0 <= r < s: " + to_string(q));
    L.xmod = 1;
    L.ystep = L.D / gcd(L.D, i64(3));
    L.xoff = 0;
  } else {
    L.kind = L.D < 0 ? ShapeKind::definite : ShapeKind::indefinite;
    if (q.r == 0 || q.t == 0) throw invalid_input("non-square shape needs r, t != 0: " + to_string(q));
    const i64 period = mul(i64(3), mul(abs_val(q.r), abs_val(q.t)));
    L.xmod = 0;
    for (i64 b = 1; b <= period; ++b)
      if (L.contains(b, 0)) {
        L.xmod = b;
        break;
      }
    L.ystep = 0;
    for (i64 c = 1; c <= period && L.ystep == 0; ++c)
      for (i64 b = 0; b < L.xmod; ++b)
        if (L.contains(b, c)) {
          L.ystep = c;
          L.xoff = b;
          break;
        }
    if (L.xmod == 0 || L.ystep == 0) throw invalid_input("lattice construction failed");
  }
  L.basis = {std::pair<i64, i64>{L.xmod, 0}, std::pair<i64, i64>{L.xoff, L.ystep}};
  L.covolume = mul(L.xmod, L.ystep);
  if (!L.generator_overflow) {
    try {
      L.cubic_generator = power(L.so.generator, 3);
    } catch (const overflow_error&) {
      L.generator_overflow = true;
      L.cubic_generator = Mat2{};
    }
  }
  if (L.kind == ShapeKind::indefinite) {
    try {
      L.pell = pell_fundamental(L.D);
      L.eps6 = pell_power(L.pell, 6);
    } catch (const overflow_error&) {
      L.eps6.reset();
    }
  }
  return L;
}

namespace {

// n and ring discriminant for a lattice point; n may be zero.
std::pair<i64, i128> multiplier(const ShapeLattice& L, i64 x, i64 y) {
  const auto& q = L.shape;
  if (L.kind == ShapeKind::square) {
    const i128 r = q.r, s = q.s, D = L.D, a = x, d = y;
    i128 u = sub(mul(mul(mul(r, r), r), d), mul(mul(mul(s, s), s), a));  // r^3 d - s^3 a
    i128 num = mul(mul(i128(9), d), u);
    i128 D2 = mul(D, D);
    if (num % D2) throw invalid_input("square-kind multiplier not integral");
    i128 n = num / D2;
    i128 nd = mul(mul(n, n), D);
    if (nd % 3) throw invalid_input("ring discriminant not integral");
    return {narrow(n), -(nd / 3)};
  }
  i128 qp = eval(adjoint(q), x, y);
  i128 rt = mul(i128(q.r), i128(q.t));
  if (qp % rt) throw invalid_input("non-square multiplier not integral");
  i128 n = qp / rt;
  i128 nd = mul(mul(n, n), i128(L.D));
  if (nd % 3) throw invalid_input("ring discriminant not integral");
  return {narrow(n), -(nd / 3)};
}

}  // namespace

ShapePoint make_point(const ShapeLattice& L, i64 x, i64 y) {
  if (!L.contains(x, y)) throw invalid_input("point not in shape lattice");
  auto [n, rd] = multiplier(L, x, y);
  if (n == 0) throw invalid_input("point has zero multiplier");
  return ShapePoint{x, y, n, rd};
}

CubicForm point_to_form(const ShapeLattice& L, i64 x, i64 y) {
  const auto& q = L.shape;
  if (!L.contains(x, y)) throw invalid_input("point not in shape lattice");
  if (L.kind == ShapeKind::square) {
    const i128 r = q.r, s = q.s, d = y;
    i128 b = mul(mul(i128(3), mul(r, r)), d) / mul(s, s);
    i128 c = mul(mul(i128(3), r), d) / s;
    return CubicForm{x, narrow(b), narrow(c), y};
  }
  const i128 b = x, c = y;
  i128 a = sub(mul(i128(q.s), b), mul(i128(q.r), c)) / mul(i128(3), i128(q.t));
  i128 d = sub(mul(i128(q.s), c), mul(i128(q.t), b)) / mul(i128(3), i128(q.r));
  return CubicForm{narrow(a), x, y, narrow(d)};
}

CubicForm point_to_form(const ShapeLattice& L, const ShapePoint& P) { return point_to_form(L, P.x, P.y); }

ShapePoint form_to_point(const ShapeLattice& L, const CubicForm& f) {
  QuadForm h = hessian(f);
  const auto& q = L.shape;
  // find n with h = n q
  i64 n = 0;
  if (q.r != 0) n = h.r / q.r;
  else if (q.s != 0) n = h.s / q.s;
  else n = h.t / q.t;
  if (n == 0 || mul(n, q.r) != h.r || mul(n, q.s) != h.s || mul(n, q.t) != h.t)
    throw invalid_input("Hessian " + to_string(h) + " is not proportional to " + to_string(q));
  ShapePoint P = L.kind == ShapeKind::square ? make_point(L, f.a, f.d) : make_point(L, f.b, f.c);
  if (P.n != n || point_to_form(L, P) != f) throw invalid_input("form does not come from the shape lattice");
  return P;
}

ShapeOfCubic shape_of_cubic(const CubicForm& f) {
  if (disc(f) == 0) throw invalid_input("zero discriminant cubic");
  QuadForm h = hessian(f);
  i64 n = content(h);
  QuadForm p = primitive_part(h);
  if (disc(p) < 0 && p.r < 0) {
    n = -n;
    p = QuadForm{-p.r, -p.s, -p.t};
  }
  return ShapeOfCubic{canonical_sl2(p), n};
}

i128 ring_disc_formula(const ShapeLattice& L, i64 x, i64 y) {
  const auto& q = L.shape;
  if (L.kind == ShapeKind::square) {
    const i128 r = q.r, s = q.s, a = x, d = y, D = L.D;
    i128 inner = sub(mul(mul(mul(r, r), r), mul(d, d)), mul(mul(mul(s, s), s), mul(a, d)));
    i128 num = mul(i128(27), mul(inner, inner));
    i128 den = mul(mul(D, D), D);
    if (num % den) throw invalid_input("square-kind discriminant formula not integral");
    return -(num / den);
  }
  i128 qp = eval(adjoint(q), x, y);
  i128 num = mul(mul(qp, qp), i128(L.D));
  i128 rt = mul(i128(q.r), i128(q.t));
  i128 den = mul(i128(3), mul(rt, rt));
  if (num % den) throw invalid_input("discriminant formula not integral");
  return -(num / den);
}

bool sector_xi_positive(const ShapeLattice& L, i64 b, i64 c) {
  const auto& q = L.shape;
  // 2t(b - theta c) = 2tb - sc - c sqrt D
  return QuadIrr{sub(mul(mul(i128(2), i128(q.t)), i128(b)), mul(i128(q.s), i128(c))), -i128(c), L.D}.sign() > 0;
}

bool sector_below_eps6(const ShapeLattice& L, i64 b, i64 c) {
  if (!L.eps6) throw overflow_error("epsilon^6 exceeds 128-bit arithmetic");
  const auto& q = L.shape;
  const i128 U = L.eps6->first, W = L.eps6->second;
  const i128 t2b = mul(mul(i128(2), i128(q.t)), i128(b));
  const i128 s = q.s, D = L.D, C = c;
  i128 A = sub(mul(t2b, sub(U, 2)), mul(C, sub(add(mul(U, s), mul(W, D)), mul(i128(2), s))));
  i128 B = sub(mul(t2b, W), mul(C, add(add(U, mul(W, s)), 2)));
  return QuadIrr{A, B, L.D}.sign() > 0;
}

bool is_fundamental_rep(const ShapeLattice& L, i64 x, i64 y) {
  switch (L.kind) {
    case ShapeKind::square:
      return y > 0;
    case ShapeKind::indefinite:
      if (L.shape.r <= 0 || L.shape.t <= 0) throw invalid_input("indefinite shape must be normalized to r, t > 0");
      return y >= 0 && sector_xi_positive(L, x, y) && sector_below_eps6(L, x, y);
    case ShapeKind::definite: {
      std::pair<i64, i64> p{x, y}, cur = p;
      for (int k = 1; k < L.so.cubes_order; ++k) {
        cur = apply_column(L.cubic_generator, cur.first, cur.second);
        if (cur < p) return false;
      }
      return true;
    }
  }
  return false;
}

bool is_fundamental_rep(const ShapeLattice& L, const ShapePoint& P) {
  if (P.n <= 0) throw invalid_input("point is not in the plus-cone");
  return is_fundamental_rep(L, P.x, P.y);
}

}  // namespace cubicshape
