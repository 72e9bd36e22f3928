#pragma once

#include <array>
#include <optional>
#include <utility>

#include "cubicshape/forms.hpp"

namespace cubicshape {

enum class ShapeKind { definite, indefinite, square };

const char* to_string(ShapeKind k);

// The lattice L(Q) of coordinates (x, y): (b, c) for non-square shapes and
// (a, d) for square-discriminant shapes.
//
// Non-square: sb = rc (mod 3t) and sc = tb (mod 3r).
// Square, Q = r x^2 + s xy with 0 <= r < s = sqrt(D): 3d = 0 (mod D).
struct ShapeLattice {
  QuadForm shape;
  ShapeKind kind = ShapeKind::definite;
  i64 D = 0;
  i64 sqrtD = 0;  // square kind only

  // Row structure: (x, y) in L  <=>  y = 0 (mod ystep) and
  // x = (y / ystep) * xoff (mod xmod). Basis {(xmod, 0), (xoff, ystep)}.
  i64 xmod = 1, ystep = 1, xoff = 0;
  std::array<std::pair<i64, i64>, 2> basis{};
  i64 covolume = 1;

  SOInfo so;
  Mat2 cubic_generator;  // generator^3, acting on column vectors (x, y)
  bool generator_overflow = false;  // indefinite only: generator left unset
  // Indefinite kind: epsilon^6 = (u6 + w6 sqrt D)/2 bounds the sector of the
  // cubic action. Absent (and pell unset) if it does not fit 128-bit arithmetic.
  std::optional<std::pair<i128, i128>> eps6;
  PellData pell;

  bool contains(i64 x, i64 y) const;
  // First x-coordinate residue in row y (y must be a multiple of ystep).
  i64 row_residue(i64 y) const;
};

ShapeLattice lattice_for(const QuadForm& q);

struct ShapePoint {
  i64 x = 0, y = 0;  // (b, c) or (a, d)
  i64 n = 0;         // Hessian multiplier: hessian(f) = n Q
  i128 ringdisc = 0;  // -n^2 D / 3
  friend bool operator==(const ShapePoint&, const ShapePoint&) = default;
};

// Validates membership and fills n, ringdisc. Throws invalid_input if (x, y)
// is not in the lattice or n = 0.
ShapePoint make_point(const ShapeLattice& L, i64 x, i64 y);

CubicForm point_to_form(const ShapeLattice& L, const ShapePoint& P);
CubicForm point_to_form(const ShapeLattice& L, i64 x, i64 y);
ShapePoint form_to_point(const ShapeLattice& L, const CubicForm& f);

struct ShapeOfCubic {
  QuadForm shape;  // canonical SL2 representative
  i64 n = 0;
};
ShapeOfCubic shape_of_cubic(const CubicForm& f);

// Discriminant of the ring attached to (x, y), from the closed formulas.
// Non-square: -Q'(b,c)^2 D / (3 r^2 t^2). Square: -27 (r^3 d^2 - s^3 a d)^2 / D^3.
i128 ring_disc_formula(const ShapeLattice& L, i64 x, i64 y);

// Designated representative of the cubic action of SO_Q(Z) on L(Q)^+.
// Definite: lexicographically least point of the orbit. Indefinite (r, t > 0):
// x - theta y > 0 and 1 <= (x - theta' y)/(x - theta y) < eps^6.
// Square: d > 0.
bool is_fundamental_rep(const ShapeLattice& L, const ShapePoint& P);
bool is_fundamental_rep(const ShapeLattice& L, i64 x, i64 y);

// Sector predicates used by the row enumerator (indefinite kind).
bool sector_xi_positive(const ShapeLattice& L, i64 b, i64 c);
bool sector_below_eps6(const ShapeLattice& L, i64 b, i64 c);

}  // namespace cubicshape
