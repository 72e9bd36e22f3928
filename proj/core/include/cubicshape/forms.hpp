#pragma once

#include <compare>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubicshape/arith.hpp"

namespace cubicshape {

// r x^2 + s xy + t y^2
struct QuadForm {
  i64 r = 0, s = 0, t = 0;
  friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

// a x^3 + b x^2 y + c x y^2 + d y^3
struct CubicForm {
  i64 a = 0, b = 0, c = 0, d = 0;
  friend auto operator<=>(const CubicForm&, const CubicForm&) = default;
};

// Integer 2x2 matrix ((p, q), (u, v)). Forms are acted on through the row
// vector (x, y) * g, i.e. x -> p x + u y, y -> q x + v y.
struct Mat2 {
  i64 p = 1, q = 0, u = 0, v = 1;
  i64 det() const { return sub(mul(p, v), mul(q, u)); }
  friend auto operator<=>(const Mat2&, const Mat2&) = default;
};

Mat2 operator*(const Mat2& a, const Mat2& b);
Mat2 power(const Mat2& g, unsigned e);
Mat2 inverse_unimodular(const Mat2& g);  // requires det = +-1
// Column action g * (x, y)^T.
std::pair<i64, i64> apply_column(const Mat2& g, i64 x, i64 y);

std::string to_string(const QuadForm& q);
std::string to_string(const CubicForm& f);
std::string to_string(const Mat2& g);
std::ostream& operator<<(std::ostream& os, const QuadForm& q);
std::ostream& operator<<(std::ostream& os, const CubicForm& f);
std::ostream& operator<<(std::ostream& os, const Mat2& g);

// Construction helpers that validate the invariants (nonzero, disc in range).
QuadForm make_quad(i64 r, i64 s, i64 t);
CubicForm make_cubic(i64 a, i64 b, i64 c, i64 d);

i64 disc(const QuadForm& q);   // s^2 - 4rt, overflow checked
i128 disc(const CubicForm& f);  // b^2c^2 - 4ac^3 - 4b^3d - 27a^2d^2 + 18abcd

QuadForm adjoint(const QuadForm& q);  // (t, -s, r)
QuadForm hessian(const CubicForm& f);  // (b^2-3ac, bc-9ad, c^2-3bd)

i128 eval(const QuadForm& q, i64 x, i64 y);
i128 eval(const CubicForm& f, i64 x, i64 y);

QuadForm act(const Mat2& g, const QuadForm& q);   // q((x,y) g)
CubicForm act(const Mat2& g, const CubicForm& f);  // f((x,y) g) / det g

i64 content(const QuadForm& q);
i64 content(const CubicForm& f);
QuadForm primitive_part(const QuadForm& q);
CubicForm primitive_part(const CubicForm& f);

bool is_irreducible(const CubicForm& f);

// Kronecker symbol (D/n), n >= 1. For n = 2 this is the usual convention
// (D/2) = +1 for D = 1 mod 8 and -1 for D = 5 mod 8.
int kronecker(i64 D, i64 n);

bool is_discriminant(i64 D);  // D = 0 or 1 mod 4, D != 0
bool is_fundamental(i64 D);

// Exact sign of a + b*sqrt(D) for non-square D > 0.
struct QuadIrr {
  i128 a = 0, b = 0;
  i64 D = 0;
  int sign() const;
};

// ---- reduction, class groups -------------------------------------------

// Canonical representative of the SL2(Z)-class. D < 0: the reduced form
// (positive definite only). D > 0 non-square: lexicographically least reduced
// form in the cycle. D > 0 square: r x^2 + s xy with 0 <= r < s = sqrt(D).
QuadForm canonical_sl2(const QuadForm& q);

// Canonical form together with a matrix g such that act(g, q) == result.
QuadForm canonical_sl2(const QuadForm& q, Mat2& g);

bool is_ambiguous(const QuadForm& q);

struct ClassGroupData {
  i64 D = 0;
  i64 h = 0;
  std::vector<QuadForm> reps;  // canonical representatives, sorted
};
ClassGroupData narrow_class_number(i64 D);

// Reduced-form predicates.
bool is_reduced_definite(const QuadForm& q);
bool is_reduced_indefinite(const QuadForm& q);
// One step of the reduction operator for indefinite forms, with its matrix.
QuadForm rho(const QuadForm& q, Mat2* step = nullptr);

// An SL2-equivalent form with r > 0 and t > 0 (indefinite, non-square D),
// chosen deterministically from the class; the identity when q already has
// r, t > 0.
QuadForm normalize_indefinite(const QuadForm& q, Mat2* g = nullptr);

// ---- Pell and symmetry groups -------------------------------------------

struct PellData {
  i64 D = 0;
  i128 u0 = 0, w0 = 0;  // minimal positive solution of u^2 - D w^2 = 4
  long double epsilon() const;
};
PellData pell_fundamental(i64 D);

// (u + w sqrt D)/2 raised to the k-th power, as (u_k, w_k).
std::pair<i128, i128> pell_power(const PellData& pd, unsigned k);

struct SOInfo {
  int order = 0;        // 2, 4, 6, or 0 for infinite
  Mat2 generator;       // generates SO_Q(Z) (together with -I if infinite)
  int cubes_order = 0;  // C(Q) for definite forms; 0 for indefinite
  bool infinite() const { return order == 0; }
};
SOInfo so_q_info(const QuadForm& q);

}  // namespace cubicshape
