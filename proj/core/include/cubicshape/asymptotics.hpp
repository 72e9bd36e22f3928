#pragma once

#include "cubicshape/forms.hpp"
#include "cubicshape/maximality.hpp"

namespace cubicshape {

inline constexpr i64 kDefaultPrimeBound = 100'000;

// A truncated Euler product or sum with an interval containing the limit.
struct Estimate {
  long double value = 0, lo = 0, hi = 0;
};

// L(1, chi_D) with chi_D(n) = (D/n), via the digamma identity
// L(1, chi) = -(1/k) sum_{a=1}^{k} chi(a) psi(a/k), k = |D|.
long double L_one_chi(i64 D);

int alpha01(i64 D);  // 1 if 3 | D else 0
int alpha12(i64 D);  // 1 if 3 | D else 2
int beta(i64 D);     // 1 if D > -4 else 0

struct PredictionCoefficients {
  i64 D = 0;
  int alpha01 = 0, alpha12 = 0, beta = 0;
  i64 h = 0;
  long double L1 = 0;
  Rational mu3;
  Estimate split_product;      // prod over (D/p) = 1, p != 3, of 1 - 2/(p(p+1))
  long double ramified_product = 0;  // prod over p | D, p != 3, of p/(p+1)
  i64 prime_bound = 0;
};
PredictionCoefficients prediction_coefficients(i64 D, i64 P = kDefaultPrimeBound);

// Oriented order count per shape class, coefficient of X^{1/2}.
long double order_coeff(i64 D);

// Same coefficient from the region volume: definite
// 2 pi sqrt3 / (3^alpha C(Q) |D|), indefinite 3 sqrt3 log eps / (3^alpha D).
long double geometric_coeff(const QuadForm& q);

// Oriented maximal (field) count per shape class, coefficient of X^{1/2};
// zero for inadmissible D.
Estimate field_coeff(i64 D, i64 P = kDefaultPrimeBound);

// Cyclic cubic fields: 11 sqrt3/(36 pi) prod_{p = 1 (3)} (1 - 2/(p(p+1))).
Estimate cyclic_field_coeff(i64 P = kDefaultPrimeBound);

// Fields with quadratic resolvent Q(sqrt d), d != -3 fundamental.
Estimate resolvent_field_coeff(i64 d, i64 P = kDefaultPrimeBound);

struct TwoTerm {
  long double main = 0, second = 0;
  long double total() const { return main + second; }
};

// Oriented orders with a square-discriminant shape.
TwoTerm square_shape_order_count(i64 D, long double X);

struct UniversalConstants {
  i64 prime_bound = 0;
  Estimate C;      // prod_p (1 - 3/p^2 + 2/p^3)
  Estimate kappa;  // sum_p log p / (p^2 + p - 2)
  long double euler_gamma = 0;
  long double pi = 0;
};
UniversalConstants universal_constants(i64 P = kDefaultPrimeBound);

// Pure cubic field counts with shape discriminant 1 and 9, and their total
// N(-3, X) = M(Q_1) + 2 M(Q_9).
TwoTerm pure_fields_q1(long double X, const UniversalConstants& u);
TwoTerm pure_fields_q9(long double X, const UniversalConstants& u);
TwoTerm pure_fields_total(long double X, const UniversalConstants& u);

// |h - formula| / h with h from the form enumeration.
long double class_number_formula_check(i64 D);

}  // namespace cubicshape
