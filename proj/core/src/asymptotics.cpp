#include "cubicshape/asymptotics.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/digamma.hpp>
#include <cmath>

#include "cubicshape/primes.hpp"
#include "cubicshape/shape.hpp"

namespace cubicshape {

namespace {

using boost::math::constants::euler;
using boost::math::constants::pi;

struct KahanSum {
  long double sum = 0, comp = 0;
  void add(long double x) {
    long double y = x - comp;
    long double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
};

void require_nonsquare_disc(i64 D) {
  if (!is_discriminant(D)) throw invalid_input("not a discriminant: " + std::to_string(D));
  if (D > 0 && is_square(D)) throw invalid_input("square discriminant " + std::to_string(D));
}

const std::vector<i64>& primes_cached(i64 P) {
  thread_local i64 bound = -1;
  thread_local std::vector<i64> ps;
  if (bound != P) {
    ps = primes_up_to(P);
    bound = P;
  }
  return ps;
}

// prod over primes p <= P with (D/p) = 1 (and p != 3 if skip3) of 1 - 2/(p(p+1)).
// The omitted factors lie in [1 - 2/(P+1), 1].
Estimate split_product(i64 D, i64 P, bool skip3) {
  KahanSum logs;
  for (i64 p : primes_cached(P)) {
    if (skip3 && p == 3) continue;
    if (kronecker(D, p) == 1) logs.add(std::log1p(-2.0L / (static_cast<long double>(p) * (p + 1))));
  }
  Estimate e;
  e.value = e.hi = std::exp(logs.sum);
  e.lo = e.value * (1 - 2.0L / (P + 1));
  return e;
}

// prod over p | D (p != 3 if skip3) of p/(p+1)
long double ramified_product(i64 D, bool skip3) {
  long double v = 1;
  for (auto& [p, e] : factor(D).factors) {
    if (skip3 && p == 3) continue;
    v *= static_cast<long double>(p) / static_cast<long double>(p + 1);
  }
  return v;
}

Estimate scaled(const Estimate& e, long double k) { return {e.value * k, e.lo * k, e.hi * k}; }

}  // namespace

long double L_one_chi(i64 D) {
  require_nonsquare_disc(D);
  const i64 k = D < 0 ? -D : D;
  KahanSum s;
  for (i64 a = 1; a <= k; ++a) {
    int chi = kronecker(D, a);
    if (chi == 0) continue;
    s.add(chi * boost::math::digamma(static_cast<long double>(a) / k));
  }
  return -s.sum / k;
}

int alpha01(i64 D) { return D % 3 == 0 ? 1 : 0; }
int alpha12(i64 D) { return D % 3 == 0 ? 1 : 2; }
int beta(i64 D) { return D > -4 ? 1 : 0; }

PredictionCoefficients prediction_coefficients(i64 D, i64 P) {
  require_nonsquare_disc(D);
  PredictionCoefficients c;
  c.D = D;
  c.alpha01 = alpha01(D);
  c.alpha12 = alpha12(D);
  c.beta = beta(D);
  c.h = narrow_class_number(D).h;
  c.L1 = L_one_chi(D);
  c.mu3 = mu_p(D, 3);
  c.split_product = split_product(D, P, true);
  c.ramified_product = ramified_product(D, true);
  c.prime_bound = P;
  return c;
}

long double order_coeff(i64 D) {
  require_nonsquare_disc(D);
  const long double h = narrow_class_number(D).h;
  return std::pow(3.0L, alpha01(D) + beta(D) - 1.5L) * L_one_chi(D) / (h * std::sqrt(std::fabs((long double)D)));
}

long double geometric_coeff(const QuadForm& q) {
  const i64 D = disc(q);
  require_nonsquare_disc(D);
  const long double s3 = std::sqrt(3.0L), a = std::pow(3.0L, alpha12(D));
  if (D < 0) {
    const SOInfo so = so_q_info(q);
    return 2 * pi<long double>() * s3 / (a * so.cubes_order * -D);
  }
  return 3 * s3 * std::log(pell_fundamental(D).epsilon()) / (a * D);
}

Estimate field_coeff(i64 D, i64 P) {
  require_nonsquare_disc(D);
  if (!admissible_shape_disc(D)) return {};
  const PredictionCoefficients c = prediction_coefficients(D, P);
  const long double mu3 = static_cast<long double>(c.mu3.numerator()) / c.mu3.denominator();
  const long double k = std::pow(3.0L, c.alpha01 + c.beta + 1.5L) * mu3 /
                        (4 * pi<long double>() * pi<long double>() * std::sqrt(std::fabs((long double)D))) *
                        c.L1 / c.h * c.ramified_product;
  return scaled(c.split_product, k);
}

Estimate cyclic_field_coeff(i64 P) {
  // (-3/p) = 1 exactly for p = 1 (mod 3)
  const long double k = 11 * std::sqrt(3.0L) / (36 * pi<long double>());
  return scaled(split_product(-3, P, false), k);
}

Estimate resolvent_field_coeff(i64 d, i64 P) {
  if (d == -3 || (d != 1 && !is_fundamental(d)))
    throw invalid_input("resolvent discriminant must be fundamental and != -3: " + std::to_string(d));
  const i64 D = d % 3 == 0 ? -d / 3 : mul(i64(-3), d);
  long double C0;
  if (d % 3 != 0) C0 = 11.0L / 9;
  else if (mod_pos<i64>(d, 9) == 3) C0 = 5.0L / 3;
  else C0 = 7.0L / 5;
  const long double k = std::pow(3.0L, alpha01(D) + beta(D) - 0.5L) * C0 /
                        (pi<long double>() * pi<long double>() * std::sqrt(std::fabs((long double)D))) *
                        ramified_product(D, false) * L_one_chi(D);
  return scaled(split_product(D, P, false), k);
}

TwoTerm square_shape_order_count(i64 D, long double X) {
  if (D <= 0 || !is_square(D)) throw invalid_input("square discriminant required");
  const long double k = std::pow(3.0L, alpha01(D) - 1.5L) / D, rx = std::sqrt(X);
  TwoTerm out;
  out.main = k / 2 * rx * std::log(X);
  out.second = k * (2 * euler<long double>() - 1 + 1.5L * std::log(D / 3.0L)) * rx;
  return out;
}

UniversalConstants universal_constants(i64 P) {
  if (P < 100) throw invalid_input("prime bound must be at least 100");
  KahanSum logC, kappa;
  for (i64 p : primes_cached(P)) {
    const long double x = p;
    logC.add(std::log1p(-3 / (x * x) + 2 / (x * x * x)));
    kappa.add(std::log(x) / (x * x + x - 2));
  }
  UniversalConstants u;
  u.prime_bound = P;
  u.C.value = u.C.hi = std::exp(logC.sum);
  u.C.lo = u.C.value * std::exp(-3.1L / P);
  u.kappa.value = u.kappa.lo = kappa.sum;
  u.kappa.hi = kappa.sum + (std::log((long double)P) + 1) / P;
  u.euler_gamma = euler<long double>();
  u.pi = pi<long double>();
  return u;
}

namespace {

TwoTerm pure_prediction(long double X, long double coeff, long double log3_term, const UniversalConstants& u) {
  const long double rx = std::sqrt(X);
  TwoTerm out;
  out.main = coeff * rx * std::log(X);
  out.second = coeff * rx * (log3_term * std::log(3.0L) + 4 * u.euler_gamma + 12 * u.kappa.value - 2);
  return out;
}

}  // namespace

TwoTerm pure_fields_q1(long double X, const UniversalConstants& u) {
  return pure_prediction(X, u.C.value / (15 * std::sqrt(3.0L)), -16.0L / 5, u);
}

TwoTerm pure_fields_q9(long double X, const UniversalConstants& u) {
  return pure_prediction(X, u.C.value / (40 * std::sqrt(3.0L)), -1.0L / 5, u);
}

TwoTerm pure_fields_total(long double X, const UniversalConstants& u) {
  return pure_prediction(X, 7 * u.C.value / (60 * std::sqrt(3.0L)), -67.0L / 35, u);
}

long double class_number_formula_check(i64 D) {
  require_nonsquare_disc(D);
  const long double h = narrow_class_number(D).h, L = L_one_chi(D);
  long double rhs;
  if (D < 0) {
    const long double w = D == -3 ? 6 : (D == -4 ? 4 : 2);
    rhs = w * std::sqrt((long double)-D) / (2 * pi<long double>()) * L;
  } else {
    rhs = std::sqrt((long double)D) / std::log(pell_fundamental(D).epsilon()) * L;
  }
  return std::fabs(h - rhs) / h;
}

}  // namespace cubicshape
