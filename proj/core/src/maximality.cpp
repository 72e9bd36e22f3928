#include "cubicshape/maximality.hpp"

#include <algorithm>
#include <array>

#include "cubicshape/primes.hpp"

namespace cubicshape {

namespace {

constexpr i64 kMaxLocalPrime = 3'037'000'499;  // p^2 < 2^63

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

u64 invmod(u64 a, u64 p) { return powmod(a, p - 2, p); }

u64 reduce(i64 v, u64 m) { return static_cast<u64>(mod_pos<i128>(v, static_cast<i128>(m))); }

// f(u, v) mod m for 0 <= u, v < m.
u64 eval_mod(const std::array<u64, 4>& c, u64 u, u64 v, u64 m) {
  u64 u2 = mulmod(u, u, m), v2 = mulmod(v, v, m);
  u64 s = mulmod(c[0], mulmod(u2, u, m), m);
  s = (s + mulmod(c[1], mulmod(u2, v, m), m)) % m;
  s = (s + mulmod(c[2], mulmod(u, v2, m), m)) % m;
  s = (s + mulmod(c[3], mulmod(v2, v, m), m)) % m;
  return s;
}

// Polynomials over F_p, coefficient i of x^i, trimmed.
using Poly = std::vector<u64>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mod(Poly a, const Poly& b, u64 p) {
  const u64 inv = invmod(b.back(), p);
  while (a.size() >= b.size()) {
    u64 coef = mulmod(a.back(), inv, p);
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] = (a[shift + i] + p - mulmod(coef, b[i], p)) % p;
    trim(a);
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b, u64 p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Finite multiple roots of g(x) = f(x, 1) over F_p, p >= 5.
std::vector<u64> multiple_roots(const std::array<u64, 4>& c, u64 p) {
  Poly g{c[3], c[2], c[1], c[0]};
  trim(g);
  if (g.size() <= 2) return {};
  Poly dg(g.size() - 1);
  for (std::size_t i = 1; i < g.size(); ++i) dg[i - 1] = mulmod(i % p, g[i], p);
  trim(dg);
  Poly h = poly_gcd(g, dg, p);
  if (h.size() == 2) return {mulmod(p - h[0], invmod(h[1], p), p)};
  if (h.size() == 3) {
    // deg g = 3 with a triple root: h = lc (x - r)^2
    return {mulmod(p - h[1], invmod(mulmod(2, h[2], p), p), p)};
  }
  return {};
}

}  // namespace

bool maximal_at_prime(const CubicForm& f, i64 p) {
  const u64 P = static_cast<u64>(p), P2 = P * P;
  std::array<u64, 4> c{reduce(f.a, P2), reduce(f.b, P2), reduce(f.c, P2), reduce(f.d, P2)};
  std::array<u64, 4> cp{c[0] % P, c[1] % P, c[2] % P, c[3] % P};
  if (cp[0] == 0 && cp[1] == 0 && cp[2] == 0 && cp[3] == 0) return false;
  // (1:0) is a multiple root iff a = b = 0 (mod p)
  if (cp[0] == 0 && cp[1] == 0 && c[0] == 0) return false;
  if (p < 5) {
    for (u64 u = 0; u < P; ++u) {
      u64 F = eval_mod(cp, u, 1, P);
      u64 Fx = (3 * cp[0] * u * u + 2 * cp[1] * u + cp[2]) % P;
      if (F == 0 && Fx == 0 && eval_mod(c, u, 1, P2) == 0) return false;
    }
    return true;
  }
  for (u64 u : multiple_roots(cp, P))
    if (eval_mod(c, u, 1, P2) == 0) return false;
  return true;
}

bool is_maximal_at(const CubicForm& f, i64 p) {
  if (p < 2 || !is_prime(p)) throw invalid_input("not a prime: " + std::to_string(p));
  if (disc(f) == 0) throw invalid_input("zero discriminant form " + to_string(f));
  if (p > kMaxLocalPrime) throw budget_error("prime too large for the local test");
  return maximal_at_prime(f, p);
}

namespace {

bool local_ok(const CubicForm& f, i128 dsc, i64 p, const SieveConfig& cfg) {
  if (cfg.mode == SieveConfig::Mode::truncated && p > cfg.prime_bound) return true;
  i128 p2 = i128(p) * p;
  if (dsc % p2 != 0) return true;
  if (p > kMaxLocalPrime) throw budget_error("prime too large for the local test");
  return maximal_at_prime(f, p);
}

}  // namespace

bool is_maximal(const CubicForm& f, const SieveConfig& cfg) {
  const i128 dsc = disc(f);
  if (dsc == 0) throw invalid_input("zero discriminant form " + to_string(f));
  if (cfg.mode == SieveConfig::Mode::truncated) {
    if (cfg.prime_bound < 2) return true;
    for (i64 p : primes_up_to(cfg.prime_bound))
      if (!local_ok(f, dsc, p, cfg)) return false;
    return true;
  }
  for (i128 p : primes_with_square_dividing(dsc)) {
    if (p > kMaxLocalPrime) throw budget_error("prime too large for the local test");
    if (!maximal_at_prime(f, static_cast<i64>(p))) return false;
  }
  return true;
}

bool is_maximal_with_candidates(const CubicForm& f, const std::vector<i64>& candidates, const SieveConfig& cfg) {
  const i128 dsc = disc(f);
  for (i64 p : candidates)
    if (!local_ok(f, dsc, p, cfg)) return false;
  return true;
}

const char* to_string(DensityCase c) {
  switch (c) {
    case DensityCase::split: return "split";
    case DensityCase::inert: return "inert";
    case DensityCase::ramified1: return "p||D";
    case DensityCase::ramified2: return "p^2||D";
    case DensityCase::ramified3: return "p^3||D";
    case DensityCase::ramified4: return "p^4|D";
  }
  return "?";
}

DensityEntry density_entry(i64 D, i64 p) {
  if (!is_discriminant(D)) throw invalid_input("not a discriminant: " + std::to_string(D));
  if (p < 2 || !is_prime(p)) throw invalid_input("not a prime: " + std::to_string(p));
  int e = 0;
  for (i64 m = D; m % p == 0 && e < 4; m /= p) ++e;
  DensityEntry out;
  out.p = p;
  int k = kronecker(D, p);
  out.kind = e == 0 ? (k == 1 ? DensityCase::split : DensityCase::inert)
                    : static_cast<DensityCase>(static_cast<int>(DensityCase::ramified1) + std::min(e, 4) - 1);
  if (p == 2) {
    switch (e) {
      case 0: out.density = k == -1 ? Rational(3, 4) : Rational(1, 2); break;
      case 2: out.density = mod_pos<i64>(D / 4, 4) == 1 ? Rational(0) : Rational(1, 2); break;
      case 3: out.density = Rational(1, 2); break;
      default: out.density = Rational(0);
    }
  } else if (p == 3) {
    static const Rational mu3[] = {Rational(16, 27), Rational(22, 27), Rational(2, 3)};
    out.density = e < 3 ? mu3[e] : Rational(0);
  } else if (e == 0) {
    out.density = k == -1 ? Rational(p * p - 1, p * p) : Rational((p - 1) * (p - 1) * (p + 2), p * p * p);
  } else if (e == 1) {
    out.density = Rational(p - 1, p);
  } else {
    out.density = Rational(0);
  }
  return out;
}

Rational mu_p(i64 D, i64 p) { return density_entry(D, p).density; }

Rational empirical_mu_p(const ShapeLattice& L, i64 p) {
  if (p < 2 || !is_prime(p)) throw invalid_input("not a prime: " + std::to_string(p));
  const i64 m = p * p;
  i64 good = 0;
  for (i64 j = 0; j < m; ++j)
    for (i64 i = 0; i < m; ++i) {
      i64 x = i * L.xmod + j * L.xoff, y = j * L.ystep;
      good += maximal_at_prime(point_to_form(L, x, y), p);
    }
  return Rational(good, m * m);
}

Rational empirical_mu_p(const QuadForm& q, i64 p) { return empirical_mu_p(lattice_for(q), p); }

bool admissible_shape_disc(i64 D) {
  if (!is_discriminant(D)) return false;
  if (D > 0 && is_square(D)) return D == 1 || D == 9;
  return is_fundamental(D) || (D % 3 == 0 && is_fundamental(-D / 3));
}

PureMaxData pure_max_data(const ShapeLattice& L, const ShapePoint& P) {
  if (L.kind != ShapeKind::square || (L.D != 1 && L.D != 9))
    throw invalid_input("pure maximality needs shape discriminant 1 or 9");
  if (P.n <= 0) throw invalid_input("point is not in the plus-cone");
  PureMaxData out;
  if (L.D == 1) {
    out.a = P.x;
    out.d = P.y;
    out.residue_ok = mod_pos<i64>(sub(mul(out.a, out.a), mul(out.d, out.d)), 9) != 0;
  } else {
    const i64 r = L.shape.r;
    out.d = P.y / 3;
    out.a = sub(mul(mul(r, mul(r, r)), out.d), mul(i64(9), P.x));
  }
  out.coprime = gcd(out.a, out.d) == 1;
  out.a_squarefree = is_squarefree(out.a);
  out.d_squarefree = is_squarefree(out.d);
  return out;
}

bool is_maximal_pure(const ShapeLattice& L, const ShapePoint& P) {
  PureMaxData m = pure_max_data(L, P);
  return m.coprime && m.a_squarefree && m.d_squarefree && m.residue_ok;
}

}  // namespace cubicshape
