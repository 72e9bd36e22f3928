#include <algorithm>
#include <cmath>
#include <optional>
#include <set>

#include "cubicshape/forms.hpp"

namespace cubicshape {

namespace {

const Mat2 kSwap{0, 1, -1, 0};  // (r,s,t) -> (t,-s,r)

Mat2 shear(i64 k) { return Mat2{1, 0, k, 1}; }  // x -> x + k y

// x < sqrt(D) for non-square D > 0
bool lt_sqrt(i128 x, i64 D) { return x < 0 || mul(x, x) < D; }

QuadForm reduce_definite(const QuadForm& q0, Mat2& g) {
  if (q0.r < 0 || q0.t < 0) throw invalid_input("negative definite form is not a shape");
  QuadForm q = q0;
  for (;;) {
    if (q.r > q.t) {
      q = act(kSwap, q);
      g = kSwap * g;
      continue;
    }
    if (q.s > q.r || q.s <= -q.r) {
      // choose k with s + 2rk in (-r, r]
      i64 two_r = mul(i64(2), q.r);
      i64 k = floor_div<i64>(sub(q.r, q.s), two_r);
      Mat2 m = shear(k);
      q = act(m, q);
      g = m * g;
      continue;
    }
    break;
  }
  if (q.s < 0 && q.r == q.t) {
    q = act(kSwap, q);
    g = kSwap * g;
  }
  return q;
}

// r(b, a) as in the standard indefinite reduction operator.
i64 rho_residue(i64 target, i64 c, i64 D) {
  i64 cc = abs_val(c);
  i64 m = mul(i64(2), cc);
  if (!lt_sqrt(cc, D)) {
    i64 r = mod_pos<i64>(target, m);
    if (r > cc) r -= m;
    return r;
  }
  i64 q = isqrt(D);
  return sub(q, mod_pos<i64>(sub(q, target), m));
}

// Matrices are only accumulated when requested: along a long cycle they grow
// like the fundamental unit and can leave 64-bit range.
QuadForm reduce_indefinite(const QuadForm& q0, Mat2* g) {
  QuadForm q = q0;
  std::size_t guard = 0;
  while (!is_reduced_indefinite(q)) {
    Mat2 step;
    q = rho(q, &step);
    if (g) *g = step * *g;
    if (++guard > 100000) throw budget_error("indefinite reduction did not terminate");
  }
  return q;
}

// Reduced forms of the rho-cycle through q (q reduced), starting at q.
std::vector<QuadForm> cycle_of(const QuadForm& q) {
  std::vector<QuadForm> out;
  QuadForm cur = q;
  do {
    out.push_back(cur);
    cur = rho(cur);
    if (out.size() > 1000000) throw budget_error("cycle too long");
  } while (cur != q);
  return out;
}

// Product of the first k rho steps from q.
Mat2 cycle_matrix(QuadForm q, std::size_t k) {
  Mat2 g{};
  for (std::size_t i = 0; i < k; ++i) {
    Mat2 step;
    q = rho(q, &step);
    g = step * g;
  }
  return g;
}

QuadForm canonical_square(const QuadForm& q, Mat2& g) {
  const i64 D = disc(q);
  const i64 S = isqrt(D);
  if (content(q) != 1) throw invalid_input("form is not primitive");
  std::vector<std::pair<i64, i64>> roots;
  if (q.r == 0) {
    roots.emplace_back(1, 0);
    i64 gg = gcd(q.t, q.s);
    roots.emplace_back(q.t / gg, -q.s / gg);
  } else {
    for (i64 sgn : {1, -1}) {
      i64 num = add(-q.s, mul(sgn, S)), den = mul(i64(2), q.r);
      i64 gg = gcd(num, den);
      roots.emplace_back(num / gg, den / gg);
    }
  }
  for (auto [x0, y0] : roots) {
    // second row (x0, y0) so that the new t vanishes; det = p*y0 - q*x0 = 1
    i64 a, b;
    i64 gg = ext_gcd(y0, -x0, a, b);
    if (gg != 1) continue;
    Mat2 m{a, b, x0, y0};
    QuadForm f = act(m, q);
    if (f.t != 0 || f.s <= 0) continue;
    // reduce r modulo s: y -> y + k x keeps t = 0
    i64 k = -floor_div<i64>(f.r, f.s);
    Mat2 m2{1, k, 0, 1};
    QuadForm res = act(m2, f);
    g = m2 * m * g;
    return res;
  }
  throw invalid_input("failed to reduce square-discriminant form");
}

}  // namespace

bool is_reduced_definite(const QuadForm& q) {
  if (q.r <= 0 || disc(q) >= 0) return false;
  if (!(std::abs(q.s) <= q.r && q.r <= q.t)) return false;
  if ((std::abs(q.s) == q.r || q.r == q.t) && q.s < 0) return false;
  return true;
}

bool is_reduced_indefinite(const QuadForm& q) {
  const i64 D = disc(q);
  if (D <= 0) return false;
  if (q.s <= 0 || !lt_sqrt(q.s, D)) return false;
  i128 a2 = mul(i128(2), i128(abs_val(q.r)));
  // sqrt(D) - s < 2|a|  <=>  2|a| + s > sqrt(D)
  if (lt_sqrt(add(a2, i128(q.s)), D)) return false;
  // 2|a| < sqrt(D) + s  <=>  2|a| - s < sqrt(D)
  return lt_sqrt(sub(a2, i128(q.s)), D);
}

QuadForm rho(const QuadForm& q, Mat2* step) {
  const i64 D = disc(q);
  if (q.t == 0) throw invalid_input("rho needs t != 0");
  i64 nb = rho_residue(-q.s, q.t, D);
  i64 delta = (nb + q.s) / (2 * q.t);
  Mat2 m{0, 1, -1, delta};
  QuadForm out = act(m, q);
  if (step) *step = m;
  return out;
}

namespace {

QuadForm canonical_impl(const QuadForm& q, Mat2* g) {
  const i64 D = disc(q);
  if (D == 0) throw invalid_input("zero discriminant");
  Mat2 local{};
  if (D > 0 && is_square(D)) return canonical_square(q, g ? *g : local);
  if (D < 0) return reduce_definite(q, g ? *g : local);
  QuadForm red = reduce_indefinite(q, g);
  auto cyc = cycle_of(red);
  auto best = std::min_element(cyc.begin(), cyc.end());
  if (g) *g = cycle_matrix(red, static_cast<std::size_t>(best - cyc.begin())) * *g;
  return *best;
}

}  // namespace

QuadForm canonical_sl2(const QuadForm& q, Mat2& g) {
  g = Mat2{};
  return canonical_impl(q, &g);
}

QuadForm canonical_sl2(const QuadForm& q) { return canonical_impl(q, nullptr); }

bool is_ambiguous(const QuadForm& q) {
  return canonical_sl2(q) == canonical_sl2(QuadForm{q.r, sub(0, q.s), q.t});
}

QuadForm normalize_indefinite(const QuadForm& q, Mat2* gout) {
  const i64 D = disc(q);
  if (D <= 0 || is_square(D)) throw invalid_input("normalize_indefinite needs non-square D > 0");
  if (q.r > 0 && q.t > 0) {
    if (gout) *gout = Mat2{};
    return q;
  }
  Mat2 g0{};
  QuadForm red = reduce_indefinite(q, gout ? &g0 : nullptr);
  auto cyc = cycle_of(red);
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < cyc.size(); ++i)
    if (cyc[i].r > 0 && (!best || cyc[i] < cyc[*best])) best = i;
  if (!best) throw invalid_input("reduced cycle without positive leading coefficient");
  QuadForm f = cyc[*best];
  i64 k = 1;
  while (add(add(mul(f.r, mul(k, k)), mul(f.s, k)), f.t) <= 0) ++k;
  Mat2 m = shear(k);
  if (gout) *gout = m * cycle_matrix(red, *best) * g0;
  return act(m, f);
}

ClassGroupData narrow_class_number(i64 D) {
  if (!is_discriminant(D)) throw invalid_input("not a discriminant: " + std::to_string(D));
  ClassGroupData out;
  out.D = D;
  std::set<QuadForm> reps;
  if (D < 0) {
    const i64 AD = -D;
    for (i64 a = 1; mul(i64(3), mul(a, a)) <= AD; ++a) {
      for (i64 b = -a + 1; b <= a; ++b) {
        if (mod_pos<i64>(b - D, 2) != 0) continue;
        i64 num = mul(b, b) - D;
        if (num % (4 * a)) continue;
        i64 c = num / (4 * a);
        if (c < a) continue;
        if (b < 0 && (a == c)) continue;
        if (gcd(gcd(a, b), c) != 1) continue;
        reps.insert(QuadForm{a, b, c});
      }
    }
  } else if (is_square(D)) {
    i64 S = isqrt(D);
    for (i64 r = 0; r < S; ++r)
      if (gcd(r, S) == 1) reps.insert(QuadForm{r, S, 0});
  } else {
    const i64 q = isqrt(D);
    std::set<QuadForm> seen;
    for (i64 b = 1; b <= q; ++b) {
      if (mod_pos<i64>(b - D, 2) != 0) continue;
      i64 num = mul(b, b) - D;  // = 4ac < 0
      if (num % 4) continue;
      i64 ac = num / 4;
      for (i64 a = 1; a <= -ac; ++a) {
        if (ac % a) continue;
        for (i64 sa : {a, -a}) {
          QuadForm f{sa, b, ac / sa};
          if (!is_reduced_indefinite(f) || gcd(gcd(f.r, f.s), f.t) != 1) continue;
          if (seen.count(f)) continue;
          auto cyc = cycle_of(f);
          QuadForm best = cyc.front();
          for (auto& e : cyc) {
            seen.insert(e);
            best = std::min(best, e);
          }
          reps.insert(best);
        }
      }
    }
  }
  out.reps.assign(reps.begin(), reps.end());
  out.h = static_cast<i64>(out.reps.size());
  return out;
}

long double PellData::epsilon() const {
  return (static_cast<long double>(u0) + static_cast<long double>(w0) * std::sqrt(static_cast<long double>(D))) / 2;
}

PellData pell_fundamental(i64 D) {
  if (D <= 0 || is_square(D)) throw invalid_input("Pell equation needs non-square D > 0");
  PellData pd;
  pd.D = D;
  if (D <= 16) {
    // Convergent argument below needs 4 < sqrt(D); tiny D by direct search.
    for (i128 w = 1;; ++w) {
      i128 u2 = add(mul(mul(i128(D), w), w), i128(4));
      if (is_square(u2)) {
        pd.u0 = isqrt(u2);
        pd.w0 = w;
        return pd;
      }
    }
  }
  // Continued fraction of sqrt(D). Convergent p_k/q_k has
  // p_k^2 - D q_k^2 = (-1)^(k+1) d_{k+1}; every solution of x^2 - D y^2 = N
  // with gcd(x,y) = 1 and |N| < sqrt(D) is a convergent (Lagrange).
  const i64 a0 = isqrt(D);
  i128 m = 0, d = 1, a = a0;
  i128 p_prev = 1, p = a0, q_prev = 0, q = 1;
  i128 best_u = 0, best_w = 0;
  for (int k = 0;; ++k) {
    if (best_w != 0 && q >= best_w) break;
    m = sub(mul(d, a), m);
    d = (D - m * m) / d;
    i128 norm = (k % 2 == 0) ? -d : d;
    if (norm == 4 && (best_w == 0 || q < best_w)) {
      best_u = p;
      best_w = q;
    } else if (norm == 1) {
      i128 w = mul(i128(2), q);
      if (best_w == 0 || w < best_w) {
        best_u = mul(i128(2), p);
        best_w = w;
      }
    }
    a = (a0 + m) / d;
    i128 np = add(mul(a, p), p_prev), nq = add(mul(a, q), q_prev);
    p_prev = p;
    p = np;
    q_prev = q;
    q = nq;
  }
  pd.u0 = best_u;
  pd.w0 = best_w;
  return pd;
}

std::pair<i128, i128> pell_power(const PellData& pd, unsigned k) {
  i128 u = 2, w = 0;
  for (unsigned i = 0; i < k; ++i) {
    i128 nu = add(mul(u, pd.u0), mul(mul(i128(pd.D), w), pd.w0));
    i128 nw = add(mul(u, pd.w0), mul(w, pd.u0));
    u = nu / 2;
    w = nw / 2;
  }
  return {u, w};
}

SOInfo so_q_info(const QuadForm& q) {
  if (content(q) != 1) throw invalid_input("so_q_info needs a primitive form");
  const i64 D = disc(q);
  SOInfo info;
  auto from_uw = [&](i128 U, i128 W) {
    return Mat2{narrow((U + q.s * W) / 2), narrow(-q.r * W), narrow(q.t * W), narrow((U - q.s * W) / 2)};
  };
  if (D > 0 && is_square(D)) {
    info.order = 2;
    info.generator = Mat2{-1, 0, 0, -1};
    info.cubes_order = 2;
    return info;
  }
  if (D < 0) {
    if (D == -3) {
      info.order = 6;
      info.generator = from_uw(1, 1);
      info.cubes_order = 2;
    } else if (D == -4) {
      info.order = 4;
      info.generator = from_uw(0, 1);
      info.cubes_order = 4;
    } else {
      info.order = 2;
      info.generator = Mat2{-1, 0, 0, -1};
      info.cubes_order = 2;
    }
    return info;
  }
  PellData pd = pell_fundamental(D);
  info.order = 0;
  info.cubes_order = 0;
  info.generator = Mat2{narrow(add(pd.u0, mul(i128(q.s), pd.w0)) / 2), narrow(mul(i128(-q.r), pd.w0)),
                        narrow(mul(i128(q.t), pd.w0)), narrow(sub(pd.u0, mul(i128(q.s), pd.w0)) / 2)};
  return info;
}

}  // namespace cubicshape
