#include "cubicshape/counting.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <set>
#include <sstream>
#include <thread>

#include "cubicshape/primes.hpp"

namespace cubicshape {

const char* to_string(CountFilter f) {
  switch (f) {
    case CountFilter::none: return "none";
    case CountFilter::irreducible: return "irreducible";
    case CountFilter::maximal: return "maximal";
  }
  return "?";
}

const char* to_string(Engine e) { return e == Engine::fast ? "fast" : "naive"; }

std::optional<i64> CountReport::unoriented() const {
  if (!points_irreducible) return std::nullopt;
  return *points_irreducible >> gamma;
}

int default_thread_count() {
  if (const char* env = std::getenv("CUBICSHAPE_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? static_cast<int>(hc) : 1;
}

namespace {

struct Tally {
  i64 total = 0, irr = 0, max = 0, maxirr = 0, checked = 0, failures = 0;
  std::string audit;

  void merge(const Tally& o) {
    total += o.total;
    irr += o.irr;
    max += o.max;
    maxirr += o.maxirr;
    checked += o.checked;
    failures += o.failures;
    audit += o.audit;
  }
};

struct Context {
  const ShapeLattice& L;
  i64 X;
  CountFilter filter;
  SieveConfig sieve;
  std::vector<i64> base_primes;  // primes of 3D
  bool audit;
};

std::vector<i64> prime_divisors(i128 n) {
  std::vector<i64> out;
  for (auto& [p, e] : factor(n).factors) out.push_back(narrow(p));
  return out;
}

void visit(const Context& C, i64 x, i64 y, Tally& T) {
  const CubicForm f = point_to_form(C.L, x, y);
  ++T.total;
  bool irr = false, mx = false;
  if (C.filter != CountFilter::none) {
    irr = is_irreducible(f);
    T.irr += irr;
  }
  ShapePoint P;
  if (C.filter == CountFilter::maximal || C.audit) P = make_point(C.L, x, y);
  if (C.filter == CountFilter::maximal) {
    // p^2 | n^2 D / 3 forces p | 3nD
    std::vector<i64> cand = C.base_primes;
    for (i64 p : prime_divisors(P.n))
      if (std::find(cand.begin(), cand.end(), p) == cand.end()) cand.push_back(p);
    mx = is_maximal_with_candidates(f, cand, C.sieve);
    T.max += mx;
    T.maxirr += mx && irr;
  }
  if (C.audit) {
    const i128 dsc = disc(f);
    bool ok = C.L.contains(x, y) && P.n > 0 && dsc == P.ringdisc && abs_val(dsc) < C.X &&
              hessian(f) == QuadForm{mul(P.n, C.L.shape.r), mul(P.n, C.L.shape.s), mul(P.n, C.L.shape.t)} &&
              is_fundamental_rep(C.L, P);
    ++T.checked;
    T.failures += !ok;
    std::ostringstream os;
    os << x << '\t' << y << '\t' << P.n << '\t' << to_string(dsc) << '\t';
    std::string flags;
    if (irr) flags += 'I';
    if (mx) flags += 'M';
    if (!ok) flags += '!';
    os << (flags.empty() ? "-" : flags) << '\n';
    T.audit += os.str();
  }
}

// Runs fn(row, tally) over rows split into contiguous chunks, one per thread,
// and merges the tallies in row order.
template <class Fn>
Tally run_rows(const std::vector<i64>& rows, int threads, Fn fn) {
  const std::size_t n = rows.size();
  std::size_t T = static_cast<std::size_t>(std::max(1, threads));
  T = std::min(T, std::max<std::size_t>(n, 1));
  std::vector<Tally> parts(T);
  std::vector<std::exception_ptr> errs(T);
  auto work = [&](std::size_t k) {
    try {
      for (std::size_t i = n * k / T; i < n * (k + 1) / T; ++i) fn(rows[i], parts[k]);
    } catch (...) {
      errs[k] = std::current_exception();
    }
  };
  if (T == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t k = 0; k < T; ++k) pool.emplace_back(work, k);
    for (auto& th : pool) th.join();
  }
  Tally out;
  for (std::size_t k = 0; k < T; ++k) {
    if (errs[k]) std::rethrow_exception(errs[k]);
    out.merge(parts[k]);
  }
  return out;
}

// Smallest b with pred(b), pred monotone false -> true, searching from a guess.
template <class Pred>
i64 first_true_from(i64 guess, Pred pred) {
  if (pred(guess)) {
    i64 step = 1, hi = guess;
    i64 lo = sub(guess, step);
    while (pred(lo)) {
      hi = lo;
      step = mul(step, i64(2));
      lo = sub(guess, step);
    }
    // pred(lo) false, pred(hi) true
    while (hi - lo > 1) {
      i64 mid = lo + (hi - lo) / 2;
      (pred(mid) ? hi : lo) = mid;
    }
    return hi;
  }
  i64 step = 1, lo = guess;
  i64 hi = add(guess, step);
  while (!pred(hi)) {
    lo = hi;
    step = mul(step, i64(2));
    hi = add(guess, step);
  }
  while (hi - lo > 1) {
    i64 mid = lo + (hi - lo) / 2;
    (pred(mid) ? hi : lo) = mid;
  }
  return hi;
}

// Largest Q'(b,c) allowed: Q'^2 |D| < 3 r^2 t^2 X.
i128 adjoint_bound(const ShapeLattice& L, i64 X) {
  const auto& q = L.shape;
  i128 rt = mul(i128(q.r), i128(q.t));
  i128 lim = sub(mul(mul(i128(3), mul(rt, rt)), i128(X)), i128(1));
  return isqrt(lim / abs_val(i128(L.D)));
}

// Square kind: |d (r^3 d - s^3 a)| <= K  <=>  |ring disc| < X.
i128 hyperbola_bound(const ShapeLattice& L, i64 X) {
  i128 D = L.D;
  i128 lim = sub(mul(mul(mul(D, D), D), i128(X)), i128(1));
  return isqrt(lim / 27);
}

std::vector<i64> multiples_in(i64 lo, i64 hi, i64 step) {
  std::vector<i64> rows;
  for (i64 c = ceil_div(lo, step) * step; c <= hi; c += step) rows.push_back(c);
  return rows;
}

std::vector<i64> range_rows(i64 lo, i64 hi) {
  std::vector<i64> rows;
  for (i64 c = lo; c <= hi; ++c) rows.push_back(c);
  return rows;
}

// Lattice points of row y with lo <= x <= hi.
template <class Fn>
void for_row(const ShapeLattice& L, i64 y, i64 lo, i64 hi, Fn fn) {
  if (lo > hi) return;
  i64 res = L.row_residue(y);
  i64 x = lo + mod_pos<i64>(res - lo, L.xmod);
  for (; x <= hi; x += L.xmod) fn(x);
}

long double eps6_value(const ShapeLattice& L) {
  const long double U = static_cast<long double>(L.eps6->first), W = static_cast<long double>(L.eps6->second);
  return (U + W * std::sqrt(static_cast<long double>(L.D))) / 2;
}

i64 indefinite_cmax(const ShapeLattice& L, i128 B) {
  const long double t = L.shape.t, D = L.D, e6 = eps6_value(L);
  long double cm = (e6 - 1) * std::sqrt(t * static_cast<long double>(B) / (D * e6));
  return static_cast<i64>(std::floor(cm)) + 2;
}

Tally fast_engine(const Context& C, int threads) {
  const ShapeLattice& L = C.L;
  const QuadForm& q = L.shape;
  const QuadForm qa = adjoint(q);
  switch (L.kind) {
    case ShapeKind::definite: {
      const i128 B = adjoint_bound(L, C.X);
      const i64 cmax = narrow(isqrt(mul(mul(i128(4), i128(q.t)), B) / (-i128(L.D))));
      return run_rows(multiples_in(-cmax, cmax, L.ystep), threads, [&](i64 c, Tally& T) {
        auto in = [&](i64 b) { return eval(qa, b, c) <= B; };
        const i64 t2 = 2 * q.t;
        i64 m = floor_div(mul(q.s, c), t2);
        if (eval(qa, m + 1, c) < eval(qa, m, c)) ++m;
        if (!in(m)) return;
        i64 lo = first_true_from(m, in);
        i64 hi = first_true_from(m, [&](i64 b) { return !in(b); }) - 1;
        for_row(L, c, lo, hi, [&](i64 b) {
          if ((b != 0 || c != 0) && is_fundamental_rep(L, b, c)) visit(C, b, c, T);
        });
      });
    }
    case ShapeKind::indefinite: {
      if (!L.eps6) throw overflow_error("fundamental unit too large for the sector test");
      const i128 B = adjoint_bound(L, C.X);
      const i64 cmax = indefinite_cmax(L, B);
      const long double sD = std::sqrt(static_cast<long double>(L.D)), e6 = eps6_value(L);
      const long double theta = (q.s + sD) / (2.0L * q.t), theta_c = (q.s - sD) / (2.0L * q.t);
      return run_rows(multiples_in(0, cmax, L.ystep), threads, [&](i64 c, Tally& T) {
        auto in_sector = [&](i64 b) { return sector_xi_positive(L, b, c) && sector_below_eps6(L, b, c); };
        long double est = std::max(theta * c, c * (e6 * theta - theta_c) / (e6 - 1));
        i64 lo = first_true_from(static_cast<i64>(std::floor(est)), in_sector);
        if (eval(qa, lo, c) > B) return;
        // Q' = t xi eta is increasing in b on the sector
        i64 hi = first_true_from(lo, [&](i64 b) { return eval(qa, b, c) > B; }) - 1;
        for_row(L, c, lo, hi, [&](i64 b) { visit(C, b, c, T); });
      });
    }
    case ShapeKind::square: {
      const i128 K = hyperbola_bound(L, C.X);
      const i64 r3 = q.r * q.r * q.r, s3 = q.s * q.s * q.s;
      return run_rows(multiples_in(L.ystep, narrow(K), L.ystep), threads, [&](i64 d, Tally& T) {
        const i64 umax = narrow(K / d);
        const i64 rd = mul(r3, d);
        i64 u = mod_pos<i64>(rd, s3);
        if (u == 0) u = s3;
        for (; u <= umax; u += s3) visit(C, (rd - u) / s3, d, T);
      });
    }
  }
  return {};
}

Tally naive_engine(const Context& C, int threads) {
  const ShapeLattice& L = C.L;
  const QuadForm& q = L.shape;
  auto consider = [&](i64 x, i64 y, Tally& T) {
    if (!L.contains(x, y)) return;
    const CubicForm f = point_to_form(L, x, y);
    const i128 dsc = disc(f);
    if (dsc == 0 || abs_val(dsc) >= C.X) return;
    const ShapePoint P = make_point(L, x, y);
    if (P.n <= 0 || !is_fundamental_rep(L, P)) return;
    visit(C, x, y, T);
  };
  switch (L.kind) {
    case ShapeKind::definite: {
      const i128 B = adjoint_bound(L, C.X);
      const i64 bx = narrow(isqrt(mul(mul(i128(4), i128(q.r)), B) / (-i128(L.D)))) + 1;
      const i64 cx = narrow(isqrt(mul(mul(i128(4), i128(q.t)), B) / (-i128(L.D)))) + 1;
      return run_rows(range_rows(-cx, cx), threads, [&](i64 c, Tally& T) {
        for (i64 b = -bx; b <= bx; ++b) consider(b, c, T);
      });
    }
    case ShapeKind::indefinite: {
      if (!L.eps6) throw overflow_error("fundamental unit too large for the sector test");
      const i128 B = adjoint_bound(L, C.X);
      const i64 cmax = indefinite_cmax(L, B);
      const long double sD = std::sqrt(static_cast<long double>(L.D));
      const long double theta = (q.s + sD) / (2.0L * q.t);
      const long double w = std::sqrt(static_cast<long double>(B) / q.t);
      const i64 blo = static_cast<i64>(std::floor(std::min(0.0L, theta * cmax) - w)) - 2;
      const i64 bhi = static_cast<i64>(std::ceil(std::max(0.0L, theta * cmax) + w)) + 2;
      return run_rows(range_rows(-2, cmax + 2), threads, [&](i64 c, Tally& T) {
        for (i64 b = blo; b <= bhi; ++b) consider(b, c, T);
      });
    }
    case ShapeKind::square: {
      const i64 K = narrow(hyperbola_bound(L, C.X));
      const i64 r3 = q.r * q.r * q.r, s3 = q.s * q.s * q.s;
      const i64 alo = floor_div(-(r3 + 1) * K, s3) - 1, ahi = ceil_div((r3 + 1) * K, s3) + 1;
      return run_rows(range_rows(-K, K), threads, [&](i64 d, Tally& T) {
        for (i64 a = alo; a <= ahi; ++a) consider(a, d, T);
      });
    }
  }
  return {};
}

}  // namespace

CountReport count_orbits(const QuadForm& q, i64 X, const CountOptions& opt) {
  if (X < 1) throw invalid_input("X must be at least 1");
  const auto t0 = std::chrono::steady_clock::now();
  const ShapeLattice L = lattice_for(q);
  if (L.kind == ShapeKind::indefinite && (q.r <= 0 || q.t <= 0))
    throw invalid_input("indefinite shape must be normalized to r, t > 0: " + to_string(q));

  Context C{L, X, opt.filter, opt.sieve, prime_divisors(mul(i64(3), L.D)), opt.audit != nullptr};
  const int threads = opt.threads > 0 ? opt.threads : default_thread_count();
  Tally T = opt.engine == Engine::fast ? fast_engine(C, threads) : naive_engine(C, threads);

  CountReport rep;
  rep.shape = q;
  rep.kind = L.kind;
  rep.D = L.D;
  rep.X = X;
  rep.filter = opt.filter;
  rep.engine = opt.engine;
  rep.gamma = is_ambiguous(q) ? 1 : 0;
  rep.points_total = T.total;
  if (opt.filter != CountFilter::none) rep.points_irreducible = T.irr;
  if (opt.filter == CountFilter::maximal) {
    rep.points_maximal = T.max;
    rep.maximal_irreducible = T.maxirr;
  }
  rep.audit_checked = T.checked;
  rep.audit_failures = T.failures;
  if (opt.audit) *opt.audit << T.audit;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

i64 M3_D(i64 D, i64 X, const CountOptions& opt) {
  if (D > 0 && is_square(D)) throw invalid_input("square discriminants are counted by pure_field_counts");
  if (!admissible_shape_disc(D)) return 0;
  CountOptions o = opt;
  o.filter = CountFilter::maximal;
  i64 oriented = 0;
  for (const QuadForm& rep : narrow_class_number(D).reps) {
    QuadForm q = D > 0 ? normalize_indefinite(rep) : rep;
    oriented += *count_orbits(q, X, o).maximal_irreducible;
  }
  if (oriented % 2) throw invalid_input("odd oriented field count for D = " + std::to_string(D));
  return oriented / 2;
}

i64 Nd(i64 d, i64 X, const CountOptions& opt) {
  if (d == -3) return pure_field_counts(X).total();
  if (d != 1 && !is_fundamental(d)) throw invalid_input("not a fundamental discriminant: " + std::to_string(d));
  i64 n = M3_D(mul(i64(-3), d), X, opt);
  if (d % 3 == 0) n += M3_D(-d / 3, X, opt);
  return n;
}

}  // namespace cubicshape
