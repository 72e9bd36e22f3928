#pragma once

#include <optional>
#include <ostream>

#include "cubicshape/maximality.hpp"
#include "cubicshape/shape.hpp"

namespace cubicshape {

enum class CountFilter { none, irreducible, maximal };
enum class Engine { fast, naive };

const char* to_string(CountFilter f);
const char* to_string(Engine e);

struct CountOptions {
  CountFilter filter = CountFilter::irreducible;
  SieveConfig sieve;
  Engine engine = Engine::fast;
  int threads = 0;                // 0: CUBICSHAPE_THREADS, else hardware concurrency
  std::ostream* audit = nullptr;  // per-point records and checks when set
};

// Counts of cubic-action representatives in L(Q)^+ with |ring disc| < X.
// Fields beyond the requested filter level are left empty.
struct CountReport {
  QuadForm shape;
  ShapeKind kind = ShapeKind::definite;
  i64 D = 0;
  i64 X = 0;
  CountFilter filter = CountFilter::none;
  Engine engine = Engine::fast;
  int gamma = 0;  // 1 if the shape is ambiguous

  i64 points_total = 0;
  std::optional<i64> points_irreducible;
  std::optional<i64> points_maximal;       // maximal rings, reducible ones included
  std::optional<i64> maximal_irreducible;  // oriented field count

  i64 audit_checked = 0;
  i64 audit_failures = 0;
  double seconds = 0;

  std::optional<i64> oriented() const { return points_irreducible; }
  // oriented / 2^gamma; empty if not computed.
  std::optional<i64> unoriented() const;
};

int default_thread_count();

// Indefinite shapes must have r, t > 0 (see normalize_indefinite); square
// shapes must be reduced.
CountReport count_orbits(const QuadForm& q, i64 X, const CountOptions& opt = {});

// Number of cubic fields with |disc| < X whose shape has discriminant D
// (non-square D); 0 for inadmissible D.
i64 M3_D(i64 D, i64 X, const CountOptions& opt = {});

// Number of cubic fields with |disc| < X and quadratic resolvent Q(sqrt d),
// for fundamental d (d = -3 goes through the pure cubic counts).
i64 Nd(i64 d, i64 X, const CountOptions& opt = {});

// ---- pure cubic fields ---------------------------------------------------

enum class Mod9 { any, plus, minus };  // none, a = b (mod 9), a = -b (mod 9)

// #{(a, b) >= 1 : gcd(a, b) = 1, a and b squarefree, ab <= N, residue condition}.
i64 count_A(i64 N, Mod9 residue = Mod9::any);

// Exact field counts with |disc| < X: shape (0,1,0) and the two shapes of
// discriminant 9, (1,3,0) and (2,3,0).
struct PureCounts {
  i64 q1 = 0;
  i64 q9_1 = 0;
  i64 q9_2 = 0;
  i64 total() const { return q1 + q9_1 + q9_2; }
};
PureCounts pure_field_counts(i64 X);

// Pure cubic fields Q(cbrt m) with |disc| < X from the discriminant -3 k^2,
// split by whether a^2 != b^2 (mod 9) for m = a b^2 (k = 3ab) or not (k = ab).
struct PureDiscCounts {
  i64 type1 = 0;
  i64 type2 = 0;
  i64 total() const { return type1 + type2; }
};
PureDiscCounts pure_counts_by_discriminant(i64 X);

}  // namespace cubicshape
