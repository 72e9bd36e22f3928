#pragma once

#include <boost/rational.hpp>
#include <vector>

#include "cubicshape/forms.hpp"
#include "cubicshape/shape.hpp"

namespace cubicshape {

using Rational = boost::rational<i64>;

struct SieveConfig {
  enum class Mode { exact, truncated };
  Mode mode = Mode::exact;
  i64 prime_bound = 0;  // truncated mode: test p <= prime_bound only

  static SieveConfig exact() { return {}; }
  static SieveConfig truncated(i64 Y) { return {Mode::truncated, Y}; }
};

// Local maximality of R(f) at p. False iff f = 0 (mod p), or f has a multiple
// root in P^1(F_p) whose integral lift (u, v) has f(u, v) = 0 (mod p^2).
bool is_maximal_at(const CubicForm& f, i64 p);

// Same test without validating p or disc(f); p must be prime and p^2 < 2^63.
bool maximal_at_prime(const CubicForm& f, i64 p);

bool is_maximal(const CubicForm& f, const SieveConfig& cfg = SieveConfig::exact());

// Maximality knowing that every prime with p^2 | disc(f) is among
// `candidates` (e.g. the primes dividing 3 n D for a shape-lattice point).
bool is_maximal_with_candidates(const CubicForm& f, const std::vector<i64>& candidates,
                                const SieveConfig& cfg = SieveConfig::exact());

enum class DensityCase { split, inert, ramified1, ramified2, ramified3, ramified4 };
const char* to_string(DensityCase c);

struct DensityEntry {
  i64 p = 0;
  DensityCase kind = DensityCase::split;
  Rational density;
};

// Tabulated density of shape-lattice points maximal at p, for shape
// discriminant D.
DensityEntry density_entry(i64 D, i64 p);
Rational mu_p(i64 D, i64 p);

// Exhaustive enumeration of lattice residues mod p^2.
Rational empirical_mu_p(const QuadForm& q, i64 p);
Rational empirical_mu_p(const ShapeLattice& L, i64 p);

// D or -D/3 fundamental; for square D, D = 1 or 9.
bool admissible_shape_disc(i64 D);

struct PureMaxData {
  i64 a = 0, d = 0;     // as read off the form (D = 1), or the primed pair (D = 9)
  bool coprime = false;
  bool a_squarefree = false, d_squarefree = false;
  bool residue_ok = true;  // D = 1 only: a^2 != d^2 (mod 9)
};
PureMaxData pure_max_data(const ShapeLattice& L, const ShapePoint& P);
bool is_maximal_pure(const ShapeLattice& L, const ShapePoint& P);

}  // namespace cubicshape
