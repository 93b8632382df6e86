// Trigonometric-polynomial observables: hermitian zero-mean Fourier
// coefficient maps, cocycles g - g(.A), and the two variance prefactors
// C_arith (pairs with equal Q) and C_gen (pairs on one A-orbit).
#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "catlab/arithmetic.hpp"

namespace catlab {

using cplx = std::complex<double>;

struct Observable {
  // hermitian map k -> f^(k), canonically ordered by (k.x, k.y), no zeros,
  // no k = 0 entry
  std::vector<std::pair<Vec2, cplx>> coeffs;
  i64 support_bound = 0;  // max |coordinate| over the support

  cplx coeff(const Vec2& k) const;
  bool empty() const { return coeffs.empty(); }
};

// Auto-hermitizes: a missing coefficient at -k is filled with the conjugate.
// Rejects a nonzero value at k = 0 and conflicting (k, -k) assignments.
Observable make_observable(const std::vector<std::pair<Vec2, cplx>>& pairs);

// f = g - g(.A); composition maps frequencies by k |-> kA (row action)
Observable cocycle(const Observable& g, const ToralAutomorphism& A);

// frequency relabeling k |-> kA (used by invariance checks)
Observable compose_with(const Observable& f, const ToralAutomorphism& A);

double coeff_abs_sum(const Observable& f);

// canonical one-line rendering of the coefficient map, e.g.
// "(1,0):1; (-1,0):1"
std::string describe(const Observable& f);

// sum over pairs with Q(k) = Q(k') of (-1)^{k1k2+k1'k2'} f^(k) conj(f^(k')),
// grouped by exact integer Q value
double c_arith(const ToralAutomorphism& A, const Observable& f);

// same pair sum restricted to k' = k A^t; the orbit walk stops once a
// coordinate exceeds 4 * support_bound (hyperbolicity: no return)
double c_gen(const ToralAutomorphism& A, const Observable& f);

// max |Q(k)| < N/2 and no frequency congruent to 0 mod N; throws
// support_too_large otherwise
void check_support_policy(const QuadraticForm& Q, const Observable& f, i64 N);

// JSON array of records {"k": [k1, k2], "re": x, "im": y}
Observable load_observable(const std::string& path);

}  // namespace catlab
