// Quantum layer on the N-dimensional state space L^2(Z/N): translation
// operators T_N(n), quantized observables Op_N(f), the closed-form unitary
// propagator for centralizer elements, and the O(|supp f|) trace of
// Op_N(f) U_N(A^t).
//
// Conventions. States are column vectors indexed by Q = 0..N-1 with inner
// product <phi, psi> = (1/N) sum_Q phi(Q) conj(psi(Q)); the weight is
// uniform, so operator adjoints are plain conjugate transposes. T_N(n) acts
// by (T_N(n) psi)(Q) = e(n1 n2 / 2N) e(n2 Q / N) psi(Q + n1) and depends on
// n only mod 2N.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "catlab/arithmetic.hpp"
#include "catlab/observables.hpp"

namespace catlab {

using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// e(j/den) for j = 0..den-1
std::vector<cplx> root_table(i64 den);

cplx state_inner(const StateVector& phi, const StateVector& psi);
double max_abs(const DenseOperator& m);
double unitarity_defect(const DenseOperator& u);  // max |U* U - I|

DenseOperator translation_op(i64 N, const Vec2& n);

// Op_N(f) = sum_k f^(k) T_N(k); enforces the support policy for (f, N)
DenseOperator quantize_observable(const PrimeContext& ctx,
                                  const Observable& f);

// the raw closed-form sum for an integer matrix B = I mod 2 given by its
// residues mod 2N, B != I mod N:
//   F(B) = (1/N) sum_{n mod N} e(omega(n, nB) / 2N) T_N(n (I - B))
// F is unitary but multiplicative only up to a sign
DenseOperator kelmer_assemble(i64 N, const Mat2& b_mod_2n);

// the sign (tr B - 2 | N) that turns F into a genuine representation:
// U_N(B) := weil_sign * F(B) satisfies U_N(B1) U_N(B2) = U_N(B1 B2)
int weil_sign(i64 trace_mod_n, i64 N);

// U_N(A^t); returns the identity when t = 0 mod r
DenseOperator propagator(const PrimeContext& ctx, i64 t);

// U_N(g) for any centralizer element given mod N (lifted to the unique
// representative mod 2N that is = I mod 2)
DenseOperator propagator_of(const PrimeContext& ctx, const Mat2& g_mod_n);

// max |U_N(A)* T_N(n) U_N(A) - T_N(nA)|; exactness certifies every sign and
// phase convention at once
double egorov_check(const PrimeContext& ctx, const Vec2& n);

// tr { Op_N(f) U_N(A^t) } = sum_k (-1)^{k1 k2} f^(k) e(2bar q(k; A^t) / N);
// throws identity_power when t = 0 mod r
cplx trace_kelmer(const PrimeContext& ctx, const Observable& f, i64 t);

// the same traces for every t mod r at once: entry [t], with [0] = 0
// (band-limited zero-mean f has exactly vanishing trace)
std::vector<cplx> kelmer_trace_table(const PrimeContext& ctx,
                                     const Observable& f);

}  // namespace catlab
