// Eigenphase projectors by averaging powers of the propagator, the joint
// Hecke eigenbasis from character projectors over C_A(N), diagonal matrix
// elements, and their mean-square over the basis.
#pragma once

#include <vector>

#include "catlab/quantization.hpp"

namespace catlab {

struct SpectralData {
  i64 r = 0;
  std::vector<double> phases;            // j / r
  std::vector<i64> dims;                 // round(tr P_j)
  std::vector<DenseOperator> projectors; // P_j = (1/r) sum_t e(-jt/r) U^t
};

// throws projector_defect if an idempotency residual exceeds tolerance
SpectralData spectral_projectors(const PrimeContext& ctx);

struct HeckeVector {
  StateVector v;     // unit norm under the (1/N)-weighted inner product
  i64 m = 0;         // character index mod M
  double phase = 0;  // U_N(A)-eigenphase, equal to m s / M mod 1
};

struct HeckeBasis {
  std::vector<HeckeVector> vectors;  // N of them, ordered by (m, pivot order)
};

// Pi_m = (1/M) sum_i conj(e(m i / M)) U_N(g0^i); rank(Pi_m) orthonormal
// vectors extracted by pivoted modified Gram-Schmidt on its columns.
// Throws rank_mismatch if the ranks do not add up to N.
HeckeBasis hecke_basis(const PrimeContext& ctx);

// diagonal elements <Op_N(f) psi, psi> over the basis, as (phase, value)
std::vector<std::pair<double, double>> matrix_elements(const PrimeContext& ctx,
                                                       const Observable& f,
                                                       const HeckeBasis& basis);

// sum of squared diagonal elements over the Hecke basis
double hecke_variance(const PrimeContext& ctx, const Observable& f);

}  // namespace catlab
