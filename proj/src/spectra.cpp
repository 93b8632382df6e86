#include "catlab/spectra.hpp"

#include <cmath>

namespace catlab {

SpectralData spectral_projectors(const PrimeContext& ctx) {
  const i64 N = ctx.N, r = ctx.r;
  std::vector<DenseOperator> upow(r);
  upow[0] = DenseOperator::Identity(N, N);
  if (r > 1) upow[1] = propagator(ctx, 1);
  for (i64 t = 2; t < r; ++t) upow[t] = upow[t - 1] * upow[1];

  auto tab = root_table(r);
  SpectralData out;
  out.r = r;
  for (i64 j = 0; j < r; ++j) {
    DenseOperator P = DenseOperator::Zero(N, N);
    for (i64 t = 0; t < r; ++t) P += tab[imod(-j * t, r)] * upow[t];
    P /= double(r);
    double defect = max_abs(P * P - P);
    if (defect > 1e-8 * double(N))
      throw Error(errc::projector_defect,
                  "projector idempotency residual " + std::to_string(defect));
    out.phases.push_back(double(j) / double(r));
    out.dims.push_back(std::llround(P.trace().real()));
    out.projectors.push_back(std::move(P));
  }
  return out;
}

HeckeBasis hecke_basis(const PrimeContext& ctx) {
  const i64 N = ctx.N, M = ctx.M;

  // U_N(g0^i) for i = 0..M-1, each from the closed-form assembly
  std::vector<DenseOperator> ug(M);
  ug[0] = DenseOperator::Identity(N, N);
  Mat2 g = ctx.g0.m;
  for (i64 i = 1; i < M; ++i) {
    ug[i] = propagator_of(ctx, g);
    g = mat_mul_mod(g, ctx.g0.m, ctx.N);
  }

  auto tab = root_table(M);
  HeckeBasis basis;
  for (i64 m = 0; m < M; ++m) {
    DenseOperator pi = DenseOperator::Zero(N, N);
    for (i64 i = 0; i < M; ++i) pi += tab[imod(-m * i, M)] * ug[i];
    pi /= double(M);
    i64 rank = std::llround(pi.trace().real());
    if (rank == 0) continue;

    // pivoted modified Gram-Schmidt on the columns, weighted inner product
    double phase = double(imod(m * ctx.s, M)) / double(M);
    for (i64 d = 0; d < rank; ++d) {
      Eigen::Index piv = 0;
      double best = -1.0;
      for (Eigen::Index c = 0; c < pi.cols(); ++c) {
        double nrm = pi.col(c).squaredNorm() / double(N);
        if (nrm > best) {
          best = nrm;
          piv = c;
        }
      }
      StateVector v = pi.col(piv);
      v /= std::sqrt(v.squaredNorm() / double(N));
      pi -= v * (v.adjoint() * pi) / double(N);
      basis.vectors.push_back({std::move(v), m, phase});
    }
    double leftover = pi.colwise().norm().maxCoeff() / std::sqrt(double(N));
    if (leftover > 1e-6)
      throw Error(errc::rank_mismatch,
                  "column mass left after extracting rank(Pi_m) vectors");
  }
  if (static_cast<i64>(basis.vectors.size()) != N)
    throw Error(errc::rank_mismatch,
                "character projector ranks sum to " +
                    std::to_string(basis.vectors.size()) + ", expected " +
                    std::to_string(N));
  return basis;
}

std::vector<std::pair<double, double>> matrix_elements(
    const PrimeContext& ctx, const Observable& f, const HeckeBasis& basis) {
  DenseOperator op = quantize_observable(ctx, f);
  std::vector<std::pair<double, double>> out;
  out.reserve(basis.vectors.size());
  for (const auto& hv : basis.vectors) {
    cplx val = state_inner(op * hv.v, hv.v);
    out.push_back({hv.phase, val.real()});
  }
  return out;
}

double hecke_variance(const PrimeContext& ctx, const Observable& f) {
  auto elems = matrix_elements(ctx, f, hecke_basis(ctx));
  double acc = 0;
  for (const auto& [phase, val] : elems) acc += val * val;
  return acc;
}

}  // namespace catlab
