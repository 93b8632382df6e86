// The headline statistic: P(theta) as a window-weighted sum of eigenspace
// weights, its variance over theta by the folded exponential-sum formula and
// by direct quadrature, the incomplete sums S(k,k'), and the scan that pins
// Var(P) against C_arith/L with an explicit error budget.
#pragma once

#include <vector>

#include "catlab/observables.hpp"
#include "catlab/quantization.hpp"
#include "catlab/windows.hpp"

namespace catlab {

// eigenspace weights w_j = tr(Op_N(f) P_j) for j mod r, evaluated as the
// discrete Fourier transform of the closed-form traces (identical to the
// dense projector traces, at O(r^2 |supp f|) cost)
std::vector<double> projector_weights(const PrimeContext& ctx,
                                      const Observable& f);

// P(theta) = sum_{j mod r} h_L(theta - j/r) w_j
double p_theta(const PrimeContext& ctx, const Observable& f,
               const WindowFunction& w, double L, double theta);

// same evaluation from precomputed weights (one weight per phase j/r)
double p_eval(const std::vector<double>& weights, const WindowFunction& w,
              double L, double theta);

// Var(P) = (1/L^2) sum_{tau != 0 mod r} Gamma(tau) |tr Op_N(f) U^{-tau}|^2
double variance_fourier(const PrimeContext& ctx, const Observable& f,
                        const WindowFunction& w, double L,
                        double tail_eps = 1e-10);

// Simpson quadrature of P(theta)^2 minus the squared mean, on at least
// 64 max(L, r) panels
double variance_quadrature(const PrimeContext& ctx, const Observable& f,
                           const WindowFunction& w, double L,
                           i64 panels_mult = 64);

// S(k,k') = sum_{t != 0 mod r} Gamma(t) e(2bar (q(k;A^t) - q(k';A^t)) / N)
cplx s_incomplete(const PrimeContext& ctx, const WindowFunction& w, double L,
                  const Vec2& k, const Vec2& kp, double tail_eps = 1e-10);

struct VarianceRow {
  i64 N = 0;
  i64 r = 0;
  PrimeKind kind = PrimeKind::split;
  i64 L = 0;
  double var_fourier = 0;
  double var_quadrature = 0;
  double c_arith = 0;
  double bound = 0;  // (|C| T0 + 2 sqrt(N) T0 (sum |f^|)^2) / L^2
  double ratio = 0;  // L var_fourier / C
  bool meets_budget = true;
  bool r_above_sqrt = true;  // ord(A, N) > sqrt(N)
};

struct VarianceReport {
  std::vector<VarianceRow> rows;  // ordered by N
  WindowKind window = WindowKind::hann;
  std::string observable;  // canonical coefficient rendering
};

// One row per prime: folded variance, quadrature cross-check, C_arith, the
// explicit budget |Var - C/L| <= (|C| T0 + 2 sqrt(N) T0 (sum|f^|)^2)/L^2
// and the ratio L Var / C. L = floor(N^l_exp) clamped below 2r.
VarianceReport theorem_scan(const ToralAutomorphism& A, const Observable& f,
                            const WindowFunction& w,
                            const std::vector<i64>& primes, double l_exp,
                            double tail_eps = 1e-10, int jobs = 1,
                            bool with_quadrature = true);

}  // namespace catlab
