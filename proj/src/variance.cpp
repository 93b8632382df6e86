#include "catlab/variance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "catlab/parallel.hpp"

namespace catlab {

std::vector<double> projector_weights(const PrimeContext& ctx,
                                      const Observable& f) {
  check_support_policy(ctx.Q, f, ctx.N);
  const i64 r = ctx.r;
  auto traces = kelmer_trace_table(ctx, f);
  auto tab = root_table(r);
  std::vector<double> w(r);
  for (i64 j = 0; j < r; ++j) {
    cplx acc = 0;
    for (i64 t = 1; t < r; ++t) acc += tab[imod(-j * t, r)] * traces[t];
    w[j] = acc.real() / double(r);
  }
  return w;
}

double p_eval(const std::vector<double>& weights, const WindowFunction& w,
              double L, double theta) {
  const i64 r = static_cast<i64>(weights.size());
  // only phases within 1/(2L) of theta contribute
  double half = 0.5 / L;
  i64 lo = static_cast<i64>(std::ceil((theta - half) * r));
  i64 hi = static_cast<i64>(std::floor((theta + half) * r));
  double acc = 0;
  for (i64 j = lo; j <= hi; ++j)
    acc += w.value(L * (theta - double(j) / double(r))) *
           weights[imod(j, r)];
  return acc;
}

double p_theta(const PrimeContext& ctx, const Observable& f,
               const WindowFunction& w, double L, double theta) {
  if (!(L < 2.0 * ctx.r))
    throw Error(errc::window_too_wide,
                "L must stay below 2 ord(A, N) = " + std::to_string(2 * ctx.r));
  return p_eval(projector_weights(ctx, f), w, L, theta);
}

double variance_fourier(const PrimeContext& ctx, const Observable& f,
                        const WindowFunction& w, double L, double tail_eps) {
  check_support_policy(ctx.Q, f, ctx.N);
  auto sums = gamma_progression(w, L, ctx.r, tail_eps);
  auto traces = kelmer_trace_table(ctx, f);
  double acc = 0;
  for (i64 tau = 1; tau < ctx.r; ++tau)
    acc += sums.gamma[tau] * std::norm(traces[imod(-tau, ctx.r)]);
  return acc / (L * L);
}

double variance_quadrature(const PrimeContext& ctx, const Observable& f,
                           const WindowFunction& w, double L,
                           i64 panels_mult) {
  if (!(L < 2.0 * ctx.r))
    throw Error(errc::window_too_wide,
                "L must stay below 2 ord(A, N) = " + std::to_string(2 * ctx.r));
  auto weights = projector_weights(ctx, f);
  i64 panels =
      panels_mult * static_cast<i64>(std::ceil(std::max(L, double(ctx.r))));
  auto p = [&](double th) { return p_eval(weights, w, L, th); };
  double mean = simpson(p, 0.0, 1.0, panels);
  double second = simpson([&](double th) { double v = p(th); return v * v; },
                          0.0, 1.0, panels);
  return second - mean * mean;
}

cplx s_incomplete(const PrimeContext& ctx, const WindowFunction& w, double L,
                  const Vec2& k, const Vec2& kp, double tail_eps) {
  auto sums = gamma_progression(w, L, ctx.r, tail_eps);
  auto tabN = root_table(ctx.N);
  const i64 qk = ctx.q_value_mod(k), qkp = ctx.q_value_mod(kp);
  cplx acc = 0;
  QuadExt lam = ctx.ring.one();
  for (i64 t = 1; t < ctx.r; ++t) {
    lam = ctx.ring.mul(lam, ctx.lambdaA);
    i64 mu = q_multiplier(ctx, lam);
    i64 ph = imod(ctx.two_inv * ((qk - qkp) * mu % ctx.N), ctx.N);
    acc += sums.gamma[t] * tabN[ph];
  }
  return acc;
}

VarianceReport theorem_scan(const ToralAutomorphism& A, const Observable& f,
                            const WindowFunction& w,
                            const std::vector<i64>& primes, double l_exp,
                            double tail_eps, int jobs, bool with_quadrature) {
  std::vector<i64> ns = primes;
  std::sort(ns.begin(), ns.end());
  const double fsum = coeff_abs_sum(f);
  const double carith = c_arith(A, f);

  VarianceReport report;
  report.window = w.kind;
  report.observable = describe(f);
  report.rows.resize(ns.size());
  parallel_for_indices(
      static_cast<i64>(ns.size()), jobs, [&](i64 idx) {
        const i64 N = ns[idx];
        PrimeContext ctx = build_context(A, N);
        i64 L = static_cast<i64>(std::floor(std::pow(double(N), l_exp)));
        L = std::min(L, 2 * ctx.r - 1);
        L = std::max<i64>(L, 1);
        auto sums = gamma_progression(w, double(L), ctx.r, tail_eps);

        VarianceRow row;
        row.N = N;
        row.r = ctx.r;
        row.kind = ctx.kind;
        row.L = L;
        row.c_arith = carith;
        row.var_fourier = variance_fourier(ctx, f, w, double(L), tail_eps);
        row.var_quadrature =
            with_quadrature ? variance_quadrature(ctx, f, w, double(L))
                            : 0.0;
        // |S(k,k')| <= 2 sqrt(N) sum_j gamma(j) and the coefficients resum
        // to T0, the zero-progression class with its t = 0 term; Gamma(0)
        // alone can vanish (integer r/L) while S does not
        row.bound = (std::abs(carith) * sums.T0 +
                     2.0 * std::sqrt(double(N)) * sums.T0 * fsum * fsum) /
                    (double(L) * double(L));
        row.meets_budget =
            std::abs(row.var_fourier - carith / double(L)) <= row.bound;
        row.ratio = carith != 0.0
                        ? double(L) * row.var_fourier / carith
                        : std::numeric_limits<double>::quiet_NaN();
        row.r_above_sqrt = double(ctx.r) > std::sqrt(double(N));
        report.rows[idx] = row;
      });
  return report;
}

}  // namespace catlab
