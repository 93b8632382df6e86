#include "catlab/selftest.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "catlab/charsums.hpp"
#include "catlab/spectra.hpp"
#include "catlab/variance.hpp"

namespace catlab {

namespace {

struct Tally {
  std::ostream& log;
  int failures = 0;
  void check(const std::string& name, bool ok) {
    log << (ok ? "[ok]   " : "[FAIL] ") << name << "\n";
    if (!ok) ++failures;
  }
};

Observable two_cos_x1() { return make_observable({{{1, 0}, 1.0}}); }

Observable mixed_observable() {
  return make_observable({{{1, 0}, 1.0},
                          {{1, 1}, cplx{0.75, -0.5}},
                          {{1, -1}, cplx{-0.25, 1.0}},
                          {{3, 2}, cplx{0.0, 0.5}},
                          {{3, -2}, cplx{-0.6, 0.1}}});
}

void arithmetic_battery(Tally& t, const ToralAutomorphism& A,
                        const std::vector<i64>& primes) {
  bool q_routes = true, orders = true, powers = true;
  for (i64 N : primes) {
    PrimeContext ctx = build_context(A, N);
    orders = orders && order_mod(A, N) == ctx.r;
    // the generator's powers must exhaust the group
    std::vector<QuadExt> seen;
    QuadExt p = ctx.ring.one();
    bool distinct = true;
    for (i64 i = 0; i < ctx.M; ++i) {
      for (const auto& q : seen) distinct = distinct && !(q == p);
      seen.push_back(p);
      p = ctx.ring.mul(p, ctx.g0.lambda);
    }
    powers = powers && distinct && p == ctx.ring.one();
    QuadExt lam = ctx.ring.one();
    for (i64 i = 1; i < ctx.M && q_routes; ++i) {
      lam = ctx.ring.mul(lam, ctx.g0.lambda);
      GroupElement g = ctx.embed(lam);
      for (i64 x1 = 0; x1 < 5 && q_routes; ++x1)
        for (i64 x2 = 0; x2 < 5; ++x2)
          if (q_twisted_matrix(ctx, {x1, x2}, g.m) !=
              q_twisted_closed(ctx, {x1, x2}, lam)) {
            q_routes = false;
            break;
          }
    }
  }
  t.check("arithmetic: order_mod agrees with the eigenvalue route", orders);
  t.check("arithmetic: generator powers exhaust C_A(N)", powers);
  t.check("arithmetic: q(x;g) matrix and closed form agree", q_routes);
}

void quantization_battery(Tally& t, const ToralAutomorphism& A,
                          const std::vector<i64>& primes, i64 nbound) {
  double worst_unit = 0, worst_egorov = 0, worst_rep = 0, worst_trace = 0;
  Observable f = mixed_observable();
  for (i64 N : primes) {
    PrimeContext ctx = build_context(A, N);
    DenseOperator U = propagator(ctx, 1);
    worst_unit = std::max(worst_unit, unitarity_defect(U) / double(N));
    for (i64 n1 = -nbound; n1 <= nbound; ++n1)
      for (i64 n2 = -nbound; n2 <= nbound; ++n2)
        worst_egorov = std::max(worst_egorov, egorov_check(ctx, {n1, n2}));
    DenseOperator u2 = propagator(ctx, 2);
    worst_rep = std::max(worst_rep, max_abs(U * U - u2));
    DenseOperator wrap = propagator(ctx, ctx.r - 1) * U;
    worst_rep = std::max(
        worst_rep, max_abs(wrap - DenseOperator::Identity(ctx.N, ctx.N)));
    DenseOperator op = quantize_observable(ctx, f);
    DenseOperator ut = U;
    for (i64 tt = 1; tt < ctx.r; ++tt) {
      cplx dense = (op * ut).trace();
      worst_trace = std::max(
          worst_trace, std::abs(dense - trace_kelmer(ctx, f, tt)) / double(N));
      ut = ut * U;
    }
  }
  t.check("quantization: propagators unitary (<= 1e-12 N)",
          worst_unit <= 1e-12);
  t.check("quantization: Egorov conjugation exact (<= 1e-12)",
          worst_egorov <= 1e-12);
  t.check("quantization: representation property (<= 1e-10)",
          worst_rep <= 1e-10);
  t.check("quantization: closed-form trace matches dense (<= 1e-10 N)",
          worst_trace <= 1e-10);
}

void spectra_battery(Tally& t, const ToralAutomorphism& A,
                     const std::vector<i64>& primes) {
  bool dims_ok = true, algebra_ok = true, basis_ok = true;
  for (i64 N : primes) {
    PrimeContext ctx = build_context(A, N);
    SpectralData sd = spectral_projectors(ctx);
    i64 generic = ctx.M / ctx.r;
    i64 off = 0, excess = 0;
    for (i64 d : sd.dims)
      if (d != generic) {
        ++off;
        excess = d - generic;
      }
    i64 expected_excess = ctx.kind == PrimeKind::split ? 1 : -1;
    dims_ok = dims_ok && off <= 1 && (off == 0 || excess == expected_excess);
    DenseOperator sum = DenseOperator::Zero(N, N);
    for (const auto& P : sd.projectors) sum += P;
    sum.diagonal().array() -= 1.0;
    algebra_ok = algebra_ok && max_abs(sum) < 1e-10;
    algebra_ok =
        algebra_ok &&
        max_abs(sd.projectors[0] * sd.projectors[1 % ctx.r]) < 1e-9 * N;

    HeckeBasis hb = hecke_basis(ctx);
    DenseOperator U = propagator(ctx, 1);
    double worst = 0;
    for (const auto& hv : hb.vectors) {
      StateVector lhs = U * hv.v;
      StateVector rhs = std::polar(1.0, 2 * std::numbers::pi * hv.phase) * hv.v;
      worst = std::max(worst, std::sqrt((lhs - rhs).squaredNorm() / N));
    }
    basis_ok = basis_ok && worst <= 1e-9;
  }
  t.check("spectra: projector dimensions follow the (N-+1)/r pattern",
          dims_ok);
  t.check("spectra: projectors resolve the identity and are orthogonal",
          algebra_ok);
  t.check("spectra: Hecke vectors are propagator eigenvectors", basis_ok);
}

void windows_battery(Tally& t) {
  for (auto kind : {WindowKind::hann, WindowKind::triangle}) {
    WindowFunction w = window(kind);
    std::string nm = kind == WindowKind::hann ? "hann" : "triangle";
    double nrm = adaptive_simpson(
        [&](double x) { return w.value(x) * w.value(x); }, -0.5, 0.5, 1e-12);
    t.check("windows: " + nm + " has unit squared mass",
            std::abs(nrm - 1.0) <= 1e-10);
    double L = 7.5;
    i64 r = 13;
    auto sums = gamma_progression(w, L, r);
    double total = sums.h0sq;
    for (double g : sums.gamma) total += g;
    t.check("windows: " + nm + " progression sums recover L",
            std::abs(total - L) <= 1e-6 * L);
    auto gam = gamma_coeffs(w, L, r);
    bool nonneg = true;
    double gsum = 0;
    for (double g : gam) {
      nonneg = nonneg && g >= -1e-9;
      gsum += g;
    }
    t.check("windows: " + nm + " autocorrelation coefficients nonnegative",
            nonneg);
    t.check("windows: " + nm + " coefficients resum to T0",
            std::abs(gsum - sums.T0) <= 1e-6 * std::max(1.0, sums.T0));
  }
}

void observables_battery(Tally& t, const ToralAutomorphism& A) {
  Observable f = two_cos_x1();
  t.check("observables: C_arith(2cos 2pi x1) = 4", c_arith(A, f) == 4.0);
  t.check("observables: C_gen(2cos 2pi x1) = 2", c_gen(A, f) == 2.0);
  Observable cf = cocycle(f, A);
  t.check("observables: cocycle has vanishing C_arith", c_arith(A, cf) == 0.0);
  t.check("observables: cocycle has vanishing C_gen", c_gen(A, cf) == 0.0);
}

void variance_battery(Tally& t, const ToralAutomorphism& A, i64 N, i64 L) {
  PrimeContext ctx = build_context(A, N);
  WindowFunction w = window(WindowKind::hann);
  Observable f = two_cos_x1();
  double vf = variance_fourier(ctx, f, w, L);
  double vq = variance_quadrature(ctx, f, w, L);
  t.check("variance: folded formula matches quadrature (rel 1e-4)",
          std::abs(vf - vq) <= 1e-4 * std::abs(vq));
  Observable cf = cocycle(f, A);
  t.check("variance: cocycle variance vanishes",
          variance_fourier(ctx, cf, w, L) <= 1e-18);
}

void charsum_battery(Tally& t, const ToralAutomorphism& A, i64 nmax,
                     int jobs) {
  // parametrized forms against the abstract sum
  bool routes = true, completion = true;
  for (i64 N : {5, 7, 11, 13}) {
    PrimeContext ctx = build_context(A, N);
    Vec2 k{1, 0}, kp{1, 1};
    for (i64 m = 0; m < ctx.M; ++m) {
      cplx e1 = complete_sum(ctx, k, kp, m);
      cplx e2 = ctx.kind == PrimeKind::split ? split_form(ctx, k, kp, m)
                                             : inert_form(ctx, k, kp, m);
      routes = routes && std::abs(e1 - e2) <= 1e-9;
    }
    for (i64 j = 0; j < ctx.r; ++j)
      completion = completion && std::abs(incomplete_sum(ctx, j, k, kp) -
                                          completion_average(ctx, j, k, kp)) <=
                                     1e-9;
  }
  t.check("charsums: split/inert forms equal the abstract sum", routes);
  t.check("charsums: completion identity holds", completion);

  auto rows = charsum_scan(A, nmax, default_panel(), jobs);
  bool weil = true;
  for (const auto& row : rows) weil = weil && row.slack > 0;
  t.check("charsums: |E(chi)| < 2 sqrt(N) for all characters, N <= " +
              std::to_string(nmax),
          weil);
}

}  // namespace

int run_selftest(const ToralAutomorphism& A, bool full, std::ostream& log) {
  Tally t{log};
  std::vector<i64> primes{5, 7, 11, 13};
  if (full) primes.insert(primes.end(), {17, 19, 23, 29, 31});
  arithmetic_battery(t, A, primes);
  quantization_battery(t, A, primes, full ? 3 : 2);
  spectra_battery(t, A, primes);
  windows_battery(t);
  observables_battery(t, A);
  variance_battery(t, A, full ? 101 : 37, full ? 30 : 12);
  charsum_battery(t, A, full ? 199 : 61, full ? 4 : 1);
  log << (t.failures == 0 ? "selftest passed" : "selftest FAILED") << " ("
      << t.failures << " failures)\n";
  return t.failures;
}

}  // namespace catlab
