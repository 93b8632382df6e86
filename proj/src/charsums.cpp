#include "catlab/charsums.hpp"

#include <algorithm>
#include <cmath>

#include "catlab/parallel.hpp"
#include "catlab/quantization.hpp"

namespace catlab {

namespace {

// u-component of (1 + lambda_A)/(1 - lambda_A) scaled by sqrt(D): in both
// kinds this quotient is a pure sqrt(D) multiple u sqrt(D); returns u
i64 lambda_cayley_u(const PrimeContext& ctx) {
  const auto& R = ctx.ring;
  QuadExt num = R.add(R.one(), ctx.lambdaA);
  QuadExt den = R.sub(R.one(), ctx.lambdaA);
  if (R.norm(den) == 0 || R.norm(num) == 0)
    throw Error(errc::degenerate_lambda, "lambda_A must differ from +-1");
  QuadExt quot = R.mul(num, R.inv(den));
  if (quot.u != 0)
    throw std::logic_error("(1+lambda_A)/(1-lambda_A) not a sqrt(D) multiple");
  return quot.v;
}

}  // namespace

AdditiveCharacter additive_character(const PrimeContext& ctx, const Vec2& k,
                                     const Vec2& kp) {
  const i64 N = ctx.N;
  AdditiveCharacter psi;
  psi.N = N;
  const i64 dq = imod(ctx.q_value_mod(k) - ctx.q_value_mod(kp), N);
  if (ctx.kind == PrimeKind::inert) {
    const i64 u = lambda_cayley_u(ctx);
    psi.t0 = imod(ctx.D * u, N);
    // c = (D - t0^2) / (4 t0 D)
    i64 num = imod(ctx.D - psi.t0 * psi.t0, N);
    i64 den = mod_inverse(imod(4 * psi.t0 % N * ctx.D, N), N);
    psi.c = imod(num * den, N);
    psi.a = imod(ctx.two_inv * ((dq * psi.c) % N), N);
  } else {
    // numeric eigenvalue xA = u + v sqrt(D) in Z/N; absorb 1/(xA - 1/xA)
    i64 xa = imod(ctx.lambdaA.u + ctx.lambdaA.v * ctx.sqrtD, N);
    i64 diff = imod(xa - mod_inverse(xa, N), N);
    psi.a = imod(ctx.two_inv * ((dq * mod_inverse(diff, N)) % N), N);
  }
  return psi;
}

cplx complete_sum(const PrimeContext& ctx, const Vec2& k, const Vec2& kp,
                  i64 m) {
  const i64 N = ctx.N, M = ctx.M;
  auto tabN = root_table(N);
  auto tabM = root_table(M);
  const i64 dq = imod(ctx.q_value_mod(k) - ctx.q_value_mod(kp), N);
  cplx acc = 0;
  QuadExt lam = ctx.g0.lambda;
  for (i64 i = 1; i < M; ++i) {
    i64 mu = q_multiplier(ctx, lam);
    i64 ph = imod(ctx.two_inv * ((dq * mu) % N), N);
    acc += tabM[imod(m * i, M)] * tabN[ph];
    lam = ctx.ring.mul(lam, ctx.g0.lambda);
  }
  return acc;
}

cplx split_form(const PrimeContext& ctx, const Vec2& k, const Vec2& kp,
                i64 m) {
  if (ctx.kind != PrimeKind::split)
    throw Error(errc::bad_input, "split_form needs a split context");
  const i64 N = ctx.N, M = ctx.M;
  auto tabN = root_table(N);
  auto tabM = root_table(M);
  AdditiveCharacter psi = additive_character(ctx, k, kp);

  // discrete logs base the numeric eigenvalue of g0, a generator of (Z/N)^*
  i64 x0 = imod(ctx.g0.lambda.u + ctx.g0.lambda.v * ctx.sqrtD, N);
  std::vector<i64> dlog(N, -1);
  i64 p = 1;
  for (i64 i = 0; i < M; ++i) {
    dlog[p] = i;
    p = (p * x0) % N;
  }

  cplx acc = 0;
  for (i64 x = 2; x < N; ++x) {  // x = 0 is not a unit value, x = 1 excluded
    i64 z = imod((1 + x) * mod_inverse(imod(1 - x, N), N), N);
    acc += tabM[imod(m * dlog[x], M)] * tabN[imod(psi.a * z, N)];
  }
  return acc;
}

cplx inert_form(const PrimeContext& ctx, const Vec2& k, const Vec2& kp,
                i64 m) {
  if (ctx.kind != PrimeKind::inert)
    throw Error(errc::bad_input, "inert_form needs an inert context");
  const i64 N = ctx.N, M = ctx.M;
  auto tabN = root_table(N);
  auto tabM = root_table(M);
  AdditiveCharacter psi = additive_character(ctx, k, kp);

  // discrete logs on the norm-one group, indexed by u * N + v
  std::vector<i64> dlog(N * N, -1);
  QuadExt p = ctx.ring.one();
  for (i64 i = 0; i < M; ++i) {
    dlog[p.u * N + p.v] = i;
    p = ctx.ring.mul(p, ctx.g0.lambda);
  }

  cplx acc = 0;
  for (i64 t = 0; t < N; ++t) {
    // x(t) = (t - sqrt(D)) (t + sqrt(D))^{-1} = ((t^2 + D) - 2t sqrt(D))/(t^2 - D)
    i64 den = mod_inverse(imod(t * t - ctx.D, N), N);
    i64 xu = imod((t * t + ctx.D) % N * den, N);
    i64 xv = imod(-2 * t % N * den, N);
    i64 i = dlog[xu * N + xv];
    if (i < 0) throw std::logic_error("inert parametrization left the group");
    acc += tabM[imod(m * i, M)] * tabN[imod(psi.a * t, N)];
  }
  return acc;
}

cplx incomplete_sum(const PrimeContext& ctx, i64 j, const Vec2& k,
                    const Vec2& kp) {
  const i64 N = ctx.N, r = ctx.r;
  auto tabN = root_table(N);
  auto tabr = root_table(r);
  const i64 dq = imod(ctx.q_value_mod(k) - ctx.q_value_mod(kp), N);
  cplx acc = 0;
  QuadExt lam = ctx.ring.one();
  for (i64 t = 1; t < r; ++t) {
    lam = ctx.ring.mul(lam, ctx.lambdaA);
    i64 mu = q_multiplier(ctx, lam);
    i64 ph = imod(ctx.two_inv * ((dq * mu) % N), N);
    acc += tabr[imod(j * t, r)] * tabN[ph];
  }
  return acc;
}

i64 chi1_index(const PrimeContext& ctx) {
  // solve m1 s = M / r (mod M); with g = M / r and s = g s', gcd(s', r) = 1,
  // this reduces to m1 s' = 1 (mod r)
  const i64 g = ctx.M / ctx.r;
  if (ctx.s % g != 0)
    throw std::logic_error("discrete log of A incompatible with ord(A, N)");
  const i64 sp = imod(ctx.s / g, ctx.r);
  return mod_inverse(sp, ctx.r);
}

cplx completion_average(const PrimeContext& ctx, i64 j, const Vec2& k,
                        const Vec2& kp) {
  const i64 M = ctx.M, r = ctx.r;
  const i64 m1 = chi1_index(ctx);
  // characters trivial on A = g0^s are exactly the indices divisible by r
  cplx acc = 0;
  for (i64 u = 0; u < M / r; ++u)
    acc += complete_sum(ctx, k, kp, imod(j * m1 + u * r, M));
  return acc * (double(r) / double(M));
}

FrequencyPanel default_panel() {
  return {{{1, 0}, {1, 1}}, {{1, 0}, {2, 1}}, {{1, 1}, {0, 1}}};
}

std::vector<CharScanRow> charsum_scan(const ToralAutomorphism& A, i64 nmax,
                                      const FrequencyPanel& panel, int jobs) {
  std::vector<i64> primes;
  for (i64 n = 3; n <= nmax; n += 2)
    if (is_prime(n) && imod(A.disc(), n) != 0) primes.push_back(n);

  std::vector<std::vector<CharScanRow>> per_prime(primes.size());
  parallel_for_indices(
      static_cast<i64>(primes.size()), jobs, [&](i64 idx) {
        const i64 N = primes[idx];
        PrimeContext ctx = build_context(A, N);
        std::vector<std::pair<Vec2, Vec2>> pairs;
        for (const auto& [k, kp] : panel)
          if (imod(ctx.Q(k) - ctx.Q(kp), N) != 0) pairs.push_back({k, kp});
        const double bound = 2.0 * std::sqrt(double(N));
        for (i64 m = 0; m < ctx.M; ++m) {
          double worst = 0;
          for (const auto& [k, kp] : pairs)
            worst = std::max(worst, std::abs(complete_sum(ctx, k, kp, m)));
          per_prime[idx].push_back(
              {N, ctx.kind, m, worst, bound, bound - worst});
        }
      });

  std::vector<CharScanRow> rows;
  for (auto& chunk : per_prime)
    rows.insert(rows.end(), chunk.begin(), chunk.end());
  return rows;
}

}  // namespace catlab
