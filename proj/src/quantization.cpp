#include "catlab/quantization.hpp"

#include <cmath>
#include <numbers>

namespace catlab {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;

// canonical lift of a matrix mod N to the representative mod 2N that is
// congruent to the identity mod 2
Mat2 lift_to_2n(const Mat2& g, i64 N) {
  auto lift = [N](i64 x, i64 idpar) {
    i64 v = imod(x, N);
    if (imod(v, 2) != idpar) v += N;
    return v;
  };
  return {lift(g.a, 1), lift(g.b, 0), lift(g.c, 0), lift(g.d, 1)};
}
}  // namespace

std::vector<cplx> root_table(i64 den) {
  std::vector<cplx> tab(den);
  for (i64 j = 0; j < den; ++j)
    tab[j] = std::polar(1.0, two_pi * double(j) / double(den));
  return tab;
}

cplx state_inner(const StateVector& phi, const StateVector& psi) {
  return psi.dot(phi) / double(phi.size());  // Eigen dot conjugates the lhs
}

double max_abs(const DenseOperator& m) { return m.cwiseAbs().maxCoeff(); }

double unitarity_defect(const DenseOperator& u) {
  DenseOperator d = u.adjoint() * u;
  d.diagonal().array() -= 1.0;
  return max_abs(d);
}

DenseOperator translation_op(i64 N, const Vec2& n) {
  const i64 twoN = 2 * N;
  auto tab = root_table(twoN);
  DenseOperator T = DenseOperator::Zero(N, N);
  const i64 n1 = imod(n.x, twoN), n2 = imod(n.y, twoN);
  const i64 step = imod(2 * n2, twoN);
  i64 ph = imod(n1 * n2, twoN);
  i64 col = imod(n.x, N);
  for (i64 Q = 0; Q < N; ++Q) {
    T(Q, col) = tab[ph];
    ph += step;
    if (ph >= twoN) ph -= twoN;
    if (++col == N) col = 0;
  }
  return T;
}

DenseOperator quantize_observable(const PrimeContext& ctx,
                                  const Observable& f) {
  check_support_policy(ctx.Q, f, ctx.N);
  DenseOperator op = DenseOperator::Zero(ctx.N, ctx.N);
  for (const auto& [k, c] : f.coeffs) op += c * translation_op(ctx.N, k);
  return op;
}

DenseOperator kelmer_assemble(i64 N, const Mat2& B) {
  const i64 twoN = 2 * N;
  auto tab = root_table(twoN);
  const Mat2 ImB{imod(1 - B.a, twoN), imod(-B.b, twoN), imod(-B.c, twoN),
                 imod(1 - B.d, twoN)};
  DenseOperator U = DenseOperator::Zero(N, N);
  for (i64 n1 = 0; n1 < N; ++n1) {
    for (i64 n2 = 0; n2 < N; ++n2) {
      const i64 nb1 = imod(n1 * B.a + n2 * B.c, twoN);
      const i64 nb2 = imod(n1 * B.b + n2 * B.d, twoN);
      const i64 w = imod(n1 * nb2 - n2 * nb1, twoN);
      const i64 m1 = imod(n1 * ImB.a + n2 * ImB.c, twoN);
      const i64 m2 = imod(n1 * ImB.b + n2 * ImB.d, twoN);
      const i64 step = imod(2 * m2, twoN);
      i64 ph = imod(w + m1 * m2, twoN);
      i64 col = imod(m1, N);
      for (i64 Q = 0; Q < N; ++Q) {
        U(Q, col) += tab[ph];
        ph += step;
        if (ph >= twoN) ph -= twoN;
        if (++col == N) col = 0;
      }
    }
  }
  U /= double(N);
  return U;
}

int weil_sign(i64 trace_mod_n, i64 N) {
  return legendre_symbol(trace_mod_n - 2, N);
}

// The raw sum F satisfies F(B) T_N(k) F(B)* = T_N(kB); quantizing g as
// sign * F(g^{-1}) orients the conjugation the classical way,
// U_N(g)* T_N(k) U_N(g) = T_N(kg), and weil_sign makes g |-> U_N(g) a
// genuine homomorphism on the centralizer.
DenseOperator propagator(const PrimeContext& ctx, i64 t) {
  if (imod(t, ctx.r) == 0)
    return DenseOperator::Identity(ctx.N, ctx.N);
  Mat2 b = ctx.a_power_mod(-t, 2 * ctx.N);
  return double(weil_sign(imod(b.a + b.d, ctx.N), ctx.N)) *
         kelmer_assemble(ctx.N, b);
}

DenseOperator propagator_of(const PrimeContext& ctx, const Mat2& g_mod_n) {
  if (mat_mod(g_mod_n, ctx.N) == Mat2::identity())
    return DenseOperator::Identity(ctx.N, ctx.N);
  Mat2 ginv = mat_mod({g_mod_n.d, -g_mod_n.b, -g_mod_n.c, g_mod_n.a}, ctx.N);
  return double(weil_sign(imod(ginv.a + ginv.d, ctx.N), ctx.N)) *
         kelmer_assemble(ctx.N, lift_to_2n(ginv, ctx.N));
}

double egorov_check(const PrimeContext& ctx, const Vec2& n) {
  DenseOperator U = propagator(ctx, 1);
  DenseOperator lhs = U.adjoint() * translation_op(ctx.N, n) * U;
  DenseOperator rhs = translation_op(ctx.N, vec_mat(n, ctx.A.matrix()));
  return max_abs(lhs - rhs);
}

namespace {

// tr(g) = lambda + 1/lambda = 2 u for a norm-one eigenvalue u + v sqrt(D)
cplx trace_at_eigenvalue(const PrimeContext& ctx, const Observable& f,
                         const QuadExt& lam, const std::vector<cplx>& tabN) {
  const i64 mu = q_multiplier(ctx, lam);
  const double sign = weil_sign(imod(2 * lam.u, ctx.N), ctx.N);
  cplx acc = 0;
  for (const auto& [k, c] : f.coeffs) {
    i64 q = (ctx.q_value_mod(k) * mu) % ctx.N;
    i64 ph = (ctx.two_inv * q) % ctx.N;
    double sgn = imod(k.x * k.y, 2) ? -sign : sign;
    acc += sgn * c * tabN[ph];
  }
  return acc;
}

}  // namespace

cplx trace_kelmer(const PrimeContext& ctx, const Observable& f, i64 t) {
  if (imod(t, ctx.r) == 0)
    throw Error(errc::identity_power,
                "trace formula needs A^t != I mod N; use tr Op_N(f) instead");
  auto tabN = root_table(ctx.N);
  return trace_at_eigenvalue(ctx, f, ctx.lambda_power(-t), tabN);
}

std::vector<cplx> kelmer_trace_table(const PrimeContext& ctx,
                                     const Observable& f) {
  auto tabN = root_table(ctx.N);
  std::vector<cplx> out(ctx.r, cplx{0.0, 0.0});
  const QuadExt lam_inv = ctx.ring.conj(ctx.lambdaA);  // norm one
  QuadExt lam = ctx.ring.one();
  for (i64 t = 1; t < ctx.r; ++t) {
    lam = ctx.ring.mul(lam, lam_inv);
    out[t] = trace_at_eigenvalue(ctx, f, lam, tabN);
  }
  return out;
}

}  // namespace catlab
