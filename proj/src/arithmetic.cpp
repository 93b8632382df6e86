#include "catlab/arithmetic.hpp"

#include <algorithm>
#include <cmath>

namespace catlab {

i64 imod(i64 a, i64 m) {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

i64 mod_inverse(i64 a, i64 m) {
  i64 old_r = imod(a, m), r = m;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    i64 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1)
    throw Error(errc::bad_input,
                "mod_inverse: " + std::to_string(a) + " not invertible mod " +
                    std::to_string(m));
  return imod(old_s, m);
}

i64 mod_pow(i64 base, i64 exp, i64 m) {
  i64 result = 1 % m;
  base = imod(base, m);
  while (exp > 0) {
    if (exp & 1) result = (result * base) % m;
    base = (base * base) % m;
    exp >>= 1;
  }
  return result;
}

bool is_prime(i64 n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (i64 p = 3; p * p <= n; p += 2)
    if (n % p == 0) return false;
  return true;
}

std::vector<i64> prime_factors(i64 n) {
  std::vector<i64> out;
  for (i64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<i64> divisors_sorted(i64 n) {
  std::vector<i64> out;
  for (i64 d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      if (d != n / d) out.push_back(n / d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Vec2 vec_mat(const Vec2& v, const Mat2& m) {
  return {v.x * m.a + v.y * m.c, v.x * m.b + v.y * m.d};
}

Vec2 vec_mat_mod(const Vec2& v, const Mat2& m, i64 mod) {
  Vec2 w = vec_mat(v, m);
  return {imod(w.x, mod), imod(w.y, mod)};
}

Mat2 mat_mul_mod(const Mat2& x, const Mat2& y, i64 mod) {
  return {imod(x.a * y.a + x.b * y.c, mod), imod(x.a * y.b + x.b * y.d, mod),
          imod(x.c * y.a + x.d * y.c, mod), imod(x.c * y.b + x.d * y.d, mod)};
}

Mat2 mat_mod(const Mat2& m, i64 mod) {
  return {imod(m.a, mod), imod(m.b, mod), imod(m.c, mod), imod(m.d, mod)};
}

Mat2 mat_pow_mod(Mat2 base, i64 exp, i64 mod) {
  Mat2 result = mat_mod(Mat2::identity(), mod);
  base = mat_mod(base, mod);
  while (exp > 0) {
    if (exp & 1) result = mat_mul_mod(result, base, mod);
    base = mat_mul_mod(base, base, mod);
    exp >>= 1;
  }
  return result;
}

i64 omega(const Vec2& x, const Vec2& y) { return x.x * y.y - x.y * y.x; }

ToralAutomorphism validate_automorphism(i64 a, i64 b, i64 c, i64 d) {
  if (a * d - b * c != 1)
    throw Error(errc::not_unimodular, "det must be 1, got " +
                                          std::to_string(a * d - b * c));
  if (std::abs(a + d) <= 2)
    throw Error(errc::not_hyperbolic,
                "|trace| must exceed 2, got " + std::to_string(a + d));
  if (imod(a, 2) != 1 || imod(d, 2) != 1 || imod(b, 2) != 0 || imod(c, 2) != 0)
    throw Error(errc::bad_parity, "matrix must be congruent to I mod 2");
  return {a, b, c, d};
}

QuadraticForm quadratic_form(const ToralAutomorphism& A) {
  QuadraticForm q;
  q.alpha = A.b;
  q.beta = A.d - A.a;
  q.gamma = -A.c;
  q.disc = q.beta * q.beta - 4 * q.alpha * q.gamma;
  return q;
}

QuadExt QuadExtRing::add(const QuadExt& x, const QuadExt& y) const {
  return {imod(x.u + y.u, n_), imod(x.v + y.v, n_)};
}

QuadExt QuadExtRing::sub(const QuadExt& x, const QuadExt& y) const {
  return {imod(x.u - y.u, n_), imod(x.v - y.v, n_)};
}

QuadExt QuadExtRing::mul(const QuadExt& x, const QuadExt& y) const {
  return {imod(x.u * y.u + d_ * ((x.v * y.v) % n_), n_),
          imod(x.u * y.v + x.v * y.u, n_)};
}

i64 QuadExtRing::norm(const QuadExt& x) const {
  return imod(x.u * x.u - d_ * ((x.v * x.v) % n_), n_);
}

QuadExt QuadExtRing::inv(const QuadExt& x) const {
  i64 ninv = mod_inverse(norm(x), n_);
  return {imod(x.u * ninv, n_), imod(-x.v * ninv, n_)};
}

QuadExt QuadExtRing::pow(QuadExt base, i64 exp) const {
  QuadExt result = one();
  while (exp > 0) {
    if (exp & 1) result = mul(result, base);
    base = mul(base, base);
    exp >>= 1;
  }
  return result;
}

bool is_quadratic_residue(i64 a, i64 N) {
  return mod_pow(a, (N - 1) / 2, N) == 1;
}

int legendre_symbol(i64 a, i64 N) {
  a = imod(a, N);
  if (a == 0) return 0;
  return mod_pow(a, (N - 1) / 2, N) == 1 ? 1 : -1;
}

std::vector<i64> sqrt_table(i64 N) {
  std::vector<i64> root(N, -1);
  for (i64 x = 0; x <= N / 2; ++x) root[(x * x) % N] = x;
  return root;
}

i64 element_order(const QuadExtRing& ring, const QuadExt& x, i64 M,
                  const std::vector<i64>& M_primes) {
  i64 ord = M;
  for (i64 p : M_primes)
    while (ord % p == 0 && ring.pow(x, ord / p) == ring.one()) ord /= p;
  return ord;
}

QuadExt PrimeContext::lambda_power(i64 t) const {
  i64 e = imod(t, M);  // lambda_A has norm 1 and order r | M
  return ring.pow(lambdaA, e);
}

Mat2 PrimeContext::a_power_mod(i64 t, i64 mod) const {
  if (t >= 0) return mat_pow_mod(A.matrix(), t, mod);
  return mat_pow_mod(A.inverse(), -t, mod);
}

GroupElement PrimeContext::embed(const QuadExt& lambda) const {
  Mat2 m{imod(lambda.u + lambda.v * W.a, N), imod(lambda.v * W.b, N),
         imod(lambda.v * W.c, N), imod(lambda.u + lambda.v * W.d, N)};
  return {m, lambda};
}

PrimeContext build_context(const ToralAutomorphism& A, i64 N) {
  if (N % 2 == 0) throw Error(errc::not_odd, "N must be odd");
  if (!is_prime(N)) throw Error(errc::not_prime, "N must be prime");
  const i64 disc = A.disc();
  if (imod(disc, N) == 0)
    throw Error(errc::divides_discriminant,
                std::to_string(N) + " divides disc = " + std::to_string(disc));

  PrimeContext ctx;
  ctx.A = A;
  ctx.Q = quadratic_form(A);
  ctx.N = N;
  ctx.D = imod(disc, N);
  ctx.kind =
      is_quadratic_residue(ctx.D, N) ? PrimeKind::split : PrimeKind::inert;
  ctx.M = ctx.kind == PrimeKind::split ? N - 1 : N + 1;
  ctx.M_primes = prime_factors(ctx.M);
  ctx.two_inv = mod_inverse(2, N);
  ctx.ring = QuadExtRing(N, ctx.D);

  const i64 t = imod(A.trace(), N);
  ctx.lambdaA = ctx.ring.make(t * ctx.two_inv, ctx.two_inv);
  ctx.W = mat_mod({2 * A.a - A.trace(), 2 * A.b, 2 * A.c, 2 * A.d - A.trace()},
                  N);

  auto roots = sqrt_table(N);
  ctx.sqrtD = ctx.kind == PrimeKind::split ? roots[ctx.D] : -1;

  // generator search: norm-one candidates in (v, u)-lexicographic order,
  // first element of exact order M wins
  bool found = false;
  for (i64 v = 0; v < N && !found; ++v) {
    i64 usq = imod(1 + ctx.D * ((v * v) % N), N);
    i64 u0 = roots[usq];
    if (u0 < 0) continue;
    i64 cand[2] = {u0, imod(N - u0, N)};
    if (cand[1] < cand[0]) std::swap(cand[0], cand[1]);
    for (int i = 0; i < 2 && !found; ++i) {
      if (i == 1 && cand[1] == cand[0]) continue;
      QuadExt lam{cand[i], v};
      if (element_order(ctx.ring, lam, ctx.M, ctx.M_primes) == ctx.M) {
        ctx.g0 = ctx.embed(lam);
        found = true;
      }
    }
  }
  if (!found)
    throw std::logic_error("no generator of C_A(N) found; N = " +
                           std::to_string(N));

  // discrete logarithm s with g0^s = A, and ord(A, N) from lambda_A
  ctx.s = -1;
  QuadExt p = ctx.ring.one();
  for (i64 i = 0; i < ctx.M; ++i) {
    if (p == ctx.lambdaA) {
      ctx.s = i;
      break;
    }
    p = ctx.ring.mul(p, ctx.g0.lambda);
  }
  if (ctx.s < 0)
    throw std::logic_error("eigenvalue of A not a power of the generator");
  ctx.r = element_order(ctx.ring, ctx.lambdaA, ctx.M, ctx.M_primes);

  // cheap sanity: the embedding must reproduce A as g0^s
  if (mat_pow_mod(ctx.g0.m, ctx.s, N) != mat_mod(A.matrix(), N))
    throw std::logic_error("generator power does not reproduce A mod N");
  if (ctx.ring.norm(ctx.lambdaA) != 1)
    throw std::logic_error("lambda_A does not have norm one");
  return ctx;
}

i64 order_mod(const ToralAutomorphism& A, i64 N) {
  if (N % 2 == 0) throw Error(errc::not_odd, "N must be odd");
  if (!is_prime(N)) throw Error(errc::not_prime, "N must be prime");
  const i64 disc = A.disc();
  if (imod(disc, N) == 0)
    throw Error(errc::divides_discriminant,
                std::to_string(N) + " divides disc = " + std::to_string(disc));
  i64 M = is_quadratic_residue(imod(disc, N), N) ? N - 1 : N + 1;
  const Mat2 id = Mat2::identity();
  for (i64 d : divisors_sorted(M))
    if (mat_pow_mod(A.matrix(), d, N) == id) return d;
  throw std::logic_error("order of A mod N not found below M");
}

i64 q_twisted_matrix(const PrimeContext& ctx, const Vec2& x, const Mat2& g) {
  const i64 N = ctx.N;
  Mat2 gm1{imod(g.a - 1, N), imod(g.b, N), imod(g.c, N), imod(g.d - 1, N)};
  i64 det = imod(gm1.a * gm1.d - gm1.b * gm1.c, N);
  if (det == 0)
    throw Error(errc::identity_element, "q(x;g) undefined for g = I mod N");
  i64 dinv = mod_inverse(det, N);
  Mat2 inv{imod(gm1.d * dinv, N), imod(-gm1.b * dinv, N),
           imod(-gm1.c * dinv, N), imod(gm1.a * dinv, N)};
  Vec2 y = vec_mat_mod({imod(x.x, N), imod(x.y, N)}, inv, N);
  Vec2 z = vec_mat_mod(y, g, N);
  return imod(omega(y, z), N);
}

i64 q_multiplier(const PrimeContext& ctx, const QuadExt& lambda) {
  const auto& R = ctx.ring;
  if (lambda == R.one())
    throw Error(errc::identity_element, "q(x;g) undefined for g = I mod N");
  QuadExt num = R.add(R.one(), lambda);
  QuadExt den = R.mul(R.sub(R.one(), lambda), QuadExt{0, 1});  // (1-l) sqrt(D)
  QuadExt mu = R.mul(num, R.inv(den));
  if (mu.v != 0)
    throw std::logic_error("q multiplier not a base-field scalar");
  return mu.u;
}

i64 q_twisted_closed(const PrimeContext& ctx, const Vec2& x,
                     const QuadExt& lambda) {
  return imod(ctx.q_value_mod(x) * q_multiplier(ctx, lambda), ctx.N);
}

i64 q_twisted(const PrimeContext& ctx, const Vec2& x, const GroupElement& g) {
  i64 via_matrix = q_twisted_matrix(ctx, x, g.m);
  i64 via_formula = q_twisted_closed(ctx, x, g.lambda);
  if (via_matrix != via_formula)
    throw std::logic_error("q(x;g): matrix and closed-form routes disagree");
  return via_matrix;
}

}  // namespace catlab
