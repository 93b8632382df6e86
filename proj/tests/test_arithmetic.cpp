#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "catlab/arithmetic.hpp"

using namespace catlab;

namespace {

ToralAutomorphism test_matrix() { return validate_automorphism(3, 2, 4, 3); }

// independent oracle: order of A mod N by repeated multiplication
i64 order_by_multiplication(const ToralAutomorphism& A, i64 N) {
  Mat2 p = mat_mod(A.matrix(), N);
  i64 t = 1;
  while (p != Mat2::identity()) {
    p = mat_mul_mod(p, A.matrix(), N);
    ++t;
    REQUIRE(t <= N + 2);
  }
  return t;
}

// independent oracle: quadratic residues by enumerating squares
bool residue_by_enumeration(i64 a, i64 N) {
  for (i64 x = 0; x < N; ++x)
    if ((x * x) % N == imod(a, N)) return true;
  return false;
}

}  // namespace

TEST_CASE("automorphism validation") {
  ToralAutomorphism A = test_matrix();
  CHECK(A.trace() == 6);
  CHECK(A.disc() == 32);

  CHECK_THROWS_AS(validate_automorphism(1, 1, 0, 1), Error);  // trace 2
  CHECK_THROWS_AS(validate_automorphism(2, 1, 3, 2), Error);  // parity
  CHECK_THROWS_AS(validate_automorphism(3, 2, 4, 4), Error);  // det != 1
  try {
    validate_automorphism(1, 1, 0, 1);
  } catch (const Error& e) {
    CHECK(e.code == errc::not_hyperbolic);
  }
  try {
    validate_automorphism(2, 1, 3, 2);
  } catch (const Error& e) {
    CHECK(e.code == errc::bad_parity);
  }
}

TEST_CASE("invariant quadratic form") {
  ToralAutomorphism A = test_matrix();
  QuadraticForm Q = quadratic_form(A);
  CHECK(Q.alpha == 2);
  CHECK(Q.beta == 0);
  CHECK(Q.gamma == -4);
  CHECK(Q.disc == 32);
  CHECK(Q({1, 0}) == 2);
  CHECK(Q({1, 1}) == -2);
  CHECK(Q({3, 2}) == 2);  // image of (1,0)

  // invariance over the integers on a grid
  for (i64 x = -5; x <= 5; ++x)
    for (i64 y = -5; y <= 5; ++y) {
      Vec2 k{x, y};
      CHECK(Q(vec_mat(k, A.matrix())) == Q(k));
    }
}

TEST_CASE("context classification against enumeration oracles") {
  ToralAutomorphism A = test_matrix();

  // N = 7: 32 = 4 mod 7 is a square, so split; A^3 = I mod 7
  CHECK(residue_by_enumeration(32, 7));
  CHECK(order_by_multiplication(A, 7) == 3);
  PrimeContext c7 = build_context(A, 7);
  CHECK(c7.kind == PrimeKind::split);
  CHECK(c7.M == 6);
  CHECK(c7.r == 3);

  // N = 5: 32 = 2 mod 5 is not a square, so inert; A^6 = I mod 5
  CHECK_FALSE(residue_by_enumeration(32, 5));
  CHECK(order_by_multiplication(A, 5) == 6);
  PrimeContext c5 = build_context(A, 5);
  CHECK(c5.kind == PrimeKind::inert);
  CHECK(c5.M == 6);
  CHECK(c5.r == 6);

  CHECK_THROWS_AS(build_context(A, 2), Error);
  CHECK_THROWS_AS(build_context(A, 9), Error);
  try {
    build_context(A, 9);
  } catch (const Error& e) {
    CHECK(e.code == errc::not_prime);
  }

  // disc = 96 = 2^5 * 3 has an odd prime factor
  ToralAutomorphism B = validate_automorphism(5, 2, 12, 5);
  CHECK(B.disc() == 96);
  try {
    build_context(B, 3);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code == errc::divides_discriminant);
  }
}

TEST_CASE("order_mod equals the multiplication oracle and divides M") {
  ToralAutomorphism A = test_matrix();
  CHECK(order_mod(A, 7) == 3);
  CHECK(order_mod(A, 5) == 6);
  for (i64 N = 3; N <= 101; N += 2) {
    if (!is_prime(N)) continue;
    i64 r = order_mod(A, N);
    CHECK(r == order_by_multiplication(A, N));
    i64 M = residue_by_enumeration(32, N) ? N - 1 : N + 1;
    CHECK(M % r == 0);
  }
}

TEST_CASE("quadratic extension ring laws") {
  QuadExtRing R(13, 6);
  for (i64 u1 = 0; u1 < 13; u1 += 3)
    for (i64 v1 = 0; v1 < 13; v1 += 4)
      for (i64 u2 = 1; u2 < 13; u2 += 5)
        for (i64 v2 = 0; v2 < 13; v2 += 3) {
          QuadExt a{u1, v1}, b{u2, v2};
          // norm multiplicativity
          CHECK(R.norm(R.mul(a, b)) == imod(R.norm(a) * R.norm(b), 13));
          // commutativity
          CHECK(R.mul(a, b) == R.mul(b, a));
          if (R.norm(a) != 0) {
            CHECK(R.mul(a, R.inv(a)) == R.one());
          }
        }
  // power route
  QuadExt x{2, 5};
  QuadExt p = R.one();
  for (int e = 0; e < 8; ++e) {
    CHECK(R.pow(x, e) == p);
    p = R.mul(p, x);
  }
}

TEST_CASE("generator structure of the centralizer") {
  ToralAutomorphism A = test_matrix();
  for (i64 N : {5, 7, 11, 13}) {
    PrimeContext ctx = build_context(A, N);
    CAPTURE(N);

    CHECK(ctx.ring.norm(ctx.g0.lambda) == 1);
    CHECK(ctx.ring.norm(ctx.lambdaA) == 1);

    // powers of g0 are distinct, exhaust the group, and match the embedding
    std::set<std::pair<i64, i64>> seen;
    QuadExt lam = ctx.ring.one();
    Mat2 gm = Mat2::identity();
    for (i64 i = 0; i < ctx.M; ++i) {
      CHECK(seen.insert({lam.u, lam.v}).second);
      CHECK(ctx.embed(lam).m == gm);
      // every element commutes with A and has determinant one
      Mat2 am = mat_mod(A.matrix(), N);
      CHECK(mat_mul_mod(gm, am, N) == mat_mul_mod(am, gm, N));
      CHECK(imod(gm.a * gm.d - gm.b * gm.c, N) == 1);
      // g != I implies g - I invertible
      if (i != 0)
        CHECK(imod((gm.a - 1) * (gm.d - 1) - gm.b * gm.c, N) != 0);
      lam = ctx.ring.mul(lam, ctx.g0.lambda);
      gm = mat_mul_mod(gm, ctx.g0.m, N);
    }
    CHECK(lam == ctx.ring.one());

    // A = g0^s and ord(A, N) behaves
    CHECK(mat_pow_mod(ctx.g0.m, ctx.s, N) == mat_mod(A.matrix(), N));
    CHECK(ctx.a_power_mod(ctx.r, N) == Mat2::identity());
    for (i64 j = 1; j < ctx.r; ++j)
      CHECK(ctx.a_power_mod(j, N) != Mat2::identity());
    CHECK(ctx.M % ctx.r == 0);

    // lambda_A is the (+) root of x^2 - tr(A) x + 1
    QuadExt sq = ctx.ring.mul(ctx.lambdaA, ctx.lambdaA);
    QuadExt expect = ctx.ring.sub(
        ctx.ring.mul(ctx.ring.make(A.trace(), 0), ctx.lambdaA), ctx.ring.one());
    CHECK(sq == expect);
  }
}

TEST_CASE("twisted form: frozen value and route agreement") {
  ToralAutomorphism A = test_matrix();
  PrimeContext c7 = build_context(A, 7);

  // direct 2x2 evaluation mod 7 gives q((1,0); A) = 3:
  // (A-I)^{-1} = [[3,4],[1,3]], y = (3,4), yA = (4,4), omega = 12-16 = 3
  GroupElement gA = c7.embed(c7.lambdaA);
  CHECK(mat_mod(gA.m, 7) == mat_mod(A.matrix(), 7));
  CHECK(q_twisted(c7, {1, 0}, gA) == 3);

  for (i64 N : {5, 7, 11, 13}) {
    PrimeContext ctx = build_context(A, N);
    QuadExt lam = ctx.ring.one();
    for (i64 i = 1; i < ctx.M; ++i) {
      lam = ctx.ring.mul(lam, ctx.g0.lambda);
      GroupElement g = ctx.embed(lam);
      bool minus_id = (lam == ctx.ring.make(-1, 0));
      for (i64 x1 = 0; x1 < 5; ++x1)
        for (i64 x2 = 0; x2 < 5; ++x2) {
          Vec2 x{x1, x2};
          i64 q = q_twisted(ctx, x, g);  // matrix route checked inside
          if (minus_id) CHECK(q == 0);
          // A-invariance
          CHECK(q_twisted(ctx, vec_mat(x, A.matrix()), g) == q);
          // nonzero multiple of Q away from +-I
          if (!minus_id && ctx.q_value_mod(x) != 0) {
            CHECK(q != 0);
            i64 ratio = imod(q * mod_inverse(ctx.q_value_mod(x), N), N);
            CHECK(ratio == q_multiplier(ctx, lam));
          }
        }
    }
    // identity rejected
    CHECK_THROWS_AS(q_twisted(ctx, {1, 0}, ctx.embed(ctx.ring.one())), Error);
  }
}
