#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catlab/quantization.hpp"

using namespace catlab;

namespace {
constexpr double pi = std::numbers::pi;

ToralAutomorphism test_matrix() { return validate_automorphism(3, 2, 4, 3); }

Observable five_frequency() {
  return make_observable({{{1, 0}, 1.0},
                          {{1, 1}, cplx{0.75, -0.5}},
                          {{1, -1}, cplx{-0.25, 1.0}},
                          {{3, 2}, cplx{0.0, 0.5}},
                          {{3, -2}, cplx{-0.6, 0.1}}});
}
}  // namespace

TEST_CASE("translation operators") {
  const i64 N = 7;
  CHECK(max_abs(translation_op(N, {0, 0}) -
                DenseOperator::Identity(N, N)) == 0.0);

  DenseOperator T01 = translation_op(N, {0, 1});
  for (i64 q = 0; q < N; ++q) {
    CHECK(std::abs(T01(q, q) - std::polar(1.0, 2 * pi * double(q) / N)) <=
          1e-14);
  }

  for (i64 N2 : {5, 7, 101}) {
    for (Vec2 n : {Vec2{1, 0}, Vec2{2, 3}, Vec2{-1, 4}, Vec2{3, -5}}) {
      DenseOperator T = translation_op(N2, n);
      CHECK(unitarity_defect(T) <= 1e-12 * N2);
      // adjoint is the reversed translation
      CHECK(max_abs(T.adjoint() - translation_op(N2, {-n.x, -n.y})) <= 1e-13);
    }
  }
}

TEST_CASE("trace pairing of translations") {
  const i64 N = 7;
  // tr T(n) T(m) = (-1)^{n1 n2 + m1 m2} N when n = -m mod N, else 0
  for (Vec2 n : {Vec2{1, 0}, Vec2{1, 1}, Vec2{2, 3}, Vec2{3, 5}}) {
    for (Vec2 shift : {Vec2{0, 0}, Vec2{N, 0}, Vec2{0, N}, Vec2{N, N}}) {
      Vec2 m{-n.x + shift.x, -n.y + shift.y};
      cplx tr = (translation_op(N, n) * translation_op(N, m)).trace();
      double sgn = (imod(n.x * n.y, 2) + imod(m.x * m.y, 2)) % 2 ? -1.0 : 1.0;
      CHECK(std::abs(tr - sgn * double(N)) <= 1e-11);
    }
    // mismatched pair has vanishing trace
    cplx tr0 =
        (translation_op(N, n) * translation_op(N, {-n.x + 1, -n.y})).trace();
    CHECK(std::abs(tr0) <= 1e-11);
  }
}

TEST_CASE("quantized observables") {
  ToralAutomorphism A = test_matrix();
  PrimeContext ctx = build_context(A, 7);

  Observable f = make_observable({{{1, 0}, 1.0}});
  DenseOperator op = quantize_observable(ctx, f);
  DenseOperator expect =
      translation_op(7, {1, 0}) + translation_op(7, {-1, 0});
  CHECK(max_abs(op - expect) <= 1e-14);
  CHECK(max_abs(op - op.adjoint()) <= 1e-14);  // self-adjoint

  CHECK(max_abs(quantize_observable(ctx, Observable{})) == 0.0);

  // band-limited zero-mean observables are exactly traceless
  DenseOperator mixed = quantize_observable(ctx, five_frequency());
  CHECK(std::abs(mixed.trace()) == 0.0);
  CHECK(max_abs(mixed - mixed.adjoint()) <= 1e-14);

  // support policy violation surfaces here
  PrimeContext c5 = build_context(A, 5);
  CHECK_THROWS_AS(quantize_observable(c5, make_observable({{{2, 1}, 1.0}})),
                  Error);
}

TEST_CASE("propagator unitarity and group law") {
  ToralAutomorphism A = test_matrix();
  for (i64 N : {5, 7, 11, 13}) {
    PrimeContext ctx = build_context(A, N);
    DenseOperator U = propagator(ctx, 1);
    CHECK(unitarity_defect(U) <= 1e-12 * N);

    // power route against the closed form for every exponent
    DenseOperator ut = U;
    for (i64 t = 2; t < ctx.r; ++t) {
      ut = ut * U;
      CHECK(max_abs(ut - propagator(ctx, t)) <= 1e-10);
    }
    // wrap to the identity at t = r
    ut = ut * U;
    CHECK(max_abs(ut - DenseOperator::Identity(N, N)) <= 1e-10);
    CHECK(max_abs(propagator(ctx, ctx.r) - DenseOperator::Identity(N, N)) ==
          0.0);
    CHECK(max_abs(propagator(ctx, 0) - DenseOperator::Identity(N, N)) == 0.0);

    // negative exponents are inverses
    CHECK(max_abs(propagator(ctx, -1) - U.adjoint()) <= 1e-11);

    // composition samples including wraps
    for (auto [t1, t2] : {std::pair<i64, i64>{1, 1},
                          {2, ctx.r - 1},
                          {ctx.r - 1, ctx.r - 1},
                          {3, ctx.r - 3}}) {
      DenseOperator lhs = propagator(ctx, t1) * propagator(ctx, t2);
      CHECK(max_abs(lhs - propagator(ctx, t1 + t2)) <= 1e-10);
    }
  }
  // frozen spec case: r = 3 at N = 7, so U^3 = I
  PrimeContext c7 = build_context(A, 7);
  DenseOperator U = propagator(c7, 1);
  CHECK(max_abs(U * U * U - DenseOperator::Identity(7, 7)) <= 1e-12);
}

TEST_CASE("Egorov conjugation") {
  ToralAutomorphism A = test_matrix();
  PrimeContext c7 = build_context(A, 7);

  // row action: (1,0) A = (3,2)
  DenseOperator U = propagator(c7, 1);
  DenseOperator conj = U.adjoint() * translation_op(7, {1, 0}) * U;
  CHECK(max_abs(conj - translation_op(7, {3, 2})) <= 1e-12);

  CHECK(egorov_check(c7, {0, 0}) <= 1e-15);
  for (i64 n1 = -3; n1 <= 3; ++n1)
    for (i64 n2 = -3; n2 <= 3; ++n2)
      CHECK(egorov_check(c7, {n1, n2}) <= 1e-12);
}

TEST_CASE("closed-form trace against the dense oracle") {
  ToralAutomorphism A = test_matrix();
  Observable f = five_frequency();
  for (i64 N : {5, 7, 11, 13}) {
    PrimeContext ctx = build_context(A, N);
    DenseOperator op = quantize_observable(ctx, f);
    DenseOperator U = propagator(ctx, 1);
    DenseOperator ut = U;
    for (i64 t = 1; t < ctx.r; ++t) {
      cplx dense = (op * ut).trace();
      cplx fast = trace_kelmer(ctx, f, t);
      CHECK(std::abs(dense - fast) <= 1e-10 * N);
      ut = ut * U;
    }
    // table route agrees entrywise
    auto table = kelmer_trace_table(ctx, f);
    CHECK(table[0] == cplx{0.0, 0.0});
    for (i64 t = 1; t < ctx.r; ++t)
      CHECK(std::abs(table[t] - trace_kelmer(ctx, f, t)) <= 1e-13);
  }

  // two-frequency support: modulus 2 phases, never real in general
  PrimeContext c7 = build_context(A, 7);
  Observable cosf = make_observable({{{1, 0}, 1.0}});
  for (i64 t = 1; t < c7.r; ++t) {
    cplx tr = trace_kelmer(c7, cosf, t);
    CHECK(std::abs(std::abs(tr) - 2.0) <= 1e-12);
    // the phase is e(2bar q((1,0); A^{-t}) / 7) doubled, with the
    // representation sign in front
    GroupElement at = c7.embed(c7.lambda_power(-t));
    i64 q = q_twisted(c7, {1, 0}, at);
    double s = weil_sign(imod(at.m.a + at.m.d, 7), 7);
    cplx expect = 2.0 * s *
                  std::polar(1.0, 2 * pi * double(imod(c7.two_inv * q, 7)) / 7.0);
    CHECK(std::abs(tr - expect) <= 1e-12);
  }

  // cocycle traces cancel exactly, term against term
  Observable cf = cocycle(cosf, A);
  for (i64 t = 1; t < c7.r; ++t)
    CHECK(std::abs(trace_kelmer(c7, cf, t)) == 0.0);

  CHECK_THROWS_AS(trace_kelmer(c7, cosf, 0), Error);
  CHECK_THROWS_AS(trace_kelmer(c7, cosf, c7.r), Error);
  try {
    trace_kelmer(c7, cosf, 2 * c7.r);
  } catch (const Error& e) {
    CHECK(e.code == errc::identity_power);
  }
}
