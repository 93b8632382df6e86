#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catlab/spectra.hpp"

using namespace catlab;

namespace {
constexpr double pi = std::numbers::pi;

ToralAutomorphism test_matrix() { return validate_automorphism(3, 2, 4, 3); }
}  // namespace

TEST_CASE("projector dimensions at the frozen primes") {
  ToralAutomorphism A = test_matrix();

  // N = 7, r = 3: traces give {3, 2, 2} across phases {0, 1/3, 2/3}
  SpectralData s7 = spectral_projectors(build_context(A, 7));
  std::vector<i64> d7 = s7.dims;
  std::sort(d7.begin(), d7.end(), std::greater<>());
  CHECK(d7 == std::vector<i64>{3, 2, 2});
  CHECK(s7.phases == std::vector<double>{0.0, 1.0 / 3.0, 2.0 / 3.0});

  // N = 5, r = 6: one empty phase class
  SpectralData s5 = spectral_projectors(build_context(A, 5));
  std::vector<i64> d5 = s5.dims;
  std::sort(d5.begin(), d5.end(), std::greater<>());
  CHECK(d5 == std::vector<i64>{1, 1, 1, 1, 1, 0});
}

TEST_CASE("projector algebra") {
  ToralAutomorphism A = test_matrix();
  for (i64 N : {5, 7, 11, 13, 17}) {
    PrimeContext ctx = build_context(A, N);
    SpectralData sd = spectral_projectors(ctx);
    CAPTURE(N);

    i64 total = 0;
    for (i64 d : sd.dims) total += d;
    CHECK(total == N);

    DenseOperator sum = DenseOperator::Zero(N, N);
    for (const auto& P : sd.projectors) sum += P;
    CHECK(max_abs(sum - DenseOperator::Identity(N, N)) <= 1e-10);

    DenseOperator U = propagator(ctx, 1);
    for (i64 j = 0; j < ctx.r; ++j) {
      const auto& P = sd.projectors[j];
      CHECK(max_abs(P * P - P) <= 1e-9 * N);
      CHECK(max_abs(P - P.adjoint()) <= 1e-10);
      // U P_j = e(j/r) P_j
      cplx phase = std::polar(1.0, 2 * pi * sd.phases[j]);
      CHECK(max_abs(U * P - phase * P) <= 1e-10);
      for (i64 k2 = j + 1; k2 < ctx.r; ++k2)
        CHECK(max_abs(P * sd.projectors[k2]) <= 1e-9 * N);
    }

    // dimension pattern: all (N -+ 1)/r except one class off by one
    i64 generic = ctx.M / ctx.r;
    i64 expected_excess = ctx.kind == PrimeKind::split ? 1 : -1;
    int off = 0;
    for (i64 d : sd.dims)
      if (d != generic) {
        ++off;
        CHECK(d == generic + expected_excess);
      }
    CHECK(off <= 1);
  }
}

TEST_CASE("Hecke basis structure") {
  ToralAutomorphism A = test_matrix();
  for (i64 N : {5, 7, 11, 13}) {
    PrimeContext ctx = build_context(A, N);
    HeckeBasis hb = hecke_basis(ctx);
    CAPTURE(N);
    REQUIRE(static_cast<i64>(hb.vectors.size()) == N);

    // ranks per character index lie in {0, 1, 2}
    std::vector<int> per_m(ctx.M, 0);
    for (const auto& hv : hb.vectors) per_m[hv.m]++;
    for (int c : per_m) CHECK(c <= 2);

    // orthonormal under the weighted inner product
    for (size_t i = 0; i < hb.vectors.size(); ++i)
      for (size_t j = i; j < hb.vectors.size(); ++j) {
        cplx g = state_inner(hb.vectors[i].v, hb.vectors[j].v);
        CHECK(std::abs(g - (i == j ? 1.0 : 0.0)) <= 1e-10);
      }

    // eigenvector property for the propagator, at the tagged phase
    DenseOperator U = propagator(ctx, 1);
    for (const auto& hv : hb.vectors) {
      cplx phase = std::polar(1.0, 2 * pi * hv.phase);
      StateVector resid = U * hv.v - phase * hv.v;
      CHECK(std::sqrt(resid.squaredNorm() / N) <= 1e-9);
    }

    // joint eigenvectors of the whole group: check the generator
    DenseOperator Ug = propagator_of(ctx, ctx.g0.m);
    for (const auto& hv : hb.vectors) {
      cplx phase = std::polar(1.0, 2 * pi * double(hv.m) / double(ctx.M));
      StateVector resid = Ug * hv.v - phase * hv.v;
      CHECK(std::sqrt(resid.squaredNorm() / N) <= 1e-9);
    }
  }
}

TEST_CASE("matrix elements") {
  ToralAutomorphism A = test_matrix();
  Observable g = make_observable({{{1, 0}, 1.0}});
  for (i64 N : {7, 11}) {
    PrimeContext ctx = build_context(A, N);
    HeckeBasis hb = hecke_basis(ctx);

    // cocycle elements vanish
    auto elems = matrix_elements(ctx, cocycle(g, A), hb);
    for (const auto& [phase, val] : elems) CHECK(std::abs(val) <= 1e-9);

    // elements sum to the (zero) trace
    auto ge = matrix_elements(ctx, g, hb);
    double sum = 0;
    for (const auto& [phase, val] : ge) sum += val;
    CHECK(std::abs(sum) <= 1e-9);

    // the imaginary parts are fp noise
    DenseOperator op = quantize_observable(ctx, g);
    for (const auto& hv : hb.vectors)
      CHECK(std::abs(state_inner(op * hv.v, hv.v).imag()) <= 1e-10);

    // empty observable
    for (const auto& [phase, val] : matrix_elements(ctx, Observable{}, hb))
      CHECK(val == 0.0);
  }
}

TEST_CASE("projector weights equal Hecke sums per eigenspace") {
  ToralAutomorphism A = test_matrix();
  Observable f = make_observable({{{1, 0}, 1.0}, {{1, 1}, cplx{0.25, 0.5}}});
  for (i64 N : {7, 13}) {
    PrimeContext ctx = build_context(A, N);
    SpectralData sd = spectral_projectors(ctx);
    HeckeBasis hb = hecke_basis(ctx);
    DenseOperator op = quantize_observable(ctx, f);
    auto elems = matrix_elements(ctx, f, hb);
    for (i64 j = 0; j < ctx.r; ++j) {
      double weight = (op * sd.projectors[j]).trace().real();
      double from_basis = 0;
      for (const auto& [phase, val] : elems)
        if (std::abs(phase - sd.phases[j]) < 1e-12) from_basis += val;
      CHECK(std::abs(weight - from_basis) <= 1e-9);
      // reality of the weight
      CHECK(std::abs((op * sd.projectors[j]).trace().imag()) <= 1e-9);
    }
  }
}

TEST_CASE("Hecke variance null cases") {
  ToralAutomorphism A = test_matrix();
  PrimeContext ctx = build_context(A, 11);
  Observable g = make_observable({{{1, 0}, 1.0}});
  CHECK(hecke_variance(ctx, cocycle(g, A)) <= 1e-16);
  CHECK(hecke_variance(ctx, Observable{}) == 0.0);
  CHECK(hecke_variance(ctx, g) >= 0.0);
}
