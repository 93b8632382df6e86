// Complete and incomplete character sums over C_A(N): the abstract sum
// E(chi) over the group, its split and inert parametrized forms, the
// progression sums E_A(j), and the scan that checks |E(chi)| <= 2 sqrt(N)
// exhaustively.
//
// The additive character is pinned once for all three routes: the twisted
// forms satisfy q(k;y) - q(k';y) = (Q(k) - Q(k')) mu(y), so psi(z) =
// e(2bar delta z / N) with the scalar gap delta absorbing Q(k) - Q(k') and
// the eigenvalue normalization. Route agreement is the test of the wiring.
#pragma once

#include <vector>

#include "catlab/observables.hpp"

namespace catlab {

// character chi_m of the cyclic group C_A(N) with chi_m(g0^i) = e(m i / M)
struct MultiplicativeCharacter {
  i64 m = 0;
  i64 M = 0;
};

// psi(x) = e(a x / N); for inert contexts the parametrization constants
// t0 (lambda_A = (t0 - sqrt(D)) / (t0 + sqrt(D))) and c = (D - t0^2)/(4 t0 D)
// are kept alongside
struct AdditiveCharacter {
  i64 a = 0;   // nonzero multiplier mod N
  i64 N = 0;
  i64 t0 = 0;  // inert only
  i64 c = 0;   // inert only
};

// the wired psi for a frequency pair (see header note); throws
// degenerate_lambda if lambda_A = +-1
AdditiveCharacter additive_character(const PrimeContext& ctx, const Vec2& k,
                                     const Vec2& kp);

// E(chi) = sum_{1 != y in C_A(N)} chi(y) e(2bar (q(k;y) - q(k';y)) / N),
// brute force over the M - 1 nontrivial group elements
cplx complete_sum(const PrimeContext& ctx, const Vec2& k, const Vec2& kp,
                  i64 m);

// split parametrization by the numeric eigenvalue x in (Z/N)^*:
// E(chi) = sum_{x != 0, 1} chi(x) psi((1+x)/(1-x))
cplx split_form(const PrimeContext& ctx, const Vec2& k, const Vec2& kp, i64 m);

// inert parametrization x = (t - sqrt(D)) / (t + sqrt(D)), t over Z/N:
// E(chi) = sum_t chi(x(t)) psi(c t)
cplx inert_form(const PrimeContext& ctx, const Vec2& k, const Vec2& kp, i64 m);

// E_A(j) = sum_{t != 0 mod r} e(j t / r) e(2bar (q(k;A^t) - q(k';A^t)) / N)
cplx incomplete_sum(const PrimeContext& ctx, i64 j, const Vec2& k,
                    const Vec2& kp);

// the same quantity assembled from complete sums:
// (r / M) sum over characters theta trivial on A of E(chi_1^j theta)
cplx completion_average(const PrimeContext& ctx, i64 j, const Vec2& k,
                        const Vec2& kp);

// index m1 of the character chi_1 with chi_1(A^tau) = e(tau / r), i.e. the
// solution of m1 s = M / r (mod M)
i64 chi1_index(const PrimeContext& ctx);

struct CharScanRow {
  i64 N = 0;
  PrimeKind kind = PrimeKind::split;
  i64 m = 0;
  double abs_E = 0;   // max |E(chi_m)| over the frequency panel
  double bound = 0;   // 2 sqrt(N)
  double slack = 0;   // bound - abs_E
};

using FrequencyPanel = std::vector<std::pair<Vec2, Vec2>>;

// the fixed panel used by the scans; pairs all have distinct Q values
FrequencyPanel default_panel();

// every character of every valid odd prime N <= nmax, panel pairs restricted
// to Q(k) != Q(k') mod N
std::vector<CharScanRow> charsum_scan(const ToralAutomorphism& A, i64 nmax,
                                      const FrequencyPanel& panel,
                                      int jobs = 1);

}  // namespace catlab
