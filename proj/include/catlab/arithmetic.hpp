// Exact integer / mod-N / quadratic-extension arithmetic for hyperbolic
// toral automorphisms: the invariant quadratic form Q, prime classification
// (split/inert), the centralizer group C_A(N) with its generator and
// eigenvalue map, and the twisted forms q(x;g) that drive all trace phases.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace catlab {

using i64 = long long;

enum class errc {
  not_unimodular,
  not_hyperbolic,
  bad_parity,
  not_prime,
  not_odd,
  divides_discriminant,
  identity_element,
  support_too_large,
  identity_power,
  projector_defect,
  rank_mismatch,
  unknown_kind,
  window_too_wide,
  nonzero_mean,
  conflicting_coefficient,
  degenerate_lambda,
  bad_input,
};

struct Error : std::runtime_error {
  errc code;
  Error(errc c, const std::string& what) : std::runtime_error(what), code(c) {}
};

// ---------------------------------------------------------------------------
// small integer helpers

// representative of a mod m in [0, m)
i64 imod(i64 a, i64 m);
// inverse of a mod m by extended Euclid; throws if gcd(a, m) != 1
i64 mod_inverse(i64 a, i64 m);
i64 mod_pow(i64 base, i64 exp, i64 m);
// deterministic trial division
bool is_prime(i64 n);
std::vector<i64> prime_factors(i64 n);   // distinct primes
std::vector<i64> divisors_sorted(i64 n);

// ---------------------------------------------------------------------------
// 2x2 integer matrices acting on row vectors: x |-> x*M

struct Vec2 {
  i64 x = 0, y = 0;
  bool operator==(const Vec2&) const = default;
};

struct Mat2 {
  i64 a = 1, b = 0, c = 0, d = 1;  // [[a, b], [c, d]]
  bool operator==(const Mat2&) const = default;
  static Mat2 identity() { return {}; }
};

Vec2 vec_mat(const Vec2& v, const Mat2& m);               // exact integers
Vec2 vec_mat_mod(const Vec2& v, const Mat2& m, i64 mod);
Mat2 mat_mul_mod(const Mat2& x, const Mat2& y, i64 mod);
Mat2 mat_mod(const Mat2& m, i64 mod);
Mat2 mat_pow_mod(Mat2 base, i64 exp, i64 mod);            // exp >= 0
i64 omega(const Vec2& x, const Vec2& y);                  // x1*y2 - x2*y1

// ---------------------------------------------------------------------------
// domain types

struct ToralAutomorphism {
  i64 a = 0, b = 0, c = 0, d = 0;
  i64 trace() const { return a + d; }
  i64 disc() const { return trace() * trace() - 4; }
  Mat2 matrix() const { return {a, b, c, d}; }
  Mat2 inverse() const { return {d, -b, -c, a}; }  // unimodular adjugate
};

// checks det = 1, |trace| > 2 and A = I mod 2
ToralAutomorphism validate_automorphism(i64 a, i64 b, i64 c, i64 d);

// Q(x) = omega(x, xA) = alpha x1^2 + beta x1 x2 + gamma x2^2
struct QuadraticForm {
  i64 alpha = 0, beta = 0, gamma = 0;
  i64 disc = 0;  // beta^2 - 4 alpha gamma = (tr A)^2 - 4
  i64 operator()(const Vec2& k) const {
    return alpha * k.x * k.x + beta * k.x * k.y + gamma * k.y * k.y;
  }
};

QuadraticForm quadratic_form(const ToralAutomorphism& A);

// element u + v*sqrt(D) of (Z/N)[X]/(X^2 - D)
struct QuadExt {
  i64 u = 0, v = 0;
  bool operator==(const QuadExt&) const = default;
};

class QuadExtRing {
 public:
  QuadExtRing() = default;
  QuadExtRing(i64 N, i64 D) : n_(N), d_(imod(D, N)) {}

  i64 modulus() const { return n_; }
  i64 d() const { return d_; }

  QuadExt make(i64 u, i64 v) const { return {imod(u, n_), imod(v, n_)}; }
  QuadExt one() const { return {1, 0}; }
  QuadExt add(const QuadExt& x, const QuadExt& y) const;
  QuadExt sub(const QuadExt& x, const QuadExt& y) const;
  QuadExt mul(const QuadExt& x, const QuadExt& y) const;
  QuadExt conj(const QuadExt& x) const { return {x.u, imod(-x.v, n_)}; }
  i64 norm(const QuadExt& x) const;  // u^2 - D v^2 mod N
  QuadExt inv(const QuadExt& x) const;  // requires norm(x) invertible
  QuadExt pow(QuadExt base, i64 exp) const;  // exp >= 0

 private:
  i64 n_ = 0, d_ = 0;
};

enum class PrimeKind { split, inert };

inline const char* kind_name(PrimeKind k) {
  return k == PrimeKind::split ? "split" : "inert";
}

// element of the centralizer C_A(N) together with its eigenvalue on the
// "+" eigenvector of A
struct GroupElement {
  Mat2 m;
  QuadExt lambda;
};

// Everything arithmetic attached to one prime N: classification, group
// order M = |C_A(N)|, ord(A, N), a generator g0 with A = g0^s, and the
// eigenvalue lambda_A = (tr A + sqrt(D))/2.
struct PrimeContext {
  ToralAutomorphism A;
  QuadraticForm Q;
  i64 N = 0;
  PrimeKind kind = PrimeKind::split;
  i64 D = 0;        // disc(Q) mod N
  i64 M = 0;        // |C_A(N)| = N -+ 1
  i64 r = 0;        // ord(A, N)
  i64 s = 0;        // g0^s = A mod N
  i64 two_inv = 0;  // inverse of 2 mod N
  GroupElement g0;
  QuadExt lambdaA;
  Mat2 W;                // 2A - (tr A) I mod N; W^2 = D I, the sqrt(D) matrix
  i64 sqrtD = -1;        // a square root of D mod N (split only)
  QuadExtRing ring;
  std::vector<i64> M_primes;  // distinct prime factors of M

  // lambda_A^t for any integer t (negative powers via conjugation, norm 1)
  QuadExt lambda_power(i64 t) const;
  // A^t mod `mod` for any integer t
  Mat2 a_power_mod(i64 t, i64 mod) const;
  // the embedding u + v sqrt(D) |-> u I + v W of norm-one elements into C_A(N)
  GroupElement embed(const QuadExt& lambda) const;
  i64 q_value_mod(const Vec2& x) const { return imod(Q(x), N); }
};

PrimeContext build_context(const ToralAutomorphism& A, i64 N);

// ord(A, N) through the matrix route: enumerate divisors of M and test A^d
// by fast exponentiation. Independent of the eigenvalue route used by
// build_context.
i64 order_mod(const ToralAutomorphism& A, i64 N);

// order of a norm-one element in the cyclic group of order M
i64 element_order(const QuadExtRing& ring, const QuadExt& x, i64 M,
                  const std::vector<i64>& M_primes);

// Legendre-style residue test via Euler's criterion; a must not be 0 mod N
bool is_quadratic_residue(i64 a, i64 N);

// Legendre symbol (a | N) in {-1, 0, 1}
int legendre_symbol(i64 a, i64 N);

// table t with t[x*x mod N] = min(x, N-x); -1 for non-residues
std::vector<i64> sqrt_table(i64 N);

// ---------------------------------------------------------------------------
// twisted quadratic forms

// q(x;g) = omega(x (g-1)^{-1}, x (g-1)^{-1} g) mod N, straight from the
// matrix definition. Throws identity_element when g = I mod N.
i64 q_twisted_matrix(const PrimeContext& ctx, const Vec2& x, const Mat2& g);

// scalar mu(g) with q(x;g) = Q(x) mu(g):
// mu = (1 + lambda) / ((1 - lambda) sqrt(D)), an element of Z/N.
// Throws identity_element when lambda = 1.
i64 q_multiplier(const PrimeContext& ctx, const QuadExt& lambda);

// closed form via q_multiplier
i64 q_twisted_closed(const PrimeContext& ctx, const Vec2& x,
                     const QuadExt& lambda);

// evaluates both routes and insists they agree
i64 q_twisted(const PrimeContext& ctx, const Vec2& x, const GroupElement& g);

}  // namespace catlab
