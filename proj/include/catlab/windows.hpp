// Window functions h with closed-form transforms, the periodization h_L,
// and the arithmetic-progression sums Gamma(tau) with certified tail
// truncation.
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "catlab/arithmetic.hpp"

namespace catlab {

enum class WindowKind { hann, triangle };

// h is even, non-negative, supported in [-1/2, 1/2], with integral of h^2
// equal to 1. transform(y) is the Fourier transform of h, real and even.
struct WindowFunction {
  WindowKind kind = WindowKind::hann;

  double value(double x) const;      // h(x)
  double transform(double y) const;  // \int h(x) e(-xy) dx

  // certified upper bound on sum_{|t| > T} transform(t/L)^2
  double tail_bound(double L, double T) const;
  // smallest admissible T with tail_bound(L, T) <= eps
  i64 truncation_limit(double L, double eps) const;
};

WindowFunction window(WindowKind kind);
WindowKind window_kind_from_name(const std::string& name);  // throws unknown_kind

// h_L(theta) = sum_k h(L (theta - k)); at most two terms contribute for L >= 1
double h_periodized(const WindowFunction& w, double L, double theta);

// Gamma(tau) = sum over t = tau mod r, t != 0, of transform(t/L)^2,
// truncated with tail <= eps. T0 = sum over all j of transform(j r / L)^2
// (the j = 0 term included).
struct WindowSums {
  std::vector<double> gamma;  // indexed by tau in [0, r)
  double T0 = 0;
  double h0sq = 0;  // transform(0)^2
};

WindowSums gamma_progression(const WindowFunction& w, double L, i64 r,
                             double eps = 1e-10);

// gamma(j) = (L^2/r) \int_0^1 h_L(theta) h_L(theta + j/r) dtheta by composite
// Simpson quadrature; non-negative, and sum_j gamma(j) e(j tau / r)
// reconstructs the progression sums (with the t = 0 term folded into the
// tau = 0 class).
std::vector<double> gamma_coeffs(const WindowFunction& w, double L, i64 r);

// composite Simpson on [a, b] with an even number of panels
template <class F>
double simpson(F&& f, double a, double b, i64 panels) {
  if (panels < 2) panels = 2;
  if (panels % 2) ++panels;
  const double h = (b - a) / double(panels);
  double acc = f(a) + f(b);
  for (i64 i = 1; i < panels; ++i) acc += f(a + h * i) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

// doubles the panel count until two successive Simpson values agree to tol
template <class F>
double adaptive_simpson(F&& f, double a, double b, double tol,
                        i64 initial_panels = 64) {
  i64 n = initial_panels;
  double prev = simpson(f, a, b, n);
  for (int iter = 0; iter < 24; ++iter) {
    n *= 2;
    double cur = simpson(f, a, b, n);
    if (std::abs(cur - prev) <= tol * (1.0 + std::abs(cur))) return cur;
    prev = cur;
  }
  return prev;
}

}  // namespace catlab
