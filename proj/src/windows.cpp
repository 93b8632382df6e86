#include "catlab/windows.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace catlab {

namespace {

constexpr double pi = std::numbers::pi;
const double sqrt83 = std::sqrt(8.0 / 3.0);
const double sqrt12 = std::sqrt(12.0);

// sin(pi z)/(pi z) with a series branch near z = 0
double sinc(double z) {
  double a = pi * z;
  if (std::abs(z) < 1e-4) {
    double a2 = a * a;
    return 1.0 - a2 / 6.0 + a2 * a2 / 120.0;
  }
  return std::sin(a) / a;
}

double hann_value(double x) {
  if (std::abs(x) > 0.5) return 0.0;
  double c = std::cos(pi * x);
  return sqrt83 * c * c;
}

// sqrt(8/3) sin(pi y) / (2 pi y (1 - y^2)); removable singularities at
// y = 0 and |y| = 1 handled by series branches
double hann_transform(double y) {
  y = std::abs(y);
  if (y < 1e-4) return sqrt83 * 0.5 * sinc(y) / (1.0 - y * y);
  double u = y - 1.0;
  if (std::abs(u) < 1e-4) {
    double a = pi * u;
    double s = 1.0 - a * a / 6.0 + a * a * a * a / 120.0;
    return sqrt83 * s / (2.0 * (1.0 + u) * (2.0 + u));
  }
  return sqrt83 * std::sin(pi * y) / (2.0 * pi * y * (1.0 - y * y));
}

double triangle_value(double x) {
  if (std::abs(x) > 0.5) return 0.0;
  return sqrt12 * (0.5 - std::abs(x));
}

// (sqrt(3)/2) sinc(y/2)^2
double triangle_transform(double y) {
  double s = sinc(y * 0.5);
  return 0.5 * std::sqrt(3.0) * s * s;
}

}  // namespace

double WindowFunction::value(double x) const {
  return kind == WindowKind::hann ? hann_value(x) : triangle_value(x);
}

double WindowFunction::transform(double y) const {
  return kind == WindowKind::hann ? hann_transform(y) : triangle_transform(y);
}

double WindowFunction::tail_bound(double L, double T) const {
  if (kind == WindowKind::hann) {
    // |h^(y)|^2 <= (2/3)(16/9) / (pi^2 y^6) for y >= 2, hence for T >= 2L
    if (T < 2 * L) return std::numeric_limits<double>::infinity();
    return (64.0 / 135.0) * std::pow(L, 6) / (pi * pi * std::pow(T, 5));
  }
  // |h^(y)| <= 2 sqrt(3) / (pi^2 y^2) for all y > 0
  return 8.0 * std::pow(L, 4) / (std::pow(pi, 4) * std::pow(T, 3));
}

i64 WindowFunction::truncation_limit(double L, double eps) const {
  double t;
  if (kind == WindowKind::hann) {
    t = std::pow(64.0 * std::pow(L, 6) / (135.0 * pi * pi * eps), 0.2);
    t = std::max(t, 2.0 * L);
  } else {
    t = std::cbrt(8.0 * std::pow(L, 4) / (std::pow(pi, 4) * eps));
  }
  return static_cast<i64>(std::ceil(t)) + 1;
}

WindowFunction window(WindowKind kind) { return WindowFunction{kind}; }

WindowKind window_kind_from_name(const std::string& name) {
  if (name == "hann") return WindowKind::hann;
  if (name == "triangle") return WindowKind::triangle;
  throw Error(errc::unknown_kind, "unknown window kind: " + name);
}

double h_periodized(const WindowFunction& w, double L, double theta) {
  if (L < 1.0) throw Error(errc::bad_input, "periodization needs L >= 1");
  double half = 0.5 / L;
  i64 lo = static_cast<i64>(std::ceil(theta - half));
  i64 hi = static_cast<i64>(std::floor(theta + half));
  double acc = 0;
  for (i64 k = lo; k <= hi; ++k) acc += w.value(L * (theta - k));
  return acc;
}

WindowSums gamma_progression(const WindowFunction& w, double L, i64 r,
                             double eps) {
  if (!(L < 2.0 * r))
    throw Error(errc::window_too_wide,
                "L must stay below 2 ord(A, N) = " + std::to_string(2 * r));
  if (L < 1.0) throw Error(errc::bad_input, "L must be at least 1");
  WindowSums out;
  out.gamma.assign(r, 0.0);
  double h0 = w.transform(0.0);
  out.h0sq = h0 * h0;
  const i64 T = w.truncation_limit(L, eps);
  for (i64 t = 1; t <= T; ++t) {
    double v = w.transform(double(t) / L);
    v *= v;
    out.gamma[t % r] += v;                  // t
    out.gamma[(r - t % r) % r] += v;        // -t
  }
  out.T0 = out.gamma[0] + out.h0sq;
  return out;
}

namespace {

// Simpson on [0, 1] split at the integrand's kink points; each smooth piece
// gets panels in proportion to its length
template <class F>
double simpson_piecewise(F&& f, const std::vector<double>& breaks,
                         i64 total_panels) {
  double acc = 0;
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    double a = breaks[i], b = breaks[i + 1];
    if (b - a < 1e-14) continue;
    i64 n = std::max<i64>(8, static_cast<i64>(std::ceil((b - a) * total_panels)));
    acc += simpson(f, a, b, n);
  }
  return acc;
}

}  // namespace

std::vector<double> gamma_coeffs(const WindowFunction& w, double L, i64 r) {
  if (!(L < 2.0 * r))
    throw Error(errc::window_too_wide,
                "L must stay below 2 ord(A, N) = " + std::to_string(2 * r));
  i64 panels = 64 * static_cast<i64>(std::ceil(std::max(L, double(r))));

  // h_L is smooth except at the window centers and edges mod 1
  auto edges_into = [&](std::vector<double>& pts, double shift) {
    for (double e : {-0.5 / L, 0.0, 0.5 / L}) {
      double x = e - shift;
      x -= std::floor(x);
      pts.push_back(x);
    }
  };

  std::vector<double> out(r);
  for (i64 j = 0; j < r; ++j) {
    double shift = double(j) / double(r);
    std::vector<double> breaks{0.0, 1.0};
    edges_into(breaks, 0.0);
    edges_into(breaks, shift);
    std::sort(breaks.begin(), breaks.end());
    auto integrand = [&](double th) {
      return h_periodized(w, L, th) * h_periodized(w, L, th + shift);
    };
    out[j] = (L * L / double(r)) * simpson_piecewise(integrand, breaks, panels);
  }
  return out;
}

}  // namespace catlab
