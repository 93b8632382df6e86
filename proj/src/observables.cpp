#include "catlab/observables.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <unordered_map>

#include <json.hpp>

namespace catlab {

namespace {

using CoeffMap = std::map<std::pair<i64, i64>, cplx>;

Observable from_map(const CoeffMap& m) {
  Observable f;
  for (const auto& [k, c] : m) {
    if (std::abs(c) == 0.0) continue;
    f.coeffs.push_back({Vec2{k.first, k.second}, c});
    f.support_bound =
        std::max({f.support_bound, std::abs(k.first), std::abs(k.second)});
  }
  return f;
}

int parity_sign(const Vec2& k) { return imod(k.x * k.y, 2) == 0 ? 1 : -1; }

}  // namespace

cplx Observable::coeff(const Vec2& k) const {
  for (const auto& [kk, c] : coeffs)
    if (kk == k) return c;
  return {0.0, 0.0};
}

Observable make_observable(const std::vector<std::pair<Vec2, cplx>>& pairs) {
  CoeffMap m;
  for (const auto& [k, c] : pairs) {
    if (k.x == 0 && k.y == 0) {
      if (std::abs(c) != 0.0)
        throw Error(errc::nonzero_mean, "coefficient at k = 0 must vanish");
      continue;
    }
    auto key = std::make_pair(k.x, k.y);
    auto it = m.find(key);
    if (it != m.end() && std::abs(it->second - c) > 1e-12 * (1 + std::abs(c)))
      throw Error(errc::conflicting_coefficient,
                  "repeated frequency with different value");
    m[key] = c;
  }
  // fill conjugates, checking consistency where both were given
  CoeffMap full = m;
  for (const auto& [k, c] : m) {
    auto neg = std::make_pair(-k.first, -k.second);
    auto it = m.find(neg);
    if (it == m.end()) {
      full[neg] = std::conj(c);
    } else if (std::abs(it->second - std::conj(c)) >
               1e-12 * (1 + std::abs(c))) {
      throw Error(errc::conflicting_coefficient,
                  "coefficients at k and -k are not conjugate");
    }
  }
  return from_map(full);
}

Observable cocycle(const Observable& g, const ToralAutomorphism& A) {
  CoeffMap m;
  for (const auto& [k, c] : g.coeffs) {
    auto key = std::make_pair(k.x, k.y);
    Vec2 ka = vec_mat(k, A.matrix());
    auto keyA = std::make_pair(ka.x, ka.y);
    m[key] += c;
    m[keyA] -= c;
  }
  return from_map(m);
}

Observable compose_with(const Observable& f, const ToralAutomorphism& A) {
  CoeffMap m;
  for (const auto& [k, c] : f.coeffs) {
    Vec2 ka = vec_mat(k, A.matrix());
    m[std::make_pair(ka.x, ka.y)] += c;
  }
  return from_map(m);
}

double coeff_abs_sum(const Observable& f) {
  double s = 0;
  for (const auto& [k, c] : f.coeffs) s += std::abs(c);
  return s;
}

std::string describe(const Observable& f) {
  if (f.empty()) return "0";
  std::string out;
  char buf[96];
  for (const auto& [k, c] : f.coeffs) {
    if (!out.empty()) out += "; ";
    if (c.imag() == 0.0)
      std::snprintf(buf, sizeof buf, "(%lld,%lld):%g", k.x, k.y, c.real());
    else
      std::snprintf(buf, sizeof buf, "(%lld,%lld):%g%+gi", k.x, k.y, c.real(),
                    c.imag());
    out += buf;
  }
  return out;
}

double c_arith(const ToralAutomorphism& A, const Observable& f) {
  QuadraticForm Q = quadratic_form(A);
  std::unordered_map<i64, std::vector<size_t>> classes;
  for (size_t i = 0; i < f.coeffs.size(); ++i)
    classes[Q(f.coeffs[i].first)].push_back(i);
  cplx total = 0;
  for (const auto& [qv, idx] : classes) {
    for (size_t i : idx)
      for (size_t j : idx) {
        const auto& [k, ck] = f.coeffs[i];
        const auto& [kp, ckp] = f.coeffs[j];
        double sgn = parity_sign(k) * parity_sign(kp);
        total += sgn * ck * std::conj(ckp);
      }
  }
  return total.real();
}

double c_gen(const ToralAutomorphism& A, const Observable& f) {
  QuadraticForm Q = quadratic_form(A);
  const i64 box = 4 * std::max<i64>(f.support_bound, 1);
  auto in_box = [box](const Vec2& v) {
    return std::abs(v.x) <= box && std::abs(v.y) <= box;
  };
  cplx total = 0;
  for (const auto& [k, ck] : f.coeffs) {
    for (const auto& [kp, ckp] : f.coeffs) {
      bool related = (k == kp);
      for (int dir = 0; dir < 2 && !related; ++dir) {
        Mat2 step = dir == 0 ? A.matrix() : A.inverse();
        Vec2 cur = vec_mat(k, step);
        while (in_box(cur) && !related) {
          if (cur == kp) related = true;
          cur = vec_mat(cur, step);
        }
      }
      if (!related) continue;
      if (Q(k) != Q(kp))
        throw std::logic_error("orbit pair with unequal Q values");
      double sgn = parity_sign(k) * parity_sign(kp);
      if (sgn != 1.0)
        throw std::logic_error("orbit pair with negative parity product");
      total += ck * std::conj(ckp);
    }
  }
  return total.real();
}

void check_support_policy(const QuadraticForm& Q, const Observable& f, i64 N) {
  for (const auto& [k, c] : f.coeffs) {
    if (2 * std::abs(Q(k)) >= N)
      throw Error(errc::support_too_large,
                  "|Q(k)| must stay below N/2 for N = " + std::to_string(N));
    if (imod(k.x, N) == 0 && imod(k.y, N) == 0)
      throw Error(errc::support_too_large,
                  "frequency congruent to 0 mod N in the support");
  }
}

Observable load_observable(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(errc::bad_input, "cannot open observable file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error(errc::bad_input,
                "observable file " + path + ": " + e.what());
  }
  if (!j.is_array())
    throw Error(errc::bad_input,
                "observable file must hold a JSON array of records");
  std::vector<std::pair<Vec2, cplx>> pairs;
  for (const auto& rec : j) {
    if (!rec.is_object() || !rec.contains("k") || !rec["k"].is_array() ||
        rec["k"].size() != 2 || !rec["k"][0].is_number_integer() ||
        !rec["k"][1].is_number_integer())
      throw Error(errc::bad_input,
                  "each record needs an integer pair under \"k\"");
    double re = 0, im = 0;
    if (rec.contains("re")) {
      if (!rec["re"].is_number())
        throw Error(errc::bad_input, "\"re\" must be a number");
      re = rec["re"].get<double>();
    }
    if (rec.contains("im")) {
      if (!rec["im"].is_number())
        throw Error(errc::bad_input, "\"im\" must be a number");
      im = rec["im"].get<double>();
    }
    Vec2 k{rec["k"][0].get<i64>(), rec["k"][1].get<i64>()};
    pairs.push_back({k, cplx{re, im}});
  }
  return make_observable(pairs);
}

}  // namespace catlab
