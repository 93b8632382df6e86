// Batch front door: context classification, order scans, variance scans,
// character-sum scans, Hecke-basis reports and the selftest batteries.
// All output is deterministic: fixed row ordering and 12 significant digits.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "catlab/charsums.hpp"
#include "catlab/parallel.hpp"
#include "catlab/selftest.hpp"
#include "catlab/spectra.hpp"
#include "catlab/variance.hpp"

namespace {

using namespace catlab;

constexpr int exit_ok = 0;
constexpr int exit_validation = 2;
constexpr int exit_assertion = 3;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

ToralAutomorphism parse_matrix(const std::string& spec) {
  std::vector<i64> e;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) e.push_back(std::stoll(tok));
  if (e.size() != 4)
    throw Error(errc::bad_input, "-m expects four integers a,b,c,d");
  return validate_automorphism(e[0], e[1], e[2], e[3]);
}

Observable resolve_observable(const std::string& path) {
  if (path.empty()) return make_observable({{{1, 0}, 1.0}});  // 2cos(2pi x1)
  return load_observable(path);
}

// output sink: file when --out is set, stdout otherwise
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error(errc::bad_input, "cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::vector<i64> primes_in(i64 lo, i64 hi, const ToralAutomorphism& A) {
  std::vector<i64> out;
  for (i64 n = std::max<i64>(lo, 3); n <= hi; ++n)
    if (n % 2 == 1 && is_prime(n) && imod(A.disc(), n) != 0) out.push_back(n);
  return out;
}

int default_jobs() {
  if (const char* env = std::getenv("CATLAB_JOBS")) {
    int j = std::atoi(env);
    if (j > 0) return j;
  }
  return 1;
}

int cmd_classify(const ToralAutomorphism& A, i64 n) {
  PrimeContext ctx = build_context(A, n);
  std::cout << "N=" << ctx.N << " kind=" << kind_name(ctx.kind)
            << " r=" << ctx.r << " M=" << ctx.M << " D=" << ctx.D
            << " s=" << ctx.s << " two_inv=" << ctx.two_inv << " lambdaA=("
            << ctx.lambdaA.u << "," << ctx.lambdaA.v << ")"
            << " g0=[[" << ctx.g0.m.a << "," << ctx.g0.m.b << "],["
            << ctx.g0.m.c << "," << ctx.g0.m.d << "]]\n";
  return exit_ok;
}

int cmd_scan_orders(const ToralAutomorphism& A, i64 nmax,
                    const std::string& out) {
  Sink sink(out);
  sink.stream() << "N,r,r_over_sqrt_n\n";
  for (i64 n : primes_in(3, nmax, A)) {
    i64 r = order_mod(A, n);
    sink.stream() << n << "," << r << ","
                  << fmt(double(r) / std::sqrt(double(n))) << "\n";
  }
  return exit_ok;
}

int cmd_variance(const ToralAutomorphism& A, const Observable& f,
                 WindowKind wk, const std::vector<i64>& primes, double l_exp,
                 double tail_eps, const std::string& out, int jobs) {
  if (primes.empty())
    throw Error(errc::bad_input, "no valid primes in the requested range");
  VarianceReport report =
      theorem_scan(A, f, window(wk), primes, l_exp, tail_eps, jobs);
  Sink sink(out);
  sink.stream() << "N,r,kind,L,var_fourier,var_quadrature,c_arith,bound,ratio\n";
  bool budget_ok = true;
  for (const auto& row : report.rows) {
    sink.stream() << row.N << "," << row.r << "," << kind_name(row.kind) << ","
                  << row.L << "," << fmt(row.var_fourier) << ","
                  << fmt(row.var_quadrature) << "," << fmt(row.c_arith) << ","
                  << fmt(row.bound) << "," << fmt(row.ratio) << "\n";
    budget_ok = budget_ok && row.meets_budget;
    if (!row.r_above_sqrt)
      std::cerr << "note: N=" << row.N << " has ord(A,N)=" << row.r
                << " <= sqrt(N); outside the theorem hypothesis\n";
  }
  if (!budget_ok) {
    std::cerr << "error budget violated on at least one row\n";
    return exit_assertion;
  }
  return exit_ok;
}

int cmd_charsum_scan(const ToralAutomorphism& A, i64 nmax,
                     const std::string& out, int jobs) {
  auto rows = charsum_scan(A, nmax, default_panel(), jobs);
  Sink sink(out);
  sink.stream() << "N,kind,m,abs_E,bound2sqrtN,slack\n";
  bool ok = true;
  for (const auto& row : rows) {
    sink.stream() << row.N << "," << kind_name(row.kind) << "," << row.m << ","
                  << fmt(row.abs_E) << "," << fmt(row.bound) << ","
                  << fmt(row.slack) << "\n";
    ok = ok && row.slack > 0;
  }
  if (!ok) {
    std::cerr << "character-sum bound violated\n";
    return exit_assertion;
  }
  return exit_ok;
}

int cmd_hecke(const ToralAutomorphism& A, i64 n, const Observable& f,
              const std::string& out) {
  PrimeContext ctx = build_context(A, n);
  HeckeBasis basis = hecke_basis(ctx);
  auto elems = matrix_elements(ctx, f, basis);
  Sink sink(out);
  sink.stream() << "index,m,phase,element\n";
  double sumsq = 0;
  for (size_t i = 0; i < elems.size(); ++i) {
    sink.stream() << i << "," << basis.vectors[i].m << ","
                  << fmt(elems[i].first) << "," << fmt(elems[i].second)
                  << "\n";
    sumsq += elems[i].second * elems[i].second;
  }
  double ca = c_arith(A, f);
  std::cerr << "hecke_variance=" << fmt(sumsq) << " c_arith=" << fmt(ca)
            << " ratio=" << fmt(ca != 0 ? sumsq / ca : 0.0) << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical laboratory for the quantized cat map"};
  app.require_subcommand(1);
  app.fallthrough();  // global -m may follow the subcommand name

  std::string matrix = "3,2,4,3";
  app.add_option("-m,--matrix", matrix, "matrix entries a,b,c,d")
      ->capture_default_str();

  auto* classify = app.add_subcommand("classify", "prime context summary");
  i64 n_classify = 0;
  classify->add_option("-n", n_classify, "prime modulus")->required();

  auto* scan_orders =
      app.add_subcommand("scan-orders", "ord(A,N) for primes up to a bound");
  i64 nmax_orders = 101;
  std::string out_orders;
  scan_orders->add_option("--nmax", nmax_orders, "largest prime to scan")
      ->check(CLI::Range(i64{3}, i64{1000000}));
  scan_orders->add_option("--out", out_orders, "output CSV path");

  auto* variance = app.add_subcommand(
      "variance", "variance scan with error budget, one CSV row per prime");
  std::string obs_path, window_name = "hann", out_variance;
  double l_exp = 0.75, tail_eps = 1e-10;
  i64 nmin = 100, nmax = 500, n_single = 0;
  int jobs = default_jobs();
  variance->add_option("--obs", obs_path, "observable JSON file");
  variance->add_option("--window", window_name, "hann|triangle")
      ->capture_default_str();
  variance->add_option("--l-exp", l_exp, "window exponent: L = floor(N^rho)")
      ->capture_default_str();
  variance->add_option("--tail-eps", tail_eps, "tail truncation target")
      ->capture_default_str();
  variance->add_option("--nmin", nmin, "first prime")->capture_default_str();
  variance->add_option("--nmax", nmax, "last prime")->capture_default_str();
  variance->add_option("-n", n_single, "single prime (overrides the range)");
  variance->add_option("--out", out_variance, "output CSV path");
  variance->add_option("--jobs", jobs, "worker threads (env CATLAB_JOBS)");

  auto* charsum =
      app.add_subcommand("charsum-scan", "Weil bound scan over all characters");
  i64 nmax_char = 200;
  std::string out_char;
  int jobs_char = default_jobs();
  charsum->add_option("--nmax", nmax_char, "largest prime to scan")
      ->capture_default_str();
  charsum->add_option("--out", out_char, "output CSV path");
  charsum->add_option("--jobs", jobs_char, "worker threads");

  auto* hecke = app.add_subcommand("hecke", "Hecke-basis matrix elements");
  i64 n_hecke = 0;
  std::string obs_hecke, out_hecke;
  hecke->add_option("-n", n_hecke, "prime modulus")->required();
  hecke->add_option("--obs", obs_hecke, "observable JSON file");
  hecke->add_option("--out", out_hecke, "output CSV path");

  auto* selftest = app.add_subcommand("selftest", "invariant batteries");
  std::string level = "quick";
  selftest->add_option("--level", level, "quick|full")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? exit_ok : exit_validation;
  }

  try {
    ToralAutomorphism A = parse_matrix(matrix);
    if (*classify) return cmd_classify(A, n_classify);
    if (*scan_orders) return cmd_scan_orders(A, nmax_orders, out_orders);
    if (*variance) {
      std::vector<i64> primes = n_single > 0
                                    ? std::vector<i64>{n_single}
                                    : primes_in(nmin, nmax, A);
      return cmd_variance(A, resolve_observable(obs_path),
                          window_kind_from_name(window_name), primes, l_exp,
                          tail_eps, out_variance, jobs);
    }
    if (*charsum) return cmd_charsum_scan(A, nmax_char, out_char, jobs_char);
    if (*hecke)
      return cmd_hecke(A, n_hecke, resolve_observable(obs_hecke), out_hecke);
    if (*selftest) {
      if (level != "quick" && level != "full")
        throw Error(errc::bad_input, "--level must be quick or full");
      int failures = run_selftest(A, level == "full", std::cout);
      return failures == 0 ? exit_ok : exit_assertion;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return exit_assertion;
  }
  return exit_ok;
}
