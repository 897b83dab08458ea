#include "beurling/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace beurling {
namespace {

// B_{2j} / (2j)! for j = 1..7
constexpr std::array<double, 7> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
};

constexpr int kZetaCacheMax = 256;

// Euler-Maclaurin with N direct terms; the remainder after the j = 7
// correction is far below double precision for s >= 2, N = 12.
double euler_maclaurin_zeta(double s, double a) {
  constexpr int N = 12;
  double sum = 0.0;
  for (int k = N - 1; k >= 0; --k) sum += std::pow(a + k, -s);
  const double b = a + N;
  sum += std::pow(b, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(b, -s);
  // rising factorial s (s+1) ... (s + 2j - 2) times b^{-s-2j+1}
  double rising = s;
  double power = std::pow(b, -s - 1.0);
  const double inv_b2 = 1.0 / (b * b);
  for (std::size_t j = 0; j < kBernoulliOverFactorial.size(); ++j) {
    const double term = kBernoulliOverFactorial[j] * rising * power;
    sum += term;
    if (std::abs(term) < 1e-18 * sum) break;
    const double m = 2.0 * static_cast<double>(j + 1);
    rising *= (s + m - 1.0) * (s + m);
    power *= inv_b2;
  }
  return sum;
}

const std::array<double, kZetaCacheMax + 1>& zeta_table() {
  static const auto table = [] {
    std::array<double, kZetaCacheMax + 1> t{};
    t[0] = -0.5;
    t[1] = std::numeric_limits<double>::infinity();
    for (int n = 2; n <= kZetaCacheMax; ++n) {
      t[n] = n < 60 ? euler_maclaurin_zeta(n, 1.0) : 1.0 + std::pow(2.0, -n) + std::pow(3.0, -n);
    }
    return t;
  }();
  return table;
}

void require_domain(double x, const char* what) {
  if (!(x >= 1.0)) throw std::domain_error(std::string(what) + ": argument must be >= 1, got " + std::to_string(x));
}

}  // namespace

double zeta_int(int n) {
  if (n < 2) throw std::domain_error("zeta_int: n must be >= 2");
  if (n <= kZetaCacheMax) return zeta_table()[n];
  return 1.0 + std::pow(2.0, -n);
}

double hurwitz_zeta(double s, double a) {
  if (!(s > 1.0) || !(a >= 1.0)) throw std::domain_error("hurwitz_zeta: need s > 1 and a >= 1");
  return euler_maclaurin_zeta(s, a);
}

double li_eval(double x, double tol) {
  require_domain(x, "li_eval");
  const double L = std::log(x);
  if (L == 0.0) return 0.0;
  double sum = 0.0;
  double power_over_fact = 1.0;  // L^n / n!
  for (int n = 1; n < 100000; ++n) {
    power_over_fact *= L / n;
    const double term = power_over_fact / (n * zeta_int(n + 1));
    sum += term;
    if (n > L && term < tol * (1.0 + sum)) break;
  }
  return sum;
}

double li_density(double x) {
  require_domain(x, "li_density");
  const double L = std::log(x);
  // (1/x) sum_{n>=1} L^{n-1} / (n! zeta(n+1))
  double sum = 0.0;
  double power_over_fact = 1.0;  // L^{n-1} / n!
  for (int n = 1; n < 100000; ++n) {
    power_over_fact /= n;
    const double term = power_over_fact / zeta_int(n + 1);
    sum += term;
    if (n > L && term < 1e-17 * sum) break;
    power_over_fact *= L;
  }
  return sum / x;
}

double Li_eval(double x, double tol) {
  require_domain(x, "Li_eval");
  const double L = std::log(x);
  if (L == 0.0) return 0.0;
  double sum = 0.0;
  double power_over_fact = 1.0;
  for (int n = 1; n < 100000; ++n) {
    power_over_fact *= L / n;
    const double term = power_over_fact / n;
    sum += term;
    // once n > 2L the remainder is bounded by the current term
    if (n > 2.0 * L && (term < 0.5 * tol || term < 1e-17 * sum)) break;
  }
  return sum;
}

double Li_density(double x) {
  require_domain(x, "Li_density");
  const double L = std::log(x);
  if (L < 1e-8) return 1.0 - 0.5 * L;
  return -std::expm1(-L) / L;
}

double li_power_tail(double x, int v_max, double tol) {
  require_domain(x, "li_power_tail");
  if (v_max < 0) throw std::invalid_argument("li_power_tail: v_max must be >= 0");
  const double L = std::log(x);
  if (L == 0.0) return 0.0;
  // sum_n L^n / (n! n zeta(n+1)) * zeta(n+1, v_max+1)
  double sum = 0.0;
  double power_over_fact = 1.0;
  const double a = static_cast<double>(v_max) + 1.0;
  for (int n = 1; n < 100000; ++n) {
    power_over_fact *= L / n;
    const double tail = hurwitz_zeta(n + 1.0, a);
    const double term = power_over_fact * tail / (n * zeta_int(n + 1));
    sum += term;
    if (n > L / a && term < tol * (1.0 + sum)) break;
  }
  return sum;
}

int moebius(long n) {
  if (n < 1) throw std::domain_error("moebius: n must be >= 1");
  int sign = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    n /= p;
    if (n % p == 0) return 0;
    sign = -sign;
  }
  if (n > 1) sign = -sign;
  return sign;
}

}  // namespace beurling
