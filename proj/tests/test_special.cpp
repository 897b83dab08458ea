#include <cmath>
#include <stdexcept>

#include "beurling/special.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace beurling;

TEST_CASE("zeta at integers matches the table") {
  for (int n = 2; n <= 31; ++n) CHECK(zeta_int(n) == doctest::Approx(oracle::zeta_table(n)).epsilon(1e-14));
  CHECK(zeta_int(200) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(zeta_int(1), std::domain_error);
}

TEST_CASE("hurwitz zeta against direct summation") {
  double direct = 0.0;
  for (int k = 0; k < 2000000; ++k) direct += std::pow(3.5 + k, -4.0);
  CHECK(hurwitz_zeta(4.0, 3.5) == doctest::Approx(direct).epsilon(1e-12));
  CHECK(hurwitz_zeta(2.0, 1.0) == doctest::Approx(oracle::zeta_table(2)).epsilon(1e-14));
}

TEST_CASE("li series") {
  CHECK(li_eval(1.0) == 0.0);
  CHECK(li_eval(std::exp(1.0)) == doctest::Approx(oracle::li_series30(std::exp(1.0))).epsilon(1e-14));
  CHECK(li_eval(std::exp(1.0)) == doctest::Approx(0.879).epsilon(1e-3));
  for (double x : {1.5, 7.0, 40.0}) CHECK(li_eval(x) == doctest::Approx(oracle::li_series30(x)).epsilon(1e-13));
  for (double x : {2.0, 10.0, 100.0}) CHECK(li_eval(x) <= Li_eval(x));
  CHECK_THROWS_AS(li_eval(0.5), std::domain_error);
}

TEST_CASE("li density is the derivative of li") {
  for (double x : {1.0, 1.7, 30.0, 5e4}) {
    const double h = 1e-6 * x;
    const double lo = std::max(1.0, x - h);
    CHECK(li_density(x) == doctest::Approx((li_eval(x + h) - li_eval(lo)) / (x + h - lo)).epsilon(1e-6));
  }
}

TEST_CASE("Li against quadrature") {
  CHECK(Li_eval(1.0) == 0.0);
  CHECK(Li_eval(std::exp(1.0)) == doctest::Approx(oracle::Li_quadrature(std::exp(1.0))).epsilon(1e-11));
  for (double x : {1.01, 2.0, 55.0, 1e3}) CHECK(Li_eval(x) == doctest::Approx(oracle::Li_quadrature(x)).epsilon(1e-10));
  CHECK(Li_density(1.0) == 1.0);
  CHECK_THROWS_AS(Li_eval(0.99), std::domain_error);
}

TEST_CASE("Li is the power sum of li once the tail is included") {
  const double x = 100.0;
  const int V = static_cast<int>(std::ceil(std::log(x) / std::log(1.5))) + 20;
  double head = 0.0;
  for (int v = 1; v <= V; ++v) head += li_eval(std::pow(x, 1.0 / v)) / v;
  CHECK(std::abs(head + li_power_tail(x, V) - Li_eval(x)) < 1e-8);
  // Without the tail the finite sum falls short by about log x / (zeta(2) V).
  CHECK(Li_eval(x) - head > 0.05);

  for (double y = 2.0; y <= 1e6; y *= 3.7) {
    double s = 0.0;
    for (int v = 1; v <= 40; ++v) s += li_eval(std::pow(y, 1.0 / v)) / v;
    CHECK(std::abs(s + li_power_tail(y, 40) - Li_eval(y)) < 1e-8);
  }
}

TEST_CASE("moebius") {
  const int expected[] = {1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0};
  for (int n = 1; n <= 12; ++n) CHECK(moebius(n) == expected[n - 1]);
}
