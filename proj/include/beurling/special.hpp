#pragma once

// Special functions shared by the prime-density templates: Riemann zeta at
// integer arguments, the Hurwitz zeta tail, and the two logarithmic
// integrals
//
//   Li(x) = int_1^x (1 - 1/u) / log u du = sum_{n>=1} (log x)^n / (n! n)
//   li(x) = sum_{n>=1} (log x)^n / (n! n zeta(n+1))
//
// linked by Li(x) = sum_{v>=1} li(x^{1/v}) / v.

namespace beurling {

/// zeta(n) for integer n >= 2, cached; at least 14 correct digits.
double zeta_int(int n);

/// Hurwitz zeta sum_{k>=0} (a + k)^{-s} for s > 1, a >= 1 (Euler-Maclaurin).
double hurwitz_zeta(double s, double a);

/// li(x), series truncated once a term drops below tol * (1 + partial sum).
/// Throws std::domain_error for x < 1.
double li_eval(double x, double tol = 1e-16);

/// d li / dx.
double li_density(double x);

/// Li(x) with absolute error <= tol (or machine precision of the value,
/// whichever is larger). Throws std::domain_error for x < 1.
double Li_eval(double x, double tol = 1e-13);

/// d Li / dx = (1 - 1/x) / log x, equal to 1 at x = 1.
double Li_density(double x);

/// sum_{v > v_max} li(x^{1/v}) / v, in closed form through Hurwitz zeta.
/// Together with the finite sum over v <= v_max this reproduces Li(x).
double li_power_tail(double x, int v_max, double tol = 1e-16);

/// Classical Moebius function for small n (trial division).
int moebius(long n);

}  // namespace beurling
