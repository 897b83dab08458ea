#pragma once

// 15-point Gauss-Kronrod rule (QUADPACK qk15 nodes and weights).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <type_traits>

namespace beurling {

template <class T>
struct GkEstimate {
  T value;
  double error;     // |K15 - G7|
  /// Error that cannot be reduced by bisection: 50 eps times the rule on |f|,
  /// plus the spread of f times the spacing of doubles near the panel, since
  /// the nodes themselves are only known to that spacing.
  double roundoff;
};

namespace gk15 {
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851, 0.864864423359769072789712788640926,
    0.741531185599394439863864773280788, 0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204, 0.104790010322250183839876322541518,
    0.140653259715525918745189590510238, 0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                                             0.381830050505118944950369775488975, 0.417959183673469387755102040816327};
}  // namespace gk15

/// Integral of f over [a, b]; f returns double or std::complex<double>.
template <class F>
auto gauss_kronrod15(F&& f, double a, double b) {
  using T = decltype(f(a));
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * gk15::wgk[7];
  T gauss = fc * gk15::wg[3];
  double abs_sum = std::abs(fc) * gk15::wgk[7];
  double spread = 0.0;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * gk15::xgk[j];
    const T lo = f(center - dx);
    const T hi = f(center + dx);
    kronrod += (lo + hi) * gk15::wgk[j];
    abs_sum += (std::abs(lo) + std::abs(hi)) * gk15::wgk[j];
    spread = std::max({spread, std::abs(lo - fc), std::abs(hi - fc)});
    if (j % 2 == 1) gauss += (lo + hi) * gk15::wg[j / 2];
  }
  const double abs_half = std::abs(half);
  constexpr double eps = 2.220446049250313e-16;
  const double node_ulp = eps * std::max(std::abs(a), std::abs(b));
  return GkEstimate<T>{kronrod * half, std::abs((kronrod - gauss) * half),
                       50.0 * eps * abs_sum * abs_half + 20.0 * spread * node_ulp};
}

}  // namespace beurling

namespace beurling {

template <class T>
struct AdaptiveResult {
  T value{};
  double error = 0.0;
  bool converged = true;
  double worst_lo = 0.0;  // panel with the largest unresolved error
  double worst_hi = 0.0;
  double worst_error = 0.0;
};

/// Recursive bisection of GK15 panels until each panel's error is within its
/// share tol * width / (b - a), or `max_depth` halvings.
template <class F, class T = std::invoke_result_t<F&, double>>
void adaptive_gk15_into(F& f, double a, double b, double tol_density, int max_depth, AdaptiveResult<T>& out) {
  const auto est = gauss_kronrod15(f, a, b);
  // an error at rounding level cannot be reduced further
  const double allowed = std::max(tol_density * (b - a), est.roundoff);
  if (est.error <= allowed || max_depth == 0 || !(b - a > 1e-14 * (std::abs(a) + std::abs(b)))) {
    out.value += est.value;
    out.error += est.error;
    if (est.error > allowed) {
      out.converged = false;
      if (est.error > out.worst_error) {
        out.worst_error = est.error;
        out.worst_lo = a;
        out.worst_hi = b;
      }
    }
    return;
  }
  const double mid = 0.5 * (a + b);
  adaptive_gk15_into(f, a, mid, tol_density, max_depth - 1, out);
  adaptive_gk15_into(f, mid, b, tol_density, max_depth - 1, out);
}

/// Integral over [a, b] on panels no wider than `max_width`, each refined
/// adaptively to absolute error tol * width / (b - a).
template <class F>
auto adaptive_gk15(F&& f, double a, double b, double tol, double max_width, int max_depth = 30) {
  using T = std::invoke_result_t<F&, double>;
  AdaptiveResult<T> out;
  if (!(b > a)) return out;
  const auto panels = static_cast<long>(std::ceil((b - a) / max_width));
  const double density = tol / (b - a);
  for (long k = 0; k < panels; ++k) {
    const double lo = a + (b - a) * static_cast<double>(k) / static_cast<double>(panels);
    const double hi = k + 1 == panels ? b : a + (b - a) * static_cast<double>(k + 1) / static_cast<double>(panels);
    adaptive_gk15_into(f, lo, hi, density, max_depth, out);
  }
  return out;
}

}  // namespace beurling
