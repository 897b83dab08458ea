// AVX2+FMA phase sums. sin/cos and exp follow the Cephes double-precision
// routines (three-part pi/4 reduction, degree-5 minimax polynomials, Pade
// exp), four lanes at a time. Accurate to a few ulp for |t l| < 1e7; the
// dispatcher routes larger phases to the scalar reference.

#include <immintrin.h>

#include "beurling/kernels.hpp"

namespace beurling::kernels {
namespace {

struct SinCos {
  __m256d sin;
  __m256d cos;
};

inline __m256d polevl6(__m256d x, const double (&c)[6]) {
  __m256d r = _mm256_set1_pd(c[0]);
  for (int i = 1; i < 6; ++i) r = _mm256_fmadd_pd(r, x, _mm256_set1_pd(c[i]));
  return r;
}

inline SinCos sincos4(__m256d theta) {
  static constexpr double sincof[6] = {1.58962301576546568060E-10, -2.50507477628578072866E-8,
                                       2.75573136213857245213E-6,  -1.98412698295895385996E-4,
                                       8.33333333332211858878E-3,  -1.66666666666666307295E-1};
  static constexpr double coscof[6] = {-1.13585365213876817300E-11, 2.08757008419747316778E-9,
                                       -2.75573141792967388112E-7, 2.48015872888517045348E-5,
                                       -1.38888888888730564116E-3, 4.16666666666665929218E-2};
  const __m256d sign_bit = _mm256_set1_pd(-0.0);
  const __m256d x = _mm256_andnot_pd(sign_bit, theta);
  const __m256d x_sign = _mm256_and_pd(sign_bit, theta);

  __m256d y = _mm256_round_pd(_mm256_mul_pd(x, _mm256_set1_pd(1.27323954473516268615)),
                              _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  // y < 2^51, so adding 2^52 exposes it in the low mantissa bits.
  const __m256d magic = _mm256_set1_pd(0x1.0p52);
  __m256i j = _mm256_castpd_si256(_mm256_add_pd(y, magic));
  const __m256i odd = _mm256_and_si256(j, _mm256_set1_epi64x(1));
  j = _mm256_add_epi64(j, odd);
  y = _mm256_add_pd(y, _mm256_castsi256_pd(_mm256_or_si256(_mm256_castpd_si256(magic), odd)));
  y = _mm256_sub_pd(y, magic);
  j = _mm256_and_si256(j, _mm256_set1_epi64x(7));

  __m256d z = _mm256_fnmadd_pd(y, _mm256_set1_pd(7.85398125648498535156E-1), x);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(3.77489470793079817668E-8), z);
  z = _mm256_fnmadd_pd(y, _mm256_set1_pd(2.69515142907905952645E-15), z);
  const __m256d zz = _mm256_mul_pd(z, z);

  const __m256d s_poly = _mm256_fmadd_pd(_mm256_mul_pd(z, zz), polevl6(zz, sincof), z);
  const __m256d c_poly = _mm256_fmadd_pd(_mm256_mul_pd(zz, zz), polevl6(zz, coscof),
                                         _mm256_fnmadd_pd(_mm256_set1_pd(0.5), zz, _mm256_set1_pd(1.0)));

  const __m256i bit2 = _mm256_and_si256(j, _mm256_set1_epi64x(2));
  const __m256i bit4 = _mm256_and_si256(j, _mm256_set1_epi64x(4));
  const __m256d swap = _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit2, _mm256_set1_epi64x(2)));
  const __m256d sin_mag = _mm256_blendv_pd(s_poly, c_poly, swap);
  const __m256d cos_mag = _mm256_blendv_pd(c_poly, s_poly, swap);

  const __m256d flip4 = _mm256_castsi256_pd(_mm256_slli_epi64(bit4, 61));
  const __m256d flip2 = _mm256_castsi256_pd(_mm256_slli_epi64(bit2, 62));
  return {_mm256_xor_pd(sin_mag, _mm256_xor_pd(flip4, x_sign)), _mm256_xor_pd(cos_mag, _mm256_xor_pd(flip4, flip2))};
}

inline __m256d exp4(__m256d x) {
  x = _mm256_min_pd(_mm256_max_pd(x, _mm256_set1_pd(-708.0)), _mm256_set1_pd(709.0));
  const __m256d n = _mm256_round_pd(_mm256_fmadd_pd(x, _mm256_set1_pd(1.4426950408889634073599), _mm256_set1_pd(0.5)),
                                    _MM_FROUND_TO_NEG_INF | _MM_FROUND_NO_EXC);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(6.93145751953125E-1), x);
  x = _mm256_fnmadd_pd(n, _mm256_set1_pd(1.42860682030941723212E-6), x);
  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d p = _mm256_set1_pd(1.26177193074810590878E-4);
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(3.02994407707441961300E-2));
  p = _mm256_fmadd_pd(p, xx, _mm256_set1_pd(9.99999999999999999910E-1));
  p = _mm256_mul_pd(p, x);
  __m256d q = _mm256_set1_pd(3.00198505138664455042E-6);
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.52448340349684104192E-3));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.27265548208155028766E-1));
  q = _mm256_fmadd_pd(q, xx, _mm256_set1_pd(2.00000000000000000009E0));
  const __m256d r = _mm256_fmadd_pd(_mm256_set1_pd(2.0), _mm256_div_pd(p, _mm256_sub_pd(q, p)), _mm256_set1_pd(1.0));
  // 2^n from the exponent bits; n in [-1022, 1023] after the clamp.
  const __m256i bias = _mm256_castpd_si256(_mm256_add_pd(n, _mm256_set1_pd(0x1.0p52 + 1023.0)));
  const __m256i pow2 = _mm256_slli_epi64(_mm256_sub_epi64(bias, _mm256_castpd_si256(_mm256_set1_pd(0x1.0p52))), 52);
  return _mm256_mul_pd(r, _mm256_castsi256_pd(pow2));
}

inline std::complex<double> horizontal(__m256d re, __m256d im) {
  alignas(32) double a[4];
  alignas(32) double b[4];
  _mm256_store_pd(a, re);
  _mm256_store_pd(b, im);
  return {(a[0] + a[1]) + (a[2] + a[3]), (b[0] + b[1]) + (b[2] + b[3])};
}

}  // namespace

std::complex<double> phase_sum_avx2(std::span<const double> logs, double t) {
  const __m256d tv = _mm256_set1_pd(t);
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= logs.size(); j += 4) {
    const SinCos sc = sincos4(_mm256_mul_pd(tv, _mm256_loadu_pd(logs.data() + j)));
    re = _mm256_add_pd(re, sc.cos);
    im = _mm256_sub_pd(im, sc.sin);
  }
  std::complex<double> total = horizontal(re, im);
  if (j < logs.size()) total += phase_sum_scalar(logs.subspan(j), t);
  return total;
}

std::complex<double> damped_phase_sum_avx2(std::span<const double> logs, std::span<const double> weights,
                                           double sigma, double t) {
  const __m256d tv = _mm256_set1_pd(t);
  const __m256d neg_sigma = _mm256_set1_pd(-sigma);
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  std::size_t j = 0;
  for (; j + 4 <= logs.size(); j += 4) {
    const __m256d l = _mm256_loadu_pd(logs.data() + j);
    const __m256d amp = _mm256_mul_pd(_mm256_loadu_pd(weights.data() + j), exp4(_mm256_mul_pd(neg_sigma, l)));
    const SinCos sc = sincos4(_mm256_mul_pd(tv, l));
    re = _mm256_fmadd_pd(amp, sc.cos, re);
    im = _mm256_fnmadd_pd(amp, sc.sin, im);
  }
  std::complex<double> total = horizontal(re, im);
  if (j < logs.size()) total += damped_phase_sum_scalar(logs.subspan(j), weights.subspan(j), sigma, t);
  return total;
}

}  // namespace beurling::kernels
