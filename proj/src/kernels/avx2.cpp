// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include <cmath>
#include <cstdint>
#include <numbers>

#include "kernels_impl.hpp"

namespace sldp::kernels::avx2 {

namespace {

// Products are kept as mantissa in [1, 2) times an integer exponent so that
// a sum of N logarithms costs N multiplies and 4 logs.
struct LogProduct {
  __m256d mantissa = _mm256_set1_pd(1.0);
  __m256i exponent = _mm256_setzero_si256();
  __m256d invalid = _mm256_setzero_pd();
  std::int64_t folds = 0;

  void multiply(__m256d factor) {
    const __m256d kMin = _mm256_set1_pd(1e-300);
    const __m256d kMax = _mm256_set1_pd(1e300);
    const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(factor, kMin, _CMP_GE_OQ),
                                     _mm256_cmp_pd(factor, kMax, _CMP_LE_OQ));
    invalid = _mm256_or_pd(invalid, _mm256_xor_pd(ok, _mm256_castsi256_pd(_mm256_set1_epi64x(-1))));
    mantissa = _mm256_mul_pd(mantissa, factor);
    const __m256i bits = _mm256_castpd_si256(mantissa);
    exponent = _mm256_add_epi64(exponent, _mm256_srli_epi64(bits, 52));
    const __m256i mant_bits = _mm256_and_si256(bits, _mm256_set1_epi64x(0x000FFFFFFFFFFFFFLL));
    mantissa = _mm256_castsi256_pd(
        _mm256_or_si256(mant_bits, _mm256_set1_epi64x(0x3FF0000000000000LL)));
    ++folds;
  }

  bool any_invalid() const { return _mm256_movemask_pd(invalid) != 0; }

  double log() const {
    alignas(32) double m[4];
    alignas(32) std::int64_t e[4];
    _mm256_store_pd(m, mantissa);
    _mm256_store_si256(reinterpret_cast<__m256i*>(e), exponent);
    double sum = 0.0;
    for (int lane = 0; lane < 4; ++lane) {
      const double unbiased = static_cast<double>(e[lane] - 1023 * folds);
      sum += std::log(m[lane]) + unbiased * std::numbers::ln2;
    }
    return sum;
  }
};

}  // namespace

double log_abs_diff_sum(const double* v, std::size_t n, double x) {
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d sign = _mm256_set1_pd(-0.0);
  LogProduct lo, hi;
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    lo.multiply(_mm256_andnot_pd(sign, _mm256_sub_pd(vx, _mm256_loadu_pd(v + k))));
    hi.multiply(_mm256_andnot_pd(sign, _mm256_sub_pd(vx, _mm256_loadu_pd(v + k + 4))));
  }
  if (k + 4 <= n) {
    lo.multiply(_mm256_andnot_pd(sign, _mm256_sub_pd(vx, _mm256_loadu_pd(v + k))));
    k += 4;
  }
  if (lo.any_invalid() || hi.any_invalid()) return scalar::log_abs_diff_sum(v, n, x);
  double sum = lo.log() + (hi.folds ? hi.log() : 0.0);
  for (; k < n; ++k) sum += std::log(std::abs(x - v[k]));
  return sum;
}

double log_sum(const double* v, std::size_t n) {
  LogProduct lo, hi;
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    lo.multiply(_mm256_loadu_pd(v + k));
    hi.multiply(_mm256_loadu_pd(v + k + 4));
  }
  if (k + 4 <= n) {
    lo.multiply(_mm256_loadu_pd(v + k));
    k += 4;
  }
  if (lo.any_invalid() || hi.any_invalid()) return scalar::log_sum(v, n);
  double sum = lo.log() + (hi.folds ? hi.log() : 0.0);
  for (; k < n; ++k) sum += std::log(v[k]);
  return sum;
}

double negative_part_sum(const double* v, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  __m256d acc0 = zero, acc1 = zero;
  std::size_t k = 0;
  for (; k + 8 <= n; k += 8) {
    acc0 = _mm256_add_pd(acc0, _mm256_max_pd(_mm256_sub_pd(zero, _mm256_loadu_pd(v + k)), zero));
    acc1 = _mm256_add_pd(acc1,
                         _mm256_max_pd(_mm256_sub_pd(zero, _mm256_loadu_pd(v + k + 4)), zero));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < n; ++k)
    if (v[k] < 0.0) sum -= v[k];
  return sum;
}

}  // namespace sldp::kernels::avx2
