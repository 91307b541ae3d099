// AVX2 kernel variants. Compiled with -mavx2; only reached after a runtime
// cpuid check. Each loop performs exactly the per-element operations of the
// scalar reference (vsqrtpd and the arithmetic ops are IEEE-correctly rounded,
// min/max select an element), so results match the scalar kernels bit for bit.

#include "kernel_table.hpp"

#if defined(PERTOP_HAVE_AVX2)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace pertop::kernels::detail {
namespace {

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        acc = _mm256_max_pd(acc, _mm256_andnot_pd(sign_mask, d));
    }
    alignas(32) double lane[4];
    _mm256_store_pd(lane, acc);
    double m = std::max(std::max(lane[0], lane[1]), std::max(lane[2], lane[3]));
    for (; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

void shift_scale_avx2(double* dst, const double* src, double shift, double scale,
                      std::size_t n) {
    const __m256d vshift = _mm256_set1_pd(shift);
    const __m256d vscale = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_sub_pd(_mm256_loadu_pd(src + i), vshift);
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(v, vscale));
    }
    for (; i < n; ++i) dst[i] = (src[i] - shift) * scale;
}

void shift_scale_max_avx2(double* dst, const double* src, double shift, double scale,
                          std::size_t n) {
    const __m256d vshift = _mm256_set1_pd(shift);
    const __m256d vscale = _mm256_set1_pd(scale);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_mul_pd(_mm256_sub_pd(_mm256_loadu_pd(src + i), vshift), vscale);
        _mm256_storeu_pd(dst + i, _mm256_max_pd(_mm256_loadu_pd(dst + i), v));
    }
    for (; i < n; ++i) dst[i] = std::max(dst[i], (src[i] - shift) * scale);
}

void neg_sqrt_add_avx2(double* dst, const double* squares, double add, std::size_t n) {
    const __m256d vadd = _mm256_set1_pd(add);
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_sqrt_pd(_mm256_add_pd(_mm256_loadu_pd(squares + i), vadd));
        _mm256_storeu_pd(dst + i, _mm256_xor_pd(v, sign_mask));
    }
    for (; i < n; ++i) dst[i] = -std::sqrt(squares[i] + add);
}

void select_i32_avx2(std::int32_t* dst, const std::uint8_t* mask, std::int32_t if_set,
                     std::int32_t if_clear, std::size_t n) {
    const __m256i vset = _mm256_set1_epi32(if_set);
    const __m256i vclear = _mm256_set1_epi32(if_clear);
    const __m256i zero = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m128i bytes = _mm_loadl_epi64(reinterpret_cast<const __m128i*>(mask + i));
        __m256i wide = _mm256_cvtepu8_epi32(bytes);
        __m256i take_set = _mm256_cmpgt_epi32(wide, zero);
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                            _mm256_blendv_epi8(vclear, vset, take_set));
    }
    for (; i < n; ++i) dst[i] = mask[i] ? if_set : if_clear;
}

void min_plus_one_i32_avx2(std::int32_t* dst, const std::int32_t* src, std::size_t n) {
    const __m256i one = _mm256_set1_epi32(1);
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        __m256i bumped =
            _mm256_add_epi32(_mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i)), one);
        __m256i cur = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + i));
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_min_epi32(cur, bumped));
    }
    for (; i < n; ++i) dst[i] = std::min(dst[i], src[i] + 1);
}

constexpr KernelTable table = {
    max_abs_diff_avx2,    shift_scale_avx2, shift_scale_max_avx2,
    neg_sqrt_add_avx2,    select_i32_avx2,  min_plus_one_i32_avx2,
};

}  // namespace

const KernelTable& avx2_table() { return table; }

}  // namespace pertop::kernels::detail

#endif  // PERTOP_HAVE_AVX2
