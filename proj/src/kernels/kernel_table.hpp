#pragma once

#include <cstddef>
#include <cstdint>

namespace pertop::kernels::detail {

struct KernelTable {
    double (*max_abs_diff)(const double*, const double*, std::size_t);
    void (*shift_scale)(double*, const double*, double, double, std::size_t);
    void (*shift_scale_max)(double*, const double*, double, double, std::size_t);
    void (*neg_sqrt_add)(double*, const double*, double, std::size_t);
    void (*select_i32)(std::int32_t*, const std::uint8_t*, std::int32_t, std::int32_t, std::size_t);
    void (*min_plus_one_i32)(std::int32_t*, const std::int32_t*, std::size_t);
};

#if defined(PERTOP_HAVE_AVX2)
const KernelTable& avx2_table();
#endif

}  // namespace pertop::kernels::detail
