#include "pertop/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>

#include "kernel_table.hpp"

namespace pertop::kernels {
namespace {

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a[i] - b[i]));
    return m;
}

void shift_scale_scalar(double* dst, const double* src, double shift, double scale,
                        std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = (src[i] - shift) * scale;
}

void shift_scale_max_scalar(double* dst, const double* src, double shift, double scale,
                            std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::max(dst[i], (src[i] - shift) * scale);
}

void neg_sqrt_add_scalar(double* dst, const double* squares, double add, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = -std::sqrt(squares[i] + add);
}

void select_i32_scalar(std::int32_t* dst, const std::uint8_t* mask, std::int32_t if_set,
                       std::int32_t if_clear, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = mask[i] ? if_set : if_clear;
}

void min_plus_one_i32_scalar(std::int32_t* dst, const std::int32_t* src, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::min(dst[i], src[i] + 1);
}

constexpr detail::KernelTable scalar_table = {
    max_abs_diff_scalar,    shift_scale_scalar, shift_scale_max_scalar,
    neg_sqrt_add_scalar,    select_i32_scalar,  min_plus_one_i32_scalar,
};

bool host_has_avx2() {
#if defined(PERTOP_HAVE_AVX2)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

struct Dispatch {
    std::atomic<const detail::KernelTable*> table;
    std::atomic<Backend> backend;

    Dispatch() : table(&scalar_table), backend(Backend::scalar) {
#if defined(PERTOP_HAVE_AVX2)
        if (host_has_avx2()) {
            table.store(&detail::avx2_table(), std::memory_order_relaxed);
            backend.store(Backend::avx2, std::memory_order_relaxed);
        }
#endif
    }
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

const detail::KernelTable& table() {
    return *dispatch().table.load(std::memory_order_relaxed);
}

}  // namespace

Backend active_backend() { return dispatch().backend.load(std::memory_order_relaxed); }

bool backend_supported(Backend backend) {
    return backend == Backend::scalar || (backend == Backend::avx2 && host_has_avx2());
}

bool set_backend(Backend backend) {
    if (!backend_supported(backend)) return false;
    Dispatch& d = dispatch();
    if (backend == Backend::scalar) {
        d.table.store(&scalar_table, std::memory_order_relaxed);
    }
#if defined(PERTOP_HAVE_AVX2)
    else {
        d.table.store(&detail::avx2_table(), std::memory_order_relaxed);
    }
#endif
    d.backend.store(backend, std::memory_order_relaxed);
    return true;
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    return table().max_abs_diff(a, b, n);
}

void shift_scale(double* dst, const double* src, double shift, double scale, std::size_t n) {
    table().shift_scale(dst, src, shift, scale, n);
}

void shift_scale_max(double* dst, const double* src, double shift, double scale, std::size_t n) {
    table().shift_scale_max(dst, src, shift, scale, n);
}

void neg_sqrt_add(double* dst, const double* squares, double add, std::size_t n) {
    table().neg_sqrt_add(dst, squares, add, n);
}

void select_i32(std::int32_t* dst, const std::uint8_t* mask, std::int32_t if_set,
                std::int32_t if_clear, std::size_t n) {
    table().select_i32(dst, mask, if_set, if_clear, n);
}

void min_plus_one_i32(std::int32_t* dst, const std::int32_t* src, std::size_t n) {
    table().min_plus_one_i32(dst, src, n);
}

}  // namespace pertop::kernels
