#pragma once

#include <cstddef>
#include <cstdint>

// Data-parallel inner loops shared by the field operations. Every kernel has
// a scalar reference implementation and may have SIMD variants; the active
// variant is chosen at runtime and all variants produce bit-identical results
// (same per-element operations; max/min reductions select an element rather
// than accumulate).

namespace pertop::kernels {

enum class Backend { scalar, avx2 };

Backend active_backend();
bool backend_supported(Backend backend);
// Returns false (and leaves the current backend) if unsupported on this host.
bool set_backend(Backend backend);

// max_i |a[i] - b[i]|, 0 for n == 0.
double max_abs_diff(const double* a, const double* b, std::size_t n);

// dst[i] = (src[i] - shift) * scale
void shift_scale(double* dst, const double* src, double shift, double scale, std::size_t n);

// dst[i] = max(dst[i], (src[i] - shift) * scale)
void shift_scale_max(double* dst, const double* src, double shift, double scale, std::size_t n);

// dst[i] = -sqrt(squares[i] + add)
void neg_sqrt_add(double* dst, const double* squares, double add, std::size_t n);

// dst[i] = mask[i] ? if_set : if_clear
void select_i32(std::int32_t* dst, const std::uint8_t* mask, std::int32_t if_set,
                std::int32_t if_clear, std::size_t n);

// dst[i] = min(dst[i], src[i] + 1)
void min_plus_one_i32(std::int32_t* dst, const std::int32_t* src, std::size_t n);

}  // namespace pertop::kernels
