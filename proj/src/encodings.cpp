#include "pertop/encodings.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pertop/kernels.hpp"

namespace pertop {

namespace {

constexpr std::int32_t kNoForeground = 1 << 30;  // taller than any real column distance

void require_nonempty(const BinaryGrid& grid) {
    if (grid.foreground_count() == 0)
        throw std::invalid_argument("distance function undefined for empty set");
}

void require_same_extent(int wa, int ha, int wb, int hb) {
    if (wa != wb || ha != hb) throw std::invalid_argument("extent mismatch");
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

std::vector<std::int64_t> distance_transform_squared(const BinaryGrid& grid) {
    require_nonempty(grid);
    const int w = grid.width();
    const int h = grid.height();
    const std::uint8_t* mask = grid.mask().data();

    // Vertical pass: per-column distance to the nearest foreground pixel in
    // the same column, swept row by row so each step is data-parallel in x.
    std::vector<std::int32_t> vert(std::size_t(w) * h);
    kernels::select_i32(vert.data(), mask, 0, kNoForeground, std::size_t(w));
    for (int y = 1; y < h; ++y) {
        std::int32_t* row = vert.data() + std::size_t(y) * w;
        kernels::select_i32(row, mask + std::size_t(y) * w, 0, kNoForeground, std::size_t(w));
        kernels::min_plus_one_i32(row, row - w, std::size_t(w));
    }
    for (int y = h - 2; y >= 0; --y) {
        std::int32_t* row = vert.data() + std::size_t(y) * w;
        kernels::min_plus_one_i32(row, row + w, std::size_t(w));
    }

    // Horizontal pass: per-row 1-d squared transform of the column distances
    // via the integer lower envelope of the parabolas i -> (x-i)^2 + g(i)^2.
    std::vector<std::int64_t> out(std::size_t(w) * h);
    std::vector<std::int64_t> g2(static_cast<std::size_t>(w));
    std::vector<int> hull(static_cast<std::size_t>(w));
    std::vector<std::int64_t> from(std::size_t(w) + 1);
    for (int y = 0; y < h; ++y) {
        const std::int32_t* g = vert.data() + std::size_t(y) * w;
        for (int x = 0; x < w; ++x) g2[std::size_t(x)] = std::int64_t(g[x]) * g[x];
        auto value = [&](std::int64_t x, int i) {
            return (x - i) * (x - i) + g2[std::size_t(i)];
        };
        auto crossover = [&](int i, int u) {
            return floor_div(std::int64_t(u) * u - std::int64_t(i) * i + g2[std::size_t(u)] -
                                 g2[std::size_t(i)],
                             2 * std::int64_t(u - i));
        };
        int top = 0;
        hull[0] = 0;
        from[0] = 0;
        for (int u = 1; u < w; ++u) {
            while (top >= 0 && value(from[std::size_t(top)], hull[std::size_t(top)]) >
                                   value(from[std::size_t(top)], u))
                --top;
            if (top < 0) {
                top = 0;
                hull[0] = u;
                from[0] = 0;
            } else {
                const std::int64_t start = 1 + crossover(hull[std::size_t(top)], u);
                if (start < w) {
                    ++top;
                    hull[std::size_t(top)] = u;
                    from[std::size_t(top)] = start;
                }
            }
        }
        std::int64_t* row = out.data() + std::size_t(y) * w;
        for (int x = w - 1; x >= 0; --x) {
            row[x] = value(x, hull[std::size_t(top)]);
            if (x == from[std::size_t(top)]) --top;
        }
    }
    return out;
}

ScalarField distance_transform(const BinaryGrid& grid) {
    const std::vector<std::int64_t> sq = distance_transform_squared(grid);
    std::vector<double> values(sq.size());
    for (std::size_t i = 0; i < sq.size(); ++i) values[i] = std::sqrt(double(sq[i]));
    return ScalarField(grid.width(), grid.height(), std::move(values));
}

double hausdorff(const BinaryGrid& a, const BinaryGrid& b) {
    require_same_extent(a.width(), a.height(), b.width(), b.height());
    require_nonempty(a);
    require_nonempty(b);
    const std::vector<std::int64_t> da = distance_transform_squared(a);
    const std::vector<std::int64_t> db = distance_transform_squared(b);
    std::int64_t worst = 0;
    for (std::size_t i = 0; i < da.size(); ++i) {
        if (a.mask()[i]) worst = std::max(worst, db[i]);
        if (b.mask()[i]) worst = std::max(worst, da[i]);
    }
    return std::sqrt(double(worst));
}

namespace {

// Half-width of the discrete eps-disk at vertical offset dy.
int disk_half_width(double eps_sq, int dy) {
    const double span = eps_sq - double(dy) * dy;
    if (span < 0) return -1;
    int k = int(std::floor(std::sqrt(span)));
    while (std::int64_t(k + 1) * (k + 1) + std::int64_t(dy) * dy <= eps_sq) ++k;
    while (k >= 0 && std::int64_t(k) * k + std::int64_t(dy) * dy > eps_sq) --k;
    return k;
}

}  // namespace

std::int64_t disk_pixel_count(double eps) {
    if (eps < 1.0) throw std::invalid_argument("disk radius must be at least 1");
    const int r = int(std::floor(eps));
    std::int64_t count = 0;
    for (int dy = -r; dy <= r; ++dy) {
        const int hw = disk_half_width(eps * eps, dy);
        if (hw >= 0) count += 2 * std::int64_t(hw) + 1;
    }
    return count;
}

ScalarField local_density(const BinaryGrid& grid, double eps, DiskNormalization norm) {
    if (eps < 1.0) throw std::invalid_argument("disk radius must be at least 1");
    const int w = grid.width();
    const int h = grid.height();
    const int r = int(std::floor(eps));
    const double eps_sq = eps * eps;

    std::vector<int> half(static_cast<std::size_t>(2 * r + 1));
    for (int dy = -r; dy <= r; ++dy) half[std::size_t(dy + r)] = disk_half_width(eps_sq, dy);
    const std::int64_t full_disk = disk_pixel_count(eps);

    // Per-row prefix counts of foreground pixels.
    std::vector<std::int32_t> prefix(std::size_t(w + 1) * h, 0);
    for (int y = 0; y < h; ++y) {
        std::int32_t* row = prefix.data() + std::size_t(y) * (w + 1);
        for (int x = 0; x < w; ++x) row[x + 1] = row[x] + (grid.foreground(x, y) ? 1 : 0);
    }

    std::vector<double> values(std::size_t(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            std::int64_t covered = 0;
            std::int64_t clipped = 0;
            for (int dy = -r; dy <= r; ++dy) {
                const int hw = half[std::size_t(dy + r)];
                if (hw < 0) continue;
                const int yy = y + dy;
                if (yy < 0 || yy >= h) continue;
                const int lo = std::max(x - hw, 0);
                const int hi = std::min(x + hw, w - 1);
                if (lo > hi) continue;
                const std::int32_t* row = prefix.data() + std::size_t(yy) * (w + 1);
                covered += row[hi + 1] - row[lo];
                clipped += hi - lo + 1;
            }
            const std::int64_t denom = norm == DiskNormalization::clipped ? clipped : full_disk;
            values[std::size_t(y) * w + x] = double(covered) / double(denom);
        }
    }
    return ScalarField(w, h, std::move(values));
}

double symmetric_difference(const BinaryGrid& a, const BinaryGrid& b) {
    require_same_extent(a.width(), a.height(), b.width(), b.height());
    std::int64_t count = 0;
    for (std::size_t i = 0; i < a.mask().size(); ++i) count += a.mask()[i] != b.mask()[i];
    return double(count);
}

double sup_distance(const ScalarField& f, const ScalarField& g) {
    require_same_extent(f.width(), f.height(), g.width(), g.height());
    return kernels::max_abs_diff(f.data(), g.data(), f.size());
}

double sup_distance(const MultiField& f, const MultiField& g) {
    if (f.arity() != g.arity()) throw std::invalid_argument("component count mismatch");
    double worst = 0.0;
    for (int i = 0; i < f.arity(); ++i)
        worst = std::max(worst, sup_distance(f.component(i), g.component(i)));
    return worst;
}

ScalarField radial_field(int width, int height, double cx, double cy) {
    std::vector<double> xsq(static_cast<std::size_t>(width));
    for (int x = 0; x < width; ++x) xsq[std::size_t(x)] = (x - cx) * (x - cx);
    std::vector<double> values(std::size_t(width) * height);
    for (int y = 0; y < height; ++y) {
        const double ysq = (y - cy) * (y - cy);
        kernels::neg_sqrt_add(values.data() + std::size_t(y) * width, xsq.data(), ysq,
                              std::size_t(width));
    }
    return ScalarField(width, height, std::move(values));
}

std::pair<double, double> centroid(const BinaryGrid& grid) {
    require_nonempty(grid);
    double sx = 0.0, sy = 0.0;
    std::size_t n = 0;
    for (int y = 0; y < grid.height(); ++y)
        for (int x = 0; x < grid.width(); ++x)
            if (grid.foreground(x, y)) {
                sx += x;
                sy += y;
                ++n;
            }
    return {sx / double(n), sy / double(n)};
}

}  // namespace pertop
