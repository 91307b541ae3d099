#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "pertop/field.hpp"
#include "pertop/grid.hpp"

namespace pertop {

// Exact squared Euclidean distance (integer) from each pixel centre to the
// nearest foreground pixel centre. Two-pass transform: per-column vertical
// scans, then a per-row lower-envelope pass in integer arithmetic.
std::vector<std::int64_t> distance_transform_squared(const BinaryGrid& grid);

// sqrt of the exact squared transform; zero exactly on foreground pixels.
ScalarField distance_transform(const BinaryGrid& grid);

// max of the two directed max-min distances between the foregrounds. Equals
// the sup-norm distance of the two distance transforms.
double hausdorff(const BinaryGrid& a, const BinaryGrid& b);

enum class DiskNormalization {
    clipped,  // denominator = pixels of the eps-disk that fall inside the extent
    full,     // denominator = pixels of the unclipped eps-disk
};

// Fraction of the eps-disk around each pixel covered by foreground. Values in
// [0,1]; with clipped normalization, exactly 1 iff the in-extent part of the
// disk is all foreground.
ScalarField local_density(const BinaryGrid& grid, double eps,
                          DiskNormalization norm = DiskNormalization::clipped);

// Number of pixels (dx,dy) with dx^2 + dy^2 <= eps^2.
std::int64_t disk_pixel_count(double eps);

// |a.foreground symmetric-difference b.foreground|, unit pixel area.
double symmetric_difference(const BinaryGrid& a, const BinaryGrid& b);

double sup_distance(const ScalarField& f, const ScalarField& g);
double sup_distance(const MultiField& f, const MultiField& g);

// Value at p = -(Euclidean distance from p's centre to (cx, cy)).
ScalarField radial_field(int width, int height, double cx, double cy);

// Arithmetic mean of the foreground pixel centres.
std::pair<double, double> centroid(const BinaryGrid& grid);

}  // namespace pertop
