#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pertop {

// Rectangular pixel domain with a foreground subset. Pixels are unit squares;
// all metric computations use pixel-center coordinates. Immutable once built.
class BinaryGrid {
public:
    BinaryGrid(int width, int height);
    BinaryGrid(int width, int height, std::vector<std::uint8_t> mask);

    static BinaryGrid from_pixels(int width, int height,
                                  const std::vector<std::pair<int, int>>& pixels);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t pixel_count() const { return mask_.size(); }
    std::size_t index(int x, int y) const { return std::size_t(y) * width_ + x; }

    bool foreground(int x, int y) const { return mask_[index(x, y)] != 0; }
    std::size_t foreground_count() const;
    const std::vector<std::uint8_t>& mask() const { return mask_; }

    bool operator==(const BinaryGrid&) const = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> mask_;  // row-major, 1 = foreground
};

// 4-neighbour adjacency over every pixel of an extent. Vertices are row-major
// pixel indices; edges join pixels at Manhattan distance 1.
class GridGraph {
public:
    GridGraph(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t vertex_count() const { return std::size_t(width_) * height_; }
    std::size_t edge_count() const;

    int vertex(int x, int y) const { return y * width_ + x; }

    template <typename F>
    void for_each_neighbor(int v, F&& f) const {
        const int x = v % width_;
        const int y = v / width_;
        if (x > 0) f(v - 1);
        if (x + 1 < width_) f(v + 1);
        if (y > 0) f(v - width_);
        if (y + 1 < height_) f(v + width_);
    }

private:
    int width_;
    int height_;
};

GridGraph adjacency_graph(const BinaryGrid& grid);

// PGM parse failure; carries the byte offset of the offending input.
class PgmError : public std::runtime_error {
public:
    PgmError(const std::string& message, std::size_t offset);
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

// P2/P5, maxval <= 255, '#' comments allowed in the header. Pixels with gray
// value < threshold become foreground.
BinaryGrid load_pgm(const std::vector<std::uint8_t>& bytes, int threshold);

// Binary P5 stream; foreground = 0, background = 255. load_pgm(save_pgm(g), 128) == g.
std::vector<std::uint8_t> save_pgm(const BinaryGrid& grid);

BinaryGrid load_pgm_file(const std::string& path, int threshold);
void save_pgm_file(const BinaryGrid& grid, const std::string& path);

// Central disk plus `arms` radial bars at equal angles, centred in the extent.
// Removing the core disk leaves exactly `arms` 4-connected components.
BinaryGrid make_star(int arms, double arm_length, double arm_width, int width, int height);

// Radius of the disk make_star places at the centre (bars stay pairwise
// disconnected outside it).
double star_core_radius(int arms, double arm_width);

}  // namespace pertop
