#include "pertop/grid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

namespace pertop {

BinaryGrid::BinaryGrid(int width, int height)
    : BinaryGrid(width, height, std::vector<std::uint8_t>(std::size_t(width) * height, 0)) {}

BinaryGrid::BinaryGrid(int width, int height, std::vector<std::uint8_t> mask)
    : width_(width), height_(height), mask_(std::move(mask)) {
    if (width_ < 1 || height_ < 1) throw std::invalid_argument("grid extent must be positive");
    if (mask_.size() != std::size_t(width_) * height_)
        throw std::invalid_argument("mask size does not match extent");
    for (std::uint8_t& m : mask_) m = m ? 1 : 0;
}

BinaryGrid BinaryGrid::from_pixels(int width, int height,
                                   const std::vector<std::pair<int, int>>& pixels) {
    std::vector<std::uint8_t> mask(std::size_t(width) * height, 0);
    for (const auto& [x, y] : pixels) {
        if (x < 0 || x >= width || y < 0 || y >= height)
            throw std::invalid_argument("foreground pixel outside extent");
        mask[std::size_t(y) * width + x] = 1;
    }
    return BinaryGrid(width, height, std::move(mask));
}

std::size_t BinaryGrid::foreground_count() const {
    return std::size_t(std::count(mask_.begin(), mask_.end(), std::uint8_t(1)));
}

GridGraph::GridGraph(int width, int height) : width_(width), height_(height) {
    if (width_ < 1 || height_ < 1) throw std::invalid_argument("graph extent must be positive");
}

std::size_t GridGraph::edge_count() const {
    return std::size_t(width_) * (height_ - 1) + std::size_t(height_) * (width_ - 1);
}

GridGraph adjacency_graph(const BinaryGrid& grid) {
    return GridGraph(grid.width(), grid.height());
}

PgmError::PgmError(const std::string& message, std::size_t offset)
    : std::runtime_error(message + " (byte " + std::to_string(offset) + ")"),
      offset_(offset) {}

namespace {

bool is_pgm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\v' || c == '\f';
}

struct PgmReader {
    const std::vector<std::uint8_t>& bytes;
    std::size_t pos = 0;

    bool eof() const { return pos >= bytes.size(); }

    void skip_space_and_comments() {
        while (!eof()) {
            if (is_pgm_space(bytes[pos])) {
                ++pos;
            } else if (bytes[pos] == '#') {
                while (!eof() && bytes[pos] != '\n') ++pos;
            } else {
                break;
            }
        }
    }

    long read_int(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos;
        if (eof() || bytes[pos] < '0' || bytes[pos] > '9')
            throw PgmError(std::string("malformed header: expected ") + what, pos);
        long value = 0;
        while (!eof() && bytes[pos] >= '0' && bytes[pos] <= '9') {
            value = value * 10 + (bytes[pos] - '0');
            if (value > 1'000'000'000) throw PgmError("malformed header: value overflow", start);
            ++pos;
        }
        return value;
    }
};

}  // namespace

BinaryGrid load_pgm(const std::vector<std::uint8_t>& bytes, int threshold) {
    if (threshold < 0 || threshold > 255)
        throw std::invalid_argument("threshold must lie in [0, 255]");

    PgmReader in{bytes};
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '2' && bytes[1] != '5'))
        throw PgmError("unsupported magic number", 0);
    const bool binary = bytes[1] == '5';
    in.pos = 2;

    const long width = in.read_int("width");
    const long height = in.read_int("height");
    const long maxval = in.read_int("maxval");
    if (width < 1 || height < 1)
        throw PgmError("malformed header: non-positive dimensions", in.pos);
    if (maxval < 1 || maxval > 255)
        throw PgmError("malformed header: maxval outside [1, 255]", in.pos);
    const std::size_t count = std::size_t(width) * std::size_t(height);

    std::vector<std::uint8_t> mask(count, 0);
    if (binary) {
        if (in.eof() || !is_pgm_space(bytes[in.pos]))
            throw PgmError("malformed header: missing separator before payload", in.pos);
        ++in.pos;
        if (bytes.size() - in.pos < count)
            throw PgmError("dimension/payload mismatch: truncated payload", bytes.size());
        for (std::size_t i = 0; i < count; ++i) {
            const std::uint8_t v = bytes[in.pos + i];
            if (v > maxval)
                throw PgmError("dimension/payload mismatch: sample exceeds maxval", in.pos + i);
            mask[i] = v < threshold ? 1 : 0;
        }
        in.pos += count;
        if (in.pos != bytes.size())
            throw PgmError("dimension/payload mismatch: trailing data", in.pos);
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t at = in.pos;
            const long v = in.read_int("sample");
            if (v > maxval)
                throw PgmError("dimension/payload mismatch: sample exceeds maxval", at);
            mask[i] = v < threshold ? 1 : 0;
        }
        in.skip_space_and_comments();
        if (!in.eof()) throw PgmError("dimension/payload mismatch: trailing data", in.pos);
    }
    return BinaryGrid(int(width), int(height), std::move(mask));
}

std::vector<std::uint8_t> save_pgm(const BinaryGrid& grid) {
    char header[64];
    const int len =
        std::snprintf(header, sizeof header, "P5\n%d %d\n255\n", grid.width(), grid.height());
    std::vector<std::uint8_t> out(header, header + len);
    out.reserve(out.size() + grid.pixel_count());
    for (std::uint8_t m : grid.mask()) out.push_back(m ? 0 : 255);
    return out;
}

BinaryGrid load_pgm_file(const std::string& path, int threshold) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return load_pgm(bytes, threshold);
}

void save_pgm_file(const BinaryGrid& grid, const std::string& path) {
    const std::vector<std::uint8_t> bytes = save_pgm(grid);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

double star_core_radius(int arms, double arm_width) {
    if (arms < 1) throw std::invalid_argument("star needs at least one arm");
    if (arms == 1) return arm_width;
    const double separation = (arm_width + 2.0) / (2.0 * std::sin(std::numbers::pi / arms));
    return std::max(arm_width, separation);
}

BinaryGrid make_star(int arms, double arm_length, double arm_width, int width, int height) {
    if (arms < 1 || arm_length < 1.0 || arm_width < 1.0)
        throw std::invalid_argument("star parameters must be positive");
    const double cx = (width - 1) / 2.0;
    const double cy = (height - 1) / 2.0;
    const double core = star_core_radius(arms, arm_width);
    const double outer = core + arm_length;
    const double room = std::min(std::min(cx, cy),
                                 std::min(width - 1 - cx, height - 1 - cy));
    if (outer + arm_width / 2.0 > room)
        throw std::invalid_argument("star geometry exceeds extent");

    // Bar directions. For even arm counts the second half is the exact
    // negation of the first, which makes the pixel set exactly symmetric
    // under 180-degree rotation.
    std::vector<std::pair<double, double>> dirs(arms);
    const int independent = (arms % 2 == 0) ? arms / 2 : arms;
    for (int j = 0; j < independent; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / arms;
        double dx = std::cos(theta);
        double dy = std::sin(theta);
        if (std::fabs(dx) < 1e-15) dx = 0.0;
        if (std::fabs(dy) < 1e-15) dy = 0.0;
        dirs[j] = {dx, dy};
    }
    for (int j = independent; j < arms; ++j)
        dirs[j] = {-dirs[j - independent].first, -dirs[j - independent].second};

    const double core2 = core * core;
    const double half = arm_width / 2.0;
    const double half2 = half * half;
    std::vector<std::uint8_t> mask(std::size_t(width) * height, 0);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            const double rx = x - cx;
            const double ry = y - cy;
            const double r2 = rx * rx + ry * ry;
            bool in = r2 <= core2;
            for (int j = 0; !in && j < arms; ++j) {
                double t = rx * dirs[j].first + ry * dirs[j].second;
                t = std::clamp(t, 0.0, outer);
                const double px = rx - t * dirs[j].first;
                const double py = ry - t * dirs[j].second;
                in = px * px + py * py <= half2;
            }
            if (in) mask[std::size_t(y) * width + x] = 1;
        }
    }
    return BinaryGrid(width, height, std::move(mask));
}

}  // namespace pertop
