#include "pertop/field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace pertop {

ScalarField::ScalarField(int width, int height, double fill)
    : ScalarField(width, height, std::vector<double>(std::size_t(width) * height, fill)) {}

ScalarField::ScalarField(int width, int height, std::vector<double> values)
    : width_(width), height_(height), values_(std::move(values)) {
    if (width_ < 1 || height_ < 1) throw std::invalid_argument("field extent must be positive");
    if (values_.size() != std::size_t(width_) * height_)
        throw std::invalid_argument("value count does not match extent");
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("field values must be finite");
}

double ScalarField::min_value() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max_value() const { return *std::max_element(values_.begin(), values_.end()); }

MultiField::MultiField(std::vector<ScalarField> components) : components_(std::move(components)) {
    if (components_.empty()) throw std::invalid_argument("multifield needs at least one component");
    for (const ScalarField& c : components_)
        if (c.width() != components_[0].width() || c.height() != components_[0].height())
            throw std::invalid_argument("multifield components must share the extent");
}

MultiField stack(std::vector<ScalarField> components) { return MultiField(std::move(components)); }

ScalarField negated(const ScalarField& f) {
    std::vector<double> values(f.values());
    for (double& v : values) v = -v;
    return ScalarField(f.width(), f.height(), std::move(values));
}

std::string format_real(double value) {
    char buf[40];
    const auto result =
        std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, result.ptr);
}

double parse_real(std::string_view text) {
    // Leading whitespace tolerated; "inf" handled by callers that allow it.
    std::size_t begin = text.find_first_not_of(" \t");
    if (begin == std::string_view::npos) throw std::invalid_argument("empty number");
    double value = 0.0;
    const auto result = std::from_chars(text.data() + begin, text.data() + text.size(), value);
    if (result.ec != std::errc() || result.ptr != text.data() + text.size())
        throw std::invalid_argument("malformed number: " + std::string(text));
    return value;
}

std::string field_to_csv(const ScalarField& f) {
    std::string out;
    out.reserve(f.size() * 20);
    for (int y = 0; y < f.height(); ++y) {
        for (int x = 0; x < f.width(); ++x) {
            if (x) out += ',';
            out += format_real(f.at(x, y));
        }
        out += '\n';
    }
    return out;
}

ScalarField field_from_csv(const std::string& text) {
    std::vector<double> values;
    int width = -1;
    int height = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string::npos) eol = text.size();
        std::string_view line(text.data() + pos, eol - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        pos = eol + 1;
        if (line.empty()) continue;

        int cols = 0;
        std::size_t cell = 0;
        while (cell <= line.size()) {
            std::size_t comma = line.find(',', cell);
            if (comma == std::string_view::npos) comma = line.size();
            values.push_back(parse_real(line.substr(cell, comma - cell)));
            ++cols;
            cell = comma + 1;
            if (comma == line.size()) break;
        }
        if (width == -1) width = cols;
        if (cols != width) throw std::invalid_argument("ragged CSV rows");
        ++height;
    }
    if (width < 1 || height < 1) throw std::invalid_argument("empty CSV field");
    return ScalarField(width, height, std::move(values));
}

ScalarField load_field_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return field_from_csv(text);
}

void save_field_csv(const ScalarField& f, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << field_to_csv(f);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pertop
