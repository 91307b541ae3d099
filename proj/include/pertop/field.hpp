#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace pertop {

// One finite real per pixel of an extent, row-major.
class ScalarField {
public:
    ScalarField(int width, int height, double fill = 0.0);
    ScalarField(int width, int height, std::vector<double> values);  // rejects NaN/inf

    int width() const { return width_; }
    int height() const { return height_; }
    std::size_t size() const { return values_.size(); }

    double at(int x, int y) const { return values_[std::size_t(y) * width_ + x]; }
    double operator[](std::size_t i) const { return values_[i]; }
    const double* data() const { return values_.data(); }
    const std::vector<double>& values() const { return values_; }

    double min_value() const;
    double max_value() const;

    bool operator==(const ScalarField&) const = default;

private:
    int width_;
    int height_;
    std::vector<double> values_;
};

// k >= 1 scalar fields over a shared extent; component 0 is the set-encoding
// coordinate by convention.
class MultiField {
public:
    explicit MultiField(std::vector<ScalarField> components);

    int width() const { return components_[0].width(); }
    int height() const { return components_[0].height(); }
    int arity() const { return int(components_.size()); }
    const ScalarField& component(int i) const { return components_[std::size_t(i)]; }
    const std::vector<ScalarField>& components() const { return components_; }

    bool operator==(const MultiField&) const = default;

private:
    std::vector<ScalarField> components_;
};

MultiField stack(std::vector<ScalarField> components);

ScalarField negated(const ScalarField& f);

// Locale-independent decimal text with 17 significant digits (round-trips
// binary64 exactly).
std::string format_real(double value);
double parse_real(std::string_view text);

// One CSV row per grid row.
std::string field_to_csv(const ScalarField& f);
ScalarField field_from_csv(const std::string& text);
ScalarField load_field_csv(const std::string& path);
void save_field_csv(const ScalarField& f, const std::string& path);

}  // namespace pertop
