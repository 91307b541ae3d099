#include "pertop/foliation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pertop/encodings.hpp"
#include "pertop/kernels.hpp"

namespace pertop {

double AdmissiblePair::min_direction() const {
    return *std::min_element(direction.begin(), direction.end());
}

void validate(const AdmissiblePair& pair) {
    if (pair.direction.empty() || pair.direction.size() != pair.offset.size())
        throw std::invalid_argument("admissible pair dimension mismatch");
    double norm_sq = 0.0;
    double offset_sum = 0.0;
    for (std::size_t i = 0; i < pair.direction.size(); ++i) {
        if (!(pair.direction[i] > 0.0))
            throw std::invalid_argument("direction components must be positive");
        norm_sq += pair.direction[i] * pair.direction[i];
        offset_sum += pair.offset[i];
    }
    if (std::fabs(norm_sq - 1.0) > 1e-12)
        throw std::invalid_argument("direction must have unit 2-norm");
    if (std::fabs(offset_sum) > 1e-12)
        throw std::invalid_argument("offset components must sum to zero");
}

ScalarField reduce(const MultiField& fields, const AdmissiblePair& pair) {
    validate(pair);
    if (pair.arity() != fields.arity())
        throw std::invalid_argument("leaf dimension does not match field");
    const std::size_t n = std::size_t(fields.width()) * fields.height();
    std::vector<double> values(n);
    kernels::shift_scale(values.data(), fields.component(0).data(), pair.offset[0],
                         1.0 / pair.direction[0], n);
    for (int i = 1; i < fields.arity(); ++i)
        kernels::shift_scale_max(values.data(), fields.component(i).data(),
                                 pair.offset[std::size_t(i)],
                                 1.0 / pair.direction[std::size_t(i)], n);
    return ScalarField(fields.width(), fields.height(), std::move(values));
}

RankQuery leaf_point_to_query(const LeafPoint& point) {
    validate(point.pair);
    if (!(point.s < point.t)) throw std::invalid_argument("leaf point needs s < t");
    RankQuery query;
    const std::size_t k = point.pair.direction.size();
    query.lower.resize(k);
    query.upper.resize(k);
    for (std::size_t i = 0; i < k; ++i) {
        query.lower[i] = point.s * point.pair.direction[i] + point.pair.offset[i];
        query.upper[i] = point.t * point.pair.direction[i] + point.pair.offset[i];
    }
    return query;
}

LeafPoint leaf_params(double alpha, double u, double beta, double v) {
    if (!(alpha < beta && u < v))
        throw std::invalid_argument("leaf parameters need alpha < beta and u < v");
    const double da = beta - alpha;
    const double du = v - u;
    const double norm = std::sqrt(da * da + du * du);
    const double l1 = da / norm;
    const double l2 = du / norm;
    const double denom = da + du;
    const double b1 = (alpha * (beta + v) - beta * (alpha + u)) / denom;
    const double b2 = (u * (beta + v) - v * (alpha + u)) / denom;
    LeafPoint point;
    point.pair.direction = {l1, l2};
    point.pair.offset = {b1, b2};
    point.s = (alpha + u) / (l1 + l2);
    point.t = (beta + v) / (l1 + l2);
    return point;
}

bool leaf_boundary_proximate(double alpha) { return alpha == 0.0; }

std::vector<AdmissiblePair> sample_admissible_2(int n_angles, int n_offsets, double offset_range,
                                                double angle_margin) {
    if (n_angles < 1 || n_offsets < 1)
        throw std::invalid_argument("sampler needs at least one angle and one offset");
    if (!(offset_range > 0.0)) throw std::invalid_argument("offset range must be positive");
    const double span = std::numbers::pi / 2 - 2.0 * angle_margin;
    std::vector<AdmissiblePair> leaves;
    leaves.reserve(std::size_t(n_angles) * n_offsets);
    for (int j = 0; j < n_angles; ++j) {
        const double theta = angle_margin + (j + 0.5) * span / n_angles;
        const double l1 = std::cos(theta);
        const double l2 = std::sin(theta);
        for (int m = 0; m < n_offsets; ++m) {
            const double c = -offset_range + (m + 0.5) * (2.0 * offset_range) / n_offsets;
            leaves.push_back({{l1, l2}, {c, -c}});
        }
    }
    return leaves;
}

long recover_rank(const BinaryGrid& grid, const ScalarField& phi, double u, double v,
                  double alpha, double beta) {
    if (!(alpha >= 0.0)) throw std::invalid_argument("recover_rank needs alpha >= 0");
    if (grid.width() != phi.width() || grid.height() != phi.height())
        throw std::invalid_argument("extent mismatch");
    const LeafPoint point = leaf_params(alpha, u, beta, v);
    const MultiField combined = stack({distance_transform(grid), phi});
    const ScalarField reduced = reduce(combined, point.pair);
    const GridGraph graph = adjacency_graph(grid);
    return rank_from_diagram(sublevel_diagram_0(graph, reduced), point.s, point.t);
}

std::string leaves_to_json(const std::vector<AdmissiblePair>& leaves) {
    std::string out = "[";
    for (std::size_t i = 0; i < leaves.size(); ++i) {
        if (i) out += ", ";
        out += "{\"l\": [";
        for (std::size_t j = 0; j < leaves[i].direction.size(); ++j) {
            if (j) out += ", ";
            out += format_real(leaves[i].direction[j]);
        }
        out += "], \"b\": [";
        for (std::size_t j = 0; j < leaves[i].offset.size(); ++j) {
            if (j) out += ", ";
            out += format_real(leaves[i].offset[j]);
        }
        out += "]}";
    }
    out += "]";
    return out;
}

}  // namespace pertop
