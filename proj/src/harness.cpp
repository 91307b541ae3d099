#include "pertop/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace pertop {

namespace {

std::vector<std::pair<int, int>> disk_offsets(double radius) {
    const int r = int(std::floor(radius));
    const double r_sq = radius * radius;
    std::vector<std::pair<int, int>> offsets;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (double(dx) * dx + double(dy) * dy <= r_sq) offsets.emplace_back(dx, dy);
    return offsets;
}

}  // namespace

BinaryGrid perturb_salt_pepper(const BinaryGrid& grid, double radius, double p_add,
                               double p_remove, std::uint64_t seed) {
    if (!(radius > 0.0)) throw std::invalid_argument("perturbation radius must be positive");
    if (p_add < 0.0 || p_add > 1.0 || p_remove < 0.0 || p_remove > 1.0)
        throw std::invalid_argument("probabilities must lie in [0, 1]");
    if (grid.foreground_count() == 0)
        throw std::invalid_argument("cannot perturb an empty foreground");

    const int w = grid.width();
    const int h = grid.height();
    SplitMix64 rng(seed);
    std::vector<std::uint8_t> result(grid.mask());

    // Addition pass: background pixels within `radius` of the foreground.
    const std::vector<std::int64_t> sq = distance_transform_squared(grid);
    const double radius_sq = radius * radius;
    for (std::size_t i = 0; i < result.size(); ++i) {
        if (result[i]) continue;
        if (double(sq[i]) > radius_sq) continue;
        if (rng.next_unit() < p_add) result[i] = 1;
    }

    // Removal pass over the original foreground. cover(y) counts surviving
    // pixels within `radius` of each original foreground pixel; a removal
    // that would drop some cover to zero is vetoed.
    const std::vector<std::pair<int, int>> offsets = disk_offsets(radius);
    std::vector<std::int32_t> cover(result.size(), 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!grid.foreground(x, y)) continue;
            std::int32_t c = 0;
            for (const auto& [dx, dy] : offsets) {
                const int xx = x + dx;
                const int yy = y + dy;
                if (xx >= 0 && xx < w && yy >= 0 && yy < h && result[grid.index(xx, yy)]) ++c;
            }
            cover[grid.index(x, y)] = c;
        }

    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!grid.foreground(x, y)) continue;
            if (!(rng.next_unit() < p_remove)) continue;
            bool veto = false;
            for (const auto& [dx, dy] : offsets) {
                const int xx = x + dx;
                const int yy = y + dy;
                if (xx < 0 || xx >= w || yy < 0 || yy >= h) continue;
                if (grid.foreground(xx, yy) && cover[grid.index(xx, yy)] <= 1) {
                    veto = true;
                    break;
                }
            }
            if (veto) continue;
            result[grid.index(x, y)] = 0;
            for (const auto& [dx, dy] : offsets) {
                const int xx = x + dx;
                const int yy = y + dy;
                if (xx >= 0 && xx < w && yy >= 0 && yy < h && grid.foreground(xx, yy))
                    --cover[grid.index(xx, yy)];
            }
        }

    return BinaryGrid(w, h, std::move(result));
}

namespace {

nlohmann::ordered_json cost_json(double v) {
    if (std::isinf(v)) return "inf";
    return v;
}

std::vector<LeafOutcome> evaluate_leaves(const GridGraph& graph, const MultiField& f,
                                         const MultiField& g,
                                         const std::vector<AdmissiblePair>& leaves) {
    std::vector<LeafOutcome> outcomes;
    outcomes.reserve(leaves.size());
    for (const AdmissiblePair& leaf : leaves) {
        const PersistenceDiagram da = sublevel_diagram_0(graph, reduce(f, leaf));
        const PersistenceDiagram db = sublevel_diagram_0(graph, reduce(g, leaf));
        const ExtendedCost d = dmatch_1d(da, db);
        LeafOutcome out;
        out.theta = std::atan2(leaf.direction.size() > 1 ? leaf.direction[1] : 0.0,
                               leaf.direction[0]);
        out.offset = leaf.offset[0];
        out.min_direction = leaf.min_direction();
        out.dmatch = d.value;
        out.weighted = d.is_infinite() ? d.value : out.min_direction * d.value;
        outcomes.push_back(out);
    }
    return outcomes;
}

ExperimentReport build_report(std::string kind, const GridGraph& graph, const MultiField& f,
                              const MultiField& g, const std::vector<AdmissiblePair>& leaves,
                              std::string set_label, double set_distance, double phi_distance) {
    ExperimentReport report;
    report.kind = std::move(kind);
    report.set_distance_label = std::move(set_label);
    report.set_distance = set_distance;
    report.phi_distance = phi_distance;
    report.bound = std::max(set_distance, phi_distance);
    report.leaves = evaluate_leaves(graph, f, g, leaves);
    report.dmatch_lower_bound = 0.0;
    for (const LeafOutcome& out : report.leaves)
        report.dmatch_lower_bound = std::max(report.dmatch_lower_bound, out.weighted);
    report.bound_satisfied = report.dmatch_lower_bound <= report.bound + kBoundSlack;
    report.inputs.emplace_back("extent", std::to_string(f.width()) + "x" +
                                              std::to_string(f.height()));
    report.inputs.emplace_back("leaves", std::to_string(leaves.size()));
    return report;
}

void require_phi_extent(const ScalarField& phi1, const ScalarField& phi2, int w, int h) {
    if (phi1.width() != w || phi1.height() != h || phi2.width() != w || phi2.height() != h)
        throw std::invalid_argument("extent mismatch");
}

}  // namespace

ExperimentReport verify_stability_hausdorff(const BinaryGrid& grid1, const BinaryGrid& grid2,
                                            const ScalarField& phi1, const ScalarField& phi2,
                                            const std::vector<AdmissiblePair>& leaves) {
    require_phi_extent(phi1, phi2, grid1.width(), grid1.height());
    const MultiField f = stack({distance_transform(grid1), phi1});
    const MultiField g = stack({distance_transform(grid2), phi2});
    const GridGraph graph = adjacency_graph(grid1);
    return build_report("hausdorff", graph, f, g, leaves, "hausdorff", hausdorff(grid1, grid2),
                        sup_distance(phi1, phi2));
}

ExperimentReport verify_stability_symdiff(const BinaryGrid& grid1, const BinaryGrid& grid2,
                                          double eps, const ScalarField& phi1,
                                          const ScalarField& phi2,
                                          const std::vector<AdmissiblePair>& leaves) {
    require_phi_extent(phi1, phi2, grid1.width(), grid1.height());
    const MultiField f =
        stack({negated(local_density(grid1, eps, DiskNormalization::full)), phi1});
    const MultiField g =
        stack({negated(local_density(grid2, eps, DiskNormalization::full)), phi2});
    const GridGraph graph = adjacency_graph(grid1);
    const double bound = symmetric_difference(grid1, grid2) / double(disk_pixel_count(eps));
    ExperimentReport report = build_report("symdiff", graph, f, g, leaves,
                                           "symmetric_difference/disk_size", bound,
                                           sup_distance(phi1, phi2));
    report.inputs.emplace_back("eps", format_real(eps));
    report.inputs.emplace_back("disk_pixel_count", std::to_string(disk_pixel_count(eps)));
    return report;
}

ExperimentReport verify_stability_fuzzy(const ScalarField& p1, const ScalarField& p2,
                                        const ScalarField& phi1, const ScalarField& phi2,
                                        const std::vector<AdmissiblePair>& leaves) {
    require_phi_extent(phi1, phi2, p1.width(), p1.height());
    for (const ScalarField* p : {&p1, &p2})
        if (p->min_value() < 0.0 || p->max_value() > 1.0)
            throw std::invalid_argument("membership densities must lie in [0, 1]");
    const MultiField f = stack({negated(p1), phi1});
    const MultiField g = stack({negated(p2), phi2});
    const GridGraph graph(p1.width(), p1.height());
    return build_report("fuzzy", graph, f, g, leaves, "sup_density", sup_distance(p1, p2),
                        sup_distance(phi1, phi2));
}

RecoverySweep recovery_sweep(const BinaryGrid& grid, const ScalarField& phi, double u, double v,
                             const std::vector<std::pair<double, double>>& schedule) {
    if (!(u < v)) throw std::invalid_argument("recovery sweep needs u < v");
    RecoverySweep sweep;
    sweep.u = u;
    sweep.v = v;
    for (const auto& [alpha, beta] : schedule) {
        SweepRow row;
        row.alpha = alpha;
        row.beta = beta;
        row.leaf = leaf_params(alpha, u, beta, v);
        row.rank = recover_rank(grid, phi, u, v, alpha, beta);
        row.boundary_proximate = leaf_boundary_proximate(alpha);
        sweep.rows.push_back(std::move(row));
    }
    sweep.direct_rank = rank_restricted_0(grid, phi, u, v);
    return sweep;
}

std::string sweep_to_csv(const RecoverySweep& sweep) {
    std::string out = "alpha,u,beta,v,s,t,rank,note\n";
    for (const SweepRow& row : sweep.rows) {
        out += format_real(row.alpha);
        out += ',';
        out += format_real(sweep.u);
        out += ',';
        out += format_real(row.beta);
        out += ',';
        out += format_real(sweep.v);
        out += ',';
        out += format_real(row.leaf.s);
        out += ',';
        out += format_real(row.leaf.t);
        out += ',';
        out += std::to_string(row.rank);
        out += ',';
        if (row.boundary_proximate) out += "boundary";
        out += '\n';
    }
    out += "direct,";
    out += format_real(sweep.u);
    out += ",,";
    out += format_real(sweep.v);
    out += ",,,";
    out += std::to_string(sweep.direct_rank);
    out += ",\n";
    return out;
}

std::string report_to_json(const ExperimentReport& report) {
    nlohmann::ordered_json j;
    j["kind"] = report.kind;
    nlohmann::ordered_json inputs;
    for (const auto& [key, value] : report.inputs) inputs[key] = value;
    j["inputs"] = inputs;
    j["set_distance_label"] = report.set_distance_label;
    j["set_distance"] = report.set_distance;
    j["phi_distance"] = report.phi_distance;
    j["bound"] = report.bound;
    j["dmatch_lower_bound"] = cost_json(report.dmatch_lower_bound);
    j["bound_satisfied"] = report.bound_satisfied;
    nlohmann::ordered_json leaves = nlohmann::ordered_json::array();
    for (const LeafOutcome& out : report.leaves) {
        nlohmann::ordered_json leaf;
        leaf["theta"] = out.theta;
        leaf["b_offset"] = out.offset;
        leaf["min_l"] = out.min_direction;
        leaf["dmatch"] = cost_json(out.dmatch);
        leaf["weighted"] = cost_json(out.weighted);
        leaves.push_back(std::move(leaf));
    }
    j["per_leaf"] = leaves;
    return j.dump(2) + "\n";
}

std::string leaves_to_csv(const std::vector<LeafOutcome>& leaves) {
    std::string out = "theta,b_offset,min_l,dmatch,weighted\n";
    for (const LeafOutcome& leaf : leaves) {
        out += format_real(leaf.theta);
        out += ',';
        out += format_real(leaf.offset);
        out += ',';
        out += format_real(leaf.min_direction);
        out += ',';
        out += std::isinf(leaf.dmatch) ? "inf" : format_real(leaf.dmatch);
        out += ',';
        out += std::isinf(leaf.weighted) ? "inf" : format_real(leaf.weighted);
        out += '\n';
    }
    return out;
}

namespace {

std::string svg_num(double v) {
    char buf[48];
    const int len = std::snprintf(buf, sizeof buf, "%.3f", v);
    return std::string(buf, std::size_t(len));
}

}  // namespace

std::string diagram_to_svg(const PersistenceDiagram& dgm) {
    double lo = 0.0;
    double hi = 1.0;
    bool has_points = false;
    auto widen = [&](double v) {
        if (!has_points) {
            lo = hi = v;
            has_points = true;
        } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    };
    for (const DiagramPoint& p : dgm.finite) {
        widen(p.birth);
        widen(p.death);
    }
    for (double b : dgm.essential) widen(b);
    if (!has_points) {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;

    const double size = 640.0;
    const double margin = 40.0;
    const double span = size - 2.0 * margin;
    auto sx = [&](double v) { return margin + (v - lo) / (hi - lo) * span; };
    auto sy = [&](double v) { return size - margin - (v - lo) / (hi - lo) * span; };

    std::string svg;
    svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"640\" "
           "height=\"640\" viewBox=\"0 0 640 640\">\n";
    svg += "  <rect x=\"0\" y=\"0\" width=\"640\" height=\"640\" fill=\"white\"/>\n";
    // axes
    svg += "  <line x1=\"" + svg_num(margin) + "\" y1=\"" + svg_num(size - margin) + "\" x2=\"" +
           svg_num(size - margin) + "\" y2=\"" + svg_num(size - margin) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg += "  <line x1=\"" + svg_num(margin) + "\" y1=\"" + svg_num(size - margin) + "\" x2=\"" +
           svg_num(margin) + "\" y2=\"" + svg_num(margin) +
           "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    // diagonal
    svg += "  <line x1=\"" + svg_num(sx(lo)) + "\" y1=\"" + svg_num(sy(lo)) + "\" x2=\"" +
           svg_num(sx(hi)) + "\" y2=\"" + svg_num(sy(hi)) +
           "\" stroke=\"gray\" stroke-width=\"1\"/>\n";
    for (double b : dgm.essential)
        svg += "  <line x1=\"" + svg_num(sx(b)) + "\" y1=\"" + svg_num(sy(b)) + "\" x2=\"" +
               svg_num(sx(b)) + "\" y2=\"" + svg_num(margin) +
               "\" stroke=\"red\" stroke-width=\"1.5\"/>\n";
    for (const DiagramPoint& p : dgm.finite)
        svg += "  <circle cx=\"" + svg_num(sx(p.birth)) + "\" cy=\"" + svg_num(sy(p.death)) +
               "\" r=\"3\" fill=\"red\"/>\n";
    svg += "</svg>\n";
    return svg;
}

void emit_diagram_svg(const PersistenceDiagram& dgm, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << diagram_to_svg(dgm);
    if (!out) throw std::runtime_error("write failed: " + path);
}

double auto_offset_range(const MultiField& f, const MultiField& g) {
    double lo = f.component(0).min_value();
    double hi = f.component(0).max_value();
    for (const MultiField* m : {&f, &g})
        for (const ScalarField& c : m->components()) {
            lo = std::min(lo, c.min_value());
            hi = std::max(hi, c.max_value());
        }
    const double range = hi - lo;
    return range > 0.0 ? range / 2.0 : 1.0;
}

std::vector<AdmissiblePair> default_leaves(const MultiField& f, const MultiField& g) {
    return sample_admissible_2(kDefaultLeafAngles, kDefaultLeafOffsets, auto_offset_range(f, g));
}

}  // namespace pertop
