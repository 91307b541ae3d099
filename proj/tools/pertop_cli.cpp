// Command-line front end: set encodings, diagrams, matching distances,
// perturbation, stability verification, and the rank-recovery sweep.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pertop/encodings.hpp"
#include "pertop/foliation.hpp"
#include "pertop/grid.hpp"
#include "pertop/harness.hpp"
#include "pertop/matching.hpp"
#include "pertop/persistence.hpp"

namespace {

using namespace pertop;

constexpr int kExitOk = 0;
constexpr int kExitBoundViolated = 1;
constexpr int kExitUsage = 2;

std::pair<double, double> parse_center(const std::string& text) {
    const std::size_t comma = text.find(',');
    if (comma == std::string::npos)
        throw std::invalid_argument("--center expects \"x,y\"");
    return {parse_real(text.substr(0, comma)), parse_real(text.substr(comma + 1))};
}

void write_output(const std::string& content, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << content;
    if (!out) throw std::runtime_error("write failed: " + path);
}

ScalarField phi_for(const BinaryGrid& grid, const std::optional<std::string>& center,
                    const std::optional<std::string>& phi_csv) {
    if (phi_csv) {
        const ScalarField phi = load_field_csv(*phi_csv);
        if (phi.width() != grid.width() || phi.height() != grid.height())
            throw std::invalid_argument("phi CSV extent does not match the image");
        return phi;
    }
    double cx, cy;
    if (center) {
        std::tie(cx, cy) = parse_center(*center);
    } else {
        std::tie(cx, cy) = centroid(grid);
    }
    return radial_field(grid.width(), grid.height(), cx, cy);
}

std::vector<std::pair<double, double>> parse_schedule(const std::string& text) {
    // "alpha:beta,alpha:beta,..."
    std::vector<std::pair<double, double>> schedule;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        const std::string item = text.substr(pos, comma - pos);
        const std::size_t colon = item.find(':');
        if (colon == std::string::npos)
            throw std::invalid_argument("--schedule expects \"alpha:beta,...\"");
        schedule.emplace_back(parse_real(item.substr(0, colon)),
                              parse_real(item.substr(colon + 1)));
        pos = comma + 1;
    }
    if (schedule.empty()) throw std::invalid_argument("empty --schedule");
    return schedule;
}

std::string cost_text(double v) { return std::isinf(v) ? "inf" : format_real(v); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"persistent-homology rank invariants of pixel sets, "
                 "half-plane matching distances, and stability experiments"};
    app.require_subcommand(1);

    int exit_code = kExitOk;

    // make-star
    auto* star = app.add_subcommand("make-star", "write a synthetic star test image");
    std::string star_out;
    int star_arms = 8, star_width = 64, star_height = 64;
    double star_length = 20.0, star_arm_width = 3.0;
    star->add_option("-o,--output", star_out, "PGM output")->required();
    star->add_option("--arms", star_arms, "number of radial bars");
    star->add_option("--arm-length", star_length, "bar length in pixels");
    star->add_option("--arm-width", star_arm_width, "bar width in pixels");
    star->add_option("--width", star_width, "image width");
    star->add_option("--height", star_height, "image height");
    star->callback([&] {
        save_pgm_file(make_star(star_arms, star_length, star_arm_width, star_width, star_height),
                      star_out);
    });

    // encode
    auto* encode = app.add_subcommand("encode", "turn an image into a scalar field CSV");
    std::string encode_image, encode_field = "distance", encode_out, encode_center_str;
    int encode_threshold = 128;
    double encode_eps = 2.0;
    bool encode_full_disk = false;
    encode->add_option("image", encode_image, "PGM input")->required();
    encode->add_option("--field", encode_field, "distance|density|radial")
        ->check(CLI::IsMember({"distance", "density", "radial"}));
    encode->add_option("--threshold", encode_threshold, "foreground threshold (gray < t)");
    encode->add_option("--eps", encode_eps, "density disk radius");
    encode->add_flag("--full-disk", encode_full_disk,
                     "normalize density by the unclipped disk size");
    encode->add_option("--center", encode_center_str, "radial center \"x,y\" (default centroid)");
    encode->add_option("-o,--output", encode_out, "output path (default stdout)");
    encode->callback([&] {
        const BinaryGrid grid = load_pgm_file(encode_image, encode_threshold);
        ScalarField field = [&] {
            if (encode_field == "distance") return distance_transform(grid);
            if (encode_field == "density")
                return local_density(grid, encode_eps,
                                     encode_full_disk ? DiskNormalization::full
                                                      : DiskNormalization::clipped);
            return phi_for(grid, encode_center_str.empty()
                                     ? std::nullopt
                                     : std::optional<std::string>(encode_center_str),
                           std::nullopt);
        }();
        write_output(field_to_csv(field), encode_out);
    });

    // diagram
    auto* diagram = app.add_subcommand("diagram", "zeroth persistence diagram of a field CSV");
    std::string diagram_field, diagram_format = "json", diagram_out;
    diagram->add_option("field", diagram_field, "scalar field CSV")->required();
    diagram->add_option("--format", diagram_format, "json|csv|svg")
        ->check(CLI::IsMember({"json", "csv", "svg"}));
    diagram->add_option("-o,--output", diagram_out, "output path (default stdout)");
    diagram->callback([&] {
        const ScalarField field = load_field_csv(diagram_field);
        const GridGraph graph(field.width(), field.height());
        const PersistenceDiagram dgm = sublevel_diagram_0(graph, field);
        if (diagram_format == "json")
            write_output(diagram_to_json(dgm) + "\n", diagram_out);
        else if (diagram_format == "csv")
            write_output(diagram_to_csv(dgm), diagram_out);
        else if (diagram_out.empty() || diagram_out == "-")
            std::cout << diagram_to_svg(dgm);
        else
            emit_diagram_svg(dgm, diagram_out);
    });

    // dmatch
    auto* dmatch = app.add_subcommand("dmatch", "bottleneck matching distance of two diagrams");
    std::string dmatch_a, dmatch_b;
    dmatch->add_option("a", dmatch_a, "diagram JSON")->required();
    dmatch->add_option("b", dmatch_b, "diagram JSON")->required();
    dmatch->callback([&] {
        auto load = [](const std::string& path) {
            std::ifstream in(path, std::ios::binary);
            if (!in) throw std::runtime_error("cannot open " + path);
            const std::string text((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
            return diagram_from_json(text);
        };
        const ExtendedCost d = dmatch_1d(load(dmatch_a), load(dmatch_b));
        std::cout << cost_text(d.value) << "\n";
    });

    // dmatch-multi
    auto* multi = app.add_subcommand(
        "dmatch-multi", "sampled matching-distance lower bound between two encoded images");
    std::string multi_a, multi_b, multi_center, multi_phi_csv, multi_leaf_csv, multi_out;
    int multi_threshold = 128, multi_angles = kDefaultLeafAngles,
        multi_offsets = kDefaultLeafOffsets;
    double multi_offset_range = 0.0;
    multi->add_option("a", multi_a, "first PGM image")->required();
    multi->add_option("b", multi_b, "second PGM image")->required();
    multi->add_option("--threshold", multi_threshold, "foreground threshold");
    multi->add_option("--center", multi_center, "radial center \"x,y\"");
    multi->add_option("--phi-csv", multi_phi_csv, "load the measuring field from CSV");
    multi->add_option("--angles", multi_angles, "leaf angles");
    multi->add_option("--offsets", multi_offsets, "leaf offsets");
    multi->add_option("--offset-range", multi_offset_range,
                      "offset half-range (default: auto from the value range)");
    multi->add_option("--leaf-csv", multi_leaf_csv, "write the per-leaf table to this path");
    multi->add_option("-o,--output", multi_out, "report output (default stdout)");
    multi->callback([&] {
        const BinaryGrid a = load_pgm_file(multi_a, multi_threshold);
        const BinaryGrid b = load_pgm_file(multi_b, multi_threshold);
        const ScalarField phi =
            phi_for(a, multi_center.empty() ? std::nullopt : std::optional(multi_center),
                    multi_phi_csv.empty() ? std::nullopt : std::optional(multi_phi_csv));
        const MultiField f = stack({distance_transform(a), phi});
        const MultiField g = stack({distance_transform(b), phi});
        const double range =
            multi_offset_range > 0.0 ? multi_offset_range : auto_offset_range(f, g);
        const auto leaves = sample_admissible_2(multi_angles, multi_offsets, range);
        ExperimentReport report = verify_stability_hausdorff(a, b, phi, phi, leaves);
        report.inputs.emplace_back("image_a", multi_a);
        report.inputs.emplace_back("image_b", multi_b);
        if (!multi_leaf_csv.empty()) write_output(leaves_to_csv(report.leaves), multi_leaf_csv);
        write_output(report_to_json(report), multi_out);
    });

    // perturb
    auto* perturb = app.add_subcommand("perturb", "salt & pepper noise near the foreground");
    std::string perturb_image, perturb_out;
    int perturb_threshold = 128;
    double perturb_radius = 3.0, perturb_add = 0.1, perturb_remove = 0.0;
    std::uint64_t perturb_seed = 1;
    perturb->add_option("image", perturb_image, "PGM input")->required();
    perturb->add_option("-o,--output", perturb_out, "PGM output")->required();
    perturb->add_option("--threshold", perturb_threshold, "foreground threshold");
    perturb->add_option("--radius", perturb_radius, "neighbourhood radius");
    perturb->add_option("--p-add", perturb_add, "addition probability");
    perturb->add_option("--p-remove", perturb_remove, "removal probability");
    perturb->add_option("--seed", perturb_seed, "RNG seed");
    perturb->callback([&] {
        const BinaryGrid grid = load_pgm_file(perturb_image, perturb_threshold);
        save_pgm_file(perturb_salt_pepper(grid, perturb_radius, perturb_add, perturb_remove,
                                          perturb_seed),
                      perturb_out);
    });

    // verify-stability
    auto* verify = app.add_subcommand("verify-stability", "check a stability inequality");
    verify->require_subcommand(1);
    std::string vs_a, vs_b, vs_center, vs_phi_csv, vs_out, vs_leaf_csv;
    int vs_threshold = 128, vs_angles = kDefaultLeafAngles, vs_offsets = kDefaultLeafOffsets;
    double vs_offset_range = 0.0, vs_eps = 2.0;
    std::uint64_t vs_seed = 0;
    bool vs_seed_given = false;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--threshold", vs_threshold, "foreground threshold");
        sub->add_option("--center", vs_center, "radial center \"x,y\"");
        sub->add_option("--phi-csv", vs_phi_csv, "load the measuring field from CSV");
        sub->add_option("--angles", vs_angles, "leaf angles");
        sub->add_option("--offsets", vs_offsets, "leaf offsets");
        sub->add_option("--offset-range", vs_offset_range, "offset half-range (default auto)");
        sub->add_option("--seed", vs_seed, "provenance seed recorded in the report")
            ->each([&](const std::string&) { vs_seed_given = true; });
        sub->add_option("--leaf-csv", vs_leaf_csv, "write the per-leaf table to this path");
        sub->add_option("-o,--output", vs_out, "report output (default stdout)");
    };

    auto* vs_hausdorff =
        verify->add_subcommand("hausdorff", "distance-function encoding vs Hausdorff distance");
    vs_hausdorff->add_option("a", vs_a, "first PGM image")->required();
    vs_hausdorff->add_option("b", vs_b, "second PGM image")->required();
    add_common(vs_hausdorff);

    auto* vs_symdiff = verify->add_subcommand(
        "symdiff", "density encoding vs symmetric-difference distance");
    vs_symdiff->add_option("a", vs_a, "first PGM image")->required();
    vs_symdiff->add_option("b", vs_b, "second PGM image")->required();
    vs_symdiff->add_option("--eps", vs_eps, "density disk radius");
    add_common(vs_symdiff);

    auto* vs_fuzzy =
        verify->add_subcommand("fuzzy", "membership-density encoding vs sup distance");
    vs_fuzzy->add_option("a", vs_a, "first density CSV")->required();
    vs_fuzzy->add_option("b", vs_b, "second density CSV")->required();
    add_common(vs_fuzzy);

    auto finish_report = [&](ExperimentReport report) {
        report.inputs.emplace_back("input_a", vs_a);
        report.inputs.emplace_back("input_b", vs_b);
        if (vs_seed_given) report.inputs.emplace_back("seed", std::to_string(vs_seed));
        if (!vs_leaf_csv.empty()) write_output(leaves_to_csv(report.leaves), vs_leaf_csv);
        write_output(report_to_json(report), vs_out);
        if (!report.bound_satisfied) exit_code = kExitBoundViolated;
    };

    vs_hausdorff->callback([&] {
        const BinaryGrid a = load_pgm_file(vs_a, vs_threshold);
        const BinaryGrid b = load_pgm_file(vs_b, vs_threshold);
        const ScalarField phi =
            phi_for(a, vs_center.empty() ? std::nullopt : std::optional(vs_center),
                    vs_phi_csv.empty() ? std::nullopt : std::optional(vs_phi_csv));
        const MultiField f = stack({distance_transform(a), phi});
        const MultiField g = stack({distance_transform(b), phi});
        const double range = vs_offset_range > 0.0 ? vs_offset_range : auto_offset_range(f, g);
        finish_report(verify_stability_hausdorff(
            a, b, phi, phi, sample_admissible_2(vs_angles, vs_offsets, range)));
    });

    vs_symdiff->callback([&] {
        const BinaryGrid a = load_pgm_file(vs_a, vs_threshold);
        const BinaryGrid b = load_pgm_file(vs_b, vs_threshold);
        const ScalarField phi =
            phi_for(a, vs_center.empty() ? std::nullopt : std::optional(vs_center),
                    vs_phi_csv.empty() ? std::nullopt : std::optional(vs_phi_csv));
        const MultiField f =
            stack({negated(local_density(a, vs_eps, DiskNormalization::full)), phi});
        const MultiField g =
            stack({negated(local_density(b, vs_eps, DiskNormalization::full)), phi});
        const double range = vs_offset_range > 0.0 ? vs_offset_range : auto_offset_range(f, g);
        finish_report(verify_stability_symdiff(
            a, b, vs_eps, phi, phi, sample_admissible_2(vs_angles, vs_offsets, range)));
    });

    vs_fuzzy->callback([&] {
        const ScalarField p1 = load_field_csv(vs_a);
        const ScalarField p2 = load_field_csv(vs_b);
        const ScalarField phi = [&] {
            if (!vs_phi_csv.empty()) return load_field_csv(vs_phi_csv);
            double cx = (p1.width() - 1) / 2.0;
            double cy = (p1.height() - 1) / 2.0;
            if (!vs_center.empty()) std::tie(cx, cy) = parse_center(vs_center);
            return radial_field(p1.width(), p1.height(), cx, cy);
        }();
        const MultiField f = stack({negated(p1), phi});
        const MultiField g = stack({negated(p2), phi});
        const double range = vs_offset_range > 0.0 ? vs_offset_range : auto_offset_range(f, g);
        finish_report(verify_stability_fuzzy(
            p1, p2, phi, phi, sample_admissible_2(vs_angles, vs_offsets, range)));
    });

    // recover
    auto* recover = app.add_subcommand(
        "recover", "rank-recovery sweep through shrinking foliation slices");
    std::string recover_image, recover_center, recover_schedule, recover_out;
    int recover_threshold = 128;
    double recover_u = 0.0, recover_v = 0.0;
    recover->add_option("image", recover_image, "PGM input")->required();
    recover->add_option("--u", recover_u, "lower measuring level")->required();
    recover->add_option("--v", recover_v, "upper measuring level")->required();
    recover->add_option("--threshold", recover_threshold, "foreground threshold");
    recover->add_option("--center", recover_center, "radial center \"x,y\" (default centroid)");
    recover->add_option("--schedule", recover_schedule,
                        "slice list \"alpha:beta,alpha:beta,...\" (default geometric)");
    recover->add_option("-o,--output", recover_out, "CSV output (default stdout)");
    recover->callback([&] {
        const BinaryGrid grid = load_pgm_file(recover_image, recover_threshold);
        const ScalarField phi =
            phi_for(grid, recover_center.empty() ? std::nullopt : std::optional(recover_center),
                    std::nullopt);
        std::vector<std::pair<double, double>> schedule;
        if (!recover_schedule.empty()) {
            schedule = parse_schedule(recover_schedule);
        } else {
            for (double beta = 16.0; beta >= 0.25; beta /= 2.0)
                schedule.emplace_back(beta / 4.0, beta);
        }
        write_output(sweep_to_csv(recovery_sweep(grid, phi, recover_u, recover_v, schedule)),
                     recover_out);
    });

    // leaf
    auto* leaf = app.add_subcommand("leaf", "leaf parameters through ((alpha,u),(beta,v))");
    double leaf_alpha = 0.0, leaf_u = 0.0, leaf_beta = 0.0, leaf_v = 0.0;
    leaf->add_option("--alpha", leaf_alpha)->required();
    leaf->add_option("--u", leaf_u)->required();
    leaf->add_option("--beta", leaf_beta)->required();
    leaf->add_option("--v", leaf_v)->required();
    leaf->callback([&] {
        const LeafPoint p = leaf_params(leaf_alpha, leaf_u, leaf_beta, leaf_v);
        std::cout << "l1,l2,b1,b2,s,t\n"
                  << format_real(p.pair.direction[0]) << ',' << format_real(p.pair.direction[1])
                  << ',' << format_real(p.pair.offset[0]) << ',' << format_real(p.pair.offset[1])
                  << ',' << format_real(p.s) << ',' << format_real(p.t) << "\n";
        if (leaf_boundary_proximate(leaf_alpha))
            std::cerr << "note: alpha = 0 lies on the boundary of the admissible set; "
                         "computed ranks there may be unreliable\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return exit_code;
}
