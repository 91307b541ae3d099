#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pertop/encodings.hpp"
#include "pertop/foliation.hpp"
#include "pertop/grid.hpp"
#include "pertop/matching.hpp"

namespace pertop {

// splitmix64. Fixed, portable sequence so seeded experiments reproduce
// byte-identically on any platform.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    double next_unit() { return double(next() >> 11) * 0x1.0p-53; }  // [0, 1)

private:
    std::uint64_t state_;
};

// Adds background pixels within `radius` of the foreground with probability
// p_add, removes foreground pixels with probability p_remove; a removal is
// vetoed when it would leave an original foreground pixel with no surviving
// pixel within `radius`. Both passes draw row-major. Deterministic per seed.
BinaryGrid perturb_salt_pepper(const BinaryGrid& grid, double radius, double p_add,
                               double p_remove, std::uint64_t seed);

struct LeafOutcome {
    double theta;          // atan2 of the direction
    double offset;         // first offset component (k = 2 leaves)
    double min_direction;  // leaf weight
    double dmatch;         // may be +inf
    double weighted;
};

struct ExperimentReport {
    std::string kind;  // hausdorff | symdiff | fuzzy
    std::vector<std::pair<std::string, std::string>> inputs;
    std::string set_distance_label;
    double set_distance = 0.0;
    double phi_distance = 0.0;
    double bound = 0.0;
    double dmatch_lower_bound = 0.0;
    bool bound_satisfied = false;
    std::vector<LeafOutcome> leaves;
};

inline constexpr double kBoundSlack = 1e-9;

std::string report_to_json(const ExperimentReport& report);
std::string leaves_to_csv(const std::vector<LeafOutcome>& leaves);

// D_match lower bound for (d_K1, phi1) vs (d_K2, phi2) against
// max{Hausdorff distance, sup-norm of the phi difference}.
ExperimentReport verify_stability_hausdorff(const BinaryGrid& grid1, const BinaryGrid& grid2,
                                            const ScalarField& phi1, const ScalarField& phi2,
                                            const std::vector<AdmissiblePair>& leaves);

// Same with (-density, phi) encodings against
// max{symmetric difference / disk pixel count, sup-norm}. Uses the
// full-disk density normalization, whose constant the bound is stated with.
ExperimentReport verify_stability_symdiff(const BinaryGrid& grid1, const BinaryGrid& grid2,
                                          double eps, const ScalarField& phi1,
                                          const ScalarField& phi2,
                                          const std::vector<AdmissiblePair>& leaves);

// (-p, phi) encodings of membership densities p in [0,1] against
// max{sup-norm of the densities, sup-norm of phi}.
ExperimentReport verify_stability_fuzzy(const ScalarField& p1, const ScalarField& p2,
                                        const ScalarField& phi1, const ScalarField& phi2,
                                        const std::vector<AdmissiblePair>& leaves);

struct SweepRow {
    double alpha = 0.0;
    double beta = 0.0;
    LeafPoint leaf;
    long rank = 0;
    bool boundary_proximate = false;
};

struct RecoverySweep {
    double u = 0.0;
    double v = 0.0;
    std::vector<SweepRow> rows;
    long direct_rank = 0;  // rank of (foreground, phi restricted) at (u, v)
};

RecoverySweep recovery_sweep(const BinaryGrid& grid, const ScalarField& phi, double u, double v,
                             const std::vector<std::pair<double, double>>& schedule);

// alpha,u,beta,v,s,t,rank,note rows; final row carries the direct rank.
std::string sweep_to_csv(const RecoverySweep& sweep);

// Finite points as circles, essential births as vertical lines, diagonal drawn.
std::string diagram_to_svg(const PersistenceDiagram& dgm);
void emit_diagram_svg(const PersistenceDiagram& dgm, const std::string& path);

// Half of the combined value range of the two multifields.
double auto_offset_range(const MultiField& f, const MultiField& g);

inline constexpr int kDefaultLeafAngles = 32;
inline constexpr int kDefaultLeafOffsets = 33;

// 32 angles x 33 offsets with the automatic offset range.
std::vector<AdmissiblePair> default_leaves(const MultiField& f, const MultiField& g);

}  // namespace pertop
