// arc.hpp - sweeps lambda at fixed delta with continuity-ordered branches and
// classifies each interacting pair's crossing topology.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ep3/solver.hpp"
#include "ep3/types.hpp"

namespace ep3 {

struct SweepSpec {
    double delta = 0.0;
    double lambda_start = 0.0;
    double lambda_end = 0.6;
    int steps = 2000;
    LambdaImPolicy policy{};
};

struct ArcFrame {
    ControlPoint point;
    EigenFrame frame;
};

struct ArcTrace {
    SweepSpec spec;
    std::vector<ArcFrame> frames;   // frame.values[i] follows branch i+1
    int ambiguous_matches = 0;      // matcher ties resolved lexicographically
};

enum class ArcKind { ReCross_ImAnti, ReAnti_ImCross, NoInteraction };

std::string to_string(ArcKind k);

struct ArcClass {
    int branch_a = 0, branch_b = 0;  // 1-based
    ArcKind kind = ArcKind::NoInteraction;
    std::optional<double> crossing_lambda;  // lambda_re of the crossing part
};

// Branches labelled at the first frame by descending real part, then carried
// by minimum-cost matching frame to frame.
ArcTrace sweep(const SystemConfig& cfg, const SweepSpec& spec);

// Crossing topology of one branch pair. A pair counts as interacting when
// its minimal gap along the sweep drops below 0.6x its initial separation;
// sign changes of the real/imaginary differences are then examined inside
// the closest-approach window (gap below twice its minimum), which keeps
// distant benign crossings of the spectators out of the verdict.
// Throws std::runtime_error when both parts flip inside the window (the
// sweep stepped over a degeneracy; refine delta).
ArcClass classify(const ArcTrace& trace, int branch_a, int branch_b);

struct CrossingAverage {
    double delta_mid = 0.0;
    double lambda_estimate = 0.0;
};

// Coarse two-level degeneracy estimate from a pair of sweeps of opposite
// topology: midpoint in delta, mean of the two crossing lambdas. Throws when
// the two classifications do not bracket a topology change.
CrossingAverage crossing_average(const SystemConfig& cfg, double delta_below,
                                 double delta_above, int branch_a, int branch_b,
                                 const SweepSpec& sweep_params);

}  // namespace ep3
