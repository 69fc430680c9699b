// encircle.hpp - closed elliptical loops in (delta, lambda_re), quasi-static
// branch tracking around them, the resulting permutation of branches, and
// detection of the state-conversion events along the way.

#pragma once

#include <array>
#include <string>
#include <vector>

#include "ep3/solver.hpp"
#include "ep3/types.hpp"

namespace ep3 {

enum class Direction { Anticlockwise, Clockwise };

// delta(theta) = x0 (1 + a cos theta), lambda_re(theta) = y0 (1 + b sin theta).
struct Contour {
    double x0 = 0.0, y0 = 0.0;
    double a = 1.0, b = 1.0;
    int steps = 1024;    // samples per loop, at least 64
    int loops = 1;
    Direction direction = Direction::Anticlockwise;
    LambdaImPolicy policy{};

    void validate() const;
};

ControlPoint contour_point(const Contour& c, double theta);

// Whether (delta, lambda_re) lies strictly inside the ellipse. Throws on a
// degenerate contour (x0 == 0 or y0 == 0).
bool encloses(const Contour& c, double delta, double lambda_re);

struct LoopSample {
    double theta = 0.0;
    ControlPoint point;
    EigenFrame frame;  // values[i] follows branch i+1
};

struct ConversionEvent {
    double theta = 0.0;        // radians, parabolic interpolation at the gap minimum
    int branch_a = 0;          // 1-based continuity labels of the converting pair
    int branch_b = 0;
    int slot_a = 0;            // 1-based descending-Re positions just before the event
    int slot_b = 0;
    double gap_at_event = 0.0;
};

struct LoopTrajectory {
    Contour contour;
    std::vector<LoopSample> samples;
    std::vector<ConversionEvent> events;
    int ambiguous_matches = 0;
    int bisections = 0;  // extra solves spent on adaptive step refinement
};

struct MonodromyResult {
    // permutation[i] = 0-based index of the starting slot whose initial value
    // branch i+1 occupies after the loop(s).
    std::array<int, 3> permutation{0, 1, 2};
    int loops_applied = 1;
    int order = 1;          // smallest k with permutation^k = identity
    double closure_error = 0.0;  // max distance from final values to claimed initial values
    std::string cycles;     // e.g. "(2 3)", "(1 3 2)", "id"
};

std::string cycle_notation(const std::array<int, 3>& permutation);
std::array<int, 3> compose(const std::array<int, 3>& outer, const std::array<int, 3>& inner);
int permutation_order(const std::array<int, 3>& permutation);

// Tracks all three branches around the contour. Labels start by descending
// real part and are carried by minimum-cost matching; a step whose matching
// cost exceeds half the smallest inter-branch gap is bisected (depth <= 12)
// before the assignment is accepted. The final-to-initial assignment must be
// a bijection, otherwise the sampling is declared too coarse.
// Throws std::runtime_error when bisection is exhausted (the path runs
// through a degeneracy; perturb the contour).
// `theta_origin` rotates the starting point along the loop.
LoopTrajectory track_loop(const SystemConfig& cfg, const Contour& c,
                          bool with_vectors = false, double theta_origin = 0.0);

MonodromyResult monodromy(const LoopTrajectory& traj);

// n consecutive loops tracked without re-labelling; equals the single-loop
// permutation composed n times.
MonodromyResult monodromy_power(const SystemConfig& cfg, const Contour& c, int n);

// Conversion events: local minima of a pair's gap along theta at which the
// pair's real parts exchange order, with the gap below `threshold`. The
// default threshold is the median pairwise gap over the whole loop. Events
// are sorted by theta. An explicit threshold of 0 yields no events.
std::vector<ConversionEvent> detect_conversions(const LoopTrajectory& traj, double threshold);
std::vector<ConversionEvent> detect_conversions(const LoopTrajectory& traj);

double median_pairwise_gap(const LoopTrajectory& traj);

}  // namespace ep3
