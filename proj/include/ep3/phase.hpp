// phase.hpp - gauge-continuous eigenvector phases along a loop trajectory:
// discrete parallel transport, accumulated phase per branch, and the phase
// switching that accompanies state conversions.

#pragma once

#include <array>
#include <vector>

#include "ep3/encircle.hpp"
#include "ep3/types.hpp"

namespace ep3 {

struct PhaseSeries {
    std::vector<double> theta;
    // phi[k][b]: accumulated phase of branch b+1 at theta[k] under
    // continuity (branch-following) labels; phi[0] = 0.
    std::vector<std::array<double, 3>> phi_branch;
    // Same numbers re-indexed by descending-Re position at each sample.
    std::vector<std::array<double, 3>> phi_sorted;
    // Final accumulated phase reduced to (-pi, pi]; distance of phi(end)
    // from the nearest multiple of 2*pi is |defect|.
    std::array<double, 3> closure_defect{};
};

// Multiplies each vector by a unit factor so every consecutive inner product
// is real and positive; the first vector is untouched. Throws on (numerically)
// zero overlap between consecutive vectors.
std::vector<Vec3> gauge_fix(const std::vector<Vec3>& vectors);

// Accumulated transported phase per branch: phi_b(theta_k) is the running sum
// of arg<v_b(theta_{i-1}), v_b(theta_i)>. Eigenvectors are computed through
// the solver when the trajectory does not carry them.
PhaseSeries accumulate_phase(const SystemConfig& cfg, const LoopTrajectory& traj);

struct PhaseSwitch {
    double theta = 0.0;
    int slot_a = 0, slot_b = 0;  // sorted positions whose phase curves swap
};

// Confirms, for each conversion event, that the order-following phase curves
// of the event pair exchange identities across the event angle; events that
// fail the check are omitted.
std::vector<PhaseSwitch> detect_phase_switch(const PhaseSeries& series,
                                             const LoopTrajectory& traj,
                                             const std::vector<ConversionEvent>& events);

}  // namespace ep3
