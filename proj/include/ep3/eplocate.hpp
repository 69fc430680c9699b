// eplocate.hpp - locates two-level degeneracies as zeros of the complex
// discriminant over (delta, lambda_re), with lambda_im tied by policy.

#pragma once

#include <optional>
#include <vector>

#include "ep3/types.hpp"

namespace ep3 {

struct EpCandidate {
    double delta = 0.0;
    double lambda_re = 0.0;
    double residual = 0.0;             // |D| at the point
    std::optional<std::pair<int, int>> pair;  // coalescing branch pair, post hoc
    bool refined = false;
    bool degenerate_jacobian = false;
};

struct GridSpec {
    double delta_min = 0.0, delta_max = 1.6;
    double lambda_min = 0.0, lambda_max = 0.6;
    int delta_cells = 64, lambda_cells = 64;
    LambdaImPolicy policy{};
};

// |D| over the grid; returns strict local minima of the 8-neighbour stencil,
// ascending by residual, ties toward smaller delta. Evaluation is split
// across threads (EP3_NUM_THREADS, default hardware concurrency).
// Throws std::invalid_argument on an empty range or a grid below 8x8.
std::vector<EpCandidate> grid_scan(const SystemConfig& cfg, const GridSpec& grid);

// Damped Newton on (Re D, Im D) = 0 in (delta, lambda_re), finite-difference
// Jacobian with step 1e-7. Converged when |D| < 1e-12 or the step drops
// below 1e-12. A result farther than 0.1 from the seed raises a drifted-seed
// error; a singular Jacobian returns the best point with a flag.
EpCandidate refine(const SystemConfig& cfg, const EpCandidate& seed,
                   const LambdaImPolicy& policy = {});

struct OrderCertificate {
    double exponent = 0.0;   // p in gap ~ radius^p near the point
    bool second_order = false;  // |p - 0.5| < 0.1
    bool conclusive = true;
};

// Scaling exponent of the coalescing pair's gap on shrinking circles of
// radius r, r/2, r/4 around the point (deviation from the central gap, so a
// regular point reads ~1 rather than ~0).
OrderCertificate verify_order(const SystemConfig& cfg, const EpCandidate& ep, double radius,
                              const LambdaImPolicy& policy = {});

// Convenience: scan + refine + dedupe over a box, returning refined
// candidates sorted by delta.
std::vector<EpCandidate> locate(const SystemConfig& cfg, const GridSpec& grid);

}  // namespace ep3
