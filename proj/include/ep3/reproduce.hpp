// reproduce.hpp - dataset renderers shared by the CLI subcommands, plus the
// one-shot harness that regenerates every headline dataset into one bundle.

#pragma once

#include <string>
#include <vector>

#include "ep3/arc.hpp"
#include "ep3/encircle.hpp"
#include "ep3/eplocate.hpp"
#include "ep3/output.hpp"
#include "ep3/phase.hpp"

namespace ep3 {

std::string csv_from_trace(const ArcTrace& trace);
std::string csv_from_trajectory(const LoopTrajectory& traj);
std::string csv_from_phase(const PhaseSeries& series);

std::string json_from_classification(const std::vector<ArcClass>& classes, double delta);
std::string json_from_candidates(const SystemConfig& cfg, const std::vector<EpCandidate>& eps,
                                 const LambdaImPolicy& policy, double order_radius);
std::string json_from_loop(const LoopTrajectory& traj, const MonodromyResult& mono);
std::string json_from_phase(const PhaseSeries& series, const std::vector<PhaseSwitch>& switches);

struct ReproduceOptions {
    SystemConfig cfg{};
    LambdaImPolicy policy{};
    int sweep_steps = 2000;
    int contour_steps = 4096;
    std::string out_dir = "reproduce_out";
};

// Emits, per headline figure of the study, the CSV data underneath it, plus
// summary.json with every headline number, and a manifest. Returns the
// manifest that was written.
RunManifest reproduce(const ReproduceOptions& opt);

}  // namespace ep3
