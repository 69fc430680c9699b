#include "ep3/reproduce.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include <json.hpp>

#include "ep3/config_io.hpp"

namespace ep3 {

namespace {

using nlohmann::json;

json classification_json(const std::vector<ArcClass>& classes, double delta) {
    json pairs = json::array();
    for (const auto& c : classes) {
        json p{{"branch_a", c.branch_a}, {"branch_b", c.branch_b}, {"kind", to_string(c.kind)}};
        if (c.crossing_lambda) p["crossing_lambda"] = *c.crossing_lambda;
        pairs.push_back(p);
    }
    return json{{"delta", delta}, {"pairs", pairs}};
}

json candidates_json(const SystemConfig& cfg, const std::vector<EpCandidate>& eps,
                     const LambdaImPolicy& policy, double order_radius) {
    json out = json::array();
    for (const auto& ep : eps) {
        json j{{"delta", ep.delta},
               {"lambda_re", ep.lambda_re},
               {"lambda_im", policy.im(ep.lambda_re)},
               {"residual", ep.residual},
               {"refined", ep.refined}};
        if (ep.pair) j["pair"] = {ep.pair->first, ep.pair->second};
        const OrderCertificate cert = verify_order(cfg, ep, order_radius, policy);
        j["order_exponent"] = cert.exponent;
        j["second_order"] = cert.second_order;
        j["conclusive"] = cert.conclusive;
        out.push_back(j);
    }
    return out;
}

json events_json(const std::vector<ConversionEvent>& events) {
    json out = json::array();
    for (const auto& e : events)
        out.push_back({{"theta_over_pi", e.theta / std::numbers::pi},
                       {"slots", {e.slot_a, e.slot_b}},
                       {"branches", {e.branch_a, e.branch_b}},
                       {"gap", e.gap_at_event}});
    return out;
}

json loop_json(const LoopTrajectory& traj, const MonodromyResult& mono) {
    json perm = json::array();
    for (int i = 0; i < 3; ++i) perm.push_back(mono.permutation[i] + 1);
    return json{{"cycles", mono.cycles},
                {"order", mono.order},
                {"permutation", perm},
                {"loops", mono.loops_applied},
                {"closure_error", mono.closure_error},
                {"events", events_json(traj.events)}};
}

json phase_json(const PhaseSeries& series, const std::vector<PhaseSwitch>& switches) {
    json sw = json::array();
    for (const auto& s : switches)
        sw.push_back(
            {{"theta_over_pi", s.theta / std::numbers::pi}, {"slots", {s.slot_a, s.slot_b}}});
    json defect = json::array();
    for (double d : series.closure_defect) defect.push_back(d);
    json total = json::array();
    for (int b = 0; b < 3; ++b) total.push_back(series.phi_branch.back()[b]);
    return json{{"closure_defect", defect}, {"accumulated_total", total}, {"switches", sw}};
}

}  // namespace

std::string csv_from_trace(const ArcTrace& trace) {
    CsvWriter csv({"lambda_re", "lambda_im", "re_e1", "im_e1", "re_e2", "im_e2", "re_e3",
                   "im_e3"});
    for (const auto& f : trace.frames) {
        std::vector<double> row{f.point.lambda_re, f.point.lambda_im};
        for (int b = 0; b < 3; ++b) {
            row.push_back(f.frame.values[b].real());
            row.push_back(f.frame.values[b].imag());
        }
        csv.add_row(row);
    }
    return csv.text();
}

std::string csv_from_trajectory(const LoopTrajectory& traj) {
    CsvWriter csv({"theta", "delta", "lambda_re", "lambda_im", "re_e1", "im_e1", "re_e2", "im_e2",
                   "re_e3", "im_e3"});
    for (const auto& s : traj.samples) {
        std::vector<double> row{s.theta, s.point.delta, s.point.lambda_re, s.point.lambda_im};
        for (int b = 0; b < 3; ++b) {
            row.push_back(s.frame.values[b].real());
            row.push_back(s.frame.values[b].imag());
        }
        csv.add_row(row);
    }
    return csv.text();
}

std::string csv_from_phase(const PhaseSeries& series) {
    CsvWriter csv({"theta", "phi_1", "phi_2", "phi_3", "phi_sorted_1", "phi_sorted_2",
                   "phi_sorted_3"});
    for (size_t k = 0; k < series.theta.size(); ++k) {
        csv.add_row({series.theta[k], series.phi_branch[k][0], series.phi_branch[k][1],
                     series.phi_branch[k][2], series.phi_sorted[k][0], series.phi_sorted[k][1],
                     series.phi_sorted[k][2]});
    }
    return csv.text();
}

std::string json_from_classification(const std::vector<ArcClass>& classes, double delta) {
    return classification_json(classes, delta).dump(2) + "\n";
}

std::string json_from_candidates(const SystemConfig& cfg, const std::vector<EpCandidate>& eps,
                                 const LambdaImPolicy& policy, double order_radius) {
    return candidates_json(cfg, eps, policy, order_radius).dump(2) + "\n";
}

std::string json_from_loop(const LoopTrajectory& traj, const MonodromyResult& mono) {
    return loop_json(traj, mono).dump(2) + "\n";
}

std::string json_from_phase(const PhaseSeries& series, const std::vector<PhaseSwitch>& switches) {
    return phase_json(series, switches).dump(2) + "\n";
}

RunManifest reproduce(const ReproduceOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();

    RunManifest manifest;
    manifest.subcommand = "reproduce";
    manifest.config_snapshot = default_config_text();

    const SystemConfig& cfg = opt.cfg;
    const LambdaImPolicy& policy = opt.policy;

    json summary;

    // Lambda sweeps showing the two avoided-crossing regimes, plus the
    // combined three-state picture over both.
    const std::array<double, 2> lower_deltas{0.21, 0.23};
    const std::array<double, 2> upper_deltas{1.26, 1.29};
    json arc_summary = json::array();
    for (double d : lower_deltas) {
        SweepSpec spec{d, 0.0, 0.6, opt.sweep_steps, policy};
        const ArcTrace tr = sweep(cfg, spec);
        emit(manifest, opt.out_dir, "arc_lower_delta" + format_number(d) + ".csv",
             csv_from_trace(tr));
        std::vector<ArcClass> cls{classify(tr, 1, 2), classify(tr, 2, 3), classify(tr, 1, 3)};
        arc_summary.push_back(classification_json(cls, d));
    }
    for (double d : upper_deltas) {
        SweepSpec spec{d, 0.0, 0.6, opt.sweep_steps, policy};
        const ArcTrace tr = sweep(cfg, spec);
        emit(manifest, opt.out_dir, "arc_upper_delta" + format_number(d) + ".csv",
             csv_from_trace(tr));
        std::vector<ArcClass> cls{classify(tr, 1, 2), classify(tr, 2, 3), classify(tr, 1, 3)};
        arc_summary.push_back(classification_json(cls, d));
    }
    summary["arc"] = arc_summary;

    {
        CsvWriter csv({"delta", "lambda_re", "lambda_im", "re_e1", "im_e1", "re_e2", "im_e2",
                       "re_e3", "im_e3"});
        for (double d : {0.21, 0.22, 0.23, 1.26, 1.275, 1.29}) {
            SweepSpec spec{d, 0.0, 0.6, opt.sweep_steps, policy};
            const ArcTrace tr = sweep(cfg, spec);
            for (const auto& f : tr.frames) {
                std::vector<double> row{d, f.point.lambda_re, f.point.lambda_im};
                for (int b = 0; b < 3; ++b) {
                    row.push_back(f.frame.values[b].real());
                    row.push_back(f.frame.values[b].imag());
                }
                csv.add_row(row);
            }
        }
        emit(manifest, opt.out_dir, "threestate_arc.csv", csv.text());
    }

    // Refined degeneracies over the standard box.
    GridSpec box;
    box.policy = policy;
    const auto refined = locate(cfg, box);
    summary["degeneracies"] = candidates_json(cfg, refined, policy, 1e-3);

    // Loops: the nominal single-degeneracy loops, an enclosing variant of the
    // lower one, and the loop around both.
    struct NamedContour {
        const char* name;
        Contour contour;
    };
    const std::array<NamedContour, 4> loops{{
        {"loop_lower", {0.5, 0.25, 1.0, 1.0, opt.contour_steps, 1, Direction::Anticlockwise, policy}},
        {"loop_lower_enclosing",
         {0.45, 0.28, 1.0, 1.0, opt.contour_steps, 1, Direction::Anticlockwise, policy}},
        {"loop_upper", {1.25, 0.25, 0.5, 1.0, opt.contour_steps, 1, Direction::Anticlockwise, policy}},
        {"loop_double", {0.6, 0.25, 2.5, 1.0, opt.contour_steps, 1, Direction::Anticlockwise, policy}},
    }};

    json loop_summary;
    LoopTrajectory double_traj;
    for (const auto& [name, contour] : loops) {
        LoopTrajectory traj = track_loop(cfg, contour);
        const MonodromyResult mono = monodromy(traj);
        emit(manifest, opt.out_dir, std::string(name) + ".csv", csv_from_trajectory(traj));
        json j = loop_json(traj, mono);
        json enclosed = json::array();
        for (const auto& ep : refined)
            enclosed.push_back(encloses(contour, ep.delta, ep.lambda_re));
        j["encloses_refined"] = enclosed;
        loop_summary[name] = j;
        if (std::string(name) == "loop_double") double_traj = std::move(traj);
    }
    summary["loops"] = loop_summary;

    // Repeated loops around both degeneracies: positions after each circuit.
    {
        CsvWriter csv({"loops", "slot_of_branch_1", "slot_of_branch_2", "slot_of_branch_3"});
        json cascade = json::array();
        for (int n = 1; n <= 3; ++n) {
            const MonodromyResult mono = monodromy_power(cfg, loops[3].contour, n);
            csv.add_row({double(n), double(mono.permutation[0] + 1),
                         double(mono.permutation[1] + 1), double(mono.permutation[2] + 1)});
            cascade.push_back({{"loops", n}, {"cycles", mono.cycles}, {"order", mono.order}});
        }
        emit(manifest, opt.out_dir, "monodromy_loops.csv", csv.text());
        summary["cascade"] = cascade;
    }

    // Accumulated eigenvector phases along the double loop.
    {
        const PhaseSeries series = accumulate_phase(cfg, double_traj);
        const auto switches = detect_phase_switch(series, double_traj, double_traj.events);
        emit(manifest, opt.out_dir, "phase_double.csv", csv_from_phase(series));
        summary["phase"] = phase_json(series, switches);

        Contour three = loops[3].contour;
        three.loops = 3;
        const LoopTrajectory traj3 = track_loop(cfg, three);
        const PhaseSeries series3 = accumulate_phase(cfg, traj3);
        json closure = json::array();
        for (int b = 0; b < 3; ++b) closure.push_back(series3.phi_branch.back()[b]);
        summary["phase"]["three_loop_total"] = closure;
    }

    summary["notes"] = json::array(
        {"loop_lower uses the nominal geometry; it does not enclose the refined degeneracy "
         "at (0.2246, 0.4861), so its branches return unpermuted. loop_lower_enclosing is the "
         "documented enclosing variant.",
         "lambda_im follows lambda_re exactly (scale 1, offset 0) unless overridden."});

    emit(manifest, opt.out_dir, "summary.json", summary.dump(2) + "\n");

    manifest.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_manifest(manifest, opt.out_dir);
    return manifest;
}

}  // namespace ep3
