#include "ep3/phase.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ep3/model.hpp"

namespace ep3 {

std::vector<Vec3> gauge_fix(const std::vector<Vec3>& vectors) {
    std::vector<Vec3> out = vectors;
    for (size_t k = 1; k < out.size(); ++k) {
        const cplx ov = dot(out[k - 1], out[k]);
        if (std::abs(ov) < 1e-12)
            throw std::runtime_error(
                "gauge_fix: consecutive eigenvectors are orthogonal; the trajectory "
                "sampling is too coarse");
        const cplx ph = std::exp(cplx{0.0, -std::arg(ov)});
        for (auto& x : out[k].v) x *= ph;
    }
    return out;
}

PhaseSeries accumulate_phase(const SystemConfig& cfg, const LoopTrajectory& traj) {
    const size_t n = traj.samples.size();
    if (n == 0) throw std::invalid_argument("accumulate_phase: empty trajectory");

    // Per-branch eigenvector sequences, from the trajectory or recomputed.
    std::array<std::vector<Vec3>, 3> vecs;
    for (auto& v : vecs) v.resize(n);
    for (size_t k = 0; k < n; ++k) {
        if (traj.samples[k].frame.vectors) {
            for (int b = 0; b < 3; ++b) vecs[b][k] = (*traj.samples[k].frame.vectors)[b];
        } else {
            const Mat3 h = build_hamiltonian(cfg, traj.samples[k].point);
            for (int b = 0; b < 3; ++b)
                vecs[b][k] = right_eigenvector(h, traj.samples[k].frame.values[b]).vector;
        }
    }

    PhaseSeries out;
    out.theta.resize(n);
    out.phi_branch.assign(n, {0.0, 0.0, 0.0});
    out.phi_sorted.assign(n, {0.0, 0.0, 0.0});

    for (size_t k = 0; k < n; ++k) out.theta[k] = traj.samples[k].theta;
    for (int b = 0; b < 3; ++b) {
        for (size_t k = 1; k < n; ++k) {
            const cplx ov = dot(vecs[b][k - 1], vecs[b][k]);
            if (std::abs(ov) < 1e-12)
                throw std::runtime_error(
                    "accumulate_phase: vanishing overlap between consecutive eigenvectors; "
                    "refine the trajectory");
            out.phi_branch[k][b] = out.phi_branch[k - 1][b] + std::arg(ov);
        }
        const double total = out.phi_branch[n - 1][b];
        out.closure_defect[b] = std::remainder(total, 2.0 * std::numbers::pi);
    }

    for (size_t k = 0; k < n; ++k) {
        const auto& e = traj.samples[k].frame.values;
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(),
                  [&](int x, int y) { return e[x].real() > e[y].real(); });
        for (int s = 0; s < 3; ++s) out.phi_sorted[k][s] = out.phi_branch[k][order[s]];
    }
    return out;
}

std::vector<PhaseSwitch> detect_phase_switch(const PhaseSeries& series,
                                             const LoopTrajectory& traj,
                                             const std::vector<ConversionEvent>& events) {
    std::vector<PhaseSwitch> out;
    const size_t n = series.theta.size();
    if (n < 3) return out;

    auto index_of = [&](double theta) {
        const auto it = std::lower_bound(series.theta.begin(), series.theta.end(), theta);
        return std::min<size_t>(n - 1, it - series.theta.begin());
    };
    const size_t w = std::max<size_t>(2, n / 512);

    for (const auto& ev : events) {
        const size_t k = index_of(ev.theta);
        const size_t lo = k > w ? k - w : 0;
        const size_t hi = std::min(n - 1, k + w);
        const int ia = ev.branch_a - 1, ib = ev.branch_b - 1;

        // The branch-following phases are continuous; the switch is real when
        // the two branches' descending-Re slots exchange across the event, so
        // the slot-indexed curves trade which branch they follow.
        auto slot_of = [&](size_t s, int branch) {
            const auto& e = traj.samples[s].frame.values;
            int slot = 1;
            for (int o = 0; o < 3; ++o)
                if (o != branch && e[o].real() > e[branch].real()) ++slot;
            return slot;
        };
        const int a_before = slot_of(lo, ia), b_before = slot_of(lo, ib);
        const int a_after = slot_of(hi, ia), b_after = slot_of(hi, ib);
        if (a_before == b_after && b_before == a_after && a_before != b_before) {
            PhaseSwitch sw;
            sw.theta = ev.theta;
            sw.slot_a = std::min(a_before, b_before);
            sw.slot_b = std::max(a_before, b_before);
            out.push_back(sw);
        }
    }
    return out;
}

}  // namespace ep3
