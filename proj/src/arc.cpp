#include "ep3/arc.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ep3/model.hpp"

namespace ep3 {

std::string to_string(ArcKind k) {
    switch (k) {
        case ArcKind::ReCross_ImAnti: return "ReCross_ImAnti";
        case ArcKind::ReAnti_ImCross: return "ReAnti_ImCross";
        case ArcKind::NoInteraction: return "NoInteraction";
    }
    return "?";
}

ArcTrace sweep(const SystemConfig& cfg, const SweepSpec& spec) {
    if (!(spec.lambda_start <= spec.lambda_end))
        throw std::invalid_argument("sweep: lambda range reversed");

    const bool single_point = spec.lambda_start == spec.lambda_end;
    const int n = single_point ? 1 : std::max(spec.steps, 2);

    ArcTrace trace;
    trace.spec = spec;
    trace.frames.reserve(n);

    auto frame_at = [&](double lr) {
        const ControlPoint p = ControlPoint::from_policy(spec.delta, lr, spec.policy);
        EigenFrame f = cardano_roots(secular_coefficients(cfg, p));
        return ArcFrame{p, f};
    };

    ArcFrame first = frame_at(spec.lambda_start);
    // Initial labels: descending real part (branch 1 = largest Re).
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return first.frame.values[a].real() > first.frame.values[b].real();
    });
    EigenFrame sorted;
    for (int i = 0; i < 3; ++i) sorted.values[i] = first.frame.values[order[i]];
    first.frame = sorted;
    trace.frames.push_back(first);

    for (int k = 1; k < n; ++k) {
        const double lr = spec.lambda_start +
                          (spec.lambda_end - spec.lambda_start) * k / double(n - 1);
        ArcFrame cur = frame_at(lr);
        bool ambiguous = false;
        const auto perm =
            match_branches(trace.frames.back().frame.values, cur.frame.values, &ambiguous);
        if (ambiguous) ++trace.ambiguous_matches;
        EigenFrame matched;
        for (int i = 0; i < 3; ++i) matched.values[i] = cur.frame.values[perm[i]];
        cur.frame = matched;
        trace.frames.push_back(cur);
    }
    return trace;
}

namespace {

// Linear interpolation of the sign change nearest to index k0 in a window.
std::optional<double> first_flip(const std::vector<double>& x,
                                 const std::vector<double>& lambda, int lo, int hi) {
    for (int k = lo + 1; k <= hi; ++k) {
        if (x[k - 1] == 0.0 || x[k] == 0.0) continue;
        if ((x[k - 1] > 0) != (x[k] > 0)) {
            const double t = x[k - 1] / (x[k - 1] - x[k]);
            return lambda[k - 1] + t * (lambda[k] - lambda[k - 1]);
        }
    }
    return std::nullopt;
}

}  // namespace

ArcClass classify(const ArcTrace& trace, int branch_a, int branch_b) {
    if (trace.frames.size() < 3)
        throw std::invalid_argument("classify: need at least three frames");
    const int ia = branch_a - 1, ib = branch_b - 1;

    const int n = static_cast<int>(trace.frames.size());
    std::vector<double> gap(n), dre(n), dim(n), lam(n);
    for (int k = 0; k < n; ++k) {
        const cplx d = trace.frames[k].frame.values[ia] - trace.frames[k].frame.values[ib];
        gap[k] = std::abs(d);
        dre[k] = d.real();
        dim[k] = d.imag();
        lam[k] = trace.frames[k].point.lambda_re;
    }

    ArcClass out;
    out.branch_a = branch_a;
    out.branch_b = branch_b;

    const int k0 = static_cast<int>(std::min_element(gap.begin(), gap.end()) - gap.begin());
    const double g0 = gap[k0];
    if (g0 > 0.6 * gap.front()) return out;  // pair never genuinely approaches

    // Closest-approach window: contiguous run around k0 with gap < 2 * g0.
    int lo = k0, hi = k0;
    while (lo > 0 && gap[lo - 1] < 2.0 * g0) --lo;
    while (hi < n - 1 && gap[hi + 1] < 2.0 * g0) ++hi;

    const auto re_flip = first_flip(dre, lam, lo, hi);
    const auto im_flip = first_flip(dim, lam, lo, hi);

    if (re_flip && im_flip)
        throw std::runtime_error(
            "classify: both real and imaginary differences flip at the closest approach; "
            "the sweep passed over a degeneracy, refine delta");
    if (re_flip) {
        out.kind = ArcKind::ReCross_ImAnti;
        out.crossing_lambda = re_flip;
    } else if (im_flip) {
        out.kind = ArcKind::ReAnti_ImCross;
        out.crossing_lambda = im_flip;
    }
    return out;
}

CrossingAverage crossing_average(const SystemConfig& cfg, double delta_below,
                                 double delta_above, int branch_a, int branch_b,
                                 const SweepSpec& sweep_params) {
    SweepSpec lo = sweep_params, hi = sweep_params;
    lo.delta = delta_below;
    hi.delta = delta_above;

    const ArcClass ca = classify(sweep(cfg, lo), branch_a, branch_b);
    const ArcClass cb = classify(sweep(cfg, hi), branch_a, branch_b);

    const bool opposite =
        (ca.kind == ArcKind::ReCross_ImAnti && cb.kind == ArcKind::ReAnti_ImCross) ||
        (ca.kind == ArcKind::ReAnti_ImCross && cb.kind == ArcKind::ReCross_ImAnti);
    if (!opposite || !ca.crossing_lambda || !cb.crossing_lambda)
        throw std::runtime_error(
            "crossing_average: the two delta values do not bracket a topology change");

    return {0.5 * (delta_below + delta_above),
            0.5 * (*ca.crossing_lambda + *cb.crossing_lambda)};
}

}  // namespace ep3
