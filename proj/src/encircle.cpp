#include "ep3/encircle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ep3/model.hpp"

namespace ep3 {

void Contour::validate() const {
    if (steps < 64) throw std::invalid_argument("Contour: need at least 64 steps per loop");
    if (loops < 1) throw std::invalid_argument("Contour: loops must be >= 1");
    if (!(a > 0.0) || !(b > 0.0))
        throw std::invalid_argument("Contour: characteristic parameters must be positive");
}

ControlPoint contour_point(const Contour& c, double theta) {
    const double th = c.direction == Direction::Anticlockwise ? theta : -theta;
    const double delta = c.x0 * (1.0 + c.a * std::cos(th));
    const double lambda_re = c.y0 * (1.0 + c.b * std::sin(th));
    return ControlPoint::from_policy(delta, lambda_re, c.policy);
}

bool encloses(const Contour& c, double delta, double lambda_re) {
    if (c.x0 == 0.0 || c.y0 == 0.0)
        throw std::invalid_argument("encloses: degenerate contour center");
    const double u = (delta - c.x0) / (c.a * c.x0);
    const double v = (lambda_re - c.y0) / (c.b * c.y0);
    return u * u + v * v < 1.0;
}

namespace {

std::array<cplx, 3> eigenvalues_at(const SystemConfig& cfg, const ControlPoint& p) {
    return cardano_roots(secular_coefficients(cfg, p)).values;
}

double min_pair_gap(const std::array<cplx, 3>& e) {
    return std::min({std::abs(e[0] - e[1]), std::abs(e[0] - e[2]), std::abs(e[1] - e[2])});
}

double max_move(const std::array<cplx, 3>& prev, const std::array<cplx, 3>& cur,
                const std::array<int, 3>& perm) {
    double m = 0.0;
    for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(cur[perm[i]] - prev[i]));
    return m;
}

struct Stepper {
    const SystemConfig& cfg;
    const Contour& contour;
    int* ambiguous;
    int* bisections;

    // Advance branch-ordered values from theta_a to theta_b, bisecting when a
    // single matching step moves a branch further than half the local gap.
    std::array<cplx, 3> advance(const std::array<cplx, 3>& from, double theta_a, double theta_b,
                                int depth) const {
        const auto raw = eigenvalues_at(cfg, contour_point(contour, theta_b));
        bool tie = false;
        const auto perm = match_branches(from, raw, &tie);
        if (tie && ambiguous) ++*ambiguous;

        const double gap = std::min(min_pair_gap(from), min_pair_gap(raw));
        if (max_move(from, raw, perm) > 0.5 * gap) {
            if (depth >= 12)
                throw std::runtime_error(
                    "track_loop: step refinement exhausted; the path passes through a "
                    "degeneracy, perturb the contour");
            if (bisections) ++*bisections;
            const double mid = 0.5 * (theta_a + theta_b);
            const auto half = advance(from, theta_a, mid, depth + 1);
            return advance(half, mid, theta_b, depth + 1);
        }

        std::array<cplx, 3> out;
        for (int i = 0; i < 3; ++i) out[i] = raw[perm[i]];
        return out;
    }
};

void attach_vectors(const SystemConfig& cfg, LoopSample& s) {
    const Mat3 h = build_hamiltonian(cfg, s.point);
    std::array<Vec3, 3> vs;
    for (int i = 0; i < 3; ++i) vs[i] = right_eigenvector(h, s.frame.values[i]).vector;
    s.frame.vectors = vs;
}

}  // namespace

std::string cycle_notation(const std::array<int, 3>& permutation) {
    std::array<bool, 3> seen{};
    std::string out;
    for (int i = 0; i < 3; ++i) {
        if (seen[i] || permutation[i] == i) continue;
        std::string cyc = "(" + std::to_string(i + 1);
        seen[i] = true;
        for (int j = permutation[i]; j != i; j = permutation[j]) {
            seen[j] = true;
            cyc += " " + std::to_string(j + 1);
        }
        cyc += ")";
        out += cyc;
    }
    return out.empty() ? "id" : out;
}

std::array<int, 3> compose(const std::array<int, 3>& outer, const std::array<int, 3>& inner) {
    // (outer . inner)[i] = outer[inner[i]]
    return {outer[inner[0]], outer[inner[1]], outer[inner[2]]};
}

int permutation_order(const std::array<int, 3>& permutation) {
    std::array<int, 3> acc{0, 1, 2};
    for (int k = 1; k <= 6; ++k) {
        acc = compose(permutation, acc);
        if (acc == std::array<int, 3>{0, 1, 2}) return k;
    }
    return 6;
}

LoopTrajectory track_loop(const SystemConfig& cfg, const Contour& c, bool with_vectors,
                          double theta_origin) {
    c.validate();

    LoopTrajectory traj;
    traj.contour = c;

    const long total = static_cast<long>(c.steps) * c.loops;
    traj.samples.reserve(total + 1);

    const double span = 2.0 * std::numbers::pi * c.loops;

    LoopSample first;
    first.theta = 0.0;
    first.point = contour_point(c, theta_origin);
    auto values = eigenvalues_at(cfg, first.point);
    std::array<int, 3> order{0, 1, 2};
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return values[x].real() > values[y].real(); });
    for (int i = 0; i < 3; ++i) first.frame.values[i] = values[order[i]];
    if (with_vectors) attach_vectors(cfg, first);
    traj.samples.push_back(first);

    const Stepper stepper{cfg, c, &traj.ambiguous_matches, &traj.bisections};
    std::array<cplx, 3> cur = first.frame.values;
    for (long k = 1; k <= total; ++k) {
        const double theta = span * k / double(total);
        cur = stepper.advance(cur, theta_origin + span * (k - 1) / double(total),
                              theta_origin + theta, 0);
        LoopSample s;
        s.theta = theta;
        s.point = contour_point(c, theta_origin + theta);
        s.frame.values = cur;
        if (with_vectors) attach_vectors(cfg, s);
        traj.samples.push_back(std::move(s));
    }

    traj.events = detect_conversions(traj);
    return traj;
}

MonodromyResult monodromy(const LoopTrajectory& traj) {
    const auto& init = traj.samples.front().frame.values;
    const auto& fin = traj.samples.back().frame.values;

    MonodromyResult res;
    res.loops_applied = traj.contour.loops;

    std::array<bool, 3> taken{};
    for (int i = 0; i < 3; ++i) {
        int best = -1;
        double bd = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double d = std::abs(fin[i] - init[j]);
            if (best < 0 || d < bd) {
                best = j;
                bd = d;
            }
        }
        if (taken[best])
            throw std::runtime_error(
                "monodromy: final values do not map bijectively onto initial values; "
                "increase the step count");
        taken[best] = true;
        res.permutation[i] = best;
        res.closure_error = std::max(res.closure_error, bd);
    }
    res.order = permutation_order(res.permutation);
    res.cycles = cycle_notation(res.permutation);
    return res;
}

MonodromyResult monodromy_power(const SystemConfig& cfg, const Contour& c, int n) {
    if (n < 1) throw std::invalid_argument("monodromy_power: n must be >= 1");
    Contour cn = c;
    cn.loops = n;
    return monodromy(track_loop(cfg, cn));
}

double median_pairwise_gap(const LoopTrajectory& traj) {
    std::vector<double> gaps;
    gaps.reserve(traj.samples.size() * 3);
    for (const auto& s : traj.samples)
        for (const auto [i, j] : std::array<std::pair<int, int>, 3>{{{0, 1}, {1, 2}, {0, 2}}})
            gaps.push_back(std::abs(s.frame.values[i] - s.frame.values[j]));
    std::nth_element(gaps.begin(), gaps.begin() + gaps.size() / 2, gaps.end());
    return gaps[gaps.size() / 2];
}

std::vector<ConversionEvent> detect_conversions(const LoopTrajectory& traj, double threshold) {
    std::vector<ConversionEvent> events;
    const long n = static_cast<long>(traj.samples.size());
    if (n < 3 || threshold <= 0.0) return events;

    // 1-based descending-Re position of each branch at sample k.
    auto slots = [&](long k) {
        const auto& e = traj.samples[k].frame.values;
        std::array<int, 3> order{0, 1, 2};
        std::sort(order.begin(), order.end(),
                  [&](int x, int y) { return e[x].real() > e[y].real(); });
        std::array<int, 3> slot{};
        for (int s = 0; s < 3; ++s) slot[order[s]] = s + 1;
        return slot;
    };

    const long flip_window = std::max<long>(2, n / 512);
    for (const auto [i, j] : std::array<std::pair<int, int>, 3>{{{0, 1}, {1, 2}, {0, 2}}}) {
        for (long k = 1; k + 1 < n; ++k) {
            auto gap_at = [&](long t) {
                return std::abs(traj.samples[t].frame.values[i] - traj.samples[t].frame.values[j]);
            };
            const double g = gap_at(k);
            if (!(g < gap_at(k - 1) && g < gap_at(k + 1) && g < threshold)) continue;

            const long lo = std::max<long>(0, k - flip_window);
            const long hi = std::min(n - 1, k + flip_window);
            const double re_lo = traj.samples[lo].frame.values[i].real() -
                                 traj.samples[lo].frame.values[j].real();
            const double re_hi = traj.samples[hi].frame.values[i].real() -
                                 traj.samples[hi].frame.values[j].real();
            if (!(re_lo * re_hi < 0.0)) continue;  // close approach without identity exchange

            ConversionEvent ev;
            ev.branch_a = i + 1;
            ev.branch_b = j + 1;
            ev.gap_at_event = g;

            const double y0 = gap_at(k - 1), y1 = g, y2 = gap_at(k + 1);
            const double dd = y0 - 2.0 * y1 + y2;
            const double off = dd != 0.0 ? 0.5 * (y0 - y2) / dd : 0.0;
            const double dtheta = traj.samples[k].theta - traj.samples[k - 1].theta;
            ev.theta = traj.samples[k].theta + off * dtheta;

            const auto slot_before = slots(lo);
            ev.slot_a = std::min(slot_before[i], slot_before[j]);
            ev.slot_b = std::max(slot_before[i], slot_before[j]);
            events.push_back(ev);
        }
    }
    std::sort(events.begin(), events.end(),
              [](const ConversionEvent& a, const ConversionEvent& b) { return a.theta < b.theta; });
    return events;
}

std::vector<ConversionEvent> detect_conversions(const LoopTrajectory& traj) {
    return detect_conversions(traj, median_pairwise_gap(traj));
}

}  // namespace ep3
