#include "ep3/eplocate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

#include "ep3/model.hpp"
#include "ep3/solver.hpp"

namespace ep3 {

namespace {

cplx disc_at(const SystemConfig& cfg, double delta, double lambda_re,
             const LambdaImPolicy& policy) {
    const ControlPoint p = ControlPoint::from_policy(delta, lambda_re, policy);
    return discriminant(secular_coefficients(cfg, p));
}

int thread_count() {
    if (const char* env = std::getenv("EP3_NUM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc > 0 ? static_cast<int>(hc) : 1;
}

std::pair<int, int> closest_pair(const std::array<cplx, 3>& e) {
    double best = std::abs(e[0] - e[1]);
    std::pair<int, int> pair{1, 2};
    if (std::abs(e[0] - e[2]) < best) {
        best = std::abs(e[0] - e[2]);
        pair = {1, 3};
    }
    if (std::abs(e[1] - e[2]) < best) pair = {2, 3};
    return pair;
}

}  // namespace

std::vector<EpCandidate> grid_scan(const SystemConfig& cfg, const GridSpec& grid) {
    if (!(grid.delta_min < grid.delta_max) || !(grid.lambda_min < grid.lambda_max))
        throw std::invalid_argument("grid_scan: empty parameter range");
    if (grid.delta_cells < 8 || grid.lambda_cells < 8)
        throw std::invalid_argument("grid_scan: grid must be at least 8x8");

    const int nd = grid.delta_cells + 1, nl = grid.lambda_cells + 1;
    std::vector<double> mag(static_cast<size_t>(nd) * nl);

    const int workers = std::min(thread_count(), nd);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (int i = w; i < nd; i += workers) {
                const double d =
                    grid.delta_min + (grid.delta_max - grid.delta_min) * i / double(nd - 1);
                for (int j = 0; j < nl; ++j) {
                    const double l = grid.lambda_min +
                                     (grid.lambda_max - grid.lambda_min) * j / double(nl - 1);
                    mag[static_cast<size_t>(i) * nl + j] = std::abs(disc_at(cfg, d, l, grid.policy));
                }
            }
        });
    }
    for (auto& t : pool) t.join();

    std::vector<EpCandidate> out;
    for (int i = 1; i < nd - 1; ++i) {
        for (int j = 1; j < nl - 1; ++j) {
            const double v = mag[static_cast<size_t>(i) * nl + j];
            bool is_min = true;
            for (int di = -1; di <= 1 && is_min; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    if (v >= mag[static_cast<size_t>(i + di) * nl + (j + dj)]) {
                        is_min = false;
                        break;
                    }
                }
            if (is_min) {
                EpCandidate c;
                c.delta = grid.delta_min + (grid.delta_max - grid.delta_min) * i / double(nd - 1);
                c.lambda_re =
                    grid.lambda_min + (grid.lambda_max - grid.lambda_min) * j / double(nl - 1);
                c.residual = v;
                out.push_back(c);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const EpCandidate& a, const EpCandidate& b) {
        if (a.residual != b.residual) return a.residual < b.residual;
        return a.delta < b.delta;
    });
    return out;
}

EpCandidate refine(const SystemConfig& cfg, const EpCandidate& seed,
                   const LambdaImPolicy& policy) {
    if (!std::isfinite(seed.residual) || !std::isfinite(seed.delta) ||
        !std::isfinite(seed.lambda_re))
        throw std::invalid_argument("refine: non-finite seed");

    constexpr double kFdStep = 1e-7;
    double x = seed.delta, y = seed.lambda_re;
    cplx f = disc_at(cfg, x, y, policy);

    EpCandidate out = seed;
    for (int it = 0; it < 100; ++it) {
        if (std::abs(f) < 1e-12) break;

        const cplx fx =
            (disc_at(cfg, x + kFdStep, y, policy) - disc_at(cfg, x - kFdStep, y, policy)) /
            (2.0 * kFdStep);
        const cplx fy =
            (disc_at(cfg, x, y + kFdStep, policy) - disc_at(cfg, x, y - kFdStep, policy)) /
            (2.0 * kFdStep);

        // 2x2 real system: [Re fx  Re fy; Im fx  Im fy] * step = -(Re f, Im f)
        const double det = fx.real() * fy.imag() - fy.real() * fx.imag();
        if (std::abs(det) < 1e-300) {
            out.delta = x;
            out.lambda_re = y;
            out.residual = std::abs(f);
            out.degenerate_jacobian = true;
            out.refined = true;
            return out;
        }
        const double sx = (-f.real() * fy.imag() + fy.real() * f.imag()) / det;
        const double sy = (-fx.real() * f.imag() + f.real() * fx.imag()) / det;

        double t = 1.0;
        cplx fn;
        while (true) {
            fn = disc_at(cfg, x + t * sx, y + t * sy, policy);
            if (std::abs(fn) < std::abs(f) || t < 1e-6) break;
            t *= 0.5;
        }
        if (std::abs(fn) >= std::abs(f) && t < 1e-6)
            throw std::runtime_error("refine: diverged near (" + std::to_string(x) + ", " +
                                     std::to_string(y) + "), |D| = " + std::to_string(std::abs(f)));
        x += t * sx;
        y += t * sy;
        f = fn;
        if (std::hypot(t * sx, t * sy) < 1e-12) break;
    }

    if (std::hypot(x - seed.delta, y - seed.lambda_re) > 0.1)
        throw std::runtime_error("refine: converged point drifted more than 0.1 from the seed");

    out.delta = x;
    out.lambda_re = y;
    out.residual = std::abs(f);
    out.refined = true;
    out.pair = closest_pair(
        cardano_roots(secular_coefficients(cfg, ControlPoint::from_policy(x, y, policy))).values);
    return out;
}

OrderCertificate verify_order(const SystemConfig& cfg, const EpCandidate& ep, double radius,
                              const LambdaImPolicy& policy) {
    auto pair_gap = [&](double d, double l, std::pair<int, int> pr) {
        const auto e =
            cardano_roots(secular_coefficients(cfg, ControlPoint::from_policy(d, l, policy)))
                .values;
        return std::abs(e[pr.first - 1] - e[pr.second - 1]);
    };

    const auto e0 =
        cardano_roots(
            secular_coefficients(cfg, ControlPoint::from_policy(ep.delta, ep.lambda_re, policy)))
            .values;
    const auto pr = ep.pair.value_or(closest_pair(e0));
    const double g_center = pair_gap(ep.delta, ep.lambda_re, pr);

    std::array<double, 3> dev{};
    for (int k = 0; k < 3; ++k) {
        const double r = radius / double(1 << k);
        double acc = 0.0;
        constexpr int kCirclePoints = 16;
        for (int i = 0; i < kCirclePoints; ++i) {
            const double t = 2.0 * std::numbers::pi * i / kCirclePoints;
            const double g =
                pair_gap(ep.delta + r * std::cos(t), ep.lambda_re + r * std::sin(t), pr);
            acc += std::abs(g - g_center);
        }
        dev[k] = acc / kCirclePoints;
    }

    OrderCertificate cert;
    if (dev[1] <= 0.0 || dev[2] <= 0.0) {
        cert.conclusive = false;
        return cert;
    }
    const double p1 = std::log2(dev[0] / dev[1]);
    const double p2 = std::log2(dev[1] / dev[2]);
    cert.exponent = 0.5 * (p1 + p2);
    cert.conclusive = std::abs(p1 - p2) < 0.2;
    cert.second_order = cert.conclusive && std::abs(cert.exponent - 0.5) < 0.1;
    return cert;
}

std::vector<EpCandidate> locate(const SystemConfig& cfg, const GridSpec& grid) {
    const auto seeds = grid_scan(cfg, grid);
    std::vector<EpCandidate> refined;
    for (const auto& s : seeds) {
        // Coarse grids produce shallow spurious minima; only minima that are
        // already small relative to the box survive as seeds.
        if (s.residual > 1e-3) continue;
        EpCandidate r;
        try {
            r = refine(cfg, s, grid.policy);
        } catch (const std::runtime_error&) {
            continue;  // drifted or diverged seeds are not candidates
        }
        if (r.residual > 1e-10) continue;
        if (r.delta < grid.delta_min || r.delta > grid.delta_max ||
            r.lambda_re < grid.lambda_min || r.lambda_re > grid.lambda_max)
            continue;
        const bool dup = std::any_of(refined.begin(), refined.end(), [&](const EpCandidate& q) {
            return std::hypot(q.delta - r.delta, q.lambda_re - r.lambda_re) < 1e-6;
        });
        if (!dup) refined.push_back(r);
    }
    std::sort(refined.begin(), refined.end(),
              [](const EpCandidate& a, const EpCandidate& b) { return a.delta < b.delta; });
    return refined;
}

}  // namespace ep3
