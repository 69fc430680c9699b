#include "ep3/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>

namespace ep3 {

CardanoParts cardano_parts(const SecularCoeffs& c) {
    CardanoParts p;
    const cplx a1 = c.a1, a2 = c.a2, a3 = c.a3;
    p.m_val = -a1 * a1 * a1 / 27.0 + a1 * a2 / 6.0 - a3 / 2.0;
    p.n_val = -a1 * a1 / 9.0 + a2 / 3.0;
    p.eta = a1 / 3.0;
    p.discriminant = p.m_val * p.m_val + p.n_val * p.n_val * p.n_val;

    const cplx root = std::sqrt(p.discriminant);
    p.eps_plus = std::pow(p.m_val + root, 1.0 / 3.0);
    // Pair the second cube root so that eps_plus * eps_minus == -n. Taking
    // two independent principal roots breaks that identity and yields values
    // that are not roots of the cubic.
    if (std::abs(p.eps_plus) > 1e-14)
        p.eps_minus = -p.n_val / p.eps_plus;
    else
        p.eps_minus = std::pow(p.m_val - root, 1.0 / 3.0);
    return p;
}

EigenFrame cardano_roots(const SecularCoeffs& c) {
    const CardanoParts p = cardano_parts(c);
    const cplx w = kOmega, wb = std::conj(kOmega);
    EigenFrame f;
    f.values = {w * p.eps_plus + wb * p.eps_minus - p.eta,
                p.eps_plus + p.eps_minus - p.eta,
                wb * p.eps_plus + w * p.eps_minus - p.eta};
    return f;
}

cplx discriminant(const SecularCoeffs& c) { return cardano_parts(c).discriminant; }

std::array<cplx, 3> oracle_roots(const SecularCoeffs& c) {
    const double scale = 1.0 + std::max({std::abs(c.a1), std::abs(c.a2), std::abs(c.a3)});
    // Non-real, non-uniform starting spread; the classic choice.
    const cplx seed{0.4, 0.9};
    std::array<cplx, 3> z{scale * seed, scale * seed * seed, scale * seed * seed * seed};

    double last_residual = 0.0;
    for (int it = 0; it < 200; ++it) {
        double move = 0.0;
        for (int i = 0; i < 3; ++i) {
            cplx denom = 1.0;
            for (int j = 0; j < 3; ++j)
                if (j != i) denom *= z[i] - z[j];
            if (denom == cplx{0.0, 0.0}) denom = cplx{1e-300, 0.0};
            const cplx step = c.eval(z[i]) / denom;
            z[i] -= step;
            move = std::max(move, std::abs(step));
        }
        last_residual = 0.0;
        bool done = true;
        for (const cplx& zi : z) {
            const double r = std::abs(c.eval(zi));
            last_residual = std::max(last_residual, r);
            const double zmag = std::abs(zi);
            if (r >= 1e-12 * (1.0 + zmag * zmag * zmag)) done = false;
        }
        if (done) return z;
        if (move < 1e-16 * scale) break;  // stalled; treat as converged-or-fail below
    }

    for (const cplx& zi : z) {
        const double zmag = std::abs(zi);
        if (std::abs(c.eval(zi)) >= 1e-10 * (1.0 + zmag * zmag * zmag))
            throw std::runtime_error(
                "oracle_roots: no convergence after iteration cap, residual " +
                std::to_string(last_residual));
    }
    return z;
}

namespace {

// Characteristic coefficients read off the matrix itself (trace, principal
// minors, determinant); independent of the model-side closed form.
SecularCoeffs charpoly(const Mat3& h) {
    SecularCoeffs c;
    c.a1 = -h.trace();
    c.a2 = (h(0, 0) * h(1, 1) - h(0, 1) * h(1, 0)) +
           (h(0, 0) * h(2, 2) - h(0, 2) * h(2, 0)) +
           (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1));
    c.a3 = -det3(h);
    return c;
}

// Gaussian elimination with partial pivoting; small and self-contained.
Vec3 solve3(Mat3 a, Vec3 b) {
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(a(r, col)) > std::abs(a(piv, col))) piv = r;
        if (piv != col) {
            for (int c = 0; c < 3; ++c) std::swap(a(col, c), a(piv, c));
            std::swap(b[col], b[piv]);
        }
        cplx d = a(col, col);
        if (std::abs(d) < 1e-300) d = cplx{1e-300, 0.0};
        for (int r = col + 1; r < 3; ++r) {
            const cplx f = a(r, col) / d;
            for (int c = col; c < 3; ++c) a(r, c) -= f * a(col, c);
            b[r] -= f * b[col];
        }
    }
    Vec3 x;
    for (int r = 2; r >= 0; --r) {
        cplx s = b[r];
        for (int c = r + 1; c < 3; ++c) s -= a(r, c) * x[c];
        cplx d = a(r, r);
        if (std::abs(d) < 1e-300) d = cplx{1e-300, 0.0};
        x[r] = s / d;
    }
    return x;
}

Vec3 normalised_canonical(Vec3 v) {
    const double n = v.norm();
    for (auto& x : v.v) x /= n;
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(v[i]) > std::abs(v[k])) k = i;
    const cplx ph = std::exp(cplx{0.0, -std::arg(v[k])});
    for (auto& x : v.v) x *= ph;
    return v;
}

double residual(const Mat3& h, cplx e, const Vec3& v) {
    return (h.apply(v) - e * v).norm();
}

}  // namespace

EigenvectorResult right_eigenvector(const Mat3& h, cplx e) {
    Mat3 a = h;
    for (int i = 0; i < 3; ++i) a(i, i) -= e;

    double scale = 0.0;
    for (const cplx& x : h.m) scale = std::max(scale, std::abs(x));
    scale = std::max(scale, 1.0);

    const std::array<std::pair<int, int>, 3> row_pairs{{{0, 1}, {0, 2}, {1, 2}}};
    Vec3 best{};
    double best_norm = -1.0;
    for (const auto& [r1, r2] : row_pairs) {
        const Vec3 cr = cross(a.row(r1), a.row(r2));
        const double n = cr.norm();
        if (n > best_norm) {
            best_norm = n;
            best = cr;
        }
    }

    EigenvectorResult out;
    if (best_norm > 1e-12) {
        out.vector = normalised_canonical(best);
    } else {
        // Numerically defective direction: inverse iteration on a slightly
        // shifted matrix still extracts the coalesced eigenvector.
        Mat3 shifted = h;
        for (int i = 0; i < 3; ++i) shifted(i, i) -= e + cplx{1e-13 * scale, 1e-13 * scale};
        Vec3 v{{{cplx{1.0, 0.0}, cplx{0.3, 0.2}, cplx{-0.5, 0.1}}}};
        for (int it = 0; it < 50; ++it) {
            v = solve3(shifted, v);
            const double n = v.norm();
            if (!(n > 0.0) || !std::isfinite(n)) break;
            for (auto& x : v.v) x /= n;
            if (residual(h, e, v) < 1e-10 * scale) break;
        }
        out.vector = normalised_canonical(v);
    }

    // Coalescence flag from the spectrum itself: another eigenvalue within
    // the degeneracy tolerance shares this eigenvector direction.
    const auto evs = cardano_roots(charpoly(h)).values;
    std::array<double, 3> dist{std::abs(evs[0] - e), std::abs(evs[1] - e), std::abs(evs[2] - e)};
    std::sort(dist.begin(), dist.end());
    out.degenerate = out.degenerate || dist[1] < kDegeneracyTol;

    const double res = residual(h, e, out.vector);
    if (res > 1e-8 * scale)
        throw std::runtime_error("right_eigenvector: value is not an eigenvalue, residual " +
                                 std::to_string(res));
    return out;
}

std::array<int, 3> match_branches(const std::array<cplx, 3>& prev,
                                  const std::array<cplx, 3>& cur, bool* ambiguous) {
    static constexpr std::array<std::array<int, 3>, 6> kPerms{{{0, 1, 2},
                                                               {0, 2, 1},
                                                               {1, 0, 2},
                                                               {1, 2, 0},
                                                               {2, 0, 1},
                                                               {2, 1, 0}}};
    double best_cost = 0.0;
    double second_cost = std::numeric_limits<double>::infinity();
    int best = -1;
    for (int k = 0; k < 6; ++k) {
        double cost = 0.0;
        for (int i = 0; i < 3; ++i) cost += std::abs(cur[kPerms[k][i]] - prev[i]);
        if (best < 0) {
            best = k;
            best_cost = cost;
        } else if (cost < best_cost) {
            second_cost = best_cost;
            best_cost = cost;
            best = k;  // strict < keeps the lexicographically earlier permutation on ties
        } else {
            second_cost = std::min(second_cost, cost);
        }
    }
    if (ambiguous) *ambiguous = (second_cost - best_cost) < 1e-12;
    return kPerms[best];
}

}  // namespace ep3
