#include "ep3/model.hpp"

#include <cmath>

namespace ep3 {

void SystemConfig::validate() const {
    for (int j = 0; j < 3; ++j) {
        if (!std::isfinite(eps[j]) || !std::isfinite(tau[j]))
            throw std::invalid_argument("SystemConfig: non-finite entry");
        if (tau[j] <= 0.0)
            throw std::invalid_argument("SystemConfig: tau must be positive");
    }
    if (eps[0] == eps[1] || eps[1] == eps[2] || eps[0] == eps[2])
        throw std::invalid_argument("SystemConfig: passive levels must be pairwise distinct");
    if (!std::isfinite(gamma) || !std::isfinite(kappa))
        throw std::invalid_argument("SystemConfig: non-finite coupling");
    if (gamma == kappa)
        throw std::invalid_argument("SystemConfig: gamma == kappa degenerates the delta control");
}

Mat3 build_hamiltonian(const SystemConfig& cfg, const ControlPoint& p) {
    const cplx lam = p.lambda();
    Mat3 h;
    h(0, 0) = cfg.passive(0);
    h(1, 1) = cfg.passive(1);
    h(2, 2) = cfg.passive(2);
    h(0, 1) = lam * (p.delta - cfg.gamma);
    h(1, 0) = lam * cfg.kappa;
    h(1, 2) = lam * cfg.gamma;
    h(2, 1) = lam * (p.delta - cfg.kappa);
    // (0,2) and (2,0) stay exactly zero: levels 1 and 3 are uncoupled.
    return h;
}

SecularCoeffs secular_coefficients(const SystemConfig& cfg, const ControlPoint& p) {
    const cplx e1 = cfg.passive(0), e2 = cfg.passive(1), e3 = cfg.passive(2);
    const cplx lam2 = p.lambda() * p.lambda();
    const double g = cfg.gamma, k = cfg.kappa, d = p.delta;

    SecularCoeffs c;
    c.a1 = -(e1 + e2 + e3);
    c.a2 = e1 * e2 + e2 * e3 + e3 * e1 - lam2 * (g * (d - k) + k * (d - g));
    c.a3 = -e1 * e2 * e3 + lam2 * (g * (d - k) * e1 + k * (d - g) * e3);
    return c;
}

std::pair<long, long> parameter_budget(int m) {
    if (m < 2) throw std::domain_error("parameter_budget: need at least two levels");
    const long lm = m;
    return {(lm * lm + lm - 2) / 2, lm * (lm - 1) / 2};
}

}  // namespace ep3
