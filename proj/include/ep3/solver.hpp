// solver.hpp - closed-form eigenvalues of the secular cubic, an independent
// simultaneous-iteration root oracle, the coalescence discriminant, and
// right eigenvectors of the 3x3 matrix.

#pragma once

#include <array>
#include <optional>

#include "ep3/types.hpp"

namespace ep3 {

// Intermediate quantities of the depressed-cubic reduction. The two cube
// roots are paired so that eps_plus * eps_minus == -n_val; eta is a1/3.
struct CardanoParts {
    cplx m_val;
    cplx n_val;
    cplx eta;
    cplx eps_plus;
    cplx eps_minus;
    cplx discriminant;  // m^2 + n^3, the radicand of the square root
};

// Fixed primitive cube root of unity used by the closed-form roots.
inline const cplx kOmega{-0.5, 0.8660254037844386467637231707529362};

struct EigenFrame {
    std::array<cplx, 3> values{};
    std::optional<std::array<Vec3, 3>> vectors;
    std::array<int, 3> labels{1, 2, 3};
};

CardanoParts cardano_parts(const SecularCoeffs& c);

// The three roots in closed form:
//   { w e+ + conj(w) e- - eta,  e+ + e- - eta,  conj(w) e+ + w e- - eta }.
EigenFrame cardano_roots(const SecularCoeffs& c);

// Radicand of the closed-form square root; zero exactly when two roots
// coalesce, which is the two-level degeneracy condition.
cplx discriminant(const SecularCoeffs& c);

// Roots by simultaneous fixed-point iteration on all three candidates at
// once, independent of the closed form. Iterates until every residual
// |p(z)| < 1e-12 * (1 + |z|^3); throws std::runtime_error carrying the last
// residual if the iteration cap is reached.
std::array<cplx, 3> oracle_roots(const SecularCoeffs& c);

struct EigenvectorResult {
    Vec3 vector;
    bool degenerate = false;  // null space direction was rank-deficient
};

// Unit right eigenvector for a known eigenvalue, from the cross product of
// the two most independent rows of (H - E*I); inverse iteration fallback
// when every cross product is tiny. Gauge: largest-magnitude component made
// real and positive. Throws std::runtime_error when E is not an eigenvalue
// of H to within the residual bound.
EigenvectorResult right_eigenvector(const Mat3& h, cplx e);

// Eigenvalues closer than this are treated as coalesced when flagging
// defective directions.
inline constexpr double kDegeneracyTol = 1e-10;

// Minimum-total-distance assignment between two value triples: returns the
// permutation p minimising sum_i |cur[p[i]] - prev[i]|, so cur[p[i]]
// continues branch i. `ambiguous` (optional out) reports a second assignment
// within 1e-12 of the best cost; ties break in lexicographic order.
std::array<int, 3> match_branches(const std::array<cplx, 3>& prev,
                                  const std::array<cplx, 3>& cur,
                                  bool* ambiguous = nullptr);

}  // namespace ep3
