// model.hpp - builds the three-level matrix and its secular cubic from a
// configuration and a control point.

#pragma once

#include <utility>

#include "ep3/types.hpp"

namespace ep3 {

// Full matrix: diagonal passive part plus lambda times the coupling pattern.
// Levels 1 and 3 are never coupled directly; entries (1,3) and (3,1) are
// exactly zero for every input.
Mat3 build_hamiltonian(const SystemConfig& cfg, const ControlPoint& p);

// Coefficients of det(E*I - H) = E^3 + a1 E^2 + a2 E + a3 in closed form.
// Must agree with the characteristic polynomial of build_hamiltonian at the
// same inputs; the unit tests cross-check the two routes.
SecularCoeffs secular_coefficients(const SystemConfig& cfg, const ControlPoint& p);

// Control-parameter bookkeeping for m mutually interacting levels: number of
// independent real parameters needed, and the number of pairwise
// second-order degeneracies that can be addressed with them.
// Throws std::domain_error for m < 2.
std::pair<long, long> parameter_budget(int m);

}  // namespace ep3
