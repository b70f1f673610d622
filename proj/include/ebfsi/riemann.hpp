#pragma once

#include <stdexcept>

#include "ebfsi/state.hpp"

namespace ebfsi {

class VacuumError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct StarState {
    double p = 0.0;
    double u = 0.0;
};

/// Pressure and velocity between the nonlinear waves of the 1D Riemann
/// problem (x-direction; v is carried by the contact).
StarState riemann_star(const Primitive& left, const Primitive& right, const GasModel& gas);

/// Exact self-similar solution at xi = x / t.
Primitive exact_riemann_solution(const Primitive& left, const Primitive& right, const GasModel& gas, double xi);

/// State behind a normal shock of Mach number `mach` running in +x into
/// the quiescent state `ahead`.
Primitive post_shock_state(const Primitive& ahead, double mach, const GasModel& gas);

/// Speed of that shock.
double shock_speed(const Primitive& ahead, double mach, const GasModel& gas);

}  // namespace ebfsi
