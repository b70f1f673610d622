#include "ebfsi/riemann.hpp"

#include <algorithm>
#include <cmath>

namespace ebfsi {

namespace {

struct Side {
    double rho, u, p, c, A, B;
};

Side side_of(const Primitive& q, const GasModel& gas) {
    const double g = gas.gamma;
    return {q.rho, q.u, q.p, gas.sound_speed(q.rho, q.p), 2.0 / ((g + 1.0) * q.rho), (g - 1.0) / (g + 1.0) * q.p};
}

// Pressure function f_K(p) and its derivative.
void pressure_function(double p, const Side& s, const GasModel& gas, double& f, double& df) {
    const double g = gas.gamma;
    if (p > s.p) {
        const double sq = std::sqrt(s.A / (p + s.B));
        f = (p - s.p) * sq;
        df = sq * (1.0 - 0.5 * (p - s.p) / (s.B + p));
    } else {
        const double r = p / s.p;
        f = 2.0 * s.c / (g - 1.0) * (std::pow(r, (g - 1.0) / (2.0 * g)) - 1.0);
        df = 1.0 / (s.rho * s.c) * std::pow(r, -(g + 1.0) / (2.0 * g));
    }
}

}  // namespace

StarState riemann_star(const Primitive& left, const Primitive& right, const GasModel& gas) {
    if (!(left.rho > 0.0 && left.p > 0.0 && right.rho > 0.0 && right.p > 0.0))
        throw std::invalid_argument("riemann_star: states must have positive density and pressure");
    const Side L = side_of(left, gas);
    const Side R = side_of(right, gas);
    const double g = gas.gamma;
    const double du = R.u - L.u;
    if (2.0 * (L.c + R.c) / (g - 1.0) <= du) throw VacuumError("Riemann problem generates vacuum");

    // Two-rarefaction initial guess.
    const double z = (g - 1.0) / (2.0 * g);
    double p = std::pow((L.c + R.c - 0.5 * (g - 1.0) * du) / (L.c / std::pow(L.p, z) + R.c / std::pow(R.p, z)), 1.0 / z);
    p = std::max(p, 1e-12 * std::min(L.p, R.p));
    for (int it = 0; it < 100; ++it) {
        double fl, dfl, fr, dfr;
        pressure_function(p, L, gas, fl, dfl);
        pressure_function(p, R, gas, fr, dfr);
        const double pn = std::max(p - (fl + fr + du) / (dfl + dfr), 1e-14 * p);
        const double change = 2.0 * std::abs(pn - p) / (pn + p);
        p = pn;
        if (change < 1e-15) break;
    }
    double fl, dfl, fr, dfr;
    pressure_function(p, L, gas, fl, dfl);
    pressure_function(p, R, gas, fr, dfr);
    return {p, 0.5 * (L.u + R.u) + 0.5 * (fr - fl)};
}

Primitive exact_riemann_solution(const Primitive& left, const Primitive& right, const GasModel& gas, double xi) {
    const StarState s = riemann_star(left, right, gas);
    const double g = gas.gamma;
    const double gm = (g - 1.0) / (g + 1.0);
    if (xi <= s.u) {
        const double c = gas.sound_speed(left.rho, left.p);
        if (s.p > left.p) {
            const double pr = s.p / left.p;
            const double speed = left.u - c * std::sqrt((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g));
            if (xi <= speed) return left;
            return {left.rho * (pr + gm) / (gm * pr + 1.0), s.u, left.v, s.p};
        }
        const double head = left.u - c;
        const double cs = c * std::pow(s.p / left.p, (g - 1.0) / (2.0 * g));
        const double tail = s.u - cs;
        if (xi <= head) return left;
        if (xi >= tail) return {left.rho * std::pow(s.p / left.p, 1.0 / g), s.u, left.v, s.p};
        const double f = 2.0 / (g + 1.0) + gm / c * (left.u - xi);
        return {left.rho * std::pow(f, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (c + 0.5 * (g - 1.0) * left.u + xi), left.v,
                left.p * std::pow(f, 2.0 * g / (g - 1.0))};
    }
    const double c = gas.sound_speed(right.rho, right.p);
    if (s.p > right.p) {
        const double pr = s.p / right.p;
        const double speed = right.u + c * std::sqrt((g + 1.0) / (2.0 * g) * pr + (g - 1.0) / (2.0 * g));
        if (xi >= speed) return right;
        return {right.rho * (pr + gm) / (gm * pr + 1.0), s.u, right.v, s.p};
    }
    const double head = right.u + c;
    const double cs = c * std::pow(s.p / right.p, (g - 1.0) / (2.0 * g));
    const double tail = s.u + cs;
    if (xi >= head) return right;
    if (xi <= tail) return {right.rho * std::pow(s.p / right.p, 1.0 / g), s.u, right.v, s.p};
    const double f = 2.0 / (g + 1.0) - gm / c * (right.u - xi);
    return {right.rho * std::pow(f, 2.0 / (g - 1.0)), 2.0 / (g + 1.0) * (-c + 0.5 * (g - 1.0) * right.u + xi), right.v,
            right.p * std::pow(f, 2.0 * g / (g - 1.0))};
}

Primitive post_shock_state(const Primitive& a, double mach, const GasModel& gas) {
    if (!(mach >= 1.0)) throw std::invalid_argument("post_shock_state: Mach number must be >= 1");
    const double g = gas.gamma;
    const double m2 = mach * mach;
    const double c = gas.sound_speed(a.rho, a.p);
    Primitive b;
    b.rho = a.rho * (g + 1.0) * m2 / ((g - 1.0) * m2 + 2.0);
    b.p = a.p * (2.0 * g * m2 - (g - 1.0)) / (g + 1.0);
    b.u = a.u + 2.0 / (g + 1.0) * (mach - 1.0 / mach) * c;
    b.v = a.v;
    return b;
}

double shock_speed(const Primitive& a, double mach, const GasModel& gas) {
    return a.u + mach * gas.sound_speed(a.rho, a.p);
}

}  // namespace ebfsi
