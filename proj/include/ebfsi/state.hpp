#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ebfsi {

enum class Axis { x, y };

/// Conservative variables of one cell: (rho, rho*u, rho*v, rho*E).
///
/// The same four-component layout is reused for fluxes (per unit face
/// length and unit time), see FluxVector.
struct Conserved {
    double rho = 0.0;
    double mom_x = 0.0;
    double mom_y = 0.0;
    double rho_E = 0.0;

    constexpr double& operator[](int k) {
        switch (k) {
            case 0: return rho;
            case 1: return mom_x;
            case 2: return mom_y;
            default: return rho_E;
        }
    }
    constexpr double operator[](int k) const {
        switch (k) {
            case 0: return rho;
            case 1: return mom_x;
            case 2: return mom_y;
            default: return rho_E;
        }
    }

    constexpr Conserved& operator+=(const Conserved& o) {
        rho += o.rho; mom_x += o.mom_x; mom_y += o.mom_y; rho_E += o.rho_E;
        return *this;
    }
    constexpr Conserved& operator-=(const Conserved& o) {
        rho -= o.rho; mom_x -= o.mom_x; mom_y -= o.mom_y; rho_E -= o.rho_E;
        return *this;
    }
    constexpr Conserved& operator*=(double s) {
        rho *= s; mom_x *= s; mom_y *= s; rho_E *= s;
        return *this;
    }
    friend constexpr Conserved operator+(Conserved a, const Conserved& b) { return a += b; }
    friend constexpr Conserved operator-(Conserved a, const Conserved& b) { return a -= b; }
    friend constexpr Conserved operator*(double s, Conserved a) { return a *= s; }
    friend constexpr Conserved operator*(Conserved a, double s) { return a *= s; }
    friend constexpr Conserved operator-(Conserved a) { return a *= -1.0; }
    friend constexpr bool operator==(const Conserved&, const Conserved&) = default;
};

/// Numerical or physical flux through a face, per unit length and time.
using FluxVector = Conserved;

struct Primitive {
    double rho = 0.0;
    double u = 0.0;
    double v = 0.0;
    double p = 0.0;
    friend constexpr bool operator==(const Primitive&, const Primitive&) = default;
};

struct GasModel {
    double gamma = 1.4;

    GasModel() = default;
    explicit GasModel(double g);

    double sound_speed(double rho, double p) const { return std::sqrt(gamma * p / rho); }
};

/// Raised when a state with non-positive density or internal energy is met.
/// `cell` is the flat cell index (or -1 when not attached to a grid).
class AdmissibilityError : public std::runtime_error {
public:
    AdmissibilityError(const std::string& what, long cell = -1);
    long cell() const noexcept { return cell_; }

private:
    long cell_;
};

bool is_admissible(const Conserved& w, const GasModel& gas);

Primitive primitive_from_conserved(const Conserved& w, const GasModel& gas, long cell = -1);
Conserved conserved_from_primitive(const Primitive& q, const GasModel& gas);

double pressure(const Conserved& w, const GasModel& gas);

/// Swaps the momentum components so a y-direction problem can be solved
/// with the x-direction kernel. Applying it twice is the identity.
constexpr Conserved swap_axes(const Conserved& w) { return {w.rho, w.mom_y, w.mom_x, w.rho_E}; }

}  // namespace ebfsi
