#include "ebfsi/state.hpp"

#include <sstream>

namespace ebfsi {

GasModel::GasModel(double g) : gamma(g) {
    if (!(g > 1.0)) throw std::invalid_argument("GasModel: gamma must be > 1");
}

AdmissibilityError::AdmissibilityError(const std::string& what, long cell)
    : std::runtime_error(what), cell_(cell) {}

bool is_admissible(const Conserved& w, const GasModel& gas) {
    if (!std::isfinite(w.rho) || !std::isfinite(w.mom_x) || !std::isfinite(w.mom_y) ||
        !std::isfinite(w.rho_E))
        return false;
    if (!(w.rho > 0.0)) return false;
    const double kinetic = 0.5 * (w.mom_x * w.mom_x + w.mom_y * w.mom_y) / w.rho;
    return (gas.gamma - 1.0) * (w.rho_E - kinetic) > 0.0;
}

Primitive primitive_from_conserved(const Conserved& w, const GasModel& gas, long cell) {
    if (!(w.rho > 0.0) || !std::isfinite(w.rho)) {
        std::ostringstream os;
        os << "non-positive density " << w.rho;
        if (cell >= 0) os << " in cell " << cell;
        throw AdmissibilityError(os.str(), cell);
    }
    const double u = w.mom_x / w.rho;
    const double v = w.mom_y / w.rho;
    const double p = (gas.gamma - 1.0) * (w.rho_E - 0.5 * w.rho * (u * u + v * v));
    if (!(p > 0.0) || !std::isfinite(p)) {
        std::ostringstream os;
        os << "non-positive pressure " << p;
        if (cell >= 0) os << " in cell " << cell;
        throw AdmissibilityError(os.str(), cell);
    }
    return {w.rho, u, v, p};
}

Conserved conserved_from_primitive(const Primitive& q, const GasModel& gas) {
    return {q.rho, q.rho * q.u, q.rho * q.v,
            q.p / (gas.gamma - 1.0) + 0.5 * q.rho * (q.u * q.u + q.v * q.v)};
}

double pressure(const Conserved& w, const GasModel& gas) {
    return (gas.gamma - 1.0) * (w.rho_E - 0.5 * (w.mom_x * w.mom_x + w.mom_y * w.mom_y) / w.rho);
}

}  // namespace ebfsi
