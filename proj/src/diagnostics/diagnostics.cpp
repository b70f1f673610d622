#include "ebfsi/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <stdexcept>

namespace ebfsi {

Totals fluid_totals(const Array2<Conserved>& w, const Array2<double>& alpha, const Grid& grid) {
    Totals t{};
    const double area = grid.cell_area();
    for (std::size_t c = 0; c < w.size(); ++c) {
        const double beta = 1.0 - alpha[c];
        if (beta == 0.0) continue;
        for (int k = 0; k < 4; ++k) t[k] += beta * w[c][k] * area;
    }
    return t;
}

Totals fluid_totals(const CutCellField& f) { return fluid_totals(f.w, f.geom.alpha, f.grid); }

ConservationLedger::ConservationLedger(const Totals& initial) : initial_(initial) {
    const double m = std::abs(initial[0]);
    const double e = std::abs(initial[3]);
    const double p_ref = std::sqrt(2.0 * m * e);
    scales_[0] = std::max(m, 1e-30);
    scales_[1] = std::max({std::abs(initial[1]), p_ref, 1e-30});
    scales_[2] = std::max({std::abs(initial[2]), p_ref, 1e-30});
    scales_[3] = std::max(e, 1e-30);
}

void ConservationLedger::record(const StepReport& r, double solid_ke) {
    LedgerRecord rec;
    rec.step = r.step;
    rec.t = r.t + r.dt;
    rec.dt = r.dt;
    rec.fluid = r.fluid_after;
    rec.domain_inflow = r.domain_inflow;
    rec.solid_exchange = r.solid_exchange;
    rec.solid_kinetic_energy = solid_ke;
    rec.small_cells = r.small_cells;
    for (int c = 0; c < 4; ++c) {
        const double bal = r.fluid_after[c] - r.fluid_before[c] - r.domain_inflow[c] + r.solid_exchange[c];
        rec.residual[c] = bal / scales_[c];
        inflow_sum_[c] += r.domain_inflow[c];
        exchange_sum_[c] += r.solid_exchange[c];
    }
    records_.push_back(rec);
}

double ConservationLedger::max_residual(int c) const {
    double m = 0.0;
    for (const LedgerRecord& r : records_) m = std::max(m, std::abs(r.residual[c]));
    return m;
}

Totals ConservationLedger::cumulative_drift() const {
    Totals d{};
    if (records_.empty()) return d;
    const Totals& last = records_.back().fluid;
    for (int c = 0; c < 4; ++c)
        d[c] = (last[c] - initial_[c] - inflow_sum_[c] + exchange_sum_[c]) / scales_[c];
    return d;
}

void ConservationLedger::write_csv(std::ostream& os) const {
    os << "step,t,dt,mass,mom_x,mom_y,energy,inflow_mass,inflow_mom_x,inflow_mom_y,inflow_energy,"
          "solid_mom_x,solid_mom_y,solid_energy,res_mass,res_mom_x,res_mom_y,res_energy,"
          "solid_kinetic_energy,small_cells\n";
    os << std::setprecision(17);
    for (const LedgerRecord& r : records_) {
        os << r.step << ',' << r.t << ',' << r.dt;
        for (double v : r.fluid) os << ',' << v;
        for (int c = 0; c < 4; ++c) os << ',' << r.domain_inflow[c];
        os << ',' << r.solid_exchange.mom_x << ',' << r.solid_exchange.mom_y << ',' << r.solid_exchange.rho_E;
        for (double v : r.residual) os << ',' << v;
        os << ',' << r.solid_kinetic_energy << ',' << r.small_cells << '\n';
    }
}

Totals coupled_residuals(const ConservationLedger& ledger, std::size_t k) {
    if (k >= ledger.records().size()) throw std::out_of_range("coupled_residuals: step not recorded");
    return ledger.records()[k].residual;
}

double convergence_order(std::span<const double> errors, std::span<const double> spacings) {
    if (errors.size() != spacings.size()) throw std::invalid_argument("convergence_order: size mismatch");
    if (errors.size() < 3) throw std::invalid_argument("convergence_order: need at least 3 levels");
    const double n = static_cast<double>(errors.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t k = 0; k < errors.size(); ++k) {
        if (!(errors[k] > 0.0)) throw std::invalid_argument("convergence_order: errors must be positive");
        if (!(spacings[k] > 0.0)) throw std::invalid_argument("convergence_order: spacings must be positive");
        const double x = std::log(spacings[k]);
        const double y = std::log(errors[k]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double den = n * sxx - sx * sx;
    if (den == 0.0) throw std::invalid_argument("convergence_order: spacings must differ");
    return (n * sxy - sx * sy) / den;
}

double max_primitive_change(const Array2<Conserved>& a, const Array2<Conserved>& b, const Array2<double>& alpha,
                            const GasModel& gas) {
    double m = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        if (alpha[c] == 1.0) continue;
        const Primitive p = primitive_from_conserved(a[c], gas, static_cast<long>(c));
        const Primitive q = primitive_from_conserved(b[c], gas, static_cast<long>(c));
        m = std::max({m, std::abs(p.rho - q.rho), std::abs(p.u - q.u), std::abs(p.v - q.v), std::abs(p.p - q.p)});
    }
    return m;
}

}  // namespace ebfsi
