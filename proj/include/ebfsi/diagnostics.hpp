#pragma once

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "ebfsi/coupling.hpp"

namespace ebfsi {

using Totals = std::array<double, 4>;

/// Sum over cells of (1 - alpha) w dx dy, row-major order.
Totals fluid_totals(const Array2<Conserved>& w, const Array2<double>& alpha, const Grid& grid);
Totals fluid_totals(const CutCellField& field);

struct LedgerRecord {
    long step = 0;
    double t = 0.0;   // time at the end of the step
    double dt = 0.0;
    Totals fluid{};
    Conserved domain_inflow{};
    Conserved solid_exchange{};
    Totals residual{};
    double solid_kinetic_energy = 0.0;
    int small_cells = 0;
};

/// Append-only record of fluid totals and exchanges.
///
/// Residual of step k, per component c:
///   (fluid_after - fluid_before - inflow + solid_exchange) / scale_c
/// where the scales are fixed by the initial totals.
class ConservationLedger {
public:
    explicit ConservationLedger(const Totals& initial);

    void record(const StepReport& report, double solid_kinetic_energy = 0.0);

    const std::vector<LedgerRecord>& records() const { return records_; }
    const Totals& initial() const { return initial_; }
    const Totals& scales() const { return scales_; }

    /// Largest per-step |residual| of component c.
    double max_residual(int c) const;
    /// Balance of the whole run so far, relative to the scales.
    Totals cumulative_drift() const;

    void write_csv(std::ostream& os) const;

private:
    Totals initial_{};
    Totals scales_{};
    Totals inflow_sum_{};
    Totals exchange_sum_{};
    std::vector<LedgerRecord> records_;
};

/// Residual vector of record k.
Totals coupled_residuals(const ConservationLedger& ledger, std::size_t k);

/// Least-squares slope of log(error) against log(spacing).
/// Needs at least 3 levels and positive errors.
double convergence_order(std::span<const double> errors, std::span<const double> spacings);

/// Max-norm change of (rho, u, v, p) between two fields over cells that are
/// not fully solid in `alpha`.
double max_primitive_change(const Array2<Conserved>& a, const Array2<Conserved>& b, const Array2<double>& alpha,
                            const GasModel& gas);

}  // namespace ebfsi
