#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "ebfsi/state.hpp"

namespace ebfsi {

/// Physical Euler flux f(w) along `axis`.
FluxVector euler_flux(const Conserved& w, Axis axis, const GasModel& gas);

/// Roe-averaged eigen-decomposition of the jump wr - wl along x.
/// Σ strength[k] * r[k] == wr - wl to round-off.
struct RoeWaves {
    std::array<double, 4> lambda{};      // u-c, u, u, u+c
    std::array<double, 4> abs_lambda{};  // |lambda| after the entropy fix
    std::array<double, 4> strength{};
    std::array<Conserved, 4> r{};
    FluxVector roe{};  // first-order Roe flux (HLLE when positivity_fallback)
    bool positivity_fallback = false;
};

/// Harten entropy-fix threshold as a fraction of (|u| + c).
inline constexpr double kEntropyFixFraction = 0.1;

RoeWaves roe_decompose(const Conserved& wl, const Conserved& wr, const GasModel& gas);

FluxVector roe_flux(const Conserved& wl, const Conserved& wr, Axis axis, const GasModel& gas);

/// HLLE flux along x with Einfeldt speed bounds.
FluxVector hlle_flux(const Conserved& wl, const Conserved& wr, const GasModel& gas);

enum class Limiter { minmod, monotonized_central, van_leer, superbee };

/// Flux-limiter function phi(theta) of the given family.
double limiter_value(Limiter limiter, double theta);

/// Correction coefficient psi for one wave family at one interface.
///
/// `strengths` holds that family's wave strengths at every interface of the
/// stencil ordered left to right, `centre` is the interface being corrected.
/// The returned psi is added as 0.5 * psi * r_k to the Roe flux.
struct WaveContext {
    std::span<const double> strengths;
    int centre = 0;
    double lambda = 0.0;
    double abs_lambda = 0.0;  // entropy-fixed |lambda|
    double dt_over_dx = 0.0;
};
using WaveCorrection = std::function<double(const WaveContext&)>;

/// Numerical flux family used for a whole run.
struct FluxScheme {
    enum class Variant { roe_first_order, limited_second_order, pluggable_high_order };

    Variant variant = Variant::limited_second_order;
    Limiter limiter = Limiter::monotonized_central;
    int order = 2;               // formal order p of the pluggable slot
    WaveCorrection correction;   // only used by pluggable_high_order

    static FluxScheme roe_first_order();
    static FluxScheme limited_second_order(Limiter lim = Limiter::monotonized_central);
    static FluxScheme pluggable(int order, WaveCorrection correction);

    /// Cells needed on each side of an interface (>= (p+2)/2).
    int half_width() const;
    int stencil_points() const { return 2 * half_width(); }
};

/// Flux at the centre interface of `stencil` (states ordered along `axis`).
/// The stencil must have an even length of at least scheme.stencil_points();
/// the central points are used.
FluxVector high_order_flux(std::span<const Conserved> stencil, const FluxScheme& scheme, double dt,
                           double dx, Axis axis, const GasModel& gas);

/// Fluxes at every interface of a padded x-direction row.
///
/// `padded` holds n + 2*g cells where g = scheme.half_width(); the n + 1
/// interior interfaces (between padded[g-1]/padded[g] ... padded[g+n-1]/padded[g+n])
/// are written to `out`. `scratch` is reused between calls.
struct SweepScratch {
    std::vector<RoeWaves> waves;
    std::vector<double> family;
};
void row_interface_fluxes(std::span<const Conserved> padded, const FluxScheme& scheme,
                          double dt_over_dx, const GasModel& gas, std::span<FluxVector> out,
                          SweepScratch& scratch, long cell_offset = -1);

}  // namespace ebfsi
