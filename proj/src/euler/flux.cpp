#include "ebfsi/flux.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ebfsi {

namespace {

FluxVector x_flux(const Primitive& q, const Conserved& w) {
    return {w.mom_x, w.mom_x * q.u + q.p, w.mom_y * q.u, (w.rho_E + q.p) * q.u};
}

double entropy_fixed(double lambda, double delta) {
    const double a = std::abs(lambda);
    if (a >= delta) return a;
    return 0.5 * (lambda * lambda + delta * delta) / delta;
}

}  // namespace

FluxVector euler_flux(const Conserved& w, Axis axis, const GasModel& gas) {
    if (axis == Axis::x) return x_flux(primitive_from_conserved(w, gas), w);
    const Conserved ws = swap_axes(w);
    return swap_axes(x_flux(primitive_from_conserved(ws, gas), ws));
}

RoeWaves roe_decompose(const Conserved& wl, const Conserved& wr, const GasModel& gas) {
    const Primitive l = primitive_from_conserved(wl, gas);
    const Primitive r = primitive_from_conserved(wr, gas);
    const double hl = (wl.rho_E + l.p) / l.rho;
    const double hr = (wr.rho_E + r.p) / r.rho;
    const double sl = std::sqrt(l.rho);
    const double sr = std::sqrt(r.rho);
    const double inv = 1.0 / (sl + sr);
    const double u = (sl * l.u + sr * r.u) * inv;
    const double v = (sl * l.v + sr * r.v) * inv;
    const double h = (sl * hl + sr * hr) * inv;
    const double q2 = 0.5 * (u * u + v * v);
    const double c2 = (gas.gamma - 1.0) * (h - q2);
    if (!(c2 > 0.0) || !std::isfinite(c2)) {
        std::ostringstream os;
        os << "degenerate Roe average (c^2 = " << c2 << ")";
        throw AdmissibilityError(os.str());
    }
    const double c = std::sqrt(c2);
    const double rho = sl * sr;

    const double dp = r.p - l.p;
    const double du = r.u - l.u;
    const double dv = r.v - l.v;
    const double drho = r.rho - l.rho;

    RoeWaves waves;
    waves.lambda = {u - c, u, u, u + c};
    waves.strength = {(dp - rho * c * du) / (2.0 * c2), drho - dp / c2, rho * dv,
                      (dp + rho * c * du) / (2.0 * c2)};
    waves.r[0] = {1.0, u - c, v, h - u * c};
    waves.r[1] = {1.0, u, v, q2};
    waves.r[2] = {0.0, 0.0, 1.0, v};
    waves.r[3] = {1.0, u + c, v, h + u * c};

    const double delta = kEntropyFixFraction * (std::abs(u) + c);
    waves.abs_lambda = {entropy_fixed(waves.lambda[0], delta), std::abs(u), std::abs(u),
                        entropy_fixed(waves.lambda[3], delta)};

    const FluxVector fl = x_flux(l, wl);
    const FluxVector fr = x_flux(r, wr);
    FluxVector f = 0.5 * (fl + fr);
    for (int k = 0; k < 4; ++k) f -= (0.5 * waves.abs_lambda[k] * waves.strength[k]) * waves.r[k];
    waves.roe = f;

    // Near vacuum the linearised star states can lose positivity; fall back
    // to HLLE with Einfeldt's speed bounds at such interfaces.
    const Conserved star_l = wl + waves.strength[0] * waves.r[0];
    const Conserved star_r = wr - waves.strength[3] * waves.r[3];
    if (!is_admissible(star_l, gas) || !is_admissible(star_r, gas)) {
        waves.roe = hlle_flux(wl, wr, gas);
        waves.positivity_fallback = true;
    }
    return waves;
}

FluxVector hlle_flux(const Conserved& wl, const Conserved& wr, const GasModel& gas) {
    const Primitive l = primitive_from_conserved(wl, gas);
    const Primitive r = primitive_from_conserved(wr, gas);
    const double hl = (wl.rho_E + l.p) / l.rho;
    const double hr = (wr.rho_E + r.p) / r.rho;
    const double sl = std::sqrt(l.rho);
    const double sr = std::sqrt(r.rho);
    const double inv = 1.0 / (sl + sr);
    const double u = (sl * l.u + sr * r.u) * inv;
    const double v = (sl * l.v + sr * r.v) * inv;
    const double h = (sl * hl + sr * hr) * inv;
    const double c = std::sqrt(std::max(0.0, (gas.gamma - 1.0) * (h - 0.5 * (u * u + v * v))));
    const double s_lo = std::min(l.u - gas.sound_speed(l.rho, l.p), u - c);
    const double s_hi = std::max(r.u + gas.sound_speed(r.rho, r.p), u + c);
    const FluxVector fl = x_flux(l, wl);
    const FluxVector fr = x_flux(r, wr);
    if (s_lo >= 0.0) return fl;
    if (s_hi <= 0.0) return fr;
    return (1.0 / (s_hi - s_lo)) * (s_hi * fl - s_lo * fr + s_lo * s_hi * (wr - wl));
}

FluxVector roe_flux(const Conserved& wl, const Conserved& wr, Axis axis, const GasModel& gas) {
    if (axis == Axis::x) return roe_decompose(wl, wr, gas).roe;
    return swap_axes(roe_decompose(swap_axes(wl), swap_axes(wr), gas).roe);
}

double limiter_value(Limiter limiter, double theta) {
    switch (limiter) {
        case Limiter::minmod:
            return std::max(0.0, std::min(1.0, theta));
        case Limiter::monotonized_central:
            return std::max(0.0, std::min({2.0 * theta, 0.5 * (1.0 + theta), 2.0}));
        case Limiter::van_leer:
            return theta > 0.0 ? 2.0 * theta / (1.0 + theta) : 0.0;
        case Limiter::superbee:
            return std::max({0.0, std::min(2.0 * theta, 1.0), std::min(theta, 2.0)});
    }
    return 0.0;
}

FluxScheme FluxScheme::roe_first_order() {
    FluxScheme s;
    s.variant = Variant::roe_first_order;
    s.order = 1;
    return s;
}

FluxScheme FluxScheme::limited_second_order(Limiter lim) {
    FluxScheme s;
    s.variant = Variant::limited_second_order;
    s.limiter = lim;
    s.order = 2;
    return s;
}

FluxScheme FluxScheme::pluggable(int order, WaveCorrection correction) {
    if (order < 1) throw std::invalid_argument("pluggable flux scheme: order must be >= 1");
    if (!correction) throw std::invalid_argument("pluggable flux scheme: empty correction");
    FluxScheme s;
    s.variant = Variant::pluggable_high_order;
    s.order = order;
    s.correction = std::move(correction);
    return s;
}

int FluxScheme::half_width() const {
    switch (variant) {
        case Variant::roe_first_order: return 1;
        case Variant::limited_second_order: return 2;
        case Variant::pluggable_high_order: return (order + 3) / 2;
    }
    return 1;
}

namespace {

// Limited Lax-Wendroff correction of one family at interface `centre`.
double second_order_psi(Limiter limiter, const WaveContext& ctx) {
    const double a = ctx.strengths[ctx.centre];
    if (a == 0.0) return 0.0;
    const int upwind = ctx.lambda >= 0.0 ? ctx.centre - 1 : ctx.centre + 1;
    const double theta = ctx.strengths[upwind] / a;
    const double coeff = ctx.abs_lambda - ctx.dt_over_dx * ctx.lambda * ctx.lambda;
    return coeff * limiter_value(limiter, theta) * a;
}

}  // namespace

void row_interface_fluxes(std::span<const Conserved> padded, const FluxScheme& scheme,
                          double dt_over_dx, const GasModel& gas, std::span<FluxVector> out,
                          SweepScratch& scratch, long cell_offset) {
    const int g = scheme.half_width();
    const int n_iface = static_cast<int>(out.size());
    const int n = n_iface - 1;
    if (static_cast<int>(padded.size()) != n + 2 * g)
        throw std::invalid_argument("row_interface_fluxes: padded row has wrong length");

    // Waves at interfaces between padded[m] and padded[m+1], m = 0 .. n+2g-2.
    const int n_waves = n + 2 * g - 1;
    scratch.waves.resize(static_cast<std::size_t>(n_waves));
    for (int m = 0; m < n_waves; ++m) {
        try {
            scratch.waves[m] = roe_decompose(padded[m], padded[m + 1], gas);
        } catch (const AdmissibilityError& e) {
            const long cell = cell_offset >= 0 ? cell_offset + std::clamp(m - g + 1, 0, n - 1) : -1;
            throw AdmissibilityError(e.what(), cell);
        }
    }

    // Interior interface q (0..n) is padded wave index m = q + g - 1.
    if (scheme.variant == FluxScheme::Variant::roe_first_order) {
        for (int q = 0; q < n_iface; ++q) out[q] = scratch.waves[q + g - 1].roe;
        return;
    }

    const int span_len = 2 * g - 1;
    scratch.family.resize(static_cast<std::size_t>(span_len));
    for (int q = 0; q < n_iface; ++q) {
        const int m = q + g - 1;
        const RoeWaves& w = scratch.waves[m];
        FluxVector f = w.roe;
        if (w.positivity_fallback) {
            out[q] = f;
            continue;
        }
        for (int k = 0; k < 4; ++k) {
            for (int s = 0; s < span_len; ++s) scratch.family[s] = scratch.waves[m - (g - 1) + s].strength[k];
            WaveContext ctx{std::span<const double>(scratch.family), g - 1, w.lambda[k], w.abs_lambda[k],
                            dt_over_dx};
            const double psi = scheme.variant == FluxScheme::Variant::limited_second_order
                                   ? second_order_psi(scheme.limiter, ctx)
                                   : scheme.correction(ctx);
            f += (0.5 * psi) * w.r[k];
        }
        out[q] = f;
    }
}

FluxVector high_order_flux(std::span<const Conserved> stencil, const FluxScheme& scheme, double dt,
                           double dx, Axis axis, const GasModel& gas) {
    const int need = scheme.stencil_points();
    const int len = static_cast<int>(stencil.size());
    if (len < need || len % 2 != 0) {
        std::ostringstream os;
        os << "high_order_flux: stencil of " << len << " points, scheme needs an even count >= " << need;
        throw std::invalid_argument(os.str());
    }
    const int first = len / 2 - need / 2;
    std::vector<Conserved> padded(static_cast<std::size_t>(need));
    for (int k = 0; k < need; ++k)
        padded[k] = axis == Axis::x ? stencil[first + k] : swap_axes(stencil[first + k]);

    // A "row" with zero interior cells has exactly one interface.
    SweepScratch scratch;
    FluxVector f;
    row_interface_fluxes(padded, scheme, dt / dx, gas, std::span<FluxVector>(&f, 1), scratch);
    return axis == Axis::x ? f : swap_axes(f);
}

}  // namespace ebfsi
