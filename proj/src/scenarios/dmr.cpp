#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ebfsi/scenarios.hpp"

namespace ebfsi {

namespace {

// Bilinear weights over the four surrounding centres, dropping solid ones.
bool sample_density(const CutCellField& f, double x, double y, double& rho) {
    const Grid& g = f.grid;
    const double s = (x - g.x0) / g.dx - 0.5;
    const double t = (y - g.y0) / g.dy - 0.5;
    const int i0 = static_cast<int>(std::floor(s));
    const int j0 = static_cast<int>(std::floor(t));
    const double fs = s - i0, ft = t - j0;
    double sum = 0.0, wsum = 0.0;
    for (int dj = 0; dj < 2; ++dj)
        for (int di = 0; di < 2; ++di) {
            const int i = std::clamp(i0 + di, 0, g.nx - 1);
            const int j = std::clamp(j0 + dj, 0, g.ny - 1);
            if (f.geom.alpha(i, j) >= 1.0) continue;
            const double w = (di ? fs : 1.0 - fs) * (dj ? ft : 1.0 - ft);
            sum += w * f.w(i, j).rho;
            wsum += w;
        }
    if (wsum <= 1e-12) return false;
    rho = sum / wsum;
    return true;
}

}  // namespace

DmrComparison compare_dmr(const CutCellField& aligned, const DmrFrame& fa, const CutCellField& wedge,
                          const DmrFrame& fw, double xi_max, double eta_max) {
    DmrComparison out;
    double diff = 0.0, norm = 0.0;
    const Grid& g = aligned.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            if (aligned.geom.alpha(i, j) >= 1.0) continue;
            double xi = 0.0, eta = 0.0;
            dmr_to_wall_frame(fa, g.xc(i), g.yc(j), xi, eta);
            if (xi < 0.0 || xi > xi_max || eta < 0.0 || eta > eta_max) continue;
            double x = 0.0, y = 0.0, rho = 0.0;
            dmr_from_wall_frame(fw, xi, eta, x, y);
            if (!sample_density(wedge, x, y, rho)) continue;
            diff += std::abs(aligned.w(i, j).rho - rho);
            norm += std::abs(aligned.w(i, j).rho);
            ++out.samples;
        }
    if (out.samples == 0) throw std::invalid_argument("compare_dmr: empty comparison window");
    out.l1_relative = diff / norm;
    return out;
}

}  // namespace ebfsi
