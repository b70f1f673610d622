#include <algorithm>
#include <cstdlib>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <unordered_set>

#include "ebfsi/coupling.hpp"

namespace ebfsi {

namespace {

struct Step {
    int di, dj;
};
constexpr Step kNeighbours[4] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};

// Solid aperture of the face crossed when moving from (i, j) by s.
double face_kappa(const CutCellGeometry& g, int i, int j, const Step& s) {
    if (s.di < 0) return g.kappa_l(i, j);
    if (s.di > 0) return g.kappa_r(i, j);
    if (s.dj < 0) return g.kappa_b(i, j);
    return g.kappa_t(i, j);
}

// Fallback for a group whose mixed state is not admissible: absorb further
// layers of unclaimed fluid neighbours and take the fluid-fraction average
// until the state is admissible (at most kMaxLayers layers).
void widen_group(const CutCellGeometry& g, const Array2<Conserved>& content, long t, const std::vector<long>& members,
                 std::vector<std::uint8_t>& claimed, const GasModel& gas, Conserved w_bar, MixingOutcome& out) {
    constexpr int kMaxLayers = 8;
    const Grid& grid = g.grid;
    std::vector<long> all{t};
    all.insert(all.end(), members.begin(), members.end());
    Conserved sum = content[t];
    double beta = 1.0 - g.alpha[t];
    for (long c : members) {
        sum += content[c];
        beta += 1.0 - g.alpha[c];
    }
    std::vector<long> frontier = all, next;
    for (int layer = 0; layer < kMaxLayers && !is_admissible(w_bar, gas); ++layer) {
        next.clear();
        for (long c : frontier) {
            const int i = grid.i_of(c), j = grid.j_of(c);
            for (const Step& s : kNeighbours) {
                const int ni = i + s.di, nj = j + s.dj;
                if (!grid.contains(ni, nj)) continue;
                const long nc = grid.index(ni, nj);
                if (claimed[nc] || g.alpha[nc] == 1.0) continue;
                claimed[nc] = 1;
                next.push_back(nc);
            }
        }
        if (next.empty()) break;
        std::sort(next.begin(), next.end());
        for (long c : next) {
            sum += content[c];
            beta += 1.0 - g.alpha[c];
            all.push_back(c);
        }
        w_bar = (1.0 / beta) * sum;
        frontier.swap(next);
    }
    for (long c : all)
        if (!out.covered[c] || c == t || std::find(members.begin(), members.end(), c) != members.end()) out.w[c] = w_bar;
}

}  // namespace

long find_target_cell(const CutCellGeometry& g, long small_cell, std::span<const std::uint8_t> excluded) {
    const Grid& grid = g.grid;
    if (small_cell < 0 || small_cell >= grid.cells()) throw std::out_of_range("find_target_cell: bad cell index");
    const int si = grid.i_of(small_cell);
    const int sj = grid.j_of(small_cell);
    std::unordered_set<long> seen{small_cell};
    std::vector<long> layer{small_cell}, next;
    while (!layer.empty()) {
        next.clear();
        for (long c : layer) {
            const int i = grid.i_of(c), j = grid.j_of(c);
            const bool inside_solid = g.alpha(i, j) == 1.0;
            for (const Step& s : kNeighbours) {
                const int ni = i + s.di, nj = j + s.dj;
                if (!grid.contains(ni, nj)) continue;
                if (!inside_solid && !(1.0 - face_kappa(g, i, j, s) > 0.0)) continue;
                const long nc = grid.index(ni, nj);
                if (seen.insert(nc).second) next.push_back(nc);
            }
        }
        long best = -1;
        std::tuple<double, int, long> best_key{};
        for (long c : next) {
            const int i = grid.i_of(c), j = grid.j_of(c);
            if (g.alpha(i, j) != 0.0) continue;
            if (!excluded.empty() && excluded[c]) continue;
            const double ddx = (i - si) * grid.dx, ddy = (j - sj) * grid.dy;
            const std::tuple<double, int, long> key{ddx * ddx + ddy * ddy, -std::abs(2 * j + 1 - grid.ny), c};
            if (best < 0 || key < best_key) {
                best = c;
                best_key = key;
            }
        }
        if (best >= 0) return best;
        layer.swap(next);
    }
    std::ostringstream os;
    os << "mixing: no fully fluid cell reachable from cell (" << si << ", " << sj << ")";
    throw std::runtime_error(os.str());
}

Conserved mix_pair(double beta_c, const Conserved& w_c, double beta_t, const Conserved& w_t) {
    const double s = beta_c + beta_t;
    if (!(s > 0.0)) throw std::invalid_argument("mix_pair: zero total fluid fraction");
    return (1.0 / s) * (beta_c * w_c + beta_t * w_t);
}

std::pair<Conserved, Conserved> alpha_exchange(double alpha_c, const Conserved& w_c, double alpha_t,
                                                 const Conserved& w_t) {
    const double s = alpha_c + alpha_t;
    if (!(s > 0.0)) throw std::invalid_argument("alpha_exchange: zero total solid fraction");
    return {(alpha_t / s) * (w_t - w_c), (alpha_c / s) * (w_c - w_t)};
}

MixingOutcome mix_small_cells(const Array2<Conserved>& content, const CutCellGeometry& g,
                              const Array2<double>& alpha_n, MixingWeights weights, const GasModel* gas) {
    const Grid& grid = g.grid;
    const long n = grid.cells();
    MixingOutcome out{Array2<Conserved>(grid.nx, grid.ny), std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0),
                      std::vector<long>(static_cast<std::size_t>(n), -1), 0, 0};

    // Small cells: too little fluid at either level. They never serve as targets.
    std::vector<std::uint8_t> small(static_cast<std::size_t>(n), 0);
    for (long c = 0; c < n; ++c) {
        const double a1 = g.alpha[c];
        const bool covered = a1 == 1.0;
        const Conserved& q = content[c];
        const bool has_content = q.rho != 0.0 || q.mom_x != 0.0 || q.mom_y != 0.0 || q.rho_E != 0.0;
        small[c] = ((a1 > 0.5 || alpha_n[c] > 0.5) && !covered) || (covered && has_content);
        out.covered[c] = covered ? 1 : 0;
        if (!small[c] && !covered) {
            out.w[c] = (1.0 / (1.0 - a1)) * q;
            if (gas && !is_admissible(out.w[c], *gas)) small[c] = 1;
        }
    }

    // Groups keyed by target, members in row-major order.
    std::map<long, std::vector<long>> groups;
    for (long c = 0; c < n; ++c) {
        if (!small[c]) continue;
        const long t = find_target_cell(g, c, small);
        out.target[c] = t;
        groups[t].push_back(c);
        ++out.small_cells;
    }

    std::vector<std::uint8_t> claimed = small;
    for (const auto& [t, members] : groups) claimed[t] = 1;

    for (auto& [t, members] : groups) {
        ++out.groups;
        Conserved w_bar;
        if (weights == MixingWeights::fluid_fraction) {
            Conserved sum = content[t];
            double beta = 1.0 - g.alpha[t];
            for (long c : members) {
                sum += content[c];
                beta += 1.0 - g.alpha[c];
            }
            w_bar = (1.0 / beta) * sum;
        } else {
            // alpha-weighted average of states; covered content joins the target first.
            Conserved target_content = content[t];
            for (long c : members)
                if (out.covered[c]) target_content += content[c];
            const Conserved w_t = (1.0 / (1.0 - g.alpha[t])) * target_content;
            Conserved num = g.alpha[t] * w_t;
            double den = g.alpha[t];
            Conserved bnum = target_content;
            double bden = 1.0 - g.alpha[t];
            for (long c : members) {
                if (out.covered[c]) continue;
                const double a = g.alpha[c];
                const Conserved wc = (1.0 / (1.0 - a)) * content[c];
                num += a * wc;
                den += a;
                bnum += content[c];
                bden += 1.0 - a;
            }
            w_bar = den > 0.0 ? (1.0 / den) * num : (1.0 / bden) * bnum;
        }
        if (gas && !is_admissible(w_bar, *gas)) {
            widen_group(g, content, t, members, claimed, *gas, w_bar, out);
            continue;
        }
        out.w[t] = w_bar;
        for (long c : members) out.w[c] = w_bar;
    }
    return out;
}

void extrapolate_into_solid(Array2<Conserved>& w, const Array2<double>& alpha) {
    const int nx = w.nx(), ny = w.ny();
    // 0: unfilled solid, 1: fluid or filled.
    std::vector<std::uint8_t> filled(w.size(), 0);
    std::vector<long> pending;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const long c = static_cast<long>(j) * nx + i;
            if (alpha[c] < 1.0)
                filled[c] = 1;
            else
                pending.push_back(c);
        }
    std::vector<std::pair<long, Conserved>> layer;
    std::vector<long> rest;
    while (!pending.empty()) {
        layer.clear();
        rest.clear();
        for (long c : pending) {
            const int i = static_cast<int>(c % nx), j = static_cast<int>(c / nx);
            const Conserved* first = nullptr;
            Conserved acc{};
            double wsum = 0.0;
            for (const Step& s : kNeighbours) {
                const int ni = i + s.di, nj = j + s.dj;
                if (ni < 0 || ni >= nx || nj < 0 || nj >= ny) continue;
                const long nc = static_cast<long>(nj) * nx + ni;
                if (!filled[nc]) continue;
                const double beta = alpha[nc] < 1.0 ? 1.0 - alpha[nc] : 1.0;
                if (!first) first = &w[nc];
                acc += beta * (w[nc] - *first);
                wsum += beta;
            }
            if (first)
                layer.emplace_back(c, *first + (1.0 / wsum) * acc);
            else
                rest.push_back(c);
        }
        if (layer.empty()) break;  // isolated solid region: keep old values
        for (const auto& [c, v] : layer) {
            w[c] = v;
            filled[c] = 1;
        }
        pending.swap(rest);
    }
}

}  // namespace ebfsi
