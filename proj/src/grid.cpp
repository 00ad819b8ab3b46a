#include "hyplab/grid.hpp"

#include <cmath>

#include "hyplab/errors.hpp"
#include "hyplab/geometry.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

double RadialGrid::volume() const {
    double s = 0.0;
    for (double wi : w) s += wi;
    return s;
}

double RadialGrid::quad(const std::vector<double>& f) const {
    if (f.size() != w.size()) throw ConfigError("RadialGrid::quad: length mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * f[i];
    return s;
}

namespace {

// Differentiation matrix of the Lagrange interpolant on arbitrary nodes,
// via barycentric weights.
std::vector<double> diff_matrix(const std::vector<double>& x) {
    const std::size_t n = x.size();
    std::vector<double> bw(n, 1.0);
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
            if (k != j) bw[j] /= (x[j] - x[k]);
    std::vector<double> D(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double diag = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double d = (bw[j] / bw[i]) / (x[i] - x[j]);
            D[i * n + j] = d;
            diag -= d;
        }
        D[i * n + i] = diag;
    }
    return D;
}

} // namespace

RadialGrid RadialGrid::spectral(int N, const std::vector<double>& breaks, int nodes_per_panel) {
    if (N < 2) throw ConfigError("RadialGrid: N must be >= 2");
    if (nodes_per_panel < 2) throw ConfigError("RadialGrid: need >= 2 nodes per panel");
    RadialGrid g;
    g.N = N;
    g.kind = GridKind::SpectralPanels;
    g.panel_breaks = breaks;
    g.nodes_per_panel = nodes_per_panel;
    g.R_max = breaks.back();
    const CompositeRule rule = composite_gauss(breaks, nodes_per_panel);
    g.nodes = rule.x;
    g.w.resize(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
        g.w[i] = rule.w[i] * volume_weight(N, rule.x[i]);
    return g;
}

RadialGrid RadialGrid::spectral_uniform(int N, double R_max, int panels, int nodes_per_panel) {
    return spectral(N, uniform_breaks(0.0, R_max, panels), nodes_per_panel);
}

RadialGrid RadialGrid::linear(int N, double R_max, int cells) {
    if (N < 2) throw ConfigError("RadialGrid: N must be >= 2");
    if (cells < 4) throw ConfigError("RadialGrid: need >= 4 cells");
    RadialGrid g;
    g.N = N;
    g.kind = GridKind::PiecewiseLinear;
    g.R_max = R_max;
    g.h = R_max / cells;
    g.nodes.resize(cells + 1);
    g.w.assign(cells + 1, 0.0);
    for (int i = 0; i <= cells; ++i) g.nodes[i] = R_max * i / cells;
    // Hat-function weights: w_i = integral of phi_i times the volume
    // density.  Partition of unity makes sum w_i the exact ball volume.
    const GaussRule& gr = gauss_rule(12);
    for (int c = 0; c < cells; ++c) {
        const double a = g.nodes[c], b = g.nodes[c + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int q = 0; q < 12; ++q) {
            const double rho = mid + half * gr.x[q];
            const double wq = half * gr.w[q] * volume_weight(N, rho);
            const double t = (rho - a) / (b - a);
            g.w[c] += wq * (1.0 - t);
            g.w[c + 1] += wq * t;
        }
    }
    return g;
}

RadialGrid RadialGrid::production(int N) {
    return spectral_uniform(N, 40.0, 40, 8);
}

std::vector<double> RadialGrid::derivative(const std::vector<double>& u) const {
    if (u.size() != nodes.size()) throw ConfigError("RadialGrid::derivative: length mismatch");
    std::vector<double> du(u.size(), 0.0);
    if (kind == GridKind::SpectralPanels) {
        const int n = nodes_per_panel;
        // Reference differentiation matrix on the Gauss nodes of [-1,1].
        static thread_local int cached_n = -1;
        static thread_local std::vector<double> Dref;
        if (cached_n != n) {
            Dref = diff_matrix(gauss_rule(n).x);
            cached_n = n;
        }
        const std::size_t npanels = panel_breaks.size() - 1;
        for (std::size_t p = 0; p < npanels; ++p) {
            const double scale = 2.0 / (panel_breaks[p + 1] - panel_breaks[p]);
            for (int i = 0; i < n; ++i) {
                double s = 0.0;
                for (int j = 0; j < n; ++j) s += Dref[i * n + j] * u[p * n + j];
                du[p * n + i] = scale * s;
            }
        }
    } else {
        const std::size_t m = u.size();
        du[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
        for (std::size_t i = 1; i + 1 < m; ++i) du[i] = (u[i + 1] - u[i - 1]) / (2.0 * h);
        du[m - 1] = (3.0 * u[m - 1] - 4.0 * u[m - 2] + u[m - 3]) / (2.0 * h);
    }
    return du;
}

RadialFunction sample(const RadialGrid& grid, const std::function<double(double)>& f) {
    RadialFunction u;
    u.grid = &grid;
    u.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) u.values[i] = f(grid.nodes[i]);
    return u;
}

} // namespace hyplab
