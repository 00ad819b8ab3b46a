#include "hyplab/functionals.hpp"

#include <cmath>
#include <string>

#include "hyplab/errors.hpp"
#include "hyplab/geometry.hpp"
#include "hyplab/quadrature.hpp"
#include "hyplab/shooting.hpp"
#include "internal.hpp"

namespace hyplab {

namespace detail {

std::vector<double> p1_cell_volumes(const RadialGrid& g) {
    if (g.kind != GridKind::PiecewiseLinear)
        throw ConfigError("p1_cell_volumes: grid is not piecewise linear");
    const std::size_t cells = g.size() - 1;
    std::vector<double> V(cells, 0.0);
    const GaussRule& gr = gauss_rule(12);
    for (std::size_t c = 0; c < cells; ++c) {
        const double a = g.nodes[c], b = g.nodes[c + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        double s = 0.0;
        for (int q = 0; q < 12; ++q) s += half * gr.w[q] * volume_weight(g.N, mid + half * gr.x[q]);
        V[c] = s;
    }
    return V;
}

std::vector<double> Tridiag::apply(const std::vector<double>& x) const {
    const std::size_t m = n();
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double s = d[i] * x[i];
        if (i > 0) s += e[i - 1] * x[i - 1];
        if (i + 1 < m) s += e[i] * x[i + 1];
        y[i] = s;
    }
    return y;
}

std::vector<double> Tridiag::solve(const std::vector<double>& b) const {
    const std::size_t m = n();
    std::vector<double> c(m, 0.0), y(m, 0.0);
    double piv = d[0];
    if (piv == 0.0) throw NumericalError("tridiagonal solve: zero pivot at row 0");
    y[0] = b[0] / piv;
    for (std::size_t i = 1; i < m; ++i) {
        c[i - 1] = e[i - 1] / piv;
        piv = d[i] - e[i - 1] * c[i - 1];
        if (piv == 0.0)
            throw NumericalError("tridiagonal solve: zero pivot at row " + std::to_string(i));
        y[i] = (b[i] - e[i - 1] * y[i - 1]) / piv;
    }
    for (std::size_t i = m - 1; i-- > 0;) y[i] -= c[i] * y[i + 1];
    return y;
}

Tridiag p1_stiffness(const RadialGrid& g) {
    const std::vector<double> V = p1_cell_volumes(g);
    const std::size_t m = g.size();
    Tridiag K;
    K.d.assign(m, 0.0);
    K.e.assign(m - 1, 0.0);
    for (std::size_t c = 0; c + 1 < m; ++c) {
        const double hc = g.nodes[c + 1] - g.nodes[c];
        const double k = V[c] / (hc * hc);
        K.d[c] += k;
        K.d[c + 1] += k;
        K.e[c] -= k;
    }
    return K;
}

} // namespace detail

namespace {

[[noreturn]] void report_bad_node(const RadialGrid& g, const std::vector<double>& u,
                                  const ProblemParams& params) {
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double ui = u[i];
        const double lp1 = std::pow(std::abs(ui), params.p + 1.0);
        const double lt = ui == 0.0 ? 0.0 : ui * ui * 2.0 * std::log(std::abs(ui));
        if (!std::isfinite(ui) || !std::isfinite(lp1) || !std::isfinite(lt))
            throw NumericalError("eval_J: non-finite contribution at node " + std::to_string(i) +
                                 " (rho = " + std::to_string(g.nodes[i]) + ")");
    }
    throw NumericalError("eval_J: non-finite energy");
}

} // namespace

EnergyReport eval_J(const RadialFunction& u, const ProblemParams& params) {
    params.validate();
    if (u.grid == nullptr) throw ConfigError("eval_J: profile has no grid");
    const RadialGrid& g = *u.grid;
    if (u.values.size() != g.size()) throw ConfigError("eval_J: profile/grid size mismatch");

    double grad = 0.0;
    if (g.kind == GridKind::SpectralPanels) {
        const std::vector<double> du = g.derivative(u.values);
        for (std::size_t i = 0; i < g.size(); ++i) grad += g.w[i] * du[i] * du[i];
    } else {
        // Exact Dirichlet energy of the piecewise linear interpolant.
        const std::vector<double> V = detail::p1_cell_volumes(g);
        for (std::size_t c = 0; c + 1 < g.size(); ++c) {
            const double slope = (u.values[c + 1] - u.values[c]) / (g.nodes[c + 1] - g.nodes[c]);
            grad += V[c] * slope * slope;
        }
    }

    double l2 = 0.0, lp1p = 0.0, lt = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
        const double ui = u.values[i], wi = g.w[i];
        l2 += wi * ui * ui;
        lp1p += wi * std::pow(std::abs(ui), params.p + 1.0);
        if (ui != 0.0) lt += wi * ui * ui * 2.0 * std::log(std::abs(ui));
    }
    if (!std::isfinite(grad) || !std::isfinite(l2) || !std::isfinite(lp1p) || !std::isfinite(lt))
        report_bad_node(g, u.values, params);

    EnergyReport rep;
    rep.grad_norm_sq = grad;
    rep.l2_norm_sq = l2;
    rep.lp1_norm = std::pow(lp1p, 1.0 / (params.p + 1.0));
    rep.log_term = lt;
    rep.J = 0.5 * grad - 0.5 * params.lambda * l2 - lp1p / (params.p + 1.0) -
            0.5 * params.theta * (lt - l2);
    rep.I = grad - params.lambda * l2 - lp1p - params.theta * lt;
    return rep;
}

RadialFunction default_minimize_init(const RadialGrid& grid) {
    const double a = grid.N - 1.0;
    return sample(grid, [a](double rho) { return std::pow(std::cosh(0.5 * rho), -a); });
}

} // namespace hyplab
