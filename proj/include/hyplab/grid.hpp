#pragma once
#include <functional>
#include <vector>

#include "hyplab/params.hpp"

namespace hyplab {

// Weighted radial grid on [0, R_max] with the hyperbolic volume density
// folded into the quadrature weights:  sum_i w_i f(rho_i) approximates
// integral of f over the geodesic ball of radius R_max.
//
// Two representations:
//  * SpectralPanels: composite Gauss-Legendre panels.  Nodes are panel
//    interior points (so every weight is strictly positive), integrals
//    of smooth profiles are spectrally accurate, derivatives come from
//    the per-panel differentiation matrix.
//  * PiecewiseLinear: uniform nodes with hat-function weights
//    w_i = integral of the i-th hat times the volume density.  Integrals
//    are nodal (mass-lumped); derivatives are central differences.  This
//    is the representation the Nehari minimizer descends on, because its
//    stiffness matrix couples neighboring nodes and keeps iterates
//    continuous (independent spectral panels would relax to spurious
//    per-panel Neumann problems).
enum class GridKind { SpectralPanels, PiecewiseLinear };

struct RadialGrid {
    int N = 3;
    double R_max = 40.0;
    GridKind kind = GridKind::SpectralPanels;
    std::vector<double> nodes;  // strictly increasing
    std::vector<double> w;      // volume-weighted, all > 0

    // SpectralPanels data
    std::vector<double> panel_breaks;
    int nodes_per_panel = 0;

    // PiecewiseLinear data
    double h = 0.0;

    std::size_t size() const { return nodes.size(); }
    double volume() const;

    // Nodal derivative by the grid's differentiation rule.
    std::vector<double> derivative(const std::vector<double>& u) const;

    // sum_i w_i f_i in fixed order.
    double quad(const std::vector<double>& f) const;

    static RadialGrid spectral(int N, const std::vector<double>& breaks, int nodes_per_panel);
    static RadialGrid spectral_uniform(int N, double R_max, int panels, int nodes_per_panel);
    static RadialGrid linear(int N, double R_max, int cells);

    // Default production grid: unit-width panels to R_max = 40 with 8
    // Gauss nodes each (320 nodes).
    static RadialGrid production(int N);
};

struct RadialFunction {
    const RadialGrid* grid = nullptr;
    std::vector<double> values;
};

RadialFunction sample(const RadialGrid& grid, const std::function<double(double)>& f);

} // namespace hyplab
