#pragma once
#include <cstddef>
#include <vector>

#include "hyplab/grid.hpp"

namespace hyplab::detail {

// Integral of the hyperbolic volume density over each cell of a
// PiecewiseLinear grid.
std::vector<double> p1_cell_volumes(const RadialGrid& g);

// Symmetric tridiagonal matrix: diagonal d, off-diagonal e (e[i] couples
// i and i+1).
struct Tridiag {
    std::vector<double> d, e;
    std::size_t n() const { return d.size(); }
    std::vector<double> apply(const std::vector<double>& x) const;
    // Thomas solve; assumes positive definiteness (no pivoting).
    std::vector<double> solve(const std::vector<double>& b) const;
};

// Stiffness of the hat basis under the volume density: for piecewise
// linear u, u^T K u = integral of |u'|^2 over the ball.
Tridiag p1_stiffness(const RadialGrid& g);

} // namespace hyplab::detail
