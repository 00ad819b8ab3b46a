#pragma once
#include <string>
#include <vector>

#include "hyplab/grid.hpp"
#include "hyplab/params.hpp"

namespace hyplab {

// Component integrals of the action functional and the Nehari functional
//   J = grad/2 - lambda*l2/2 - lp1^{p+1}/(p+1) - theta/2 (log_term - l2)
//   I = grad - lambda*l2 - lp1^{p+1} - theta*log_term
// where grad = |nabla u|_2^2, l2 = |u|_2^2, lp1 = |u|_{p+1}, and
// log_term = integral of u^2 ln u^2.
struct EnergyReport {
    double J = 0.0, I = 0.0;
    double grad_norm_sq = 0.0;
    double l2_norm_sq = 0.0;
    double lp1_norm = 0.0;
    double log_term = 0.0;
};

EnergyReport eval_J(const RadialFunction& u, const ProblemParams& params);

// The unique t0 > 0 with I(t0 u) = 0, via the monotone scalar equation
//   grad - lambda*l2 = 2 theta ln t * l2 + t^{p-1} lp1^{p+1} + theta*log_term
// whose right side is strictly increasing in t for theta > 0.
// Bracketed on [1e-8, 1e8]; an absent sign change is reported as a
// numerical failure rather than extrapolated.
double nehari_scale(const RadialFunction& u, const ProblemParams& params);

struct MinimizeOptions {
    int max_iter = 4000;
    double step = 0.25;
    double tol = 1e-9;  // stop when the relative decrease of J falls below this
};

struct IterRow {
    int iter;
    double J, I, t0, grad_norm;
};

struct MinimizeResult {
    RadialFunction u_star;
    double d_p = 0.0;
    EnergyReport report;
    int iterations = 0;
    bool converged = false;
    bool diverged = false;
    std::vector<IterRow> log;
    // Squared preconditioned norm of the gradient of J projected onto
    // the tangent of the constraint set at u_star, divided by |J|.
    // A stationarity certificate: roughly twice the remaining relative
    // gap to the constrained minimum.
    double stationarity = 0.0;
    // Largest upward violation of radial monotonicity of u_star,
    // relative to max u_star.
    double monotonicity_defect = 0.0;
};

// Projected descent for d_p = inf { J(u) : I(u) = 0 }: each iteration
// takes a preconditioned gradient step on J and re-projects onto the
// constraint with nehari_scale.  Requires theta > 0 and an init that is
// positive somewhere.  The grid must be PiecewiseLinear.
MinimizeResult minimize_nehari(const RadialFunction& init, const ProblemParams& params,
                               const MinimizeOptions& opts = {});

// A mollified profile in the expected decay class, used as the default
// minimizer start: cosh(rho/2)^{-(N-1)}.
RadialFunction default_minimize_init(const RadialGrid& grid);

} // namespace hyplab
