#pragma once
#include <limits>
#include <utility>
#include <vector>

#include "hyplab/params.hpp"

namespace hyplab {

// x * ln(x^2) extended by 0 at x = 0 (the limit value).  This is the
// convention used everywhere the logarithmic nonlinearity is evaluated.
// Written as 2 x ln|x| so that x*x underflowing to 0 cannot poison the
// logarithm.
inline double x_ln_x2(double x) {
    if (x == 0.0) return 0.0;
    return 2.0 * x * std::log(std::abs(x));
}

// x^2 * (ln(x^2) - 1) extended by 0 at x = 0.
inline double x2_ln_x2_m1(double x) {
    if (x == 0.0) return 0.0;
    return x * x * (2.0 * std::log(std::abs(x)) - 1.0);
}

enum class TrajClass { CrossesZero, DecaysPositive, Indeterminate };

struct Classification {
    TrajClass kind = TrajClass::Indeterminate;
    // CrossesZero: location of the first sign change.
    // Indeterminate: the rho_max actually reached.
    // DecaysPositive: where the underflow floor was detected.
    double rho = 0.0;
};

struct Sample {
    double rho, u, du;
};

struct Trajectory {
    std::vector<Sample> samples;
    Classification cls;
    double initial_value = 0.0;
};

const char* classification_name(TrajClass c);

struct IntegrateOptions {
    double rho_max = 40.0;
    double tol = 1e-10;    // local truncation error per unit rho
    double floor = 1e-24;  // u^2 + u'^2 below this counts as decayed
    double max_step = std::numeric_limits<double>::infinity();
    // Stop when u' turns nonnegative while u is still positive (the
    // trajectory has peeled off upward).  Used by the shooting search.
    bool stop_at_turn = false;
};

// Second derivative u'' of the radial equation
//   u'' + (N-1) coth(rho) u' + lambda u + |u|^{p-1} u + theta u ln u^2 = 0.
// At rho = 0 the symmetric regularization u''(0) = -f(u)/N applies; for
// rho < 1e-4 coth is evaluated by its Laurent series.
double ode_rhs(double rho, double u, double uprime, const ProblemParams& params);

// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) integration of the
// radial initial value problem u(0) = a, u'(0) = 0.  Every accepted step
// is recorded.  Throws NumericalError with the last valid rho if the
// step size collapses or the solution blows up.
Trajectory integrate(double a, const ProblemParams& params, const IntegrateOptions& opts);
Trajectory integrate(double a, const ProblemParams& params, double rho_max, double tol);

// Pointwise mechanical energy E = u'^2/2 + lambda u^2/2 + |u|^{p+1}/(p+1)
//                                + theta/2 u^2 (ln u^2 - 1).
// Along solutions dE/drho = -(N-1) coth(rho) u'^2 <= 0.
double energy(double u, double du, const ProblemParams& params);

struct EnergyTrace {
    std::vector<std::pair<double, double>> values;  // (rho, E)
};
EnergyTrace energy_trace(const Trajectory& traj, const ProblemParams& params);

struct GroundState {
    double a_star = 0.0;
    Trajectory trajectory;  // positive and strictly decreasing on its domain
    int bisections = 0;
    // All classification-change brackets seen in the pre-scan.  More
    // than one entry means the shooting map is not monotone across the
    // supplied bracket; the first one is the one that was bisected.
    std::vector<std::pair<double, double>> sub_brackets;
};

// Bisect the shooting parameter between an initial height that crosses
// zero and one that does not, to bracket width tol.  Requires theta > 0.
// The returned trajectory is truncated at the point where the midpoint
// trajectory stops decreasing, so it is positive and strictly decreasing
// on its whole domain.
GroundState find_ground_state(std::pair<double, double> bracket, const ProblemParams& params,
                              double tol, const IntegrateOptions& opts = {});

// Least-squares slope of -ln u against rho over samples with
// rho in [rho_a, rho_b].  Requires a window of length >= 5 on which the
// trajectory is strictly positive.  A profile ~ sinh(rho/2)^{-(N-1)}
// fits (N-1)/2.
double fit_decay_exponent(const Trajectory& traj, double rho_a, double rho_b);

} // namespace hyplab
