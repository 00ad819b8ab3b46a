#include "hyplab/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hyplab/errors.hpp"

namespace hyplab {

const char* classification_name(TrajClass c) {
    switch (c) {
        case TrajClass::CrossesZero: return "CrossesZero";
        case TrajClass::DecaysPositive: return "DecaysPositive";
        case TrajClass::Indeterminate: return "Indeterminate";
    }
    return "?";
}

double ode_rhs(double rho, double u, double uprime, const ProblemParams& params) {
    if (!(rho >= 0.0)) throw ConfigError("ode_rhs: rho must be >= 0");
    if (!std::isfinite(rho) || !std::isfinite(u) || !std::isfinite(uprime))
        throw NumericalError("ode_rhs: non-finite input");
    const double f =
        params.lambda * u + std::pow(std::abs(u), params.p - 1.0) * u + params.theta * x_ln_x2(u);
    if (rho == 0.0) return -f / params.N;
    double coth;
    if (rho < 1e-4) {
        coth = 1.0 / rho + rho / 3.0;  // Laurent series; error O(rho^3)
    } else {
        coth = 1.0 / std::tanh(rho);
    }
    return -(params.N - 1) * coth * uprime - f;
}

double energy(double u, double du, const ProblemParams& params) {
    return 0.5 * du * du + 0.5 * params.lambda * u * u +
           std::pow(std::abs(u), params.p + 1.0) / (params.p + 1.0) +
           0.5 * params.theta * x2_ln_x2_m1(u);
}

EnergyTrace energy_trace(const Trajectory& traj, const ProblemParams& params) {
    EnergyTrace trace;
    trace.values.reserve(traj.samples.size());
    for (const auto& s : traj.samples) trace.values.emplace_back(s.rho, energy(s.u, s.du, params));
    return trace;
}

namespace {

// Dormand-Prince 5(4) coefficients.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                 e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                 e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

struct State {
    double u, du;
};

State rk_rhs(double rho, State y, const ProblemParams& p) {
    return {y.du, ode_rhs(rho, y.u, y.du, p)};
}

// Cubic Hermite value of u inside an accepted step.
double hermite_u(double t, double h, const State& y0, const State& y1) {
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0.u + (t3 - 2 * t2 + t) * h * y0.du +
           (-2 * t3 + 3 * t2) * y1.u + (t3 - t2) * h * y1.du;
}

double hermite_du(double t, double h, const State& y0, const State& y1) {
    const double t2 = t * t;
    return ((6 * t2 - 6 * t) * y0.u + (3 * t2 - 4 * t + 1) * h * y0.du +
            (-6 * t2 + 6 * t) * y1.u + (3 * t2 - 2 * t) * h * y1.du) /
           h;
}

} // namespace

Trajectory integrate(double a, const ProblemParams& params, const IntegrateOptions& opts) {
    params.validate();
    if (!(a >= 0.0)) throw ConfigError("integrate: initial value must be >= 0");
    if (!(opts.rho_max > 0.0) || !(opts.tol > 0.0))
        throw ConfigError("integrate: rho_max and tol must be positive");

    Trajectory traj;
    traj.initial_value = a;
    traj.samples.push_back({0.0, a, 0.0});

    if (a == 0.0) {
        // Identically zero solution; emit a token tail so downstream
        // consumers see a trajectory, not a point.
        for (double rho = 1.0; rho <= opts.rho_max + 1e-12; rho += 1.0)
            traj.samples.push_back({rho, 0.0, 0.0});
        traj.cls = {TrajClass::Indeterminate, opts.rho_max};
        return traj;
    }

    double rho = 0.0;
    State y{a, 0.0};
    State k1 = rk_rhs(rho, y, params);
    double h = std::min({1e-6, opts.max_step, opts.rho_max});
    bool positive_so_far = a > 0.0;
    int rejects_in_a_row = 0;

    auto fail = [&](const char* what) {
        std::ostringstream os;
        os << "integrate: " << what << "; last valid rho = " << rho;
        throw NumericalError(os.str());
    };

    while (rho < opts.rho_max) {
        h = std::min(h, opts.rho_max - rho);
        if (h < 1e-14 * std::max(1.0, rho)) fail("step size collapsed");
        if (std::abs(y.u) > 1e10 || std::abs(y.du) > 1e10) fail("solution blew up");

        const State k2 = rk_rhs(rho + c2 * h, {y.u + h * a21 * k1.u, y.du + h * a21 * k1.du}, params);
        const State k3 = rk_rhs(
            rho + c3 * h, {y.u + h * (a31 * k1.u + a32 * k2.u), y.du + h * (a31 * k1.du + a32 * k2.du)},
            params);
        const State k4 =
            rk_rhs(rho + c4 * h,
                   {y.u + h * (a41 * k1.u + a42 * k2.u + a43 * k3.u),
                    y.du + h * (a41 * k1.du + a42 * k2.du + a43 * k3.du)},
                   params);
        const State k5 =
            rk_rhs(rho + c5 * h,
                   {y.u + h * (a51 * k1.u + a52 * k2.u + a53 * k3.u + a54 * k4.u),
                    y.du + h * (a51 * k1.du + a52 * k2.du + a53 * k3.du + a54 * k4.du)},
                   params);
        const State k6 =
            rk_rhs(rho + h,
                   {y.u + h * (a61 * k1.u + a62 * k2.u + a63 * k3.u + a64 * k4.u + a65 * k5.u),
                    y.du + h * (a61 * k1.du + a62 * k2.du + a63 * k3.du + a64 * k4.du + a65 * k5.du)},
                   params);
        const State y1{y.u + h * (b1 * k1.u + b3 * k3.u + b4 * k4.u + b5 * k5.u + b6 * k6.u),
                       y.du + h * (b1 * k1.du + b3 * k3.du + b4 * k4.du + b5 * k5.du + b6 * k6.du)};
        const State k7 = rk_rhs(rho + h, y1, params);

        const double err_u =
            h * (e1 * k1.u + e3 * k3.u + e4 * k4.u + e5 * k5.u + e6 * k6.u + e7 * k7.u);
        const double err_du =
            h * (e1 * k1.du + e3 * k3.du + e4 * k4.du + e5 * k5.du + e6 * k6.du + e7 * k7.du);
        const double err = std::max(std::abs(err_u) / (1.0 + std::abs(y1.u)),
                                    std::abs(err_du) / (1.0 + std::abs(y1.du)));

        // Error-per-unit-rho acceptance: local error <= tol * h.
        const double budget = opts.tol * h;
        if (err > budget) {
            ++rejects_in_a_row;
            if (rejects_in_a_row > 200) fail("step size collapsed (persistent rejection)");
            const double fac = std::max(0.2, 0.9 * std::pow(budget / err, 0.25));
            h *= fac;
            continue;
        }
        rejects_in_a_row = 0;

        const double rho1 = rho + h;

        // Event: first sign change of u inside this step.
        if (positive_so_far && y.u > 0.0 && y1.u <= 0.0) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                (hermite_u(mid, h, y, y1) > 0.0 ? lo : hi) = mid;
            }
            const double t = 0.5 * (lo + hi);
            const double rs = rho + t * h;
            traj.samples.push_back({rs, hermite_u(t, h, y, y1), hermite_du(t, h, y, y1)});
            if (y1.u < 0.0) traj.samples.push_back({rho1, y1.u, y1.du});
            traj.cls = {TrajClass::CrossesZero, rs};
            return traj;
        }

        // Event: u' turns nonnegative while u is still positive.
        if (opts.stop_at_turn && y1.u > 0.0 && y.du < 0.0 && y1.du >= 0.0 && rho > 1e-3) {
            double lo = 0.0, hi = 1.0;
            for (int it = 0; it < 80; ++it) {
                const double mid = 0.5 * (lo + hi);
                (hermite_du(mid, h, y, y1) < 0.0 ? lo : hi) = mid;
            }
            const double t = 0.5 * (lo + hi);
            const double rs = rho + t * h;
            traj.samples.push_back({rs, hermite_u(t, h, y, y1), hermite_du(t, h, y, y1)});
            traj.cls = {TrajClass::Indeterminate, rs};
            return traj;
        }

        rho = rho1;
        y = y1;
        k1 = k7;  // FSAL
        traj.samples.push_back({rho, y.u, y.du});
        if (y.u <= 0.0) positive_so_far = false;

        // Event: underflow floor reached while still positive.
        if (positive_so_far && y.u * y.u + y.du * y.du < opts.floor) {
            traj.cls = {TrajClass::DecaysPositive, rho};
            return traj;
        }

        const double fac = err > 0.0 ? std::min(5.0, 0.9 * std::pow(budget / err, 0.25)) : 5.0;
        h = std::min(h * fac, opts.max_step);
    }

    traj.cls = {TrajClass::Indeterminate, rho};
    return traj;
}

Trajectory integrate(double a, const ProblemParams& params, double rho_max, double tol) {
    IntegrateOptions opts;
    opts.rho_max = rho_max;
    opts.tol = tol;
    return integrate(a, params, opts);
}

namespace {

// The shooting dichotomy: does the trajectory cross zero, or does it
// peel off upward (or linger) while still positive?
enum class Side { Crosses, Stays };

Side classify(double a, const ProblemParams& params, const IntegrateOptions& base,
              Trajectory* out = nullptr) {
    IntegrateOptions opts = base;
    opts.stop_at_turn = true;
    Trajectory t = integrate(a, params, opts);
    const Side side = t.cls.kind == TrajClass::CrossesZero ? Side::Crosses : Side::Stays;
    if (out) *out = std::move(t);
    return side;
}

} // namespace

GroundState find_ground_state(std::pair<double, double> bracket, const ProblemParams& params,
                              double tol, const IntegrateOptions& opts) {
    params.validate();
    if (!(params.theta > 0.0))
        throw ConfigError("find_ground_state: requires theta > 0");
    double lo = bracket.first, hi = bracket.second;
    if (!(lo > 0.0) || !(hi > lo)) throw ConfigError("find_ground_state: bad bracket");
    if (!(tol > 0.0)) throw ConfigError("find_ground_state: tol must be positive");

    GroundState gs;

    const Side side_lo = classify(lo, params, opts);
    const Side side_hi = classify(hi, params, opts);
    if (side_lo == side_hi)
        throw ConfigError("find_ground_state: bracket endpoints classify identically");

    // Defensive pre-scan: the bisection below assumes the classification
    // flips once.  Record every flip; if there are several, bisect the
    // first and let the caller see the rest.
    {
        const int M = 12;
        Side prev = side_lo;
        double prev_a = lo;
        for (int i = 1; i <= M; ++i) {
            const double a = lo + (hi - lo) * i / M;
            const Side s = i == M ? side_hi : classify(a, params, opts);
            if (s != prev) gs.sub_brackets.emplace_back(prev_a, a);
            prev = s;
            prev_a = a;
        }
        if (gs.sub_brackets.size() > 1) {
            lo = gs.sub_brackets.front().first;
            hi = gs.sub_brackets.front().second;
        }
    }
    const Side lo_side = classify(lo, params, opts);

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;  // bracket at rounding resolution
        Trajectory t;
        const Side s = classify(mid, params, opts, &t);
        if (t.cls.kind == TrajClass::DecaysPositive) {
            // Reached the underflow floor while positive: accept as-is.
            gs.a_star = mid;
            gs.trajectory = std::move(t);
            return gs;
        }
        (s == lo_side ? lo : hi) = mid;
        ++gs.bisections;
    }

    gs.a_star = 0.5 * (lo + hi);
    Trajectory t;
    classify(gs.a_star, params, opts, &t);

    // Truncate at the peel point: keep the maximal prefix on which u is
    // positive and strictly decreasing (u' < 0 for rho > 0).
    std::size_t keep = 1;
    for (std::size_t i = 1; i < t.samples.size(); ++i) {
        if (t.samples[i].u > 0.0 && t.samples[i].du < 0.0)
            keep = i + 1;
        else if (t.samples[i].rho > 1e-3)
            break;
    }
    t.samples.resize(keep);
    if (t.cls.kind != TrajClass::DecaysPositive)
        t.cls = {TrajClass::Indeterminate, t.samples.back().rho};
    gs.trajectory = std::move(t);
    return gs;
}

double fit_decay_exponent(const Trajectory& traj, double rho_a, double rho_b) {
    if (!(rho_b - rho_a >= 5.0 - 1e-12))
        throw ConfigError("fit_decay_exponent: window must have length >= 5");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (const auto& s : traj.samples) {
        if (s.rho < rho_a || s.rho > rho_b) continue;
        if (!(s.u > 0.0))
            throw ConfigError("fit_decay_exponent: trajectory not positive on the window");
        const double x = s.rho, y = -std::log(s.u);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 8) throw ConfigError("fit_decay_exponent: too few samples in the window");
    const double denom = n * sxx - sx * sx;
    if (denom <= 0.0) throw NumericalError("fit_decay_exponent: degenerate window");
    return (n * sxy - sx * sy) / denom;
}

} // namespace hyplab
