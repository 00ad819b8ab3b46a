// Acceptance gate: one line per criterion, PASS only when every clause
// of the criterion holds (including its runtime budget).  Exit status is
// the number of failed criteria among those selected.
//
// Usage: acceptance [--only K]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hyplab/barrier.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/functionals.hpp"
#include "hyplab/geometry.hpp"
#include "hyplab/grid.hpp"
#include "hyplab/logsobolev.hpp"
#include "hyplab/params.hpp"
#include "hyplab/shooting.hpp"
#include "hyplab/threshold.hpp"

using namespace hyplab;

namespace {

std::string num(double x) {
    std::ostringstream os;
    os << std::setprecision(4) << x;
    return os.str();
}

std::vector<double> random_point(std::mt19937& gen, int N, double rmax) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (;;) {
        std::vector<double> x(N);
        double s = 0.0;
        for (int i = 0; i < N; ++i) {
            x[i] = u(gen);
            s += x[i] * x[i];
        }
        if (s < rmax * rmax) return x;
    }
}

// ---- criterion 1: model identities under random sampling ----
bool c1_geometry(std::string& detail) {
    std::mt19937 gen(7);
    double worst_iso = 0.0, worst_round = 0.0, worst_tri = 0.0;
    for (int k = 0; k < 1000; ++k) {
        const int N = 2 + k % 4;
        const auto x = random_point(gen, N, 0.95);
        const auto y = random_point(gen, N, 0.95);
        const auto z = random_point(gen, N, 0.95);
        const auto b = random_point(gen, N, 0.9);

        const double d = hyperbolic_distance(x, y);
        const double dt = hyperbolic_distance(mobius_translate(b, x), mobius_translate(b, y));
        worst_iso = std::max(worst_iso, std::abs(dt - d) / (1.0 + d));

        std::vector<double> nb(b.size());
        for (std::size_t i = 0; i < b.size(); ++i) nb[i] = -b[i];
        const auto back = mobius_translate(nb, mobius_translate(b, x));
        for (std::size_t i = 0; i < x.size(); ++i)
            worst_round = std::max(worst_round, std::abs(back[i] - x[i]));

        const double slack = hyperbolic_distance(x, y) + hyperbolic_distance(y, z) -
                             hyperbolic_distance(x, z);
        worst_tri = std::max(worst_tri, -slack);
    }
    detail = "isometry defect " + num(worst_iso) + ", round-trip " + num(worst_round) +
             ", triangle slack " + num(worst_tri);
    return worst_iso <= 1e-10 && worst_round <= 1e-12 && worst_tri <= 1e-12;
}

// ---- criterion 2: pointwise energy never increases along shots ----
bool c2_energy(std::string& detail) {
    const double tol = 1e-10;
    int count = 0;
    double worst = -1e300;
    for (int N : {3, 4})
        for (double lambda : {-0.5, 0.0, 0.6})
            for (double theta : {-1.0, -0.3, 0.5, 1.0})
                for (double a : {0.7, 1.5, 2.5, 3.5, 5.0}) {
                    if (count >= 50) break;
                    ProblemParams p;
                    p.N = N;
                    p.lambda = lambda;
                    p.theta = theta;
                    Trajectory t;
                    try {
                        t = integrate(a, p, 12.0, tol);
                    } catch (const NumericalError&) {
                        detail = "integration failed at N=" + std::to_string(N) +
                                 " lambda=" + num(lambda) + " theta=" + num(theta) +
                                 " a=" + num(a);
                        return false;
                    }
                    const auto trace = energy_trace(t, p);
                    for (std::size_t i = 1; i < trace.values.size(); ++i) {
                        const double before = trace.values[i - 1].second;
                        const double inc =
                            (trace.values[i].second - before) / (1.0 + std::abs(before));
                        worst = std::max(worst, inc);
                    }
                    ++count;
                }
    detail = std::to_string(count) + " trajectories, max normalized increase " + num(worst) +
             " vs budget " + num(10.0 * tol);
    return count >= 50 && worst <= 10.0 * tol;
}

// ---- criterion 3: ground state convergence and decay envelope ----
bool c3_ground_state(std::string& detail) {
    ProblemParams p;  // N=3, lambda=0, theta=1, p=3
    GroundState gs;
    try {
        gs = find_ground_state({1.0, 20.0}, p, 1e-12);
    } catch (const std::exception& e) {
        detail = std::string("search failed: ") + e.what();
        return false;
    }
    bool decreasing = true;
    const auto& s = gs.trajectory.samples;
    for (std::size_t i = 1; i < s.size(); ++i)
        if (!(s[i].u > 0.0) || !(s[i].u < s[i - 1].u)) decreasing = false;

    const double alpha = fit_decay_exponent(gs.trajectory, 0.0, 5.0);
    const double target = (p.N - 1) / 2.0;
    const bool alpha_ok = std::abs(alpha - target) <= 0.05 * target;

    const DecayCheck dc = decay_bounds_check(gs.trajectory, 2.0, p.N);
    const bool envelope_ok = dc.verdict && dc.ratio < 1e3;

    detail = "a*=" + num(gs.a_star) + ", decreasing=" + (decreasing ? "yes" : "no") +
             ", alpha=" + num(alpha) + " (target " + num(target) + " +-5%)" +
             ", C1/C0=" + num(dc.ratio) + ", envelope verdict=" +
             (dc.verdict ? "true" : "false");
    return decreasing && alpha_ok && envelope_ok;
}

// ---- criterion 4: Nehari projection identities on random profiles ----
bool c4_nehari(std::string& detail) {
    std::mt19937 gen(404);
    std::uniform_real_distribution<double> amp(0.2, 2.0), center(0.0, 5.0), width(0.5, 2.0);
    const auto grid = RadialGrid::production(3);
    double worst_cert = 0.0, worst_scale = 0.0;
    bool signs_ok = true;
    const double lambdas[3] = {0.0, 0.5, -0.5};
    for (int k = 0; k < 100; ++k) {
        ProblemParams p;
        p.lambda = lambdas[k % 3];
        const int bumps = 1 + k % 3;
        std::vector<double> c(bumps), m(bumps), s(bumps);
        for (int j = 0; j < bumps; ++j) {
            c[j] = amp(gen);
            m[j] = center(gen);
            s[j] = width(gen);
        }
        auto u = sample(grid, [&](double rho) {
            double v = 0.0;
            for (int j = 0; j < bumps; ++j)
                v += c[j] * std::exp(-(rho - m[j]) * (rho - m[j]) / (s[j] * s[j]));
            return v;
        });
        const double t0 = nehari_scale(u, p);

        auto scaled = [&](double t) {
            RadialFunction tu = u;
            for (auto& v : tu.values) v *= t;
            return eval_J(tu, p);
        };
        const auto rep = scaled(t0);
        const double scale = std::abs(rep.grad_norm_sq) + std::abs(p.lambda) * rep.l2_norm_sq +
                             std::pow(rep.lp1_norm, p.p + 1.0) +
                             std::abs(p.theta * rep.log_term);
        worst_cert = std::max(worst_cert, std::abs(rep.I) / scale);

        RadialFunction su = u;
        for (auto& v : su.values) v *= 3.0;
        worst_scale =
            std::max(worst_scale, std::abs(nehari_scale(su, p) - t0 / 3.0) / (t0 / 3.0));

        if (!(scaled(0.9 * t0).I > 0.0) || !(scaled(1.1 * t0).I < 0.0)) signs_ok = false;
    }
    detail = "worst |I|/scale " + num(worst_cert) + ", worst homogeneity error " +
             num(worst_scale) + ", sign change " + (signs_ok ? "yes" : "no");
    return worst_cert <= 1e-8 && worst_scale <= 1e-10 && signs_ok;
}

// ---- criterion 5: minimized level is positive and refinement-stable ----
bool c5_level(std::string& detail) {
    ProblemParams p;  // N=3 defaults
    const auto coarse = RadialGrid::linear(3, 40.0, 1600);
    const auto fine = RadialGrid::linear(3, 60.0, 3200);
    const auto a = minimize_nehari(default_minimize_init(coarse), p);
    const auto b = minimize_nehari(default_minimize_init(fine), p);
    const double rel = std::abs(b.d_p - a.d_p) / a.d_p;
    detail = "d_p " + num(a.d_p) + " -> " + num(b.d_p) + " (rel change " + num(rel) +
             "), converged " + (a.converged && b.converged ? "both" : "NOT BOTH");
    return a.converged && b.converged && a.d_p > 0.0 && b.d_p > 0.0 && rel < 0.01;
}

// ---- criterion 6: concentration margins by dimension ----
bool c6_threshold(std::string& detail) {
    std::ostringstream os;
    os << std::setprecision(4);
    const std::vector<double> eps = {0.04, 0.02, 0.01, 0.005};

    ProblemParams p4;
    p4.N = 4;
    p4.p = p4.critical_p();
    ThresholdRule prop;
    prop.fixed = false;
    prop.value = 4.0;
    const auto r4 = verify_threshold(p4, eps, prop, 1e-7);
    const bool ok4 = r4[2].margin > 0.0 && r4[3].margin > 0.0;
    os << "N=4 (cutoff 4 eps) margins";
    for (const auto& r : r4) os << " " << r.margin;

    ProblemParams p5;
    p5.N = 5;
    p5.p = p5.critical_p();
    const auto r5 = verify_threshold(p5, eps, ThresholdRule{}, 1e-7);
    const bool ok5 = r5[2].margin > 0.0 && r5[3].margin > 0.0;
    os << "; N=5 (cutoff 0.1) margins";
    for (const auto& r : r5) os << " " << r.margin;

    detail = os.str();
    return ok4 && ok5;
}

// ---- criterion 7: deficit orders and the eps^2 |ln eps| scalings ----
bool c7_orders(std::string& detail) {
    ProblemParams p5;
    p5.N = 5;
    p5.p = p5.critical_p();
    const auto reports = verify_threshold(p5, {0.04, 0.02, 0.01}, ThresholdRule{}, 1e-7);
    const double SN2 = 5.0 * reports[0].S_half_N;
    double sx = 0, sy1 = 0, sy2 = 0, sxx = 0, sxy1 = 0, sxy2 = 0;
    for (const auto& r : reports) {
        const double x = std::log(r.eps);
        const double y1 = std::log(r.grad_sq - SN2);
        const double y2 = std::log(SN2 - r.l2star);
        sx += x;
        sy1 += y1;
        sy2 += y2;
        sxx += x * x;
        sxy1 += x * y1;
        sxy2 += x * y2;
    }
    const double n = 3.0;
    const double og = (n * sxy1 - sx * sy1) / (n * sxx - sx * sx);
    const double ol = (n * sxy2 - sx * sy2) / (n * sxx - sx * sx);

    std::vector<double> ratios;
    for (int k = 0; k < 5; ++k) {
        BubbleSpec s;
        s.N = 4;
        s.rho_cut = 0.1;
        s.eps = 3e-4 * std::pow(0.1, k / 4.0);
        const auto i = bns_integrals(s, 1e-9);
        ratios.push_back(i.l2 / (s.eps * s.eps * std::abs(std::log(s.eps))));
    }
    const auto [mn, mx] = std::minmax_element(ratios.begin(), ratios.end());
    double mean = 0.0;
    for (double r : ratios) mean += r / ratios.size();
    const double spread = (*mx - *mn) / mean;

    detail = "grad order " + num(og) + " (want 3 +- 0.3), l2star order " + num(ol) +
             " (want 5 +- 0.5), N=4 mass spread " + num(spread) + " (want < 0.1)";
    return std::abs(og - 3.0) <= 0.3 && std::abs(ol - 5.0) <= 0.5 && spread < 0.10;
}

// ---- criterion 8: extremizer normalization against the Gamma form ----
bool c8_sobolev(std::string& detail) {
    std::ostringstream os;
    os << std::setprecision(3);
    bool ok = true;
    for (int N : {3, 4, 5}) {
        double S_quad = 0.0;
        try {
            // the call itself enforces that the gradient and critical
            // integrals of the extremizer agree to 1e-6
            S_quad = sobolev_constant(N, 1e-6);
        } catch (const std::exception& e) {
            detail = std::string("normalization check failed: ") + e.what();
            return false;
        }
        const double S_ref = sobolev_constant_gamma(N);
        const double rel = std::abs(S_quad - S_ref) / S_ref;
        os << "N=" << N << " rel gap " << rel << "; ";
        if (!(rel <= 1e-6)) ok = false;
    }
    detail = os.str();
    return ok;
}

// ---- criterion 9: negativity radii and operator consistency ----
bool c9_barrier(std::string& detail) {
    std::ostringstream os;
    os << std::setprecision(4);
    bool ok = true;
    for (int N : {3, 4, 5}) {
        const double l1 = (N - 1.0) * (N - 1.0) / 4.0;
        for (double fac : {1.1, 2.0}) {
            const auto rep = find_negativity_radius(fac * l1, 1e-2, N, 0.5, 80.0, 0.25);
            bool good = rep.has_R && !rep.sign_reentry;
            for (bool v : rep.verdict) good = good && v;
            os << "N=" << N << " x" << fac << " R=" << (rep.has_R ? num(rep.R_found) : "none")
               << "; ";
            ok = ok && good;
        }
    }

    // centered finite differences of the profile in extended precision
    // must reproduce f with second order in the step
    const int N = 3;
    const double lambda = 1.5;
    auto u_l = [&](long double rho, long double eps) {
        return powl(sinhl(rho / 2.0L), -(N - 1 + eps));
    };
    double worst_order = 0.0;
    for (double eps : {0.0, 1e-2}) {
        std::vector<double> lh, le;
        for (double h : {1e-2, 1e-3, 1e-4}) {
            const long double rho = 2.0L;
            const long double um = u_l(rho - h, eps), u0 = u_l(rho, eps), up = u_l(rho + h, eps);
            const long double fd = -(up - 2.0L * u0 + um) / ((long double)h * h) -
                                   (N - 1) * coshl(rho) / sinhl(rho) * (up - um) /
                                       (2.0L * (long double)h) -
                                   (long double)lambda * u0;
            const double err = std::abs((double)(fd - (long double)f_eval(2.0, eps, lambda, N)));
            lh.push_back(std::log(h));
            le.push_back(std::log(err));
        }
        const double n = 3.0;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (int i = 0; i < 3; ++i) {
            sx += lh[i];
            sy += le[i];
            sxx += lh[i] * lh[i];
            sxy += lh[i] * le[i];
        }
        const double order = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        os << "fd order(eps=" << eps << ") " << order << "; ";
        worst_order = std::max(worst_order, std::abs(order - 2.0));
    }
    detail = os.str();
    return ok && worst_order <= 0.2;
}

// ---- criterion 10: entropy inequality residuals are nonnegative ----
bool c10_logsob(std::string& detail) {
    const double S3 = sobolev_constant_gamma(3);
    const auto c = constants_from_proof(3, S3);
    const auto grid = RadialGrid::production(3);
    const std::vector<RadialFunction> profiles = {
        sample(grid, [](double r) { return std::pow(std::cosh(r / 2.0), -2.0); }),
        sample(grid, [](double r) { return std::exp(-r * r); }),
        sample(grid,
               [](double r) { return r < 10.0 ? std::pow(1.0 - (r / 10.0) * (r / 10.0), 3.0) : 0.0; }),
    };
    double min_res = 1e300;
    for (const auto& u : profiles)
        for (int k = 0; k < 20; ++k) {
            const double eps = 1e-3 * std::pow(10.0 / 1e-3, k / 19.0);
            min_res = std::min(min_res, log_sobolev_residual(u, eps, c.C1, c.C2));
        }
    detail = "3 families x 20 scales, smallest residual " + num(min_res);
    return min_res >= 0.0;
}

// ---- criterion 11: no spurious fast decayer for a negative coefficient ----
bool c11_falsification(std::string& detail) {
    ProblemParams p;
    p.theta = -1.0;
    int crosses = 0, decays = 0, other = 0, fast = 0;
    for (int i = 0; i < 200; ++i) {
        const double a = 0.1 + (20.0 - 0.1) * i / 199.0;
        Trajectory t;
        try {
            t = integrate(a, p, 40.0, 1e-10);
        } catch (const NumericalError&) {
            ++other;
            continue;
        }
        if (t.cls.kind == TrajClass::CrossesZero) {
            ++crosses;
        } else if (t.cls.kind == TrajClass::DecaysPositive) {
            ++decays;
            const double end = t.samples.back().rho;
            const double alpha = fit_decay_exponent(t, std::max(0.0, end - 6.0), end);
            if (alpha > (p.N - 1) / 2.0 + 0.1) ++fast;
        } else {
            ++other;
        }
    }
    detail = "200 heights: " + std::to_string(crosses) + " cross, " + std::to_string(decays) +
             " decay, " + std::to_string(other) + " other; fast decayers: " +
             std::to_string(fast);
    return fast == 0;
}

struct Criterion {
    int id;
    const char* name;
    bool (*run)(std::string&);
    double limit_s;
};

const Criterion kCriteria[] = {
    {1, "geometry invariants", c1_geometry, 1.0},
    {2, "energy monotonicity along shots", c2_energy, 10.0},
    {3, "ground state decay profile", c3_ground_state, 30.0},
    {4, "Nehari projection identities", c4_nehari, 10.0},
    {5, "action level stability under refinement", c5_level, 120.0},
    {6, "concentration threshold margins", c6_threshold, 120.0},
    {7, "truncated-bubble asymptotic orders", c7_orders, 60.0},
    {8, "Sobolev extremizer normalization", c8_sobolev, 5.0},
    {9, "barrier negativity and operator consistency", c9_barrier, 10.0},
    {10, "entropy inequality residuals", c10_logsob, 5.0},
    {11, "negative-coefficient falsification sweep", c11_falsification, 60.0},
};

} // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--only") == 0 && i + 1 < argc) {
            only = std::atoi(argv[i + 1]);
            ++i;
        } else {
            std::cerr << "usage: acceptance [--only K]\n";
            return 2;
        }
    }

    int failures = 0;
    for (const auto& c : kCriteria) {
        if (only != 0 && c.id != only) continue;
        std::string detail;
        bool ok = false;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            ok = false;
            detail = std::string("unexpected error: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_budget = secs <= c.limit_s;
        const bool pass = ok && in_budget;
        std::cout << "criterion " << std::setw(2) << c.id << " [" << c.name
                  << "]: " << (pass ? "PASS" : "FAIL") << " (" << std::setprecision(3) << secs
                  << " s" << (in_budget ? "" : " OVER BUDGET") << "; " << detail << ")\n";
        if (!pass) ++failures;
    }
    return failures == 0 ? 0 : 1;
}
