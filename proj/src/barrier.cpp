#include "hyplab/barrier.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <string>

#include "hyplab/errors.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

double log_sinh_half(double rho) {
    if (!(rho >= 0.0)) throw ConfigError("log_sinh_half: rho must be >= 0");
    if (rho == 0.0) return -std::numeric_limits<double>::infinity();
    return 0.5 * rho + std::log1p(-std::exp(-rho)) - M_LN2;
}

namespace {

// ln cosh(rho/2), same overflow-safe shape.
double log_cosh_half(double rho) {
    return 0.5 * rho + std::log1p(std::exp(-rho)) - M_LN2;
}

// ln sinh(rho), for the volume factor sinh(rho)^{N-1}.
double log_sinh(double rho) {
    return rho + std::log1p(-std::exp(-2.0 * rho)) - M_LN2;
}

// The O(1) bracket of f: with k = N-1+eps and t = coth(rho/2),
//   f * sinh(rho/2)^{k} = -k(k+1)/4 t^2 + k/4 + (N-1) coth(rho) (k/2) t - lambda.
double f_bracket(double rho, double eps, double lambda, int N) {
    const double k = N - 1.0 + eps;
    const double t = 1.0 / std::tanh(0.5 * rho);
    const double cr = 1.0 / std::tanh(rho);
    return -0.25 * k * (k + 1.0) * t * t + 0.25 * k + 0.5 * (N - 1.0) * cr * k * t - lambda;
}

void check_f_args(double rho, double eps, int N) {
    if (!(rho > 0.0)) throw ConfigError("f_eval: rho must be > 0");
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw ConfigError("f_eval: eps must be >= 0");
    if (N < 2) throw ConfigError("f_eval: N must be >= 2");
}

} // namespace

double barrier_u(double rho, double eps, int N) {
    check_f_args(rho, eps, N);
    return std::exp(-(N - 1.0 + eps) * log_sinh_half(rho));
}

double f_eval(double rho, double eps, double lambda, int N) {
    check_f_args(rho, eps, N);
    const double k = N - 1.0 + eps;
    return std::exp(-k * log_sinh_half(rho)) * f_bracket(rho, eps, lambda, N);
}

LogVal f_eval_log(double rho, double eps, double lambda, int N) {
    check_f_args(rho, eps, N);
    const double k = N - 1.0 + eps;
    const double B = f_bracket(rho, eps, lambda, N);
    LogVal v;
    if (B == 0.0) {
        v.log_abs = -std::numeric_limits<double>::infinity();
        v.sign = 0;
        return v;
    }
    v.log_abs = -k * log_sinh_half(rho) + std::log(std::abs(B));
    v.sign = B > 0.0 ? 1 : -1;
    return v;
}

BarrierReport find_negativity_radius(double lambda0, double eps_max, int N, double rho_lo,
                                     double rho_hi, double step, Exec exec) {
    if (N < 2) throw ConfigError("find_negativity_radius: N must be >= 2");
    const double l1 = 0.25 * (N - 1.0) * (N - 1.0);
    if (!(lambda0 > l1))
        throw ConfigError("find_negativity_radius: needs lambda0 > (N-1)^2/4 = " +
                          std::to_string(l1));
    if (!(eps_max >= 0.0) || !std::isfinite(eps_max))
        throw ConfigError("find_negativity_radius: eps_max must be >= 0");
    if (!(rho_lo > 0.0) || !(rho_hi > rho_lo) || !(step > 0.0))
        throw ConfigError("find_negativity_radius: bad scan range");

    BarrierReport rep;
    rep.lambda0 = lambda0;
    rep.eps_list = {0.0};
    if (eps_max > 0.0) {
        rep.eps_list.push_back(eps_max / 10.0);
        rep.eps_list.push_back(eps_max);
    }

    const std::size_t nrho = static_cast<std::size_t>(std::floor((rho_hi - rho_lo) / step + 1e-9)) + 1;
    const std::size_t neps = rep.eps_list.size();
    rep.samples.resize(nrho * neps);
    std::vector<std::exception_ptr> errs(nrho);
    par_for(exec, nrho, [&](std::size_t ir) {
        try {
            const double rho = rho_lo + double(ir) * step;
            for (std::size_t ie = 0; ie < neps; ++ie) {
                BarrierSample& s = rep.samples[ir * neps + ie];
                s.rho = rho;
                s.eps = rep.eps_list[ie];
                s.f = f_eval(rho, s.eps, lambda0, N);
            }
        } catch (...) {
            errs[ir] = std::current_exception();
        }
    });
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    rep.R_per_eps.assign(neps, nan);
    rep.verdict.assign(neps, false);
    bool all = true;
    double worst = rho_lo;
    for (std::size_t ie = 0; ie < neps; ++ie) {
        std::size_t first_neg = nrho;  // first index from which f stays < 0
        bool reentered = false;
        for (std::size_t ir = 0; ir < nrho; ++ir) {
            const double f = rep.samples[ir * neps + ie].f;
            if (f < 0.0) {
                if (first_neg == nrho) first_neg = ir;
            } else {
                if (first_neg != nrho) reentered = true;
                first_neg = nrho;
            }
        }
        if (reentered) rep.sign_reentry = true;
        if (first_neg < nrho) {
            rep.R_per_eps[ie] = rep.samples[first_neg * neps + ie].rho;
            rep.verdict[ie] = true;
            worst = std::max(worst, rep.R_per_eps[ie]);
        } else {
            all = false;
        }
    }
    rep.has_R = all;
    rep.R_found = all ? worst : nan;
    return rep;
}

std::pair<double, double> v_subsolution_residual(double rho, double c, double gamma, int N) {
    if (!(rho >= 0.0)) throw ConfigError("v_subsolution_residual: rho must be >= 0");
    if (!(c > 0.0) || !std::isfinite(gamma))
        throw ConfigError("v_subsolution_residual: need c > 0 and finite gamma");
    if (N < 2) throw ConfigError("v_subsolution_residual: N must be >= 2");
    const double C = std::cosh(0.5 * rho), S = std::sinh(0.5 * rho);
    const double Cm = std::pow(C, -c);       // V
    const double Cm2 = std::pow(C, -c - 2.0);
    // coth(rho) V' reduces to -(c/4) C^{-(c+2)} (2C^2 - 1), smooth at 0.
    const double lhs = -0.25 * c * (c + 1.0) * Cm2 * S * S + 0.25 * c * Cm +
                       (N - 1.0) * 0.25 * c * Cm2 * (2.0 * C * C - 1.0) - gamma * Cm;
    const double rhs = Cm2;  // V^{(c+2)/c}
    return {lhs, rhs};
}

DecayCheck decay_bounds_check(const Trajectory& traj, double R0, int N) {
    if (N < 2) throw ConfigError("decay_bounds_check: N must be >= 2");
    if (!std::isfinite(R0) || R0 < 0.0) throw ConfigError("decay_bounds_check: bad R0");
    std::vector<const Sample*> win;
    for (const Sample& s : traj.samples)
        if (s.rho >= R0 && s.u > 0.0) win.push_back(&s);
    if (win.size() < 8)
        throw ConfigError("decay_bounds_check: fewer than 8 positive samples beyond R0");

    const double mid = 0.5 * (win.front()->rho + win.back()->rho);
    const double inf = std::numeric_limits<double>::infinity();
    double c0_all = inf, c1_all = -inf;
    double c0_l = inf, c0_r = inf, c1_l = -inf, c1_r = -inf;
    std::size_t n_l = 0, n_r = 0;
    for (const Sample* s : win) {
        const double lu = std::log(s->u);
        const double c0 = std::exp(lu + (N - 1.0) * log_sinh_half(s->rho));
        const double c1 = std::exp(lu + (N - 1.0) * log_cosh_half(s->rho));
        c0_all = std::min(c0_all, c0);
        c1_all = std::max(c1_all, c1);
        if (s->rho < mid) {
            c0_l = std::min(c0_l, c0);
            c1_l = std::max(c1_l, c1);
            ++n_l;
        } else {
            c0_r = std::min(c0_r, c0);
            c1_r = std::max(c1_r, c1);
            ++n_r;
        }
    }
    if (n_l < 2 || n_r < 2)
        throw ConfigError("decay_bounds_check: window too lopsided to split");

    DecayCheck out;
    out.C0 = c0_all;
    out.C1 = c1_all;
    out.ratio = c1_all / c0_all;
    out.C0_drift = c0_r / c0_l;
    out.C1_drift = c1_r / c1_l;
    out.verdict = c0_all > 0.0 && std::isfinite(c1_all) && out.C0_drift >= 0.1 &&
                  out.C1_drift <= 10.0;
    return out;
}

double barrier_h1_tail(double eps, int N, double a, double b) {
    if (!(a > 0.0) || !(b > a)) throw ConfigError("barrier_h1_tail: need 0 < a < b");
    if (!(eps >= 0.0)) throw ConfigError("barrier_h1_tail: eps must be >= 0");
    if (N < 2) throw ConfigError("barrier_h1_tail: N must be >= 2");
    const double k = N - 1.0 + eps;
    const int panels = std::max(4, (int)std::ceil(0.5 * (b - a)));
    const CompositeRule rule = composite_gauss(uniform_breaks(a, b, panels), 8);
    return integrate(rule, [&](double rho) {
        return std::exp(-2.0 * k * log_sinh_half(rho) + (N - 1.0) * log_sinh(rho));
    });
}

} // namespace hyplab
