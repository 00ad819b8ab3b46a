#include "hyplab/threshold.hpp"

#include <cmath>
#include <exception>
#include <string>

#include "hyplab/errors.hpp"
#include "hyplab/geometry.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

void BubbleSpec::validate() const {
    if (N < 4) throw ConfigError("truncated-bubble analysis requires N >= 4");
    if (!(eps > 0.0) || !std::isfinite(eps)) throw ConfigError("bubble scale eps must be > 0");
    if (!(rho_cut > 0.0) || !(2.0 * rho_cut < 1.0))
        throw ConfigError("cutoff radius must satisfy 0 < 2*rho_cut < 1");
    if (!(eps <= rho_cut)) throw ConfigError("bubble scale eps must not exceed rho_cut");
}

double bubble_U(double r, double eps, int N) {
    const double K = std::pow(double(N) * (N - 2.0), 0.25 * (N - 2.0));
    return K * std::pow(eps / (eps * eps + r * r), 0.5 * (N - 2.0));
}

double bubble_dU(double r, double eps, int N) {
    return -(N - 2.0) * r / (eps * eps + r * r) * bubble_U(r, eps, N);
}

double cutoff_phi(double r, double rc) {
    if (r <= rc) return 1.0;
    if (r >= 2.0 * rc) return 0.0;
    const double t = (r - rc) / rc;
    return 1.0 - t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

double cutoff_dphi(double r, double rc) {
    if (r <= rc || r >= 2.0 * rc) return 0.0;
    const double t = (r - rc) / rc;
    return -30.0 * t * t * (t - 1.0) * (t - 1.0) / rc;
}

double sobolev_constant_gamma(int N) {
    if (N < 3) throw ConfigError("sobolev_constant_gamma: needs N >= 3");
    const double ratio = std::exp(std::lgamma(0.5 * N) - std::lgamma(double(N)));
    return double(N) * (N - 2.0) * M_PI * std::pow(ratio, 2.0 / N);
}

namespace {

double checked_integral(const std::vector<double>& breaks, const std::function<double(double)>& f,
                        double quad_tol, const char* what) {
    const double coarse = integrate(composite_gauss(breaks, 20), f);
    const double fine = integrate(composite_gauss(breaks, 28), f);
    const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-300});
    if (!(std::abs(fine - coarse) <= quad_tol * scale))
        throw NumericalError(std::string("quadrature self-check failed for ") + what +
                             ": coarse and refined panels disagree beyond quad_tol");
    return fine;
}

void check_quad_tol(double quad_tol) {
    if (!(quad_tol > 0.0) || !(quad_tol < 1.0))
        throw ConfigError("quad_tol must lie in (0, 1)");
}

std::vector<double> bubble_breaks(const BubbleSpec& s) {
    return graded_breaks(s.eps, 2.0 * s.rho_cut, {s.rho_cut, 1.5 * s.rho_cut});
}

double sq_ln_sq(double v) {
    if (v == 0.0) return 0.0;
    return 2.0 * v * v * std::log(std::abs(v));
}

} // namespace

double sobolev_constant(int N, double quad_tol) {
    if (N < 3) throw ConfigError("sobolev_constant: needs N >= 3");
    check_quad_tol(quad_tol);
    const double area = unit_sphere_area(N);
    // Substitute r = tan(phi) so the half-line becomes [0, pi/2].
    const auto grad_integrand = [&](double phi) {
        const double r = std::tan(phi), sec2 = 1.0 + r * r;
        const double dU = bubble_dU(r, 1.0, N);
        return area * dU * dU * std::pow(r, N - 1.0) * sec2;
    };
    const auto crit_integrand = [&](double phi) {
        const double r = std::tan(phi), sec2 = 1.0 + r * r;
        const double U = bubble_U(r, 1.0, N);
        return area * std::pow(U, critical_exponent(N)) * std::pow(r, N - 1.0) * sec2;
    };
    const std::vector<double> breaks = uniform_breaks(0.0, 0.5 * M_PI, 4);
    const double Ig = checked_integral(breaks, grad_integrand, quad_tol, "grad normalization");
    const double Ic = checked_integral(breaks, crit_integrand, quad_tol, "critical normalization");
    if (!(std::abs(Ig - Ic) <= quad_tol * std::max(std::abs(Ig), std::abs(Ic))))
        throw NumericalError("sobolev_constant: the two defining integrals disagree beyond quad_tol");
    return std::pow(Ig, 2.0 / N);
}

BnsIntegrals bns_integrals(const BubbleSpec& spec, double quad_tol) {
    spec.validate();
    check_quad_tol(quad_tol);
    const double area = unit_sphere_area(spec.N);
    const auto v = [&](double r) { return cutoff_phi(r, spec.rho_cut) * bubble_U(r, spec.eps, spec.N); };
    const auto dv = [&](double r) {
        return cutoff_dphi(r, spec.rho_cut) * bubble_U(r, spec.eps, spec.N) +
               cutoff_phi(r, spec.rho_cut) * bubble_dU(r, spec.eps, spec.N);
    };
    const std::vector<double> breaks = bubble_breaks(spec);
    BnsIntegrals out;
    out.grad_sq = checked_integral(
        breaks,
        [&](double r) {
            const double d = dv(r);
            return area * d * d * std::pow(r, spec.N - 1.0);
        },
        quad_tol, "grad_sq");
    out.l2star = checked_integral(
        breaks,
        [&](double r) {
            return area * std::pow(v(r), critical_exponent(spec.N)) * std::pow(r, spec.N - 1.0);
        },
        quad_tol, "l2star");
    out.l2 = checked_integral(
        breaks,
        [&](double r) {
            const double vv = v(r);
            return area * vv * vv * std::pow(r, spec.N - 1.0);
        },
        quad_tol, "l2");
    return out;
}

double vln_integral(const BubbleSpec& spec, double quad_tol) {
    spec.validate();
    check_quad_tol(quad_tol);
    const double area = unit_sphere_area(spec.N);
    const auto v = [&](double r) { return cutoff_phi(r, spec.rho_cut) * bubble_U(r, spec.eps, spec.N); };
    return checked_integral(
        bubble_breaks(spec),
        [&](double r) { return area * sq_ln_sq(v(r)) * std::pow(r, spec.N - 1.0); }, quad_tol,
        "vlnv");
}

std::pair<double, double> conformal_weights(double x_norm, const ProblemParams& params) {
    if (!(x_norm >= 0.0) || !(x_norm < 1.0))
        throw ConfigError("conformal_weights: need 0 <= |x| < 1");
    const double cf = 2.0 / (1.0 - x_norm * x_norm);
    const double h = cf * cf;
    const double N = params.N;
    const double g =
        (params.lambda - 0.25 * N * (N - 2.0) - params.theta - (N - 2.0) * params.theta * std::log(cf)) *
        h;
    return {g, h};
}

double tilde_J(const RadialProfile& v, const ProblemParams& params, double quad_tol) {
    params.validate();
    if (params.N < 4) throw ConfigError("truncated-bubble analysis requires N >= 4");
    check_quad_tol(quad_tol);
    if (!(v.support > 0.0) || !(v.support <= 1.0))
        throw ConfigError("tilde_J: profile support must lie in (0, 1]");
    const double area = unit_sphere_area(params.N);
    const double twostar = critical_exponent(params.N);
    const std::vector<double> breaks =
        graded_breaks(v.inner_scale, v.support, {0.5 * v.support, 0.75 * v.support});
    const double grad = checked_integral(
        breaks,
        [&](double r) {
            const double d = v.du(r);
            return area * d * d * std::pow(r, params.N - 1.0);
        },
        quad_tol, "tilde grad");
    const double gv2 = checked_integral(
        breaks,
        [&](double r) {
            const double vv = v.u(r);
            return area * conformal_weights(r, params).first * vv * vv * std::pow(r, params.N - 1.0);
        },
        quad_tol, "tilde g-term");
    const double crit = checked_integral(
        breaks,
        [&](double r) {
            return area * std::pow(std::abs(v.u(r)), twostar) * std::pow(r, params.N - 1.0);
        },
        quad_tol, "tilde critical term");
    const double hlnv = checked_integral(
        breaks,
        [&](double r) {
            return area * conformal_weights(r, params).second * sq_ln_sq(v.u(r)) *
                   std::pow(r, params.N - 1.0);
        },
        quad_tol, "tilde log term");
    return 0.5 * grad - 0.5 * gv2 - crit / twostar - 0.5 * params.theta * hlnv;
}

namespace {

ThresholdReport analyze_one(double eps, const ProblemParams& params, const ThresholdRule& rule,
                            double quad_tol, double S_half_N) {
    BubbleSpec spec;
    spec.eps = eps;
    spec.rho_cut = rule.rho_cut_for(eps);
    spec.N = params.N;
    spec.validate();

    const double area = unit_sphere_area(spec.N);
    const auto v = [&](double r) { return cutoff_phi(r, spec.rho_cut) * bubble_U(r, spec.eps, spec.N); };
    const std::vector<double> breaks = bubble_breaks(spec);

    ThresholdReport rep;
    rep.eps = eps;
    rep.rho_cut = spec.rho_cut;
    rep.S_half_N = S_half_N;
    const BnsIntegrals ints = bns_integrals(spec, quad_tol);
    rep.grad_sq = ints.grad_sq;
    rep.l2star = ints.l2star;
    rep.l2 = ints.l2;
    rep.vlnv = vln_integral(spec, quad_tol);
    rep.g_term = checked_integral(
        breaks,
        [&](double r) {
            const double vv = v(r);
            return area * conformal_weights(r, params).first * vv * vv * std::pow(r, spec.N - 1.0);
        },
        quad_tol, "g-term");
    rep.h_lnv_term = checked_integral(
        breaks,
        [&](double r) {
            return area * conformal_weights(r, params).second * sq_ln_sq(v(r)) *
                   std::pow(r, spec.N - 1.0);
        },
        quad_tol, "h log term");
    rep.h_l2_term = checked_integral(
        breaks,
        [&](double r) {
            const double vv = v(r);
            return area * conformal_weights(r, params).second * vv * vv * std::pow(r, spec.N - 1.0);
        },
        quad_tol, "h l2 term");

    // psi(t) = t^2 C/2 - t^{2*} P/2* - (theta/2)(t^2 Wh + t^2 ln(t^2) Ah)
    // with C = grad_sq - g_term.  psi'(t)/t is strictly decreasing, so
    // the maximizer is the unique root.
    const double C = rep.grad_sq - rep.g_term;
    const double P = rep.l2star;
    const double Ah = rep.h_l2_term;
    const double Wh = rep.h_lnv_term;
    const double th = params.theta;
    const double twostar = critical_exponent(spec.N);
    const double q = twostar - 2.0;
    const double base = C - th * Wh - th * Ah;
    const auto slope = [&](double t) { return base - std::pow(t, q) * P - 2.0 * th * std::log(t) * Ah; };

    double lo = 1e-8, hi = 1e8, bound = 1e8;
    if (!(slope(lo) > 0.0 && slope(hi) < 0.0)) {
        lo = 1e-16;
        hi = 1e16;
        bound = 1e16;
        if (!(slope(lo) > 0.0 && slope(hi) < 0.0))
            throw NumericalError("threshold: psi has no interior maximum inside [1e-16, 1e16]");
    }
    for (int it = 0; it < 200 && (hi - lo) > 1e-14 * hi; ++it) {
        const double mid = std::sqrt(lo * hi);
        (slope(mid) > 0.0 ? lo : hi) = mid;
    }
    rep.t_eps = std::sqrt(lo * hi);
    rep.search_bound = bound;
    const double t = rep.t_eps;
    rep.psi_max = 0.5 * t * t * C - std::pow(t, twostar) * P / twostar -
                  0.5 * th * (t * t * Wh + t * t * std::log(t * t) * Ah);
    rep.margin = S_half_N - rep.psi_max;
    return rep;
}

} // namespace

std::vector<ThresholdReport> verify_threshold(const ProblemParams& params,
                                              const std::vector<double>& eps_grid,
                                              const ThresholdRule& rule, double quad_tol,
                                              Exec exec) {
    params.validate();
    if (params.N < 4) throw ConfigError("truncated-bubble analysis requires N >= 4");
    if (std::abs(params.p - params.critical_p()) > 1e-9)
        throw ConfigError("threshold analysis is tied to the critical exponent; set p = (N+2)/(N-2)");
    if (params.theta < 0.0) throw ConfigError("threshold maximization needs theta >= 0");
    if (eps_grid.empty()) throw ConfigError("eps_grid must be nonempty");
    for (double e : eps_grid)
        if (!(e > 0.0) || !std::isfinite(e)) throw ConfigError("eps_grid entries must be > 0");
    check_quad_tol(quad_tol);
    if (!(rule.value > 0.0)) throw ConfigError("rho_cut rule must be positive");

    const double S = sobolev_constant_gamma(params.N);
    const double S_half_N = std::pow(S, 0.5 * params.N) / params.N;

    std::vector<ThresholdReport> out(eps_grid.size());
    std::vector<std::exception_ptr> errs(eps_grid.size());
    par_for(exec, eps_grid.size(), [&](std::size_t i) {
        try {
            out[i] = analyze_one(eps_grid[i], params, rule, quad_tol, S_half_N);
        } catch (...) {
            errs[i] = std::current_exception();
        }
    });
    for (const auto& e : errs)
        if (e) std::rethrow_exception(e);
    return out;
}

bool threshold_succeeds(const std::vector<ThresholdReport>& reports) {
    for (const auto& r : reports)
        if (r.margin > 0.0) return true;
    return false;
}

} // namespace hyplab
