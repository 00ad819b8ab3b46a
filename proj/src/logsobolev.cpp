#include "hyplab/logsobolev.hpp"

#include <cmath>

#include "hyplab/errors.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

LogSobConstants constants_from_proof(int N, double S_val, double S03_val) {
    if (N < 2) throw ConfigError("constants_from_proof: N must be >= 2");
    double ct1, ct2;
    if (N >= 3) {
        if (!(S_val > 0.0) || !std::isfinite(S_val))
            throw ConfigError("constants_from_proof: S_val must be a positive Sobolev constant");
        ct1 = 0.5 * N;
        ct2 = 1.0 / S_val;
    } else {
        if (!(S03_val > 0.0) || !std::isfinite(S03_val))
            throw ConfigError("constants_from_proof: N = 2 needs a positive quartic-embedding constant");
        ct1 = 2.0;
        ct2 = 1.0 / S03_val;
    }
    LogSobConstants c;
    c.C1 = ct1 * std::log(ct2 * ct1 * M_PI);
    c.C2 = ct1;
    return c;
}

double log_sobolev_residual(const RadialFunction& u, double eps, double C1, double C2) {
    if (!(eps > 0.0) || !std::isfinite(eps))
        throw ConfigError("log_sobolev_residual: eps must be > 0");
    if (!std::isfinite(C1) || !std::isfinite(C2))
        throw ConfigError("log_sobolev_residual: non-finite constants");
    if (u.grid == nullptr) throw ConfigError("log_sobolev_residual: profile has no grid");
    ProblemParams pp;
    pp.N = u.grid->N;
    pp.lambda = 0.0;
    pp.theta = 1.0;
    pp.p = pp.N >= 3 ? std::min(2.0, pp.critical_p()) : 2.0;
    const EnergyReport r = eval_J(u, pp);
    const double G = r.grad_norm_sq, L = r.l2_norm_sq, LT = r.log_term;
    if (L == 0.0) return 0.0;
    return (eps / M_PI) * G + L * (std::log(L) + C1 - C2 * std::log(eps)) - LT;
}

namespace {

// Rayleigh-type quotient |grad u|_2^2 / |u|_4^2 of u = cosh(rho/2)^{-a}
// on the hyperbolic plane.
double quartic_quotient(double a) {
    static const CompositeRule rule = composite_gauss(uniform_breaks(0.0, 60.0, 60), 8);
    const double w2 = 2.0 * M_PI;
    double G = 0.0, F4 = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
        const double rho = rule.x[i];
        const double ch = std::cosh(0.5 * rho), sh = std::sinh(0.5 * rho);
        const double du = -0.5 * a * std::pow(ch, -a - 1.0) * sh;
        const double u4 = std::pow(ch, -4.0 * a);
        const double vol = w2 * std::sinh(rho);
        G += rule.w[i] * du * du * vol;
        F4 += rule.w[i] * u4 * vol;
    }
    return G / std::sqrt(F4);
}

} // namespace

double estimate_s03() {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.6, hi = 8.0;
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = quartic_quotient(x1), f2 = quartic_quotient(x2);
    for (int it = 0; it < 200 && (hi - lo) > 1e-12; ++it) {
        if (f1 < f2) {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = quartic_quotient(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = quartic_quotient(x2);
        }
    }
    return quartic_quotient(0.5 * (lo + hi));
}

} // namespace hyplab
