#include <algorithm>
#include <cmath>
#include <string>

#include "hyplab/errors.hpp"
#include "hyplab/functionals.hpp"
#include "hyplab/shooting.hpp"
#include "internal.hpp"

namespace hyplab {

double nehari_scale(const RadialFunction& u, const ProblemParams& params) {
    params.validate();
    if (!(params.theta > 0.0)) throw ConfigError("nehari_scale requires theta > 0");
    const EnergyReport r = eval_J(u, params);
    if (!(r.l2_norm_sq > 0.0)) throw ConfigError("nehari_scale: zero profile");

    const double th = params.theta, p = params.p;
    const double lhs = r.grad_norm_sq - params.lambda * r.l2_norm_sq;
    const double L = r.l2_norm_sq;
    const double P = std::pow(r.lp1_norm, p + 1.0);
    const double LT = r.log_term;
    // I(t u) = 0  <=>  lhs = 2 th ln(t) L + t^{p-1} P + th LT, and the
    // right side is strictly increasing in t.
    const auto rhs = [&](double t) {
        return 2.0 * th * std::log(t) * L + std::pow(t, p - 1.0) * P + th * LT;
    };
    double lo = 1e-8, hi = 1e8;
    if (!(rhs(lo) < lhs && rhs(hi) > lhs))
        throw NumericalError("nehari_scale: no projection scale inside [1e-8, 1e8]");
    for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rhs(mid) < lhs ? lo : hi) = mid;
    }
    double t = 0.5 * (lo + hi);
    for (int it = 0; it < 6; ++it) {
        const double g = rhs(t) - lhs;
        const double dg = 2.0 * th * L / t + (p - 1.0) * std::pow(t, p - 2.0) * P;
        const double step = g / dg;
        const double tn = t - step;
        if (!(tn > lo && tn < hi)) break;
        t = tn;
        if (std::abs(step) < 1e-16 * t) break;
    }
    return t;
}

namespace {

struct Workspace {
    detail::Tridiag K;    // Dirichlet energy matrix
    detail::Tridiag A;    // preconditioner (SPD)
    std::vector<double> w;  // lumped mass
};

Workspace build_workspace(const RadialGrid& g, const ProblemParams& params) {
    Workspace ws;
    ws.K = detail::p1_stiffness(g);
    ws.w = g.w;
    if (params.lambda < params.lambda1()) {
        // Riesz map of the shifted energy norm.  The shift keeps the
        // matrix positive definite even on the near-constant modes the
        // truncated Neumann-type grid admits.
        const double shift = std::max(1.0 - params.lambda, 1e-2);
        ws.A = ws.K;
        for (std::size_t i = 0; i < ws.A.n(); ++i) ws.A.d[i] += shift * ws.w[i];
    } else {
        ws.A.d = ws.w;
        ws.A.e.assign(ws.w.size() - 1, 0.0);
    }
    return ws;
}

// Gradient of J in the dual (integrated-against-hats) sense.
std::vector<double> grad_J(const Workspace& ws, const std::vector<double>& u,
                           const ProblemParams& params) {
    std::vector<double> gj = ws.K.apply(u);
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double ui = u[i], wi = ws.w[i];
        gj[i] += wi * (-params.lambda * ui - std::pow(std::abs(ui), params.p - 1.0) * ui -
                       params.theta * x_ln_x2(ui));
    }
    return gj;
}

// Gradient of the Nehari functional I, same convention.
std::vector<double> grad_I(const Workspace& ws, const std::vector<double>& u,
                           const ProblemParams& params) {
    std::vector<double> gi = ws.K.apply(u);
    for (std::size_t i = 0; i < u.size(); ++i) gi[i] *= 2.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double ui = u[i], wi = ws.w[i];
        gi[i] += wi * (-2.0 * params.lambda * ui -
                       (params.p + 1.0) * std::pow(std::abs(ui), params.p - 1.0) * ui -
                       params.theta * (2.0 * x_ln_x2(ui) + 2.0 * ui));
    }
    return gi;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

MinimizeResult minimize_nehari(const RadialFunction& init, const ProblemParams& params,
                               const MinimizeOptions& opts) {
    params.validate();
    if (!(params.theta > 0.0)) throw ConfigError("minimize_nehari requires theta > 0");
    if (init.grid == nullptr) throw ConfigError("minimize_nehari: init has no grid");
    const RadialGrid& g = *init.grid;
    if (g.kind != GridKind::PiecewiseLinear)
        throw ConfigError("minimize_nehari needs a PiecewiseLinear grid");
    if (init.values.size() != g.size()) throw ConfigError("minimize_nehari: init/grid size mismatch");
    if (!(opts.max_iter >= 1) || !(opts.step > 0.0) || !(opts.tol > 0.0))
        throw ConfigError("minimize_nehari: bad options");
    if (*std::max_element(init.values.begin(), init.values.end()) <= 0.0)
        throw ConfigError("minimize_nehari: init must be positive somewhere");

    const Workspace ws = build_workspace(g, params);

    MinimizeResult res;
    res.u_star.grid = &g;
    RadialFunction cur{&g, init.values};
    double t_last = nehari_scale(cur, params);
    for (double& v : cur.values) v *= t_last;

    double step_cur = opts.step;
    int calm = 0, stall = 0;
    EnergyReport rep = eval_J(cur, params);
    for (int iter = 0; iter < opts.max_iter; ++iter) {
        const std::vector<double> gj = grad_J(ws, cur.values, params);
        const std::vector<double> dir = ws.A.solve(gj);
        const double gnorm2 = std::max(dot(gj, dir), 0.0);
        res.log.push_back({iter, rep.J, rep.I, t_last, std::sqrt(gnorm2)});
        res.iterations = iter + 1;

        bool accepted = false;
        double s = step_cur;
        RadialFunction trial{&g, {}};
        for (int bt = 0; bt < 45 && !accepted; ++bt, s *= 0.5) {
            trial.values = cur.values;
            for (std::size_t i = 0; i < trial.values.size(); ++i) trial.values[i] -= s * dir[i];
            if (*std::max_element(trial.values.begin(), trial.values.end()) <= 0.0) continue;
            double t;
            try {
                t = nehari_scale(trial, params);
            } catch (const NumericalError&) {
                continue;
            }
            for (double& v : trial.values) v *= t;
            EnergyReport rt;
            try {
                rt = eval_J(trial, params);
            } catch (const NumericalError&) {
                continue;
            }
            if (rt.J <= rep.J - 1e-4 * s * gnorm2) {
                const double dJ = rep.J - rt.J;
                cur.values.swap(trial.values);
                rep = rt;
                t_last = t;
                step_cur = std::min(opts.step, s * 1.5);
                accepted = true;
                calm = (dJ <= opts.tol * std::max(1.0, std::abs(rep.J))) ? calm + 1 : 0;
                if (calm >= 3) res.converged = true;
            }
        }
        if (!accepted) {
            ++stall;
            if (gnorm2 <= opts.tol * std::max(1.0, std::abs(rep.J))) {
                res.converged = true;
                break;
            }
            if (stall >= 10) {
                res.diverged = true;
                break;
            }
        } else if (res.converged) {
            break;
        }
    }

    res.u_star.values = cur.values;
    res.report = rep;
    res.d_p = rep.J;

    {
        const std::vector<double> gj = grad_J(ws, cur.values, params);
        const std::vector<double> gi = grad_I(ws, cur.values, params);
        const std::vector<double> Agj = ws.A.solve(gj);
        const std::vector<double> Agi = ws.A.solve(gi);
        const double denom = dot(gi, Agi);
        const double mu = denom > 0.0 ? dot(gj, Agi) / denom : 0.0;
        std::vector<double> proj(gj.size());
        for (std::size_t i = 0; i < gj.size(); ++i) proj[i] = gj[i] - mu * gi[i];
        const std::vector<double> Aproj = ws.A.solve(proj);
        res.stationarity = dot(proj, Aproj) / std::max(std::abs(rep.J), 1e-300);
    }
    {
        const double umax = *std::max_element(cur.values.begin(), cur.values.end());
        double worst = 0.0;
        for (std::size_t i = 0; i + 1 < cur.values.size(); ++i)
            worst = std::max(worst, cur.values[i + 1] - cur.values[i]);
        res.monotonicity_defect = umax > 0.0 ? worst / umax : 0.0;
    }
    return res;
}

} // namespace hyplab
