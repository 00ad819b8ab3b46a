#include "hyplab/runner.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "hyplab/barrier.hpp"
#include "hyplab/csv.hpp"
#include "hyplab/errors.hpp"
#include "hyplab/functionals.hpp"
#include "hyplab/logsobolev.hpp"
#include "hyplab/shooting.hpp"
#include "hyplab/threshold.hpp"

namespace hyplab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ProblemParams params_from(const Config& cfg, int defN, double defLambda, double defTheta,
                          double defP) {
    ProblemParams p;
    p.N = (int)cfg.get_int("N", defN);
    p.lambda = cfg.get_num("lambda", defLambda);
    p.theta = cfg.get_num("theta", defTheta);
    p.p = cfg.get_num("p", defP);
    p.validate();
    return p;
}

void echo_preamble(CsvWriter& w, const std::string& command, const Config& cfg,
                   std::uint64_t seed) {
    w.comment("command = " + command);
    for (const auto& [k, v] : cfg.items()) w.comment(k + " = " + v);
    w.comment("seed = " + std::to_string(seed));
}

std::string flag(bool b) { return b ? "true" : "false"; }

struct SweepRow {
    double a;
    TrajClass cls;
    double event_rho;
    double alpha;
};

std::vector<SweepRow> run_sweep(const ProblemParams& params, double a_min, double a_max,
                                long long count, const IntegrateOptions& opts, bool have_fit,
                                double fit_a, double fit_b) {
    if (!(a_min >= 0.0) || !(a_max > a_min) || count < 2)
        throw ConfigError("sweep needs 0 <= a_min < a_max and a_count >= 2");
    std::vector<SweepRow> rows;
    rows.reserve(count);
    for (long long i = 0; i < count; ++i) {
        const double a = a_min + (a_max - a_min) * double(i) / double(count - 1);
        SweepRow row{a, TrajClass::Indeterminate, kNaN, kNaN};
        try {
            const Trajectory traj = integrate(a, params, opts);
            row.cls = traj.cls.kind;
            row.event_rho = traj.cls.rho;
            if (row.cls == TrajClass::DecaysPositive) {
                double lo = fit_a, hi = fit_b;
                if (!have_fit) {
                    lo = std::max(0.0, traj.samples.back().rho - 5.0);
                    hi = lo + 5.0;
                }
                try {
                    row.alpha = fit_decay_exponent(traj, lo, hi);
                } catch (const ConfigError&) {
                }
            }
        } catch (const NumericalError&) {
            // blow-up or step collapse: recorded as indeterminate
        }
        rows.push_back(row);
    }
    return rows;
}

void emit_sweep(CsvWriter& w, const std::vector<SweepRow>& rows) {
    w.header({"a", "classification", "event_rho", "alpha"});
    for (const auto& r : rows)
        w.row_raw({csv_num(r.a), classification_name(r.cls), csv_num(r.event_rho),
                   csv_num(r.alpha)});
}

// True when some trajectory decays positively with a fitted exponent
// beyond the square-integrability rate (N-1)/2; for theta < 0 nothing
// should clear that bar.
bool sweep_has_fast_decayer(const std::vector<SweepRow>& rows, int N) {
    const double bar = 0.5 * (N - 1.0) + 0.1;
    for (const auto& r : rows)
        if (r.cls == TrajClass::DecaysPositive && r.alpha > bar) return true;
    return false;
}

IntegrateOptions integrate_opts_from(const Config& cfg) {
    IntegrateOptions o;
    o.rho_max = cfg.get_num("rho_max", 40.0);
    o.tol = cfg.get_num("tol", 1e-10);
    o.max_step = cfg.get_num("max_step", std::numeric_limits<double>::infinity());
    if (!(o.rho_max > 0.0) || !(o.tol > 0.0) || !(o.max_step > 0.0))
        throw ConfigError("rho_max, tol and max_step must be > 0");
    return o;
}

RunResult cmd_shoot(const Config& cfg, std::uint64_t seed) {
    cfg.restrict_keys({"N", "lambda", "theta", "p", "a", "a_min", "a_max", "a_count", "rho_max",
                       "tol", "max_step", "fit_rho_a", "fit_rho_b"});
    const ProblemParams params = params_from(cfg, 3, 0.0, 1.0, 3.0);
    const IntegrateOptions opts = integrate_opts_from(cfg);

    RunResult res;
    std::ostringstream csv, summary;
    CsvWriter w(csv);
    echo_preamble(w, "shoot", cfg, seed);

    if (cfg.has("a")) {
        const double a = cfg.get_num("a");
        if (!(a >= 0.0)) throw ConfigError("a must be >= 0");
        const Trajectory traj = integrate(a, params, opts);
        w.comment(std::string("classification = ") + classification_name(traj.cls.kind) +
                  " at rho = " + csv_num(traj.cls.rho));
        w.header({"rho", "u", "uprime", "E"});
        for (const Sample& s : traj.samples)
            w.row({s.rho, s.u, s.du, energy(s.u, s.du, params)});
        summary << "classification: " << classification_name(traj.cls.kind)
                << " (rho = " << csv_num(traj.cls.rho) << ", " << traj.samples.size()
                << " samples)\n";
        res.exit_code = ExitPass;
    } else {
        if (!cfg.has("a_min") || !cfg.has("a_max") || !cfg.has("a_count"))
            throw ConfigError("shoot needs either a, or all of a_min/a_max/a_count");
        const bool have_fit = cfg.has("fit_rho_a") || cfg.has("fit_rho_b");
        const std::vector<SweepRow> rows =
            run_sweep(params, cfg.get_num("a_min"), cfg.get_num("a_max"), cfg.get_int("a_count"),
                      opts, have_fit, cfg.get_num("fit_rho_a", 0.0), cfg.get_num("fit_rho_b", 5.0));
        emit_sweep(w, rows);
        int crossers = 0, decayers = 0;
        for (const auto& r : rows) {
            crossers += r.cls == TrajClass::CrossesZero;
            decayers += r.cls == TrajClass::DecaysPositive;
        }
        summary << "sweep: " << rows.size() << " trajectories, " << crossers << " cross zero, "
                << decayers << " decay positive\n";
        if (params.theta < 0.0) {
            const bool spurious = sweep_has_fast_decayer(rows, params.N);
            summary << "fast positive decayer found: " << flag(spurious) << "\n";
            res.exit_code = spurious ? ExitVerdictFailure : ExitPass;
        } else {
            res.exit_code = ExitPass;
        }
    }
    res.csv = csv.str();
    res.summary = summary.str();
    return res;
}

RunResult cmd_ground_state(const Config& cfg, std::uint64_t seed, bool force) {
    cfg.restrict_keys({"N", "lambda", "theta", "p", "a_lo", "a_hi", "tol_bisect", "rho_max", "tol",
                       "max_step", "R0", "fit_rho_a", "fit_rho_b", "a_min", "a_max", "a_count"});
    const ProblemParams params = params_from(cfg, 3, 0.0, 1.0, 3.0);
    const IntegrateOptions opts = integrate_opts_from(cfg);

    RunResult res;
    std::ostringstream csv, summary;
    CsvWriter w(csv);
    echo_preamble(w, "ground-state", cfg, seed);

    if (params.theta <= 0.0) {
        if (!force)
            throw ConfigError(
                "ground-state refused for theta <= 0: no positive decaying profile exists in this "
                "regime; pass --force to run the falsification sweep instead");
        const bool have_fit = cfg.has("fit_rho_a") || cfg.has("fit_rho_b");
        const std::vector<SweepRow> rows = run_sweep(
            params, cfg.get_num("a_min", 0.1), cfg.get_num("a_max", 20.0),
            cfg.get_int("a_count", 200), opts, have_fit, cfg.get_num("fit_rho_a", 0.0),
            cfg.get_num("fit_rho_b", 5.0));
        emit_sweep(w, rows);
        const bool spurious = sweep_has_fast_decayer(rows, params.N);
        summary << "falsification sweep over " << rows.size()
                << " heights: fast positive decayer found: " << flag(spurious) << "\n";
        res.exit_code = spurious ? ExitVerdictFailure : ExitPass;
        res.csv = csv.str();
        res.summary = summary.str();
        return res;
    }

    const double a_lo = cfg.get_num("a_lo", 1.0), a_hi = cfg.get_num("a_hi", 20.0);
    const double tol_bisect = cfg.get_num("tol_bisect", 1e-12);
    const GroundState gs = find_ground_state({a_lo, a_hi}, params, tol_bisect, opts);
    const double fit_a = cfg.get_num("fit_rho_a", 0.0), fit_b = cfg.get_num("fit_rho_b", 5.0);
    const double alpha = fit_decay_exponent(gs.trajectory, fit_a, fit_b);
    const double R0 = cfg.get_num("R0", 2.0);
    const DecayCheck dc = decay_bounds_check(gs.trajectory, R0, params.N);

    w.comment("a_star = " + csv_num(gs.a_star));
    w.comment("bisections = " + std::to_string(gs.bisections));
    w.comment("alpha_fit = " + csv_num(alpha));
    w.comment("decay_C0 = " + csv_num(dc.C0) + ", decay_C1 = " + csv_num(dc.C1) +
              ", ratio = " + csv_num(dc.ratio));
    w.comment("decay_drift: C0 " + csv_num(dc.C0_drift) + ", C1 " + csv_num(dc.C1_drift));
    w.comment("decay_verdict = " + flag(dc.verdict));
    w.header({"rho", "u", "uprime", "E"});
    for (const Sample& s : gs.trajectory.samples)
        w.row({s.rho, s.u, s.du, energy(s.u, s.du, params)});

    summary << "a_star = " << csv_num(gs.a_star) << " (" << gs.bisections << " bisections)\n"
            << "alpha_fit = " << csv_num(alpha) << " on [" << csv_num(fit_a) << ", "
            << csv_num(fit_b) << "]\n"
            << "decay envelope: C0 = " << csv_num(dc.C0) << ", C1 = " << csv_num(dc.C1)
            << ", verdict = " << flag(dc.verdict) << "\n";
    res.exit_code = dc.verdict ? ExitPass : ExitVerdictFailure;
    res.csv = csv.str();
    res.summary = summary.str();
    return res;
}

RunResult cmd_minimize(const Config& cfg, std::uint64_t seed) {
    cfg.restrict_keys(
        {"N", "lambda", "theta", "p", "R_max", "cells", "max_iter", "step", "tol", "init_scale"});
    const ProblemParams params = params_from(cfg, 3, 0.0, 1.0, 3.0);
    const double R_max = cfg.get_num("R_max", 40.0);
    const long long cells = cfg.get_int("cells", 1600);
    if (!(R_max > 0.0) || cells < 4 || cells > 2000000)
        throw ConfigError("minimize needs R_max > 0 and 4 <= cells <= 2e6");
    MinimizeOptions opts;
    opts.max_iter = (int)cfg.get_int("max_iter", 4000);
    opts.step = cfg.get_num("step", 0.25);
    opts.tol = cfg.get_num("tol", 1e-9);

    const RadialGrid grid = RadialGrid::linear(params.N, R_max, (int)cells);
    RadialFunction init = default_minimize_init(grid);
    const double scale = cfg.get_num("init_scale", 1.0);
    for (double& v : init.values) v *= scale;

    const MinimizeResult mr = minimize_nehari(init, params, opts);

    RunResult res;
    std::ostringstream csv, summary;
    CsvWriter w(csv);
    echo_preamble(w, "minimize", cfg, seed);
    w.comment("d_p = " + csv_num(mr.d_p));
    w.comment("converged = " + flag(mr.converged) + ", diverged = " + flag(mr.diverged) +
              ", iterations = " + std::to_string(mr.iterations));
    w.comment("stationarity = " + csv_num(mr.stationarity));
    w.comment("monotonicity_defect = " + csv_num(mr.monotonicity_defect));
    w.header({"iter", "J", "I", "t0", "grad_norm"});
    for (const IterRow& r : mr.log)
        w.row_raw({std::to_string(r.iter), csv_num(r.J), csv_num(r.I), csv_num(r.t0),
                   csv_num(r.grad_norm)});

    summary << "d_p = " << csv_num(mr.d_p) << " after " << mr.iterations
            << " iterations (converged = " << flag(mr.converged)
            << ", stationarity = " << csv_num(mr.stationarity) << ")\n";
    const bool pass = mr.converged && !mr.diverged && mr.d_p > 0.0;
    res.exit_code = pass ? ExitPass : ExitVerdictFailure;
    res.csv = csv.str();
    res.summary = summary.str();
    return res;
}

ThresholdRule rule_from(const std::string& text) {
    const std::size_t pos = text.find(':');
    if (pos == std::string::npos)
        throw ConfigError("rho_cut_rule must look like fixed:0.1 or prop:4, got \"" + text + "\"");
    const std::string head = text.substr(0, pos);
    const std::string tail = text.substr(pos + 1);
    char* end = nullptr;
    const double v = std::strtod(tail.c_str(), &end);
    if (end == tail.c_str() || *end != '\0' || !(v > 0.0))
        throw ConfigError("rho_cut_rule needs a positive number after ':', got \"" + tail + "\"");
    if (head == "fixed") return {true, v};
    if (head == "prop") return {false, v};
    throw ConfigError("rho_cut_rule kind must be fixed or prop, got \"" + head + "\"");
}

RunResult cmd_threshold(const Config& cfg, std::uint64_t seed) {
    cfg.restrict_keys({"N", "lambda", "theta", "eps_grid", "rho_cut_rule", "quad_tol"});
    const int N = (int)cfg.get_int("N", 4);
    if (N < 4) throw ConfigError("truncated-bubble analysis requires N >= 4");
    ProblemParams params;
    params.N = N;
    params.lambda = cfg.get_num("lambda", 0.0);
    params.theta = cfg.get_num("theta", 1.0);
    params.p = params.critical_p();
    params.validate();

    const std::vector<double> eps_grid =
        parse_num_list(cfg.get_str("eps_grid", "0.04,0.02,0.01,0.005"), "eps_grid");
    const ThresholdRule rule = rule_from(cfg.get_str("rho_cut_rule", N == 4 ? "prop:4" : "fixed:0.1"));
    const double quad_tol = cfg.get_num("quad_tol", 1e-7);

    const std::vector<ThresholdReport> reports = verify_threshold(params, eps_grid, rule, quad_tol);
    const bool ok = threshold_succeeds(reports);

    RunResult res;
    std::ostringstream csv, summary;
    CsvWriter w(csv);
    echo_preamble(w, "threshold", cfg, seed);
    {
        // input echo, short form is friendlier than the 17-digit data format
        std::string grid_echo = "eps_grid =";
        char buf[32];
        for (double e : eps_grid) {
            std::snprintf(buf, sizeof buf, " %g", e);
            grid_echo += buf;
        }
        w.comment(grid_echo);
        std::snprintf(buf, sizeof buf, "%g", rule.value);
        w.comment(std::string("rho_cut_rule = ") + (rule.fixed ? "fixed:" : "prop:") + buf);
    }
    if (!reports.empty()) w.comment("comparison level S^{N/2}/N = " + csv_num(reports[0].S_half_N));
    w.comment("positive margin found = " + flag(ok));
    w.header({"eps", "rho_cut", "grad_sq", "l2star", "l2", "vlnv", "t_eps", "psi_max", "margin"});
    for (const auto& r : reports)
        w.row({r.eps, r.rho_cut, r.grad_sq, r.l2star, r.l2, r.vlnv, r.t_eps, r.psi_max, r.margin});

    summary << "threshold margins:";
    for (const auto& r : reports) summary << " " << csv_num(r.margin);
    summary << "\npositive margin found: " << flag(ok) << "\n";
    res.exit_code = ok ? ExitPass : ExitVerdictFailure;
    res.csv = csv.str();
    res.summary = summary.str();
    return res;
}

RunResult cmd_barrier(const Config& cfg, std::uint64_t seed) {
    cfg.restrict_keys({"N", "lambda0", "eps_max", "rho_lo", "rho_hi", "rho_step"});
    const int N = (int)cfg.get_int("N", 3);
    const double lambda0 = cfg.get_num("lambda0");
    const double eps_max = cfg.get_num("eps_max", 1e-2);
    const double rho_lo = cfg.get_num("rho_lo", 0.5);
    const double rho_hi = cfg.get_num("rho_hi", 80.0);
    const double rho_step = cfg.get_num("rho_step", 0.25);

    const BarrierReport rep = find_negativity_radius(lambda0, eps_max, N, rho_lo, rho_hi, rho_step);

    RunResult res;
    std::ostringstream csv, summary;
    CsvWriter w(csv);
    echo_preamble(w, "barrier", cfg, seed);
    w.header({"rho", "eps", "f_value", "sign"});
    for (const BarrierSample& s : rep.samples) {
        const int sign = s.f < 0.0 ? -1 : (s.f > 0.0 ? 1 : 0);
        w.row_raw({csv_num(s.rho), csv_num(s.eps), csv_num(s.f), std::to_string(sign)});
    }
    for (std::size_t i = 0; i < rep.eps_list.size(); ++i)
        w.comment("R(eps = " + csv_num(rep.eps_list[i]) + ") = " + csv_num(rep.R_per_eps[i]));
    w.comment("R_found = " + csv_num(rep.R_found));
    w.comment("sign_reentry = " + flag(rep.sign_reentry));

    summary << "R_found = " << csv_num(rep.R_found) << " (has_R = " << flag(rep.has_R)
            << ", sign_reentry = " << flag(rep.sign_reentry) << ")\n";
    res.exit_code = (rep.has_R && !rep.sign_reentry) ? ExitPass : ExitVerdictFailure;
    res.csv = csv.str();
    res.summary = summary.str();
    return res;
}

RunResult cmd_logsob(const Config& cfg, std::uint64_t seed) {
    cfg.restrict_keys({"N", "eps_count", "eps_min", "eps_max"});
    const int N = (int)cfg.get_int("N", 3);
    if (N < 2) throw ConfigError("logsob: N must be >= 2");
    const long long count = cfg.get_int("eps_count", 20);
    const double eps_min = cfg.get_num("eps_min", 1e-3);
    const double eps_max = cfg.get_num("eps_max", 10.0);
    if (count < 1) throw ConfigError("eps_count must be >= 1");
    if (!(eps_min > 0.0)) throw ConfigError("eps values must be strictly positive");
    if (!(eps_max >= eps_min)) throw ConfigError("need eps_min <= eps_max");

    double S = 0.0, S03 = 0.0;
    LogSobConstants consts;
    if (N >= 3) {
        S = sobolev_constant_gamma(N);
        consts = constants_from_proof(N, S);
    } else {
        S03 = estimate_s03() * s03_safety_factor();
        consts = constants_from_proof(N, 0.0, S03);
    }

    const RadialGrid grid = RadialGrid::production(N);
    struct Family {
        const char* name;
        RadialFunction u;
    };
    const double a = N - 1.0;
    std::vector<Family> families;
    families.push_back({"coshpow", sample(grid, [a](double r) { return std::pow(std::cosh(0.5 * r), -a); })});
    families.push_back({"gauss", sample(grid, [](double r) { return std::exp(-r * r); })});
    families.push_back({"bump", sample(grid, [](double r) {
                            const double t = r / 10.0;
                            return t < 1.0 ? std::pow(1.0 - t * t, 3.0) : 0.0;
                        })});

    RunResult res;
    std::ostringstream csv, summary;
    CsvWriter w(csv);
    echo_preamble(w, "logsob", cfg, seed);
    w.comment("C1 = " + csv_num(consts.C1));
    w.comment("C2 = " + csv_num(consts.C2));
    if (N >= 3)
        w.comment("S = " + csv_num(S));
    else
        w.comment("S03 (deflated) = " + csv_num(S03));
    w.header({"family", "eps", "residual"});
    bool all_ok = true;
    double worst = std::numeric_limits<double>::infinity();
    for (const Family& fam : families) {
        for (long long i = 0; i < count; ++i) {
            const double frac = count == 1 ? 0.0 : double(i) / double(count - 1);
            const double eps = eps_min * std::pow(eps_max / eps_min, frac);
            const double r = log_sobolev_residual(fam.u, eps, consts.C1, consts.C2);
            worst = std::min(worst, r);
            if (!(r >= 0.0)) all_ok = false;
            w.row_raw({fam.name, csv_num(eps), csv_num(r)});
        }
    }
    summary << "smallest residual = " << csv_num(worst) << ", all nonnegative: " << flag(all_ok)
            << "\n";
    res.exit_code = all_ok ? ExitPass : ExitVerdictFailure;
    res.csv = csv.str();
    res.summary = summary.str();
    return res;
}

} // namespace

RunResult run_command(const std::string& command, const Config& cfg, std::uint64_t seed,
                      bool force) {
    if (command == "shoot") return cmd_shoot(cfg, seed);
    if (command == "ground-state") return cmd_ground_state(cfg, seed, force);
    if (command == "minimize") return cmd_minimize(cfg, seed);
    if (command == "threshold") return cmd_threshold(cfg, seed);
    if (command == "barrier") return cmd_barrier(cfg, seed);
    if (command == "logsob") return cmd_logsob(cfg, seed);
    throw ConfigError("unknown command: " + command);
}

} // namespace hyplab
