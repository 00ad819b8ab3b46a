#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "hyplab/errors.hpp"
#include "hyplab/shooting.hpp"

using namespace hyplab;

namespace {

Trajectory synthetic(double rho_max, double step, double (*u)(double), double (*du)(double)) {
    Trajectory t;
    for (double r = 0.0; r <= rho_max + 1e-12; r += step) t.samples.push_back({r, u(r), du(r)});
    t.cls = {TrajClass::Indeterminate, rho_max};
    t.initial_value = u(0.0);
    return t;
}

} // namespace

TEST_SUITE("shooting") {

TEST_CASE("right-hand side at the origin uses the symmetric regularization") {
    ProblemParams p;  // N=3, lambda=0, theta=1, p=3
    // at u=1 the log term vanishes, so f = 1 and u'' = -1/3
    CHECK(ode_rhs(0.0, 1.0, 0.0, p) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
    // just off the origin the same limit emerges along a consistent
    // state u' = u''(0) rho, despite the 1/rho in the damping term
    const double rho = 1e-6;
    CHECK(ode_rhs(rho, 1.0, -rho / 3.0, p) == doctest::Approx(-1.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("right-hand side at an interior point") {
    ProblemParams p;
    p.N = 3;
    p.lambda = 0.3;
    p.theta = 0.7;
    p.p = 3;
    const double u = 0.5, du = -0.2, rho = 1.0;
    const double f = p.lambda * u + u * u * u + p.theta * u * std::log(u * u);
    const double expect = -(p.N - 1) / std::tanh(rho) * du - f;
    CHECK(ode_rhs(rho, u, du, p) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("right-hand side input validation") {
    ProblemParams p;
    CHECK_THROWS_AS(ode_rhs(-0.1, 1.0, 0.0, p), ConfigError);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ode_rhs(1.0, nan, 0.0, p), NumericalError);
    CHECK_THROWS_AS(ode_rhs(1.0, 1.0, nan, p), NumericalError);
}

TEST_CASE("log factors are safe against squaring underflow") {
    // x*x underflows to 0 here, but the value is fine
    const double x = 1e-200;
    CHECK(x_ln_x2(x) == doctest::Approx(2.0 * x * std::log(x)).epsilon(1e-14));
    CHECK(x_ln_x2(0.0) == 0.0);
    CHECK(x2_ln_x2_m1(0.0) == 0.0);
    CHECK(std::isfinite(x2_ln_x2_m1(x)));
}

TEST_CASE("pointwise energy closed forms") {
    ProblemParams p;  // lambda=0, theta=1, p=3
    CHECK(energy(1.0, 0.0, p) == doctest::Approx(-0.25).epsilon(1e-15));
    CHECK(energy(0.0, 0.0, p) == 0.0);
    p.theta = 0.0;
    CHECK(energy(1.0, 0.0, p) == doctest::Approx(0.25).epsilon(1e-15));
    p.lambda = 0.5;
    p.theta = -0.3;
    p.p = 2.0;
    const double e = 0.5 + 0.5 * 0.5 * 4.0 + 8.0 / 3.0 +
                     0.5 * (-0.3) * 4.0 * (std::log(4.0) - 1.0);
    CHECK(energy(2.0, 1.0, p) == doctest::Approx(e).epsilon(1e-14));
}

TEST_CASE("zero initial height gives the zero trajectory") {
    ProblemParams p;
    const auto t = integrate(0.0, p, 10.0, 1e-10);
    CHECK(t.cls.kind == TrajClass::Indeterminate);
    REQUIRE(t.samples.size() > 2);
    for (const auto& s : t.samples) {
        CHECK(s.u == 0.0);
        CHECK(s.du == 0.0);
    }
}

TEST_CASE("integration input validation") {
    ProblemParams p;
    CHECK_THROWS_AS(integrate(-1.0, p, 10.0, 1e-10), ConfigError);
    CHECK_THROWS_AS(integrate(1.0, p, -1.0, 1e-10), ConfigError);
    CHECK_THROWS_AS(integrate(1.0, p, 10.0, 0.0), ConfigError);
}

TEST_CASE("energy is nonincreasing along trajectories") {
    for (double theta : {0.8, -0.4}) {
        for (double lambda : {0.0, 0.3, -0.5}) {
            ProblemParams p;
            p.N = 3;
            p.lambda = lambda;
            p.theta = theta;
            const double tol = 1e-10;
            const auto t = integrate(2.0, p, 12.0, tol);
            const auto trace = energy_trace(t, p);
            REQUIRE(trace.values.size() == t.samples.size());
            for (std::size_t i = 1; i < trace.values.size(); ++i) {
                const double before = trace.values[i - 1].second;
                const double after = trace.values[i].second;
                CHECK(after <= before + 10.0 * tol * (1.0 + std::abs(before)));
            }
        }
    }
}

TEST_CASE("derivative vanishes linearly at the origin") {
    ProblemParams p;
    const auto t = integrate(3.0, p, 1.0, 1e-10);
    const double curv = ode_rhs(0.0, 3.0, 0.0, p);
    int checked = 0;
    for (const auto& s : t.samples) {
        if (s.rho <= 0.0 || s.rho > 0.01) continue;
        CHECK(s.du / s.rho == doctest::Approx(curv).epsilon(1e-3));
        ++checked;
    }
    CHECK(checked > 0);
}

TEST_CASE("tightening the tolerance converges the endpoint value") {
    ProblemParams p;
    const double a = 5.2298;
    auto at3 = [&](double tol) {
        const auto t = integrate(a, p, 3.0, tol);
        REQUIRE(t.cls.kind == TrajClass::Indeterminate);
        REQUIRE(t.samples.back().rho == doctest::Approx(3.0).epsilon(1e-14));
        return t.samples.back().u;
    };
    const double ref = at3(1e-12);
    const double e6 = std::abs(at3(1e-6) - ref);
    const double e8 = std::abs(at3(1e-8) - ref);
    const double e10 = std::abs(at3(1e-10) - ref);
    CHECK(e8 < e6);
    CHECK(e10 < 1e-7);
}

TEST_CASE("ground state height for the default problem") {
    ProblemParams p;  // N=3, lambda=0, theta=1, p=3
    const auto gs = find_ground_state({1.0, 20.0}, p, 1e-12);
    CHECK(gs.a_star > 5.2297);
    CHECK(gs.a_star < 5.2300);
    CHECK(gs.bisections >= 30);
    CHECK(gs.sub_brackets.size() == 1);

    const auto& s = gs.trajectory.samples;
    REQUIRE(s.size() > 100);
    CHECK(s.back().rho > 4.0);
    for (std::size_t i = 1; i < s.size(); ++i) {
        CHECK(s[i].u > 0.0);
        CHECK(s[i].u < s[i - 1].u);
    }
}

TEST_CASE("ground state interior decay is much steeper than the linear rate") {
    ProblemParams p;
    const auto gs = find_ground_state({1.0, 20.0}, p, 1e-12);
    const double alpha = fit_decay_exponent(gs.trajectory, 0.0, 5.0);
    // the measured log-slope sits near 3.9, far above (N-1)/2 = 1
    CHECK(alpha > 3.7);
    CHECK(alpha < 4.2);
}

TEST_CASE("ground state bracket validation") {
    ProblemParams p;
    CHECK_THROWS_AS(find_ground_state({2.0, 1.0}, p, 1e-12), ConfigError);
    CHECK_THROWS_AS(find_ground_state({0.0, 1.0}, p, 1e-12), ConfigError);
    CHECK_THROWS_AS(find_ground_state({1.0, 2.0}, p, 1e-12), ConfigError);  // same side
    ProblemParams neg = p;
    neg.theta = -1.0;
    CHECK_THROWS_AS(find_ground_state({1.0, 20.0}, neg, 1e-12), ConfigError);
}

TEST_CASE("decay exponent fit recovers synthetic rates") {
    const auto exp2 = synthetic(
        8.0, 0.05, [](double r) { return std::exp(-2.0 * r); },
        [](double r) { return -2.0 * std::exp(-2.0 * r); });
    CHECK(fit_decay_exponent(exp2, 0.0, 8.0) == doctest::Approx(2.0).epsilon(1e-10));

    // sinh(rho/2)^{-2} has asymptotic log-slope 1
    const auto tail = synthetic(
        40.0, 0.25, [](double r) { return std::pow(std::sinh(r / 2.0), -2.0); },
        [](double r) {
            return -std::pow(std::sinh(r / 2.0), -3.0) * std::cosh(r / 2.0);
        });
    CHECK(fit_decay_exponent(tail, 20.0, 40.0) == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("decay exponent fit validation") {
    const auto t = synthetic(
        8.0, 0.05, [](double r) { return std::exp(-r); },
        [](double r) { return -std::exp(-r); });
    CHECK_THROWS_AS(fit_decay_exponent(t, 0.0, 4.0), ConfigError);  // window too short
    Trajectory touching = t;
    touching.samples[40].u = 0.0;
    CHECK_THROWS_AS(fit_decay_exponent(touching, 0.0, 8.0), ConfigError);
    Trajectory sparse;
    sparse.samples = {{0.0, 1.0, 0.0}, {6.0, 0.1, -0.1}};
    CHECK_THROWS_AS(fit_decay_exponent(sparse, 0.0, 6.0), ConfigError);
}

TEST_CASE("no fast positive decayer when the log coefficient is negative") {
    ProblemParams p;
    p.theta = -1.0;
    bool spurious = false;
    for (int i = 0; i < 40; ++i) {
        const double a = 0.5 + 9.5 * i / 39.0;
        Trajectory t;
        try {
            t = integrate(a, p, 30.0, 1e-10);
        } catch (const NumericalError&) {
            continue;
        }
        if (t.cls.kind != TrajClass::DecaysPositive) continue;
        const double end = t.samples.back().rho;
        const double alpha = fit_decay_exponent(t, std::max(0.0, end - 6.0), end);
        if (alpha > 1.1) spurious = true;
    }
    CHECK_FALSE(spurious);
}

} // TEST_SUITE
