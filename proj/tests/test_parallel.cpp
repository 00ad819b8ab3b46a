#include <cmath>
#include <vector>

#include "doctest.h"
#include "hyplab/barrier.hpp"
#include "hyplab/geometry.hpp"
#include "hyplab/parallel.hpp"
#include "hyplab/params.hpp"
#include "hyplab/threshold.hpp"

using namespace hyplab;

TEST_SUITE("parallel") {

TEST_CASE("thread count is sane") {
    CHECK(max_threads() >= 1);
}

TEST_CASE("parallel loop writes disjoint slots") {
    const std::size_t n = 100000;
    std::vector<double> a(n), b(n);
    auto fill = [](std::vector<double>& v) {
        return [&v](std::size_t i) { v[i] = std::sin(0.001 * static_cast<double>(i)); };
    };
    par_for(Exec::Serial, n, fill(a));
    par_for(Exec::Par, n, fill(b));
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (a[i] != b[i]) ++mismatches;
    CHECK(mismatches == 0);
}

TEST_CASE("reduction is bitwise independent of the execution policy") {
    const std::size_t n = 1000000;
    auto f = [](std::size_t i) { return std::sin(1e-3 * static_cast<double>(i)); };
    const double s = par_sum(Exec::Serial, n, f);
    const double p = par_sum(Exec::Par, n, f);
    CHECK(s == p);
    // odd sizes around the chunk boundary
    for (std::size_t m : {std::size_t(1023), std::size_t(1024), std::size_t(1025)})
        CHECK(par_sum(Exec::Serial, m, f) == par_sum(Exec::Par, m, f));
}

TEST_CASE("Monte Carlo volume is policy independent") {
    const double s = ball_volume_mc(3, 2.0, 500000, 42, Exec::Serial);
    const double p = ball_volume_mc(3, 2.0, 500000, 42, Exec::Par);
    CHECK(s == p);
}

TEST_CASE("threshold verification is policy independent") {
    ProblemParams params;
    params.N = 5;
    params.p = params.critical_p();
    const std::vector<double> eps = {0.02, 0.01};
    const auto a = verify_threshold(params, eps, ThresholdRule{}, 1e-7, Exec::Serial);
    const auto b = verify_threshold(params, eps, ThresholdRule{}, 1e-7, Exec::Par);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].psi_max == b[i].psi_max);
        CHECK(a[i].margin == b[i].margin);
        CHECK(a[i].t_eps == b[i].t_eps);
        CHECK(a[i].grad_sq == b[i].grad_sq);
    }
}

TEST_CASE("negativity scan is policy independent") {
    const auto a = find_negativity_radius(2.0, 1e-2, 3, 0.5, 40.0, 0.1, Exec::Serial);
    const auto b = find_negativity_radius(2.0, 1e-2, 3, 0.5, 40.0, 0.1, Exec::Par);
    CHECK(a.R_found == b.R_found);
    CHECK(a.has_R == b.has_R);
    REQUIRE(a.samples.size() == b.samples.size());
    std::size_t mismatches = 0;
    for (std::size_t i = 0; i < a.samples.size(); ++i)
        if (a.samples[i].f != b.samples[i].f) ++mismatches;
    CHECK(mismatches == 0);
}

} // TEST_SUITE
