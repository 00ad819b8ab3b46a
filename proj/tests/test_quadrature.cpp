#include <cmath>
#include <vector>

#include "doctest.h"
#include "hyplab/errors.hpp"
#include "hyplab/quadrature.hpp"

using namespace hyplab;

TEST_SUITE("quadrature") {

TEST_CASE("rule weights sum to the interval length") {
    for (int n : {2, 5, 8, 12, 20, 28, 64}) {
        const auto& r = gauss_rule(n);
        REQUIRE(r.x.size() == static_cast<std::size_t>(n));
        double s = 0.0;
        for (double w : r.w) s += w;
        CHECK(s == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("rules are cached by node count") {
    CHECK(&gauss_rule(8) == &gauss_rule(8));
    CHECK(&gauss_rule(8) != &gauss_rule(12));
}

TEST_CASE("polynomial exactness up to degree 2n-1") {
    const auto& r = gauss_rule(5);
    auto moment = [&](int k) {
        double s = 0.0;
        for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * std::pow(r.x[i], k);
        return s;
    };
    CHECK(moment(8) == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    CHECK(moment(9) == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
    // degree 2n is the first the rule misses
    CHECK(std::abs(moment(10) - 2.0 / 11.0) > 1e-6);
}

TEST_CASE("composite rule integrates smooth functions") {
    const auto rule = composite_gauss(uniform_breaks(0.0, 1.0, 8), 8);
    CHECK(integrate(rule, [](double x) { return std::exp(x); }) ==
          doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));

    const auto tail = composite_gauss(uniform_breaks(0.0, 40.0, 40), 12);
    CHECK(integrate(tail, [](double x) { return std::exp(-2.0 * x); }) ==
          doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("composite rule rejects bad breakpoints") {
    CHECK_THROWS_AS(composite_gauss({0.0, 1.0, 1.0}, 8), ConfigError);
    CHECK_THROWS_AS(composite_gauss({0.0}, 8), ConfigError);
    CHECK_THROWS_AS(composite_gauss({0.0, 1.0}, 0), ConfigError);
}

TEST_CASE("uniform breakpoints") {
    const auto b = uniform_breaks(1.0, 3.0, 4);
    REQUIRE(b.size() == 5);
    CHECK(b.front() == 1.0);
    CHECK(b.back() == 3.0);
    CHECK(b[1] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK_THROWS_AS(uniform_breaks(1.0, 1.0, 4), ConfigError);
    CHECK_THROWS_AS(uniform_breaks(0.0, 1.0, 0), ConfigError);
}

TEST_CASE("graded breakpoints start at zero and double up to the outer radius") {
    const auto b = graded_breaks(0.01, 0.2);
    REQUIRE(b.size() >= 3);
    CHECK(b.front() == 0.0);
    CHECK(b.back() == doctest::Approx(0.2).epsilon(1e-15));
    CHECK(b[1] == doctest::Approx(0.01).epsilon(1e-15));
    for (std::size_t i = 1; i + 1 < b.size(); ++i) CHECK(b[i + 1] > b[i]);
}

TEST_CASE("graded breakpoints splice in requested seams") {
    const auto b = graded_breaks(0.003, 0.2, {0.1, 0.15});
    bool has_seam = false, has_mid = false;
    for (double v : b) {
        if (std::abs(v - 0.1) < 1e-14) has_seam = true;
        if (std::abs(v - 0.15) < 1e-14) has_mid = true;
    }
    CHECK(has_seam);
    CHECK(has_mid);
}

TEST_CASE("graded rule resolves a sharply peaked integrand") {
    // int_0^inf r^3 / (e^2 + r^2)^3 dr with e = 1e-3, truncated at 0.2:
    // substitute s = r^2 to get (1/2) int s/(e^2+s)^3 ds.
    const double e = 1e-3;
    auto f = [&](double r) { return r * r * r / std::pow(e * e + r * r, 3); };
    const double R2 = 0.04;
    // antiderivative in s = r^2: F(s) = -1/(e^2+s) + e^2 / (2 (e^2+s)^2)
    auto F = [&](double s) {
        return -1.0 / (e * e + s) + e * e / (2.0 * (e * e + s) * (e * e + s));
    };
    const double exact = 0.5 * (F(R2) - F(0.0));
    const auto rule = composite_gauss(graded_breaks(e, 0.2), 20);
    CHECK(integrate(rule, f) == doctest::Approx(exact).epsilon(1e-10));
}

} // TEST_SUITE
