#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "hyplab/barrier.hpp"
#include "hyplab/geometry.hpp"
#include "hyplab/parallel.hpp"
#include "hyplab/quadrature.hpp"
#include "hyplab/threshold.hpp"

using hyplab::Exec;

namespace {

template <class F>
double time_ms(F&& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const char* name, double serial_ms, double par_ms, bool identical) {
    std::printf("%-22s %10.1f ms %10.1f ms %7.2fx   %s\n", name, serial_ms, par_ms,
                serial_ms / par_ms, identical ? "identical" : "DIFFER");
}

} // namespace

int main() {
    std::printf("threads available: %d\n", hyplab::max_threads());
    std::printf("%-22s %13s %13s %9s   %s\n", "kernel", "serial", "parallel", "speedup",
                "results");

    {
        double vs = 0.0, vp = 0.0;
        const double ts = time_ms([&] { vs = hyplab::ball_volume_mc(3, 2.0, 4000000, 7, Exec::Serial); });
        const double tp = time_ms([&] { vp = hyplab::ball_volume_mc(3, 2.0, 4000000, 7, Exec::Par); });
        report("mc_ball_volume", ts, tp, vs == vp);
    }
    {
        const hyplab::CompositeRule rule =
            hyplab::composite_gauss(hyplab::uniform_breaks(0.0, 40.0, 2500), 16);
        const auto f = [](double rho) {
            return std::exp(-0.7 * rho) * std::log1p(rho * rho) * std::cos(3.0 * rho);
        };
        double vs = 0.0, vp = 0.0;
        const double ts = time_ms([&] {
            for (int rep = 0; rep < 200; ++rep) vs = hyplab::integrate(rule, f, Exec::Serial);
        });
        const double tp = time_ms([&] {
            for (int rep = 0; rep < 200; ++rep) vp = hyplab::integrate(rule, f, Exec::Par);
        });
        report("weighted_quadrature", ts, tp, vs == vp);
    }
    {
        hyplab::ProblemParams params;
        params.N = 5;
        params.p = params.critical_p();
        const std::vector<double> eps = {0.04, 0.02, 0.01, 0.005, 0.0025};
        const hyplab::ThresholdRule rule{true, 0.1};
        std::vector<hyplab::ThresholdReport> rs, rp;
        const double ts =
            time_ms([&] { rs = hyplab::verify_threshold(params, eps, rule, 1e-7, Exec::Serial); });
        const double tp =
            time_ms([&] { rp = hyplab::verify_threshold(params, eps, rule, 1e-7, Exec::Par); });
        bool same = rs.size() == rp.size();
        for (std::size_t i = 0; same && i < rs.size(); ++i)
            same = rs[i].psi_max == rp[i].psi_max && rs[i].margin == rp[i].margin;
        report("threshold_grid", ts, tp, same);
    }
    {
        hyplab::BarrierReport rs, rp;
        const double ts = time_ms(
            [&] { rs = hyplab::find_negativity_radius(2.0, 1e-2, 3, 0.5, 80.0, 0.002, Exec::Serial); });
        const double tp = time_ms(
            [&] { rp = hyplab::find_negativity_radius(2.0, 1e-2, 3, 0.5, 80.0, 0.002, Exec::Par); });
        bool same = rs.samples.size() == rp.samples.size() && rs.R_found == rp.R_found;
        for (std::size_t i = 0; same && i < rs.samples.size(); ++i)
            same = rs.samples[i].f == rp.samples[i].f;
        report("barrier_scan", ts, tp, same);
    }
    return 0;
}
