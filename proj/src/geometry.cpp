#include "hyplab/geometry.hpp"

#include <cmath>
#include <random>

#include "hyplab/errors.hpp"
#include "hyplab/quadrature.hpp"

namespace hyplab {

double norm_sq(const std::vector<double>& x) {
    double s = 0.0;
    for (double xi : x) s += xi * xi;
    return s;
}

static void check_interior(double r2, const char* who) {
    if (!(r2 >= 0.0) || r2 >= 1.0)
        throw ConfigError(std::string(who) + ": point not inside the unit ball");
}

double distance_to_origin(const std::vector<double>& x) {
    const double r2 = norm_sq(x);
    check_interior(r2, "distance_to_origin");
    return rho_from_radius(std::sqrt(r2));
}

double hyperbolic_distance(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ConfigError("hyperbolic_distance: dimension mismatch");
    const double x2 = norm_sq(x), y2 = norm_sq(y);
    check_interior(x2, "hyperbolic_distance");
    check_interior(y2, "hyperbolic_distance");
    double d2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double d = x[i] - y[i];
        d2 += d * d;
    }
    // sinh(d/2) = |x-y| / sqrt((1-|x|^2)(1-|y|^2)); asinh keeps full
    // precision for nearby points where the cosh form would cancel.
    const double s = std::sqrt(d2 / ((1.0 - x2) * (1.0 - y2)));
    return 2.0 * std::asinh(s);
}

std::vector<double> mobius_translate(const std::vector<double>& b, const std::vector<double>& x) {
    if (b.size() != x.size()) throw ConfigError("mobius_translate: dimension mismatch");
    const double b2 = norm_sq(b), x2 = norm_sq(x);
    check_interior(b2, "mobius_translate");
    check_interior(x2, "mobius_translate");
    double xb = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) xb += x[i] * b[i];
    const double denom = b2 * x2 + 2.0 * xb + 1.0;
    const double cx = (1.0 - b2) / denom;
    const double cb = (x2 + 2.0 * xb + 1.0) / denom;
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = cx * x[i] + cb * b[i];
    return out;
}

double conformal_factor(double r) {
    if (!(r >= 0.0) || r >= 1.0) throw ConfigError("conformal_factor: radius outside [0,1)");
    return 2.0 / ((1.0 - r) * (1.0 + r));
}

double radius_from_rho(double rho) {
    // tanh(rho/2) = -expm1(-rho) / (1 + exp(-rho))
    const double e = std::exp(-rho);
    return -std::expm1(-rho) / (1.0 + e);
}

double rho_from_radius(double r) {
    if (!(r >= 0.0) || r >= 1.0) throw ConfigError("rho_from_radius: radius outside [0,1)");
    // 2 atanh(r) = log1p(2r/(1-r))
    return std::log1p(2.0 * r / (1.0 - r));
}

double unit_sphere_area(int N) {
    if (N < 1) throw ConfigError("unit_sphere_area: N must be >= 1");
    return 2.0 * std::pow(M_PI, 0.5 * N) / std::tgamma(0.5 * N);
}

double volume_weight(int N, double rho) {
    if (rho < 0.0) throw ConfigError("volume_weight: rho must be >= 0");
    return unit_sphere_area(N) * std::pow(std::sinh(rho), N - 1);
}

double ball_volume(int N, double R) {
    if (R < 0.0) throw ConfigError("ball_volume: R must be >= 0");
    if (R == 0.0) return 0.0;
    const int panels = std::max(4, (int)std::ceil(R));
    const auto rule = composite_gauss(uniform_breaks(0.0, R, panels), 12);
    return integrate(rule, [N](double rho) { return volume_weight(N, rho); });
}

// splitmix64: cheap, well-mixed stream seeding so each chunk of samples
// draws from an independent, reproducible generator.
static std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double ball_volume_mc(int N, double R, std::uint64_t samples, std::uint64_t seed, Exec exec) {
    if (N < 1 || R <= 0.0 || samples == 0) throw ConfigError("ball_volume_mc: bad arguments");
    const double r_max = radius_from_rho(R);

    // Rejection sampling from the bounding cube keeps this estimate
    // independent of every radial formula it is meant to cross-check.
    constexpr std::uint64_t chunk = 4096;
    const std::uint64_t nchunks = (samples + chunk - 1) / chunk;
    std::vector<double> sum_in(nchunks, 0.0);
    std::vector<std::uint64_t> cnt_in(nchunks, 0);
    par_for(exec, nchunks, [&](std::size_t c) {
        std::mt19937_64 rng(splitmix64(seed ^ (0x517cc1b727220a95ULL * (c + 1))));
        std::uniform_real_distribution<double> unif(-r_max, r_max);
        const std::uint64_t lo = c * chunk;
        const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, samples);
        double s = 0.0;
        std::uint64_t inside = 0;
        for (std::uint64_t i = lo; i < hi; ++i) {
            double n2 = 0.0;
            for (int k = 0; k < N; ++k) {
                const double xk = unif(rng);
                n2 += xk * xk;
            }
            if (n2 < r_max * r_max) {
                ++inside;
                s += std::pow(2.0 / (1.0 - n2), N);
            }
        }
        sum_in[c] = s;
        cnt_in[c] = inside;
    });
    double total = 0.0;
    std::uint64_t accepted = 0;
    for (std::size_t c = 0; c < nchunks; ++c) {
        total += sum_in[c];
        accepted += cnt_in[c];
    }
    if (accepted == 0) throw NumericalError("ball_volume_mc: no samples accepted");
    // cube volume * mean over cube of (density * indicator)
    const double v_cube = std::pow(2.0 * r_max, N);
    return v_cube * total / (double)samples;
}

} // namespace hyplab
