#include "hyplab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "hyplab/errors.hpp"

namespace hyplab {

// Legendre P_n and P_n' at x by the three-term recurrence.
static std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    if (n == 0) return {1.0, 0.0};
    for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

static GaussRule build_gauss(int n) {
    GaussRule rule;
    rule.x.resize(n);
    rule.w.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-like initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            const auto [p, dp] = legendre(n, x);
            const double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const auto [p, dp] = legendre(n, x);
        (void)p;
        rule.x[n - 1 - i] = x;
        rule.w[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

const GaussRule& gauss_rule(int n) {
    if (n < 1 || n > 64) throw ConfigError("gauss_rule: node count out of range [1,64]");
    static std::map<int, GaussRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, build_gauss(n)).first;
    return it->second;
}

CompositeRule composite_gauss(const std::vector<double>& breaks, int nodes_per_panel) {
    if (breaks.size() < 2) throw ConfigError("composite_gauss: need at least one panel");
    for (std::size_t i = 1; i < breaks.size(); ++i)
        if (!(breaks[i] > breaks[i - 1]))
            throw ConfigError("composite_gauss: breakpoints must strictly increase");
    const GaussRule& g = gauss_rule(nodes_per_panel);
    CompositeRule rule;
    rule.x.reserve((breaks.size() - 1) * nodes_per_panel);
    rule.w.reserve((breaks.size() - 1) * nodes_per_panel);
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (int i = 0; i < nodes_per_panel; ++i) {
            rule.x.push_back(mid + half * g.x[i]);
            rule.w.push_back(half * g.w[i]);
        }
    }
    return rule;
}

std::vector<double> graded_breaks(double scale, double outer,
                                  const std::vector<double>& must_include) {
    if (!(scale > 0.0) || !(outer > scale))
        throw ConfigError("graded_breaks: need 0 < scale < outer");
    std::vector<double> b{0.0};
    double t = scale;
    while (t < outer) {
        b.push_back(t);
        t *= 2.0;
    }
    for (double m : must_include)
        if (m > 0.0 && m < outer) b.push_back(m);
    b.push_back(outer);
    std::sort(b.begin(), b.end());
    // Drop near-duplicates (a doubled point and a must_include point can
    // land within rounding of each other).
    std::vector<double> out{b.front()};
    for (double v : b)
        if (v > out.back() + 1e-14 * (1.0 + std::abs(v))) out.push_back(v);
    return out;
}

std::vector<double> uniform_breaks(double a, double b, int panels) {
    if (!(b > a) || panels < 1) throw ConfigError("uniform_breaks: bad range");
    std::vector<double> out(panels + 1);
    for (int i = 0; i <= panels; ++i) out[i] = a + (b - a) * i / panels;
    out.back() = b;
    return out;
}

} // namespace hyplab
