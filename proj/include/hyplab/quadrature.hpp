#pragma once
#include <functional>
#include <vector>

#include "hyplab/parallel.hpp"

namespace hyplab {

// Gauss-Legendre rule on [-1, 1].  Nodes are the roots of the Legendre
// polynomial P_n found by Newton iteration on the three-term recurrence;
// accurate to machine precision for the n used here (<= 64).
struct GaussRule {
    std::vector<double> x, w;
};
const GaussRule& gauss_rule(int n);

// Composite rule assembled from per-panel Gauss rules over the given
// strictly increasing breakpoints.
struct CompositeRule {
    std::vector<double> x, w;
    std::size_t size() const { return x.size(); }
};
CompositeRule composite_gauss(const std::vector<double>& breaks, int nodes_per_panel);

// Breakpoints geometrically graded from an inner feature scale up to an
// outer radius: {0, s, 2s, 4s, ..., outer}.  Intended for integrands
// with structure at scale s near 0 (bubble cores).  Any supplied
// must_include points (e.g. cutoff seams) are spliced in exactly.
std::vector<double> graded_breaks(double scale, double outer,
                                  const std::vector<double>& must_include = {});

// Uniform breakpoints a = b_0 < ... < b_k = b with k panels.
std::vector<double> uniform_breaks(double a, double b, int panels);

template <class F>
double integrate(const CompositeRule& rule, F&& f, Exec exec = Exec::Serial) {
    return par_sum(exec, rule.size(), [&](std::size_t i) { return rule.w[i] * f(rule.x[i]); });
}

} // namespace hyplab
