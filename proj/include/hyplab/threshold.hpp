#pragma once
#include <functional>
#include <vector>

#include "hyplab/parallel.hpp"
#include "hyplab/params.hpp"

namespace hyplab {

// Concentrated test profile: a scaled extremizer of the Euclidean
// Sobolev inequality, cut off inside the unit ball.
struct BubbleSpec {
    double eps = 0.01;      // concentration scale
    double rho_cut = 0.1;   // cutoff plateau radius; support is [0, 2 rho_cut]
    int N = 4;
    void validate() const;  // N >= 4, eps <= rho_cut, 2 rho_cut < 1
};

// U_eps(r) = [N(N-2)]^{(N-2)/4} (eps/(eps^2+r^2))^{(N-2)/2} and its
// radial derivative.
double bubble_U(double r, double eps, int N);
double bubble_dU(double r, double eps, int N);

// Radial cutoff: 1 on [0, rc], 0 beyond 2 rc, quintic smoothstep ramp in
// between (C^2 at both seams).
double cutoff_phi(double r, double rc);
double cutoff_dphi(double r, double rc);

// Best Sobolev constant by quadrature: returns (int |grad U_1|^2)^{2/N}
// after checking that int |grad U_1|^2 and int U_1^{2*} agree to
// quad_tol relative (they are equal by the normalization of U).
double sobolev_constant(int N, double quad_tol);

// Independent closed form S = N(N-2) pi (Gamma(N/2)/Gamma(N))^{2/N}.
double sobolev_constant_gamma(int N);

struct BnsIntegrals {
    double grad_sq = 0.0, l2star = 0.0, l2 = 0.0;
};

// int |grad v|^2, int |v|^{2*}, int v^2 over the unit ball for the
// truncated bubble v = phi U_eps.
BnsIntegrals bns_integrals(const BubbleSpec& spec, double quad_tol);

// int v^2 ln v^2 for the truncated bubble.
double vln_integral(const BubbleSpec& spec, double quad_tol);

// Weights of the conformally transformed functional at Euclidean radius
// x in [0,1), returned as {g, h} with h = (2/(1-x^2))^2 and
// g = (lambda - N(N-2)/4 - theta - (N-2) theta ln(2/(1-x^2))) h.
std::pair<double, double> conformal_weights(double x_norm, const ProblemParams& params);

// A radial profile on the unit ball given analytically, with its
// derivative and an inner feature scale used to grade the quadrature.
struct RadialProfile {
    std::function<double(double)> u, du;
    double support = 1.0;      // u vanishes beyond this radius
    double inner_scale = 0.1;  // finest structure scale near 0
};

// The transformed action
//   (1/2) int |grad v|^2 - (1/2) int g v^2 - (1/2*) int |v|^{2*}
//   - (theta/2) int h v^2 ln v^2
// over the unit ball.  Equals the hyperbolic critical-exponent action of
// the conformal preimage u = (2/(1-|x|^2))^{1-N/2} v.
double tilde_J(const RadialProfile& v, const ProblemParams& params, double quad_tol);

struct ThresholdReport {
    double eps = 0.0, rho_cut = 0.0;
    double grad_sq = 0.0, l2star = 0.0, l2 = 0.0, vlnv = 0.0;
    double g_term = 0.0;       // int g v^2
    double h_lnv_term = 0.0;   // int h v^2 ln v^2
    double h_l2_term = 0.0;    // int h v^2
    double t_eps = 0.0;        // maximizer of t -> tilde_J(t v)
    double psi_max = 0.0;
    double S_half_N = 0.0;     // S^{N/2}/N, the comparison level
    double margin = 0.0;       // S_half_N - psi_max
    double search_bound = 0.0; // t_eps was confined to (1/this, this)
};

struct ThresholdRule {
    bool fixed = true;
    double value = 0.1;  // fixed: rho_cut = value; proportional: rho_cut = value*eps
    double rho_cut_for(double eps) const { return fixed ? value : value * eps; }
};

// For each eps: build the truncated bubble, maximize psi(t) = tilde_J(t v)
// over t > 0 (the maximizer is unique; psi'(t)/t is strictly decreasing),
// and report the margin S^{N/2}/N - psi_max.  Grid points evaluate
// independently and merge in eps order.
std::vector<ThresholdReport> verify_threshold(const ProblemParams& params,
                                              const std::vector<double>& eps_grid,
                                              const ThresholdRule& rule, double quad_tol,
                                              Exec exec = Exec::Par);

// The verification verdict: a strictly positive margin at some eps.
bool threshold_succeeds(const std::vector<ThresholdReport>& reports);

} // namespace hyplab
