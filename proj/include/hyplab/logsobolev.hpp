#pragma once
#include "hyplab/functionals.hpp"

namespace hyplab {

struct LogSobConstants {
    double C1 = 0.0, C2 = 0.0;
};

// Constants for the inequality
//   int u^2 ln u^2 <= (eps/pi) |nabla u|^2 + |u|^2 ( ln |u|^2 + C1 - C2 ln eps )
// assembled from the optimization chain ln(a x) <= s x + ln(a/s):
// with Ct1 = N/2 and Ct2 = 1/S_val for N >= 3, C1 = Ct1 ln(Ct2 Ct1 pi)
// and C2 = Ct1.  For N = 2 the chain runs through the quartic embedding
// instead, with Ct1 = 2 and Ct2 = 1/S03_val.
LogSobConstants constants_from_proof(int N, double S_val, double S03_val = 0.0);

// RHS - LHS of the inequality for a given profile and eps.  Nonnegative
// means the inequality holds at (u, eps).  The zero profile returns 0.
double log_sobolev_residual(const RadialFunction& u, double eps, double C1, double C2);

// Numerical estimate of the best constant of the quartic embedding on
// the hyperbolic plane, inf |nabla u|_2^2 / |u|_4^2 over radial H^1
// profiles.  Minimizes over the family cosh(rho/2)^{-a} by golden
// section; the family is optimal to ~1e-4 against free minimization.
// Callers that need a provably-valid constant should deflate the result
// (see s03_safety_factor).
double estimate_s03();

// Multiply estimate_s03() by this before trusting it as a lower bound
// of the true infimum.
inline double s03_safety_factor() { return 0.98; }

} // namespace hyplab
