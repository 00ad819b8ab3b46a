#pragma once
#include <cstdint>
#include <vector>

#include "hyplab/parallel.hpp"

namespace hyplab {

// Ball model of hyperbolic N-space: the open unit ball with metric
// (2/(1-|x|^2))^2 dx^2.  Points are Euclidean coordinate vectors whose
// length determines the dimension.  All formulas below are exact model
// identities; the stable forms avoid cancellation near the origin and
// near the boundary.

double norm_sq(const std::vector<double>& x);

// Geodesic distance from the origin: rho = 2 atanh |x|.
double distance_to_origin(const std::vector<double>& x);

// Geodesic distance between two interior points, computed through
// sinh(d/2) = |x - y| / sqrt((1-|x|^2)(1-|y|^2)) and asinh.  This form
// stays accurate when x is close to y.
double hyperbolic_distance(const std::vector<double>& x, const std::vector<double>& y);

// The Moebius translation taking 0 to b (an isometry of the model):
//   tau_b(x) = ((1-|b|^2) x + (|x|^2 + 2<x,b> + 1) b) / (|b|^2|x|^2 + 2<x,b> + 1)
std::vector<double> mobius_translate(const std::vector<double>& b, const std::vector<double>& x);

// Conformal factor 2/(1-r^2) at Euclidean radius r in [0,1).
double conformal_factor(double r);

// Model radius <-> geodesic radius conversions, r = tanh(rho/2).
// Both use expm1/log1p so that tiny and large arguments round-trip.
double radius_from_rho(double rho);
double rho_from_radius(double r);

// Surface area of the unit (N-1)-sphere, 2 pi^{N/2} / Gamma(N/2).
double unit_sphere_area(int N);

// Density of the volume element in geodesic polar coordinates:
// unit_sphere_area(N) * sinh(rho)^{N-1}.
double volume_weight(int N, double rho);

// Volume of the geodesic ball of radius R, by quadrature of the weight.
double ball_volume(int N, double R);

// Monte Carlo estimate of the same volume: uniform Euclidean samples in
// the model ball of radius tanh(R/2), weighted by the metric density
// (2/(1-|x|^2))^N.  Chunked so the estimate is independent of thread
// count for a fixed seed.
double ball_volume_mc(int N, double R, std::uint64_t samples, std::uint64_t seed,
                      Exec exec = Exec::Par);

} // namespace hyplab
