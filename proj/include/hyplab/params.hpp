#pragma once
#include <cmath>
#include <string>

#include "hyplab/errors.hpp"

namespace hyplab {

// Parameter block for the perturbed scalar-field equation on hyperbolic
// N-space:
//
//   \Delta u + lambda*u + |u|^{p-1} u + theta * u * ln(u^2) = 0
//
// where \Delta is the radial hyperbolic Laplacian.  The admissible
// exponent range for p depends on the dimension: subcritical-to-critical
// for N >= 3, anything > 1 for N = 2.
struct ProblemParams {
    int N = 3;
    double lambda = 0.0;
    double theta = 1.0;
    double p = 3.0;

    void validate() const {
        if (N < 2) throw ConfigError("ProblemParams: N must be >= 2, got " + std::to_string(N));
        if (!std::isfinite(lambda) || !std::isfinite(theta) || !std::isfinite(p))
            throw ConfigError("ProblemParams: non-finite parameter");
        if (N >= 3) {
            const double pc = critical_p();
            if (!(p > 1.0 && p <= pc + 1e-12))
                throw ConfigError("ProblemParams: need 1 < p <= (N+2)/(N-2) for N >= 3");
        } else {
            if (!(p > 1.0)) throw ConfigError("ProblemParams: need p > 1 for N = 2");
        }
    }

    // (N+2)/(N-2), the critical power, i.e. 2*-1 where 2* = 2N/(N-2).
    double critical_p() const {
        return double(N + 2) / double(N - 2);
    }

    // Bottom of the L2 spectrum of the hyperbolic Laplacian, (N-1)^2/4.
    double lambda1() const {
        return 0.25 * double(N - 1) * double(N - 1);
    }
};

// 2N/(N-2), the Sobolev-critical integrability exponent (N >= 3).
inline double critical_exponent(int N) {
    if (N < 3) throw ConfigError("critical_exponent: needs N >= 3");
    return 2.0 * N / (N - 2.0);
}

} // namespace hyplab
