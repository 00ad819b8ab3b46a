#pragma once
#include <cstddef>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hyplab {

// Every data-parallel kernel in this library takes an execution policy.
// Serial is the reference path used by the comparison tests; Par uses
// OpenMP when compiled in and silently degrades to serial otherwise.
// Both paths are bit-identical by construction: parallel loops write to
// disjoint indices, and reductions accumulate fixed-size chunks in a
// fixed order.
enum class Exec { Serial, Par };

inline int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Index-mapped parallel loop: body(i) must only touch state owned by i.
template <class F>
void par_for(Exec exec, std::size_t n, F&& body) {
    if (exec == Exec::Par) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
        for (long long i = 0; i < (long long)n; ++i) body((std::size_t)i);
        return;
#endif
    }
    for (std::size_t i = 0; i < n; ++i) body(i);
}

// Deterministic sum of f(0..n-1).  Chunk partials are computed in
// parallel but combined serially in chunk order, so the result does not
// depend on the thread count and matches the Serial path exactly.
template <class F>
double par_sum(Exec exec, std::size_t n, F&& f) {
    constexpr std::size_t chunk = 1024;
    const std::size_t nchunks = (n + chunk - 1) / chunk;
    std::vector<double> partial(nchunks, 0.0);
    par_for(exec, nchunks, [&](std::size_t c) {
        const std::size_t lo = c * chunk;
        const std::size_t hi = lo + chunk < n ? lo + chunk : n;
        double s = 0.0;
        for (std::size_t i = lo; i < hi; ++i) s += f(i);
        partial[c] = s;
    });
    double total = 0.0;
    for (double s : partial) total += s;
    return total;
}

} // namespace hyplab
