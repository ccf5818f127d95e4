#pragma once

#include "isentropy/grid.hpp"
#include "isentropy/noise.hpp"

#include <cmath>
#include <span>
#include <vector>

// Test-only oracles, coded independently of the library kernels.
namespace oracle {

// Naive 2^n * n product enumeration of the sign-configuration distribution.
inline std::vector<double> case_probs(std::span<const double> d_plus) {
    const std::size_t n = d_plus.size();
    std::vector<double> probs(std::size_t{1} << n);
    for (std::size_t c = 0; c < probs.size(); ++c) {
        double p = 1.0;
        for (std::size_t v = 0; v < n; ++v)
            p *= (c >> v) & 1 ? d_plus[v] : 1.0 - d_plus[v];
        probs[c] = p;
    }
    return probs;
}

inline double entropy_bits(std::span<const double> probs) {
    double e = 0.0;
    for (double p : probs)
        if (p > 0.0)
            e -= p * (std::log(p) / std::log(2.0));
    return e;
}

// Piecewise-constant density segment: total mass spread over [lo, hi]
// (an atom when lo == hi).
struct Segment {
    double lo, hi, mass;
};

// Midpoint-rule integration of the density above k; atoms counted when
// k <= their location. Accuracy ~ mass/steps per straddled segment.
inline double prob_above_by_integration(std::span<const Segment> segments, double k,
                                        std::size_t steps = 200000) {
    double above = 0.0;
    for (const auto& s : segments) {
        if (s.hi <= s.lo) {
            if (k <= s.lo)
                above += s.mass;
            continue;
        }
        const double dx = (s.hi - s.lo) / static_cast<double>(steps);
        const double density = s.mass / (s.hi - s.lo);
        for (std::size_t i = 0; i < steps; ++i) {
            const double x = s.lo + (static_cast<double>(i) + 0.5) * dx;
            if (x >= k)
                above += density * dx;
        }
    }
    return above;
}

// High-precision standard normal CDF reference (glibc long double erfc).
inline double normal_cdf_ref(double x) {
    return static_cast<double>(0.5L * erfcl(-static_cast<long double>(x) /
                                            1.41421356237309504880168872420969808L));
}

} // namespace oracle

namespace testutil {

// seeded synthetic ensemble: smooth base + per-member gaussian perturbation
inline isentropy::EnsembleField synthetic_ensemble(std::size_t nx, std::size_t ny, std::size_t nz,
                                                   std::size_t members, std::uint64_t seed,
                                                   double noise_sigma = 0.15) {
    isentropy::GridDims dims{nx, ny, nz};
    std::vector<double> base(dims.vertex_count());
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t x = 0; x < nx; ++x)
                base[dims.index(x, y, z)] =
                    std::sin(0.37 * static_cast<double>(x)) * std::cos(0.23 * static_cast<double>(y)) +
                    0.1 * static_cast<double>(z);
    return isentropy::inject_noise(
        base, dims, {isentropy::NoiseKind::gaussian, noise_sigma, members, seed}, "synthetic");
}

inline isentropy::EnsembleField constant_ensemble(std::size_t nx, std::size_t ny, std::size_t nz,
                                                  std::size_t members, double value) {
    isentropy::EnsembleField f;
    f.dims = {nx, ny, nz};
    f.name = "constant";
    f.members.assign(members, std::vector<double>(f.dims.vertex_count(), value));
    return f;
}

// identical members, smooth spatial variation
inline isentropy::EnsembleField deterministic_ensemble(std::size_t nx, std::size_t ny,
                                                       std::size_t nz, std::size_t members) {
    isentropy::EnsembleField f;
    f.dims = {nx, ny, nz};
    f.name = "deterministic";
    std::vector<double> base(f.dims.vertex_count());
    for (std::size_t z = 0; z < nz; ++z)
        for (std::size_t y = 0; y < ny; ++y)
            for (std::size_t x = 0; x < nx; ++x)
                base[f.dims.index(x, y, z)] =
                    std::sin(0.41 * static_cast<double>(x + y)) + 0.05 * static_cast<double>(z);
    f.members.assign(members, base);
    return f;
}

} // namespace testutil
