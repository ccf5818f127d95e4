#pragma once

#include "isentropy/grid.hpp"

#include <cstdint>
#include <span>

namespace isentropy {

enum class NoiseKind { gaussian, uniform };

// magnitude: standard deviation for gaussian, half-width for uniform
struct NoiseSpec {
    NoiseKind kind = NoiseKind::gaussian;
    double magnitude = 0.0;
    std::size_t member_count = 0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(magnitude > 0.0))
            throw std::invalid_argument("noise magnitude must be > 0");
        if (member_count < 2)
            throw std::invalid_argument("noise member count must be >= 2");
    }
};

// splitmix64, the per-member stream generator. Member m draws from a
// sub-stream keyed on (seed, m), so ensembles are bitwise reproducible
// across platforms and thread counts.
struct SplitMix64 {
    std::uint64_t state;

    explicit SplitMix64(std::uint64_t s) : state(s) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // uniform in (0, 1]
    double next_unit() { return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53; }
};

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream);

// base + i.i.d. per-vertex noise, one member per sub-stream.
EnsembleField inject_noise(std::span<const double> base, const GridDims& dims,
                           const NoiseSpec& spec, const std::string& name = "noise");

} // namespace isentropy
