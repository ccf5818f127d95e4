#include "isentropy/noise.hpp"

#include <cmath>
#include <numbers>

namespace isentropy {

std::uint64_t derive_stream_seed(std::uint64_t seed, std::uint64_t stream) {
    SplitMix64 g(seed ^ (0x9e3779b97f4a7c15ULL * (stream + 1)));
    g.next();
    return g.next();
}

namespace {

// Box-Muller, one standard normal per call (the sine half is discarded so
// each vertex costs exactly two raw draws regardless of consumer order).
double draw_standard_normal(SplitMix64& g) {
    const double u1 = g.next_unit();
    const double u2 = g.next_unit();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace

EnsembleField inject_noise(std::span<const double> base, const GridDims& dims,
                           const NoiseSpec& spec, const std::string& name) {
    spec.validate();
    dims.validate();
    if (base.size() != dims.vertex_count())
        throw std::invalid_argument("inject_noise: base size does not match dims");
    for (double v : base)
        if (!std::isfinite(v))
            throw std::invalid_argument("inject_noise: base contains non-finite values");

    EnsembleField out;
    out.dims = dims;
    out.name = name;
    out.members.resize(spec.member_count);
    for (std::size_t m = 0; m < spec.member_count; ++m) {
        SplitMix64 g(derive_stream_seed(spec.seed, m));
        auto& vals = out.members[m];
        vals.resize(base.size());
        if (spec.kind == NoiseKind::gaussian) {
            for (std::size_t i = 0; i < base.size(); ++i)
                vals[i] = base[i] + spec.magnitude * draw_standard_normal(g);
        } else {
            for (std::size_t i = 0; i < base.size(); ++i)
                vals[i] = base[i] + spec.magnitude * (2.0 * g.next_unit() - 1.0);
        }
    }
    return out;
}

} // namespace isentropy
