#pragma once

#include "isentropy/models.hpp"

#include <array>
#include <filesystem>
#include <span>

namespace isentropy {

// Probability of each cell sign configuration c, bit v of c set iff local
// vertex v classifies >= k. Local vertex order is x-fastest:
// v = (dz*2 + dy)*2 + dx.
struct CaseDistribution {
    std::array<double, 256> probs{};
    std::size_t case_count = 0; // 16 in 2D, 256 in 3D

    std::span<const double> span() const { return {probs.data(), case_count}; }
};

// Independent-vertex product rule, evaluated by incremental tensor-product
// expansion (one doubling pass per vertex instead of 2^n * n naive products).
CaseDistribution cell_case_distribution(std::span<const double> d_plus);

// Shannon entropy in bits; zero-probability terms are skipped.
double cell_entropy(std::span<const double> probs);

struct EntropyField {
    GridDims cell_dims; // cells, not vertices (nz = 1 for 2D)
    double isovalue = 0.0;
    ModelKind kind;
    std::vector<double> cell_entropy;
    double total_entropy = 0.0;
    double entropy_seconds = 0.0;
};

// D+ is evaluated once per vertex and shared by adjacent cells; the total is
// a compensated sum in a fixed order, so it is independent of thread count.
EntropyField entropy_field(const ModelField& models, double isovalue, int threads = 0);

// One fit, reused across every isovalue.
std::vector<EntropyField> entropy_field_sweep(const EnsembleField& field, const ModelKind& kind,
                                              std::span<const double> isovalues, int threads = 0);

// Raw little-endian float32 cell array plus a JSON sidecar at <path>.json.
void write_entropy_field(const EntropyField& field, const std::filesystem::path& path);
EntropyField load_entropy_field(const std::filesystem::path& path);

} // namespace isentropy
