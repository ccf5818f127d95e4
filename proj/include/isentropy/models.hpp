#pragma once

#include "isentropy/grid.hpp"

#include <filesystem>
#include <span>
#include <string>

namespace isentropy {

enum class ModelFamily { full_empirical, uniform, gaussian, histogram, quantile };

struct ModelKind {
    ModelFamily family = ModelFamily::full_empirical;
    std::size_t bins = 0; // histogram/quantile only

    bool binned() const {
        return family == ModelFamily::histogram || family == ModelFamily::quantile;
    }
    void validate() const {
        if (binned() && bins < 1)
            throw std::invalid_argument("bin count must be >= 1");
    }
    bool operator==(const ModelKind&) const = default;
};

// "uniform", "gaussian", "full", "histogram:B", "quantile:B"
ModelKind parse_model_kind(const std::string& s);
std::string model_family_name(ModelFamily family);

// Scalar values stored per vertex:
//   full      M      sorted sample values
//   uniform   2      min, max
//   gaussian  2      mean, sigma (sigma uses the M-1 divisor)
//   histogram B+2    lo, hi, then B masses summing to 1
//   quantile  B+1    non-decreasing breakpoints, q0 = min, qB = max
std::size_t storage_cost(const ModelKind& kind, std::size_t member_count);

// One fitted distribution model per grid vertex, stored as a flat
// float64 array with storage_cost() values per vertex.
struct ModelField {
    GridDims dims;
    ModelKind kind;
    std::size_t member_count = 0;
    std::vector<double> payload;
    double fit_seconds = 0.0;

    std::size_t stride() const { return storage_cost(kind, member_count); }
    std::span<const double> vertex_model(std::size_t v) const {
        return {payload.data() + v * stride(), stride()};
    }
};

ModelField fit_model(const EnsembleField& field, const ModelKind& kind, int threads = 0);

// Pr(D >= k) under one vertex model; samples equal to k count as >= k.
double sign_prob_above(const ModelKind& kind, std::span<const double> model, double k);

// Fit-once, query-many serialization: manifest JSON + one raw little-endian
// float32 payload file, mirroring the ensemble format.
void write_model_field(const ModelField& field, const std::filesystem::path& manifest_path);
ModelField load_model_field(const std::filesystem::path& manifest_path);

} // namespace isentropy
