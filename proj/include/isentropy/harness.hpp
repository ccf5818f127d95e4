#pragma once

#include "isentropy/contour_entropy.hpp"
#include "isentropy/noise.hpp"

#include <string>
#include <utility>
#include <vector>

namespace isentropy {

struct ReportRow {
    ModelKind kind;
    double isovalue = 0.0;
    double total_entropy = 0.0;
    double delta_from_baseline = 0.0; // total - baseline, signed
    double storage_values_per_vertex = 0.0;
    double fit_seconds = 0.0;
    double entropy_seconds = 0.0;
};

struct ComparisonReport {
    std::vector<ReportRow> rows; // baseline (full) rows first, then kinds in input order
    std::size_t member_count = 0;

    double baseline(double isovalue) const;
};

struct BinSweepResult {
    ModelFamily family = ModelFamily::histogram;
    double isovalue = 0.0;
    std::vector<std::pair<std::size_t, double>> points; // (B, total entropy)
    double baseline = 0.0;                              // full-distribution total
};

// One row per (kind, isovalue); the full-distribution baseline is prepended
// when absent. Each kind is fitted once and reused across isovalues.
ComparisonReport compare_models(const EnsembleField& field, std::vector<ModelKind> kinds,
                                std::span<const double> isovalues, int threads = 0);

BinSweepResult bin_sweep(const EnsembleField& field, ModelFamily family, double isovalue,
                         std::span<const std::size_t> bin_counts, int threads = 0);

// Two synthetic ensembles from one base member (gaussian- and uniform-noise),
// each compared across the given model kinds at one isovalue.
std::pair<ComparisonReport, ComparisonReport>
noise_experiment(std::span<const double> base, const GridDims& dims, double magnitude_gaussian,
                 double magnitude_uniform, std::size_t members, std::uint64_t seed, double isovalue,
                 std::vector<ModelKind> kinds, int threads = 0);

enum class ReportFormat { csv, text };

// CSV columns: model,B,isovalue,total_entropy_bits,delta_from_baseline,
// storage_values_per_vertex,fit_seconds,entropy_seconds. 6 significant
// digits, LF line endings. Timings render as 0 unless with_timings is set,
// keeping repeated runs byte-identical.
std::string emit_report(const ComparisonReport& report, ReportFormat format,
                        bool with_timings = false);
std::string emit_report(const BinSweepResult& sweep, ReportFormat format);

} // namespace isentropy
