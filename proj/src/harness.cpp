#include "isentropy/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <iomanip>

namespace isentropy {

double ComparisonReport::baseline(double isovalue) const {
    for (const auto& row : rows)
        if (row.kind.family == ModelFamily::full_empirical && row.isovalue == isovalue)
            return row.total_entropy;
    throw std::logic_error("no baseline row for isovalue");
}

ComparisonReport compare_models(const EnsembleField& field, std::vector<ModelKind> kinds,
                                std::span<const double> isovalues, int threads) {
    if (kinds.empty())
        throw std::invalid_argument("compare_models: empty kind list");
    if (isovalues.empty())
        throw std::invalid_argument("compare_models: empty isovalue list");

    const bool has_baseline = std::any_of(kinds.begin(), kinds.end(), [](const ModelKind& k) {
        return k.family == ModelFamily::full_empirical;
    });
    if (!has_baseline)
        kinds.insert(kinds.begin(), ModelKind{ModelFamily::full_empirical, 0});

    ComparisonReport report;
    report.member_count = field.member_count();
    for (const auto& kind : kinds) {
        const ModelField models = fit_model(field, kind, threads);
        for (double k : isovalues) {
            const EntropyField ef = entropy_field(models, k, threads);
            ReportRow row;
            row.kind = kind;
            row.isovalue = k;
            row.total_entropy = ef.total_entropy;
            row.storage_values_per_vertex =
                static_cast<double>(storage_cost(kind, field.member_count()));
            row.fit_seconds = models.fit_seconds;
            row.entropy_seconds = ef.entropy_seconds;
            report.rows.push_back(row);
        }
    }
    for (auto& row : report.rows)
        row.delta_from_baseline = row.total_entropy - report.baseline(row.isovalue);
    return report;
}

BinSweepResult bin_sweep(const EnsembleField& field, ModelFamily family, double isovalue,
                         std::span<const std::size_t> bin_counts, int threads) {
    if (family != ModelFamily::histogram && family != ModelFamily::quantile)
        throw std::invalid_argument("bin_sweep: model must be histogram or quantile");
    if (bin_counts.empty() || bin_counts.front() < 1 ||
        !std::is_sorted(bin_counts.begin(), bin_counts.end()) ||
        std::adjacent_find(bin_counts.begin(), bin_counts.end()) != bin_counts.end())
        throw std::invalid_argument("bin_sweep: bin counts must be strictly increasing, min >= 1");

    BinSweepResult result;
    result.family = family;
    result.isovalue = isovalue;
    {
        const ModelField baseline = fit_model(field, {ModelFamily::full_empirical, 0}, threads);
        result.baseline = entropy_field(baseline, isovalue, threads).total_entropy;
    }
    for (std::size_t b : bin_counts) {
        const ModelField models = fit_model(field, {family, b}, threads);
        result.points.emplace_back(b, entropy_field(models, isovalue, threads).total_entropy);
    }
    return result;
}

std::pair<ComparisonReport, ComparisonReport>
noise_experiment(std::span<const double> base, const GridDims& dims, double magnitude_gaussian,
                 double magnitude_uniform, std::size_t members, std::uint64_t seed, double isovalue,
                 std::vector<ModelKind> kinds, int threads) {
    const double ks[] = {isovalue};
    const EnsembleField gauss = inject_noise(
        base, dims, NoiseSpec{NoiseKind::gaussian, magnitude_gaussian, members, seed}, "gaussian-noise");
    const EnsembleField unif = inject_noise(
        base, dims, NoiseSpec{NoiseKind::uniform, magnitude_uniform, members, seed}, "uniform-noise");
    return {compare_models(gauss, kinds, ks, threads),
            compare_models(unif, kinds, ks, threads)};
}

namespace {

std::string sig6(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::string model_label(const ModelKind& kind) {
    std::string s = model_family_name(kind.family);
    if (kind.binned())
        s += ":" + std::to_string(kind.bins);
    return s;
}

} // namespace

std::string emit_report(const ComparisonReport& report, ReportFormat format, bool with_timings) {
    std::ostringstream out;
    const auto fit_s = [&](const ReportRow& r) { return with_timings ? r.fit_seconds : 0.0; };
    const auto ent_s = [&](const ReportRow& r) { return with_timings ? r.entropy_seconds : 0.0; };
    if (format == ReportFormat::csv) {
        out << "model,B,isovalue,total_entropy_bits,delta_from_baseline,"
               "storage_values_per_vertex,fit_seconds,entropy_seconds\n";
        for (const auto& r : report.rows) {
            out << model_family_name(r.kind.family) << ',';
            if (r.kind.binned())
                out << r.kind.bins;
            out << ',' << sig6(r.isovalue) << ',' << sig6(r.total_entropy) << ','
                << sig6(r.delta_from_baseline) << ',' << sig6(r.storage_values_per_vertex) << ','
                << sig6(fit_s(r)) << ',' << sig6(ent_s(r)) << '\n';
        }
    } else {
        out << std::left << std::setw(14) << "model" << std::right << std::setw(12) << "isovalue"
            << std::setw(16) << "entropy[bits]" << std::setw(12) << "delta" << std::setw(12)
            << "storage" << std::setw(12) << "fit[s]" << std::setw(12) << "entropy[s]" << '\n';
        for (const auto& r : report.rows)
            out << std::left << std::setw(14) << model_label(r.kind) << std::right << std::setw(12)
                << sig6(r.isovalue) << std::setw(16) << sig6(r.total_entropy) << std::setw(12)
                << sig6(r.delta_from_baseline) << std::setw(12)
                << sig6(r.storage_values_per_vertex) << std::setw(12) << sig6(fit_s(r))
                << std::setw(12) << sig6(ent_s(r)) << '\n';
    }
    return out.str();
}

std::string emit_report(const BinSweepResult& sweep, ReportFormat format) {
    std::ostringstream out;
    if (format == ReportFormat::csv) {
        out << "# model=" << model_family_name(sweep.family) << " isovalue=" << sig6(sweep.isovalue)
            << " baseline=" << sig6(sweep.baseline) << '\n';
        out << "B,total_entropy_bits\n";
        for (const auto& [b, total] : sweep.points)
            out << b << ',' << sig6(total) << '\n';
    } else {
        out << model_family_name(sweep.family) << " sweep at isovalue " << sig6(sweep.isovalue)
            << " (baseline " << sig6(sweep.baseline) << ")\n";
        for (const auto& [b, total] : sweep.points)
            out << std::setw(8) << b << std::setw(16) << sig6(total) << '\n';
    }
    return out.str();
}

} // namespace isentropy
