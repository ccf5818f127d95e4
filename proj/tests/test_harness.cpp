#include "isentropy/harness.hpp"

#include "support.hpp"

#include <doctest.h>

#include <sstream>

using namespace isentropy;

namespace {

const std::vector<ModelKind> kFourKinds = {{ModelFamily::uniform, 0},
                                           {ModelFamily::gaussian, 0},
                                           {ModelFamily::histogram, 5},
                                           {ModelFamily::quantile, 5}};

} // namespace

TEST_CASE("compare_models: baseline prepended, deltas exact, storage per formula") {
    const auto field = testutil::synthetic_ensemble(12, 12, 1, 10, 17);
    const double ks[] = {0.0, 0.3};
    const auto report = compare_models(field, kFourKinds, ks);
    REQUIRE(report.rows.size() == 10); // (baseline + 4 kinds) x 2 isovalues

    for (const auto& row : report.rows) {
        if (row.kind.family == ModelFamily::full_empirical)
            CHECK(row.delta_from_baseline == 0.0);
        else
            CHECK(row.delta_from_baseline == row.total_entropy - report.baseline(row.isovalue));
        CHECK(row.storage_values_per_vertex ==
              static_cast<double>(storage_cost(row.kind, field.member_count())));
    }
    CHECK(report.rows[0].kind.family == ModelFamily::full_empirical);
}

TEST_CASE("compare_models: deterministic ensemble gives all-zero totals") {
    const auto field = testutil::deterministic_ensemble(8, 8, 1, 6);
    const double ks[] = {-0.5, 0.2};
    const auto report = compare_models(field, kFourKinds, ks);
    for (const auto& row : report.rows) {
        CHECK(row.total_entropy == 0.0);
        CHECK(row.delta_from_baseline == 0.0);
    }
}

TEST_CASE("compare_models: gaussian model beats uniform on gaussian-noise data") {
    const auto field = testutil::synthetic_ensemble(24, 24, 1, 30, 3, 0.2);
    const double ks[] = {0.1};
    const auto report = compare_models(
        field, {{ModelFamily::gaussian, 0}, {ModelFamily::uniform, 0}}, ks);
    double dg = 0.0, du = 0.0;
    for (const auto& row : report.rows) {
        if (row.kind.family == ModelFamily::gaussian)
            dg = std::fabs(row.delta_from_baseline);
        if (row.kind.family == ModelFamily::uniform)
            du = std::fabs(row.delta_from_baseline);
    }
    CHECK(dg < du);
}

TEST_CASE("emit_report: CSV shape and byte determinism") {
    const auto field = testutil::synthetic_ensemble(10, 10, 1, 8, 23);
    const double ks[] = {0.25};
    const auto r1 = compare_models(field, {{ModelFamily::uniform, 0}}, ks);
    const auto r2 = compare_models(field, {{ModelFamily::uniform, 0}}, ks);
    const auto csv1 = emit_report(r1, ReportFormat::csv);
    const auto csv2 = emit_report(r2, ReportFormat::csv);
    CHECK(csv1 == csv2);

    std::istringstream in(csv1);
    std::string line;
    std::getline(in, line);
    CHECK(line == "model,B,isovalue,total_entropy_bits,delta_from_baseline,"
                  "storage_values_per_vertex,fit_seconds,entropy_seconds");
    int rows = 0;
    while (std::getline(in, line))
        ++rows;
    CHECK(rows == 2); // baseline + uniform

    // timings are zeroed unless requested
    CHECK(csv1.find(",0,0\n") != std::string::npos);
    const auto text = emit_report(r1, ReportFormat::text);
    CHECK(text.find("uniform") != std::string::npos);
}

TEST_CASE("bin_sweep: first point of a 1-start sweep equals the uniform model") {
    const auto field = testutil::synthetic_ensemble(10, 10, 1, 12, 40);
    const double k = 0.2;
    const std::size_t bins[] = {1, 2, 5};
    const auto uniform_total =
        entropy_field(fit_model(field, {ModelFamily::uniform, 0}), k).total_entropy;
    for (auto family : {ModelFamily::histogram, ModelFamily::quantile}) {
        const auto sweep = bin_sweep(field, family, k, bins);
        REQUIRE(sweep.points.size() == 3);
        CHECK(sweep.points[0].first == 1);
        CHECK(std::fabs(sweep.points[0].second - uniform_total) <= 1e-12);
    }
}

TEST_CASE("bin_sweep: quantile converges toward the full-distribution baseline") {
    GridDims dims{32, 32, 1};
    const std::vector<double> base(dims.vertex_count(), 0.0);
    NoiseSpec spec;
    spec.kind = NoiseKind::gaussian;
    spec.magnitude = 1.0;
    spec.member_count = 50;
    spec.seed = 12;
    const auto field = inject_noise(base, dims, spec);
    const std::size_t bins[] = {1, 2, 5, 10, 50, 100};
    const auto sweep = bin_sweep(field, ModelFamily::quantile, 0.0, bins);
    const double last_err = std::fabs(sweep.points.back().second - sweep.baseline);
    CHECK(last_err <= 0.01 * std::fabs(sweep.baseline));
}

TEST_CASE("bin_sweep: input validation") {
    const auto field = testutil::synthetic_ensemble(6, 6, 1, 4, 2);
    const std::size_t unsorted[] = {5, 2};
    CHECK_THROWS_AS(static_cast<void>(bin_sweep(field, ModelFamily::histogram, 0.0, unsorted)),
                    std::invalid_argument);
    CHECK_THROWS_AS(static_cast<void>(bin_sweep(field, ModelFamily::gaussian, 0.0,
                                                std::vector<std::size_t>{1})),
                    std::invalid_argument);
    const auto sweep =
        bin_sweep(field, ModelFamily::histogram, 0.0, std::vector<std::size_t>{1, 3});
    const auto csv = emit_report(sweep, ReportFormat::csv);
    CHECK(csv.find("# model=histogram") != std::string::npos);
    CHECK(csv.find("B,total_entropy_bits") != std::string::npos);
}

TEST_CASE("noise_experiment: near-zero magnitude on a smooth base gives zero totals") {
    GridDims dims{8, 8, 1};
    std::vector<double> base(dims.vertex_count());
    for (std::size_t i = 0; i < base.size(); ++i)
        base[i] = static_cast<double>(i % 7);
    const auto [gauss, unif] =
        noise_experiment(base, dims, 1e-13, 1e-13, 10, 0, 3.5, kFourKinds);
    for (const auto& row : gauss.rows)
        CHECK(row.total_entropy == 0.0);
    for (const auto& row : unif.rows)
        CHECK(row.total_entropy == 0.0);
}

TEST_CASE("noise_experiment: matching model wins across seeds") {
    GridDims dims{16, 16, 1};
    std::vector<double> base(dims.vertex_count());
    for (std::size_t y = 0; y < 16; ++y)
        for (std::size_t x = 0; x < 16; ++x)
            base[dims.index(x, y, 0)] = std::sin(0.5 * static_cast<double>(x)) +
                                        std::cos(0.4 * static_cast<double>(y));
    int gauss_wins = 0;
    int unif_wins = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto [gauss, unif] = noise_experiment(
            base, dims, 0.3, 0.3, 50, seed, 0.2,
            {{ModelFamily::uniform, 0}, {ModelFamily::gaussian, 0}});
        const auto abs_delta = [](const ComparisonReport& r, ModelFamily f) {
            for (const auto& row : r.rows)
                if (row.kind.family == f)
                    return std::fabs(row.delta_from_baseline);
            return -1.0;
        };
        if (abs_delta(gauss, ModelFamily::gaussian) < abs_delta(gauss, ModelFamily::uniform))
            ++gauss_wins;
        if (abs_delta(unif, ModelFamily::uniform) < abs_delta(unif, ModelFamily::gaussian))
            ++unif_wins;
    }
    CHECK(gauss_wins >= 9);
    CHECK(unif_wins >= 9);
}
