#include "isentropy/ensemble_io.hpp"
#include "isentropy/harness.hpp"
#include "isentropy/pgm.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace isentropy;

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

std::vector<double> parse_doubles(const std::string& s, const char* what) {
    std::vector<double> out;
    for (const auto& tok : split_list(s)) {
        std::size_t pos = 0;
        double v = std::stod(tok, &pos);
        if (pos != tok.size())
            throw CLI::ValidationError(std::string("bad ") + what + " value: " + tok);
        out.push_back(v);
    }
    if (out.empty())
        throw CLI::ValidationError(std::string("empty ") + what + " list");
    return out;
}

std::vector<std::size_t> parse_bins(const std::string& s) {
    std::vector<std::size_t> out;
    for (const auto& tok : split_list(s)) {
        std::size_t pos = 0;
        unsigned long v = std::stoul(tok, &pos);
        if (pos != tok.size() || v < 1)
            throw CLI::ValidationError("bad bin count: " + tok);
        out.push_back(v);
    }
    if (out.empty())
        throw CLI::ValidationError("empty bin list");
    return out;
}

std::vector<ModelKind> parse_models(const std::string& s) {
    std::vector<ModelKind> out;
    for (const auto& tok : split_list(s))
        out.push_back(parse_model_kind(tok));
    if (out.empty())
        throw CLI::ValidationError("empty model list");
    return out;
}

std::size_t parse_slice_index(const std::string& s) {
    if (s.rfind("z=", 0) != 0)
        throw CLI::ValidationError("slice must be given as z=<index>");
    return std::stoul(s.substr(2));
}

double resolve_magnitude(double magnitude, double relative, std::span<const double> base) {
    if (magnitude > 0.0 && relative > 0.0)
        throw CLI::ValidationError("--magnitude and --magnitude-relative are exclusive");
    if (magnitude > 0.0)
        return magnitude;
    if (relative > 0.0) {
        const auto [lo, hi] = std::minmax_element(base.begin(), base.end());
        return relative * (*hi - *lo);
    }
    throw CLI::ValidationError("one of --magnitude or --magnitude-relative is required");
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write output: " + path.string());
    out << content;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Level-set uncertainty entropy for ensemble scalar fields"};
    app.require_subcommand(1);

    std::string manifest, out_path, models_str, bins_str = "1,2,3,5,10,20,50,100,200,500,1000";
    std::string model_str, isovalues_str, noise_str, slice_str, format_str = "csv";
    double isovalue = 0.0, magnitude = 0.0, magnitude_rel = 0.0, max_bits = 0.0;
    std::size_t members = 50, stride = 2;
    std::uint64_t seed = 0;
    int threads = 0;
    bool timing_strict = false, with_timings = false;

    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--threads", threads, "worker threads, 0 = auto")
            ->envname("ISENTROPY_THREADS");
        cmd->add_flag("--timing-strict", timing_strict, "force serial execution for clean timings");
    };

    auto* info = app.add_subcommand("info", "print ensemble summary");
    info->add_option("--manifest", manifest)->required();

    auto* slice = app.add_subcommand("slice", "extract one z plane of a 3D ensemble");
    slice->add_option("--manifest", manifest)->required();
    slice->add_option("--slice", slice_str, "z=<index>")->required();
    slice->add_option("--out", out_path, "output manifest path")->required();

    auto* sub = app.add_subcommand("subsample", "decimate each axis by a stride");
    sub->add_option("--manifest", manifest)->required();
    sub->add_option("--stride", stride)->required();
    sub->add_option("--out", out_path, "output manifest path")->required();

    auto* noisify = app.add_subcommand("noisify",
                                       "build a synthetic ensemble from the first member");
    noisify->add_option("--manifest", manifest)->required();
    noisify->add_option("--noise", noise_str, "gaussian|uniform")->required()
        ->check(CLI::IsMember({"gaussian", "uniform"}));
    noisify->add_option("--magnitude", magnitude, "noise scale in data units");
    noisify->add_option("--magnitude-relative", magnitude_rel,
                        "noise scale as a fraction of the base member range");
    noisify->add_option("--members", members);
    noisify->add_option("--seed", seed);
    noisify->add_option("--out", out_path, "output manifest path")->required();

    auto* entropy = app.add_subcommand("entropy", "entropy field for one model and isovalue");
    entropy->add_option("--manifest", manifest)->required();
    entropy->add_option("--model", model_str)->required();
    entropy->add_option("--isovalue", isovalue)->required();
    entropy->add_option("--slice", slice_str, "z=<index>, evaluate one 2D plane");
    entropy->add_option("--out", out_path, "entropy field .f32 path (sidecar at <out>.json)");
    add_common(entropy);

    auto* compare = app.add_subcommand("compare", "model comparison table against the baseline");
    compare->add_option("--manifest", manifest)->required();
    compare->add_option("--models", models_str, "e.g. uniform,gaussian,histogram:5,quantile:5")
        ->required();
    compare->add_option("--isovalues", isovalues_str)->required();
    compare->add_option("--format", format_str)->check(CLI::IsMember({"csv", "text"}));
    compare->add_option("--out", out_path, "write report here instead of stdout");
    compare->add_flag("--timing", with_timings, "include wall-clock timings in the report");
    add_common(compare);

    auto* binsweep = app.add_subcommand("binsweep", "entropy across bin counts");
    binsweep->add_option("--manifest", manifest)->required();
    binsweep->add_option("--model", model_str, "histogram or quantile")->required();
    binsweep->add_option("--isovalue", isovalue)->required();
    binsweep->add_option("--bins", bins_str, "comma list, default 1..1000 log-spaced");
    binsweep->add_option("--format", format_str)->check(CLI::IsMember({"csv", "text"}));
    binsweep->add_option("--out", out_path);
    add_common(binsweep);

    auto* noisetest = app.add_subcommand(
        "noisetest", "gaussian- and uniform-noise model comparison from the first member");
    noisetest->add_option("--manifest", manifest)->required();
    noisetest->add_option("--models", models_str)->required();
    noisetest->add_option("--isovalue", isovalue)->required();
    noisetest->add_option("--magnitude", magnitude);
    noisetest->add_option("--magnitude-relative", magnitude_rel);
    noisetest->add_option("--members", members);
    noisetest->add_option("--seed", seed);
    noisetest->add_option("--out", out_path, "prefix; writes <out>.gaussian.csv and <out>.uniform.csv")
        ->required();
    add_common(noisetest);

    auto* render = app.add_subcommand("render", "grayscale PGM image of an entropy field");
    render->add_option("--field", manifest, "entropy field .f32 path (with <path>.json sidecar)")
        ->required();
    render->add_option("--slice", slice_str, "z=<index>, required for 3D fields");
    render->add_option("--max-bits", max_bits, "white point; default 4 (2D) / 8 (3D)");
    render->add_option("--out", out_path, "output .pgm path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    if (timing_strict)
        threads = 1;

    // Validate flag syntax (model names, numeric lists, slice spec) before touching
    // any input data, so malformed invocations exit 2 without side effects.
    std::vector<ModelKind> model_list;
    std::vector<double> isovalue_list;
    std::vector<std::size_t> bin_list;
    ModelKind single_kind{};
    ModelFamily sweep_family{};
    std::size_t slice_index = 0;
    try {
        if (*compare || *noisetest)
            model_list = parse_models(models_str);
        if (*compare)
            isovalue_list = parse_doubles(isovalues_str, "isovalue");
        if (*entropy)
            single_kind = parse_model_kind(model_str);
        if (*binsweep) {
            sweep_family = parse_model_kind(model_str.substr(0, model_str.find(':')) + ":1").family;
            if (sweep_family != ModelFamily::histogram && sweep_family != ModelFamily::quantile)
                throw CLI::ValidationError("--model must be histogram or quantile");
            bin_list = parse_bins(bins_str);
        }
        if (!slice_str.empty())
            slice_index = parse_slice_index(slice_str);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*info) {
            const auto field = load_ensemble(manifest);
            double lo = field.members[0][0], hi = lo;
            for (const auto& m : field.members)
                for (double v : m) {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            std::printf("name: %s\ndims: %zu x %zu x %zu\nmembers: %zu\nrange: [%g, %g]\n",
                        field.name.c_str(), field.dims.nx, field.dims.ny, field.dims.nz,
                        field.member_count(), lo, hi);
        } else if (*slice) {
            write_ensemble(slice_z(load_ensemble(manifest), slice_index), out_path);
        } else if (*sub) {
            write_ensemble(subsample(load_ensemble(manifest), stride), out_path);
        } else if (*noisify) {
            const auto field = load_ensemble(manifest);
            NoiseSpec spec;
            spec.kind = noise_str == "gaussian" ? NoiseKind::gaussian : NoiseKind::uniform;
            spec.magnitude = resolve_magnitude(magnitude, magnitude_rel, field.members[0]);
            spec.member_count = members;
            spec.seed = seed;
            write_ensemble(inject_noise(field.members[0], field.dims, spec,
                                        field.name + "_" + noise_str),
                           out_path);
        } else if (*entropy) {
            auto field = load_ensemble(manifest);
            if (!slice_str.empty())
                field = slice_z(field, slice_index);
            const auto models = fit_model(field, single_kind, threads);
            const auto ef = entropy_field(models, isovalue, threads);
            std::printf("%.17g\n", ef.total_entropy);
            if (!out_path.empty())
                write_entropy_field(ef, out_path);
        } else if (*compare) {
            const auto field = load_ensemble(manifest);
            const auto report = compare_models(field, model_list, isovalue_list, threads);
            const auto text = emit_report(
                report, format_str == "csv" ? ReportFormat::csv : ReportFormat::text, with_timings);
            if (out_path.empty())
                std::cout << text;
            else
                write_text_file(out_path, text);
        } else if (*binsweep) {
            const auto field = load_ensemble(manifest);
            const auto result = bin_sweep(field, sweep_family, isovalue, bin_list, threads);
            const auto text = emit_report(
                result, format_str == "csv" ? ReportFormat::csv : ReportFormat::text);
            if (out_path.empty())
                std::cout << text;
            else
                write_text_file(out_path, text);
        } else if (*noisetest) {
            const auto field = load_ensemble(manifest);
            const double mag = resolve_magnitude(magnitude, magnitude_rel, field.members[0]);
            const auto [gauss, unif] =
                noise_experiment(field.members[0], field.dims, mag, mag, members, seed, isovalue,
                                 model_list, threads);
            write_text_file(out_path + ".gaussian.csv", emit_report(gauss, ReportFormat::csv));
            write_text_file(out_path + ".uniform.csv", emit_report(unif, ReportFormat::csv));
        } else if (*render) {
            auto field = load_entropy_field(manifest);
            if (field.cell_dims.nz > 1) {
                if (slice_str.empty())
                    throw std::runtime_error("3D entropy field needs --slice z=<index>");
                const std::size_t z = slice_index;
                if (z >= field.cell_dims.nz)
                    throw std::runtime_error("slice index out of range");
                const std::size_t plane = field.cell_dims.nx * field.cell_dims.ny;
                field.cell_entropy.assign(field.cell_entropy.begin() + z * plane,
                                          field.cell_entropy.begin() + (z + 1) * plane);
                if (max_bits <= 0.0)
                    max_bits = 8.0;
                field.cell_dims.nz = 1;
            }
            if (max_bits <= 0.0)
                max_bits = 4.0;
            render_entropy_map(field, out_path, max_bits);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
