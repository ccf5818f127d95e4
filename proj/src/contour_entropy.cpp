#include "isentropy/contour_entropy.hpp"

#include "isentropy/parallel.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>

namespace isentropy {

using nlohmann::json;

CaseDistribution cell_case_distribution(std::span<const double> d_plus) {
    if (d_plus.size() != 4 && d_plus.size() != 8)
        throw std::invalid_argument("cell_case_distribution expects 4 or 8 vertex probabilities");
    for (double p : d_plus)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("vertex probability outside [0,1]");

    CaseDistribution dist;
    dist.case_count = std::size_t{1} << d_plus.size();
    dist.probs[0] = 1.0;
    std::size_t n = 1;
    for (double p : d_plus) {
        const double q = 1.0 - p;
        for (std::size_t c = 0; c < n; ++c) {
            const double base = dist.probs[c];
            dist.probs[c + n] = base * p;
            dist.probs[c] = base * q;
        }
        n *= 2;
    }
    return dist;
}

double cell_entropy(std::span<const double> probs) {
    double e = 0.0;
    for (double p : probs)
        if (p > 0.0)
            e -= p * std::log2(p);
    return e;
}

namespace {

double entropy_2d_cell(const double* dp, const std::size_t* offs) {
    double local[4];
    bool certain = true;
    for (int v = 0; v < 4; ++v) {
        local[v] = dp[offs[v]];
        certain = certain && (local[v] == 0.0 || local[v] == 1.0);
    }
    if (certain)
        return 0.0;
    double probs[16];
    probs[0] = 1.0;
    std::size_t n = 1;
    for (int v = 0; v < 4; ++v) {
        const double p = local[v];
        const double q = 1.0 - p;
        for (std::size_t c = 0; c < n; ++c) {
            const double base = probs[c];
            probs[c + n] = base * p;
            probs[c] = base * q;
        }
        n *= 2;
    }
    return cell_entropy({probs, 16});
}

double entropy_3d_cell(const double* dp, const std::size_t* offs) {
    double local[8];
    bool certain = true;
    for (int v = 0; v < 8; ++v) {
        local[v] = dp[offs[v]];
        certain = certain && (local[v] == 0.0 || local[v] == 1.0);
    }
    if (certain)
        return 0.0;
    double probs[256];
    probs[0] = 1.0;
    std::size_t n = 1;
    for (int v = 0; v < 8; ++v) {
        const double p = local[v];
        const double q = 1.0 - p;
        for (std::size_t c = 0; c < n; ++c) {
            const double base = probs[c];
            probs[c + n] = base * p;
            probs[c] = base * q;
        }
        n *= 2;
    }
    return cell_entropy({probs, 256});
}

// Kahan sum in cell-index order; totals are reproducible across thread counts.
double compensated_total(std::span<const double> values) {
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double y = v - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

} // namespace

EntropyField entropy_field(const ModelField& models, double isovalue, int threads) {
    const auto t0 = std::chrono::steady_clock::now();
    const GridDims& d = models.dims;
    if (d.cell_count() < 1)
        throw std::invalid_argument("entropy_field: grid has no cells");

    const std::size_t nv = d.vertex_count();
    std::vector<double> dplus(nv);
    parallel_for(nv, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t v = begin; v < end; ++v)
            dplus[v] = sign_prob_above(models.kind, models.vertex_model(v), isovalue);
    });

    EntropyField out;
    out.cell_dims = GridDims{d.cell_nx(), d.cell_ny(), d.cell_nz()};
    out.isovalue = isovalue;
    out.kind = models.kind;
    out.cell_entropy.resize(d.cell_count());

    const std::size_t cnx = d.cell_nx();
    const std::size_t cny = d.cell_ny();
    const std::size_t cnz = d.cell_nz();
    const bool is2d = d.is_2d();

    // vertex offsets of a cell anchored at its (x, y, z) corner
    std::size_t offs[8];
    int nlocal = is2d ? 4 : 8;
    {
        int v = 0;
        for (std::size_t dz = 0; dz < (is2d ? 1u : 2u); ++dz)
            for (std::size_t dy = 0; dy < 2; ++dy)
                for (std::size_t dx = 0; dx < 2; ++dx)
                    offs[v++] = d.index(dx, dy, dz);
    }

    const std::size_t ncells = cnx * cny * cnz;
    parallel_for(ncells, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t c = begin; c < end; ++c) {
            const std::size_t cx = c % cnx;
            const std::size_t cy = (c / cnx) % cny;
            const std::size_t cz = c / (cnx * cny);
            const double* anchor = dplus.data() + d.index(cx, cy, cz);
            out.cell_entropy[c] =
                nlocal == 4 ? entropy_2d_cell(anchor, offs) : entropy_3d_cell(anchor, offs);
        }
    });

    out.total_entropy = compensated_total(out.cell_entropy);
    out.entropy_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<EntropyField> entropy_field_sweep(const EnsembleField& field, const ModelKind& kind,
                                              std::span<const double> isovalues, int threads) {
    if (isovalues.empty())
        throw std::invalid_argument("entropy_field_sweep: empty isovalue list");
    const ModelField models = fit_model(field, kind, threads);
    std::vector<EntropyField> out;
    out.reserve(isovalues.size());
    for (double k : isovalues)
        out.push_back(entropy_field(models, k, threads));
    return out;
}

void write_entropy_field(const EntropyField& field, const std::filesystem::path& path) {
    std::ofstream raw(path, std::ios::binary);
    if (!raw)
        throw std::runtime_error("cannot write entropy field: " + path.string());
    std::vector<float> buf(field.cell_entropy.size());
    for (std::size_t i = 0; i < buf.size(); ++i)
        buf[i] = static_cast<float>(field.cell_entropy[i]);
    raw.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));

    char total[64];
    std::snprintf(total, sizeof(total), "%.17g", field.total_entropy);
    json j;
    j["dims"] = {field.cell_dims.nx, field.cell_dims.ny, field.cell_dims.nz};
    j["isovalue"] = field.isovalue;
    j["model"] = model_family_name(field.kind.family);
    if (field.kind.binned())
        j["bins"] = field.kind.bins;
    j["total_entropy"] = std::string(total);

    const auto sidecar = path.string() + ".json";
    std::ofstream out(sidecar);
    if (!out)
        throw std::runtime_error("cannot write sidecar: " + sidecar);
    out << j.dump(2) << "\n";
}

EntropyField load_entropy_field(const std::filesystem::path& path) {
    std::ifstream side(path.string() + ".json");
    if (!side)
        throw std::runtime_error("cannot open sidecar: " + path.string() + ".json");
    json j;
    side >> j;

    EntropyField field;
    const auto dims = j.at("dims");
    field.cell_dims = GridDims{dims[0].get<std::size_t>(), dims[1].get<std::size_t>(),
                               dims[2].get<std::size_t>()};
    field.isovalue = j.at("isovalue").get<double>();
    field.kind = parse_model_kind(j.at("model").get<std::string>() +
                                  (j.contains("bins")
                                       ? ":" + std::to_string(j["bins"].get<std::size_t>())
                                       : ""));
    field.total_entropy = std::stod(j.at("total_entropy").get<std::string>());

    const std::size_t n = field.cell_dims.nx * field.cell_dims.ny * field.cell_dims.nz;
    std::ifstream raw(path, std::ios::binary | std::ios::ate);
    if (!raw)
        throw std::runtime_error("cannot open entropy field: " + path.string());
    if (static_cast<std::size_t>(raw.tellg()) != n * sizeof(float))
        throw std::runtime_error("entropy field size does not match sidecar dims");
    raw.seekg(0);
    std::vector<float> buf(n);
    raw.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * sizeof(float)));
    field.cell_entropy.assign(buf.begin(), buf.end());
    return field;
}

} // namespace isentropy
