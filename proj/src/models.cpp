#include "isentropy/models.hpp"

#include "isentropy/normal.hpp"
#include "isentropy/parallel.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>

namespace isentropy {

using nlohmann::json;

ModelKind parse_model_kind(const std::string& s) {
    std::string name = s;
    std::size_t bins = 0;
    if (const auto colon = s.find(':'); colon != std::string::npos) {
        name = s.substr(0, colon);
        const std::string bstr = s.substr(colon + 1);
        std::size_t pos = 0;
        try {
            bins = std::stoul(bstr, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != bstr.size() || bins < 1)
            throw std::invalid_argument("bad bin count in model spec: " + s);
    }
    ModelKind kind;
    if (name == "full" || name == "fullEmpirical" || name == "empirical")
        kind.family = ModelFamily::full_empirical;
    else if (name == "uniform")
        kind.family = ModelFamily::uniform;
    else if (name == "gaussian")
        kind.family = ModelFamily::gaussian;
    else if (name == "histogram")
        kind.family = ModelFamily::histogram;
    else if (name == "quantile")
        kind.family = ModelFamily::quantile;
    else
        throw std::invalid_argument("unknown model kind: " + s);
    if (kind.binned()) {
        if (bins == 0)
            throw std::invalid_argument("model kind " + name + " needs a bin count, e.g. " + name + ":5");
    } else if (bins != 0) {
        throw std::invalid_argument("model kind " + name + " takes no bin count");
    }
    kind.bins = bins;
    return kind;
}

std::string model_family_name(ModelFamily family) {
    switch (family) {
    case ModelFamily::full_empirical: return "full";
    case ModelFamily::uniform: return "uniform";
    case ModelFamily::gaussian: return "gaussian";
    case ModelFamily::histogram: return "histogram";
    case ModelFamily::quantile: return "quantile";
    }
    return "?";
}

std::size_t storage_cost(const ModelKind& kind, std::size_t member_count) {
    kind.validate();
    switch (kind.family) {
    case ModelFamily::full_empirical: return member_count;
    case ModelFamily::uniform: return 2;
    case ModelFamily::gaussian: return 2;
    case ModelFamily::histogram: return kind.bins + 2;
    case ModelFamily::quantile: return kind.bins + 1;
    }
    return 0;
}

namespace {

// samples arrive sorted ascending
void fit_vertex(const ModelKind& kind, std::span<const double> samples, std::span<double> out) {
    const std::size_t m = samples.size();
    const double lo = samples.front();
    const double hi = samples.back();
    switch (kind.family) {
    case ModelFamily::full_empirical:
        std::copy(samples.begin(), samples.end(), out.begin());
        break;
    case ModelFamily::uniform:
        out[0] = lo;
        out[1] = hi;
        break;
    case ModelFamily::gaussian: {
        double mean = 0.0;
        for (double v : samples)
            mean += v;
        mean /= static_cast<double>(m);
        double ss = 0.0;
        for (double v : samples)
            ss += (v - mean) * (v - mean);
        out[0] = mean;
        out[1] = m > 1 ? std::sqrt(ss / static_cast<double>(m - 1)) : 0.0;
        break;
    }
    case ModelFamily::histogram: {
        const std::size_t b = kind.bins;
        out[0] = lo;
        out[1] = hi;
        std::fill(out.begin() + 2, out.end(), 0.0);
        const double w = (hi - lo) / static_cast<double>(b);
        for (double v : samples) {
            std::size_t bin = 0;
            if (hi > lo)
                bin = std::min(b - 1, static_cast<std::size_t>((v - lo) / w));
            out[2 + bin] += 1.0;
        }
        for (std::size_t i = 0; i < b; ++i)
            out[2 + i] /= static_cast<double>(m);
        break;
    }
    case ModelFamily::quantile: {
        const std::size_t b = kind.bins;
        // inclusive scheme: linear interpolation between order statistics
        for (std::size_t i = 0; i <= b; ++i) {
            const double pos = static_cast<double>(i) / static_cast<double>(b) *
                               static_cast<double>(m - 1);
            const auto idx = static_cast<std::size_t>(pos);
            const double frac = pos - static_cast<double>(idx);
            out[i] = idx + 1 < m ? samples[idx] + frac * (samples[idx + 1] - samples[idx])
                                 : samples[idx];
        }
        out[0] = lo;
        out[b] = hi;
        break;
    }
    }
}

} // namespace

ModelField fit_model(const EnsembleField& field, const ModelKind& kind, int threads) {
    field.validate();
    kind.validate();
    const auto t0 = std::chrono::steady_clock::now();

    ModelField mf;
    mf.dims = field.dims;
    mf.kind = kind;
    mf.member_count = field.member_count();
    const std::size_t stride = mf.stride();
    const std::size_t nv = field.dims.vertex_count();
    mf.payload.resize(nv * stride);

    const std::size_t m = field.member_count();
    parallel_for(nv, threads, [&](std::size_t begin, std::size_t end) {
        std::vector<double> samples(m);
        for (std::size_t v = begin; v < end; ++v) {
            for (std::size_t i = 0; i < m; ++i)
                samples[i] = field.members[i][v];
            std::sort(samples.begin(), samples.end());
            fit_vertex(kind, samples, {mf.payload.data() + v * stride, stride});
        }
    });

    mf.fit_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return mf;
}

namespace {

double prob_above_full(std::span<const double> sorted, double k) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), k);
    return static_cast<double>(sorted.end() - it) / static_cast<double>(sorted.size());
}

double prob_above_uniform(double lo, double hi, double k) {
    if (hi <= lo)
        return k <= lo ? 1.0 : 0.0; // degenerate: atom at lo
    if (k <= lo)
        return 1.0;
    if (k >= hi)
        return 0.0;
    return (hi - k) / (hi - lo);
}

double prob_above_gaussian(double mean, double sigma, double k) {
    if (sigma <= 0.0)
        return k <= mean ? 1.0 : 0.0;
    return 1.0 - normal_cdf((k - mean) / sigma);
}

double prob_above_histogram(std::span<const double> p, double k) {
    const double lo = p[0];
    const double hi = p[1];
    const std::size_t b = p.size() - 2;
    if (hi <= lo)
        return k <= lo ? 1.0 : 0.0;
    if (k <= lo)
        return 1.0;
    if (k >= hi)
        return 0.0;
    const double w = (hi - lo) / static_cast<double>(b);
    const auto bin = std::min(b - 1, static_cast<std::size_t>((k - lo) / w));
    const double bin_hi = bin + 1 == b ? hi : lo + static_cast<double>(bin + 1) * w;
    double above = p[2 + bin] * std::clamp((bin_hi - k) / w, 0.0, 1.0);
    for (std::size_t j = bin + 1; j < b; ++j)
        above += p[2 + j];
    return std::clamp(above, 0.0, 1.0);
}

// mass 1/B per breakpoint interval; a tied interval is an atom at its value,
// counted as above iff k <= value
double prob_above_quantile(std::span<const double> q, double k) {
    const std::size_t b = q.size() - 1;
    if (k <= q.front())
        return 1.0;
    if (k > q.back())
        return 0.0;
    const auto jlo = static_cast<std::size_t>(std::lower_bound(q.begin(), q.end(), k) - q.begin());
    const auto jhi = static_cast<std::size_t>(std::upper_bound(q.begin(), q.end(), k) - q.begin());
    double acc = jhi < b ? static_cast<double>(b - jhi) : 0.0;
    const std::size_t i0 = jlo == 0 ? 0 : jlo - 1;
    const std::size_t i1 = std::min(jhi, b);
    for (std::size_t i = i0; i < i1; ++i) {
        if (q[i + 1] <= q[i])
            acc += k <= q[i] ? 1.0 : 0.0;
        else
            acc += std::clamp((q[i + 1] - k) / (q[i + 1] - q[i]), 0.0, 1.0);
    }
    return std::clamp(acc / static_cast<double>(b), 0.0, 1.0);
}

} // namespace

double sign_prob_above(const ModelKind& kind, std::span<const double> model, double k) {
    switch (kind.family) {
    case ModelFamily::full_empirical: return prob_above_full(model, k);
    case ModelFamily::uniform: return prob_above_uniform(model[0], model[1], k);
    case ModelFamily::gaussian: return prob_above_gaussian(model[0], model[1], k);
    case ModelFamily::histogram: return prob_above_histogram(model, k);
    case ModelFamily::quantile: return prob_above_quantile(model, k);
    }
    return 0.0;
}

void write_model_field(const ModelField& field, const std::filesystem::path& manifest_path) {
    json j;
    j["dims"] = {field.dims.nx, field.dims.ny, field.dims.nz};
    j["kind"] = model_family_name(field.kind.family);
    if (field.kind.binned())
        j["bins"] = field.kind.bins;
    j["members"] = field.member_count;
    j["dtype"] = "f32";
    j["stride"] = field.stride();
    const std::string rel = manifest_path.stem().string() + ".f32";
    j["payload"] = rel;

    std::ofstream raw(manifest_path.parent_path() / rel, std::ios::binary);
    if (!raw)
        throw std::runtime_error("cannot write model payload: " + rel);
    std::vector<float> buf(field.payload.size());
    for (std::size_t i = 0; i < buf.size(); ++i)
        buf[i] = static_cast<float>(field.payload[i]);
    raw.write(reinterpret_cast<const char*>(buf.data()),
              static_cast<std::streamsize>(buf.size() * sizeof(float)));

    std::ofstream out(manifest_path);
    if (!out)
        throw std::runtime_error("cannot write model manifest: " + manifest_path.string());
    out << j.dump(2) << "\n";
}

ModelField load_model_field(const std::filesystem::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in)
        throw std::runtime_error("cannot open model manifest: " + manifest_path.string());
    json j;
    in >> j;

    ModelField mf;
    const auto dims = j.at("dims");
    mf.dims = GridDims{dims[0].get<std::size_t>(), dims[1].get<std::size_t>(),
                       dims[2].get<std::size_t>()};
    mf.dims.validate();
    mf.kind = parse_model_kind(j.at("kind").get<std::string>() +
                               (j.contains("bins") ? ":" + std::to_string(j["bins"].get<std::size_t>())
                                                   : ""));
    mf.member_count = j.at("members").get<std::size_t>();

    const std::size_t n = mf.dims.vertex_count() * mf.stride();
    std::ifstream raw(manifest_path.parent_path() / j.at("payload").get<std::string>(),
                      std::ios::binary | std::ios::ate);
    if (!raw)
        throw std::runtime_error("cannot open model payload");
    if (static_cast<std::size_t>(raw.tellg()) != n * sizeof(float))
        throw std::runtime_error("model payload size does not match manifest");
    raw.seekg(0);
    std::vector<float> buf(n);
    raw.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(n * sizeof(float)));
    mf.payload.assign(buf.begin(), buf.end());
    return mf;
}

} // namespace isentropy
