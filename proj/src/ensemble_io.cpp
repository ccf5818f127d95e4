#include "isentropy/ensemble_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace isentropy {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<float> read_f32_file(const fs::path& p, std::size_t expected) {
    std::ifstream in(p, std::ios::binary | std::ios::ate);
    if (!in)
        throw std::runtime_error("cannot open member file: " + p.string());
    const auto bytes = static_cast<std::size_t>(in.tellg());
    if (bytes != expected * sizeof(float))
        throw std::runtime_error("member file " + p.string() + " holds " +
                                 std::to_string(bytes / sizeof(float)) + " values, manifest expects " +
                                 std::to_string(expected));
    in.seekg(0);
    std::vector<float> buf(expected);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(bytes));
    if (!in)
        throw std::runtime_error("short read on member file: " + p.string());
    return buf;
}

} // namespace

EnsembleField load_ensemble(const fs::path& manifest_path) {
    std::ifstream in(manifest_path);
    if (!in)
        throw std::runtime_error("cannot open manifest: " + manifest_path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("manifest parse error in " + manifest_path.string() + ": " + e.what());
    }

    EnsembleField field;
    field.name = j.value("name", manifest_path.stem().string());
    const auto dims = j.at("dims");
    if (!dims.is_array() || dims.size() != 3)
        throw std::runtime_error("manifest dims must be [nx, ny, nz]");
    field.dims = GridDims{dims[0].get<std::size_t>(), dims[1].get<std::size_t>(),
                          dims[2].get<std::size_t>()};
    field.dims.validate();
    if (j.value("dtype", "f32") != std::string("f32"))
        throw std::runtime_error("unsupported dtype (only f32)");
    if (j.value("order", "x-fastest") != std::string("x-fastest"))
        throw std::runtime_error("unsupported order (only x-fastest)");

    const auto members = j.at("members");
    if (!members.is_array() || members.size() < 2)
        throw std::runtime_error("manifest must list at least 2 members");

    const std::size_t n = field.dims.vertex_count();
    const fs::path base = manifest_path.parent_path();
    for (const auto& rel : members) {
        const auto raw = read_f32_file(base / rel.get<std::string>(), n);
        std::vector<double> vals(n);
        for (std::size_t i = 0; i < n; ++i) {
            vals[i] = static_cast<double>(raw[i]);
            if (!std::isfinite(vals[i]))
                throw std::runtime_error("non-finite value at vertex " + std::to_string(i) +
                                         " in member " + rel.get<std::string>());
        }
        field.members.push_back(std::move(vals));
    }
    field.validate();
    return field;
}

void write_ensemble(const EnsembleField& field, const fs::path& manifest_path) {
    field.validate();
    const fs::path base = manifest_path.parent_path();
    const std::string stem = manifest_path.stem().string();

    json j;
    j["name"] = field.name;
    j["dims"] = {field.dims.nx, field.dims.ny, field.dims.nz};
    j["dtype"] = "f32";
    j["order"] = "x-fastest";
    json members = json::array();
    for (std::size_t m = 0; m < field.members.size(); ++m) {
        char suffix[32];
        std::snprintf(suffix, sizeof(suffix), "_m%03zu.f32", m);
        const std::string rel = stem + suffix;
        members.push_back(rel);
        std::ofstream out(base / rel, std::ios::binary);
        if (!out)
            throw std::runtime_error("cannot write member file: " + (base / rel).string());
        std::vector<float> raw(field.members[m].size());
        for (std::size_t i = 0; i < raw.size(); ++i)
            raw[i] = static_cast<float>(field.members[m][i]);
        out.write(reinterpret_cast<const char*>(raw.data()),
                  static_cast<std::streamsize>(raw.size() * sizeof(float)));
    }
    j["members"] = members;

    std::ofstream out(manifest_path);
    if (!out)
        throw std::runtime_error("cannot write manifest: " + manifest_path.string());
    out << j.dump(2) << "\n";
}

} // namespace isentropy
