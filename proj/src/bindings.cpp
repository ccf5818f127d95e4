#include "isentropy/ensemble_io.hpp"
#include "isentropy/harness.hpp"
#include "isentropy/normal.hpp"
#include "isentropy/pgm.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace isentropy;

namespace {

// members stacked as (M, nz, ny, nx) or (M, ny, nx); x-fastest in memory
EnsembleField ensemble_from_numpy(py::array_t<double, py::array::c_style | py::array::forcecast> a,
                                  const std::string& name) {
    if (a.ndim() != 3 && a.ndim() != 4)
        throw std::invalid_argument("expected array of shape (M, ny, nx) or (M, nz, ny, nx)");
    EnsembleField field;
    field.name = name;
    const bool is3d = a.ndim() == 4;
    field.dims.nx = static_cast<std::size_t>(a.shape(a.ndim() - 1));
    field.dims.ny = static_cast<std::size_t>(a.shape(a.ndim() - 2));
    field.dims.nz = is3d ? static_cast<std::size_t>(a.shape(1)) : 1;
    const std::size_t n = field.dims.vertex_count();
    const double* data = a.data();
    for (py::ssize_t m = 0; m < a.shape(0); ++m)
        field.members.emplace_back(data + m * n, data + (m + 1) * n);
    field.validate();
    return field;
}

py::array_t<double> member_to_numpy(const EnsembleField& field, std::size_t m) {
    if (m >= field.member_count())
        throw std::out_of_range("member index out of range");
    const auto& d = field.dims;
    py::array_t<double> out;
    if (d.is_2d())
        out = py::array_t<double>({d.ny, d.nx});
    else
        out = py::array_t<double>({d.nz, d.ny, d.nx});
    std::copy(field.members[m].begin(), field.members[m].end(), out.mutable_data());
    return out;
}

py::array_t<double> cells_to_numpy(const EntropyField& ef) {
    const auto& d = ef.cell_dims;
    py::array_t<double> out;
    if (d.nz == 1)
        out = py::array_t<double>({d.ny, d.nx});
    else
        out = py::array_t<double>({d.nz, d.ny, d.nx});
    std::copy(ef.cell_entropy.begin(), ef.cell_entropy.end(), out.mutable_data());
    return out;
}

py::dict row_to_dict(const ReportRow& r) {
    py::dict d;
    d["model"] = model_family_name(r.kind.family);
    d["bins"] = r.kind.binned() ? py::object(py::int_(r.kind.bins)) : py::none();
    d["isovalue"] = r.isovalue;
    d["total_entropy_bits"] = r.total_entropy;
    d["delta_from_baseline"] = r.delta_from_baseline;
    d["storage_values_per_vertex"] = r.storage_values_per_vertex;
    d["fit_seconds"] = r.fit_seconds;
    d["entropy_seconds"] = r.entropy_seconds;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Level-set uncertainty entropy for ensemble scalar fields";

    py::class_<GridDims>(m, "GridDims")
        .def_readonly("nx", &GridDims::nx)
        .def_readonly("ny", &GridDims::ny)
        .def_readonly("nz", &GridDims::nz);

    py::class_<EnsembleField>(m, "EnsembleField")
        .def_property_readonly("dims", [](const EnsembleField& f) { return f.dims; })
        .def_property_readonly("name", [](const EnsembleField& f) { return f.name; })
        .def_property_readonly("member_count", &EnsembleField::member_count)
        .def("member", &member_to_numpy, py::arg("index"));

    py::class_<ModelField>(m, "ModelField")
        .def_property_readonly("fit_seconds", [](const ModelField& f) { return f.fit_seconds; })
        .def("sign_prob_above",
             [](const ModelField& f, std::size_t vertex, double k) {
                 if (vertex >= f.dims.vertex_count())
                     throw std::out_of_range("vertex index out of range");
                 return sign_prob_above(f.kind, f.vertex_model(vertex), k);
             },
             py::arg("vertex"), py::arg("isovalue"));

    py::class_<EntropyField>(m, "EntropyField")
        .def_property_readonly("cells", &cells_to_numpy)
        .def_property_readonly("total_entropy",
                               [](const EntropyField& f) { return f.total_entropy; })
        .def_property_readonly("isovalue", [](const EntropyField& f) { return f.isovalue; });

    m.def("make_ensemble", &ensemble_from_numpy, py::arg("members"), py::arg("name") = "ensemble");
    m.def("load_ensemble",
          [](const std::string& p) { return load_ensemble(p); }, py::arg("manifest_path"));
    m.def("write_ensemble",
          [](const EnsembleField& f, const std::string& p) { write_ensemble(f, p); },
          py::arg("field"), py::arg("manifest_path"));
    m.def("slice_z", &slice_z, py::arg("field"), py::arg("z_index"));
    m.def("subsample", &subsample, py::arg("field"), py::arg("stride"));

    m.def("inject_noise",
          [](py::array_t<double, py::array::c_style | py::array::forcecast> base,
             const std::string& kind, double magnitude, std::size_t members, std::uint64_t seed) {
              if (base.ndim() != 2 && base.ndim() != 3)
                  throw std::invalid_argument("base must have shape (ny, nx) or (nz, ny, nx)");
              GridDims dims;
              dims.nx = static_cast<std::size_t>(base.shape(base.ndim() - 1));
              dims.ny = static_cast<std::size_t>(base.shape(base.ndim() - 2));
              dims.nz = base.ndim() == 3 ? static_cast<std::size_t>(base.shape(0)) : 1;
              NoiseSpec spec;
              if (kind == "gaussian")
                  spec.kind = NoiseKind::gaussian;
              else if (kind == "uniform")
                  spec.kind = NoiseKind::uniform;
              else
                  throw std::invalid_argument("noise kind must be 'gaussian' or 'uniform'");
              spec.magnitude = magnitude;
              spec.member_count = members;
              spec.seed = seed;
              return inject_noise({base.data(), static_cast<std::size_t>(base.size())}, dims,
                                  spec);
          },
          py::arg("base"), py::arg("kind"), py::arg("magnitude"), py::arg("members"),
          py::arg("seed") = 0);

    m.def("fit_model",
          [](const EnsembleField& field, const std::string& kind, int threads) {
              return fit_model(field, parse_model_kind(kind), threads);
          },
          py::arg("field"), py::arg("kind"), py::arg("threads") = 0);
    m.def("entropy_field", &entropy_field, py::arg("models"), py::arg("isovalue"),
          py::arg("threads") = 0);
    m.def("storage_cost",
          [](const std::string& kind, std::size_t members) {
              return storage_cost(parse_model_kind(kind), members);
          },
          py::arg("kind"), py::arg("members"));
    m.def("normal_cdf", &normal_cdf, py::arg("x"));

    m.def("compare_models",
          [](const EnsembleField& field, const std::vector<std::string>& kinds,
             const std::vector<double>& isovalues, int threads) {
              std::vector<ModelKind> parsed;
              for (const auto& k : kinds)
                  parsed.push_back(parse_model_kind(k));
              const auto report = compare_models(field, parsed, isovalues, threads);
              py::list rows;
              for (const auto& r : report.rows)
                  rows.append(row_to_dict(r));
              return rows;
          },
          py::arg("field"), py::arg("kinds"), py::arg("isovalues"), py::arg("threads") = 0);

    m.def("bin_sweep",
          [](const EnsembleField& field, const std::string& family, double isovalue,
             const std::vector<std::size_t>& bins, int threads) {
              const auto fam = parse_model_kind(family + ":1").family;
              const auto result = bin_sweep(field, fam, isovalue, bins, threads);
              py::dict d;
              d["model"] = model_family_name(result.family);
              d["isovalue"] = result.isovalue;
              d["baseline"] = result.baseline;
              py::list points;
              for (const auto& [b, total] : result.points)
                  points.append(py::make_tuple(b, total));
              d["points"] = points;
              return d;
          },
          py::arg("field"), py::arg("model"), py::arg("isovalue"), py::arg("bins"),
          py::arg("threads") = 0);

    m.def("render_entropy_map",
          [](const EntropyField& field, const std::string& out_path, double max_bits) {
              render_entropy_map(field, out_path, max_bits);
          },
          py::arg("field"), py::arg("out_path"), py::arg("max_bits") = 4.0);
}
