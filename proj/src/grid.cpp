#include "isentropy/grid.hpp"

namespace isentropy {

EnsembleField slice_z(const EnsembleField& field, std::size_t z_index) {
    if (field.dims.is_2d())
        throw std::invalid_argument("slice_z: field is already 2D");
    if (z_index >= field.dims.nz)
        throw std::out_of_range("slice_z: z index " + std::to_string(z_index) +
                                " out of range [0," + std::to_string(field.dims.nz) + ")");

    const auto& d = field.dims;
    EnsembleField out;
    out.dims = GridDims{d.nx, d.ny, 1};
    out.name = field.name + "_z" + std::to_string(z_index);
    out.members.reserve(field.members.size());
    const std::size_t plane = d.nx * d.ny;
    for (const auto& m : field.members)
        out.members.emplace_back(m.begin() + static_cast<std::ptrdiff_t>(z_index * plane),
                                 m.begin() + static_cast<std::ptrdiff_t>((z_index + 1) * plane));
    return out;
}

namespace {
std::size_t strided_extent(std::size_t n, std::size_t stride) {
    return (n + stride - 1) / stride; // ceil(n/stride)
}
} // namespace

EnsembleField subsample(const EnsembleField& field, std::size_t stride) {
    if (stride < 1)
        throw std::invalid_argument("subsample: stride must be >= 1");
    const auto& d = field.dims;
    GridDims nd;
    nd.nx = strided_extent(d.nx, stride);
    nd.ny = strided_extent(d.ny, stride);
    nd.nz = d.nz == 1 ? 1 : strided_extent(d.nz, stride);
    if (nd.nx < 2 || nd.ny < 2 || (d.nz > 1 && nd.nz < 2))
        throw std::invalid_argument("subsample: stride " + std::to_string(stride) +
                                    " leaves fewer than 2 vertices on an axis");

    EnsembleField out;
    out.dims = nd;
    out.name = field.name + "_s" + std::to_string(stride);
    out.members.reserve(field.members.size());
    for (const auto& m : field.members) {
        std::vector<double> v(nd.vertex_count());
        for (std::size_t z = 0; z < nd.nz; ++z)
            for (std::size_t y = 0; y < nd.ny; ++y)
                for (std::size_t x = 0; x < nd.nx; ++x)
                    v[nd.index(x, y, z)] =
                        m[d.index(x * stride, y * stride, d.nz == 1 ? 0 : z * stride)];
        out.members.push_back(std::move(v));
    }
    return out;
}

} // namespace isentropy
