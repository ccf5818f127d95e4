#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace isentropy {

// Vertex counts per axis. nz == 1 marks a 2D field.
struct GridDims {
    std::size_t nx = 0;
    std::size_t ny = 0;
    std::size_t nz = 1;

    std::size_t vertex_count() const { return nx * ny * nz; }
    bool is_2d() const { return nz == 1; }

    std::size_t cell_nx() const { return nx - 1; }
    std::size_t cell_ny() const { return ny - 1; }
    std::size_t cell_nz() const { return is_2d() ? 1 : nz - 1; }
    std::size_t cell_count() const { return cell_nx() * cell_ny() * cell_nz(); }

    // x-fastest, then y, then z
    std::size_t index(std::size_t x, std::size_t y, std::size_t z) const {
        return (z * ny + y) * nx + x;
    }

    void validate() const {
        if (nx < 2 || ny < 2 || nz < 1)
            throw std::invalid_argument("grid dims must satisfy nx>=2, ny>=2, nz>=1");
    }

    bool operator==(const GridDims&) const = default;
};

// M co-registered scalar members on a uniform grid. Immutable by convention
// after construction; safe to share read-only across threads.
struct EnsembleField {
    GridDims dims;
    std::string name;
    std::vector<std::vector<double>> members;

    std::size_t member_count() const { return members.size(); }

    void validate() const {
        dims.validate();
        if (members.size() < 2)
            throw std::invalid_argument("ensemble needs at least 2 members");
        for (const auto& m : members)
            if (m.size() != dims.vertex_count())
                throw std::invalid_argument("member size does not match grid dims");
    }
};

EnsembleField slice_z(const EnsembleField& field, std::size_t z_index);

// Pure decimation: keep vertices 0, stride, 2*stride, ... along each axis.
// Axes of extent 1 are left untouched.
EnsembleField subsample(const EnsembleField& field, std::size_t stride);

} // namespace isentropy
