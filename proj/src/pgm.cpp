#include "isentropy/pgm.hpp"

#include <cmath>
#include <fstream>

namespace isentropy {

void render_entropy_map(const EntropyField& field, const std::filesystem::path& out_path,
                        double max_bits) {
    if (field.cell_dims.nz != 1)
        throw std::invalid_argument("render_entropy_map: field is 3D, slice it first");
    if (!(max_bits > 0.0))
        throw std::invalid_argument("render_entropy_map: max_bits must be > 0");

    const std::size_t w = field.cell_dims.nx;
    const std::size_t h = field.cell_dims.ny;
    std::vector<unsigned char> pixels(w * h);
    for (std::size_t row = 0; row < h; ++row) {
        const std::size_t y = h - 1 - row;
        for (std::size_t x = 0; x < w; ++x) {
            const double e = field.cell_entropy[y * w + x];
            pixels[row * w + x] =
                static_cast<unsigned char>(std::lround(255.0 * std::min(e / max_bits, 1.0)));
        }
    }

    std::ofstream out(out_path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write image: " + out_path.string());
    out << "P5\n" << w << " " << h << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
}

} // namespace isentropy
