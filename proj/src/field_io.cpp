#include "magmap/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace magmap {
namespace {

template <typename T>
void put_le(std::ostream& os, T value) {
    static_assert(sizeof(T) == 4 || sizeof(T) == 8);
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    U bits = std::bit_cast<U>(value);
    char buf[sizeof(T)];
    for (std::size_t b = 0; b < sizeof(T); ++b) {
        buf[b] = static_cast<char>((bits >> (8 * b)) & 0xffu);
    }
    os.write(buf, sizeof(T));
}

template <typename T>
T get_le(std::istream& is) {
    using U = std::conditional_t<sizeof(T) == 4, std::uint32_t, std::uint64_t>;
    unsigned char buf[sizeof(T)];
    is.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!is) throw std::runtime_error("read_field: truncated file");
    U bits = 0;
    for (std::size_t b = 0; b < sizeof(T); ++b) {
        bits |= static_cast<U>(buf[b]) << (8 * b);
    }
    return std::bit_cast<T>(bits);
}

void write_volume(const std::filesystem::path& path, std::size_t n, double spacing,
                  std::span<const double> values) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
    os.write(kFieldMagic, 4);
    put_le(os, static_cast<std::uint32_t>(n));
    put_le(os, spacing);
    if constexpr (std::endian::native == std::endian::little) {
        os.write(reinterpret_cast<const char*>(values.data()),
                 static_cast<std::streamsize>(values.size() * sizeof(double)));
    } else {
        for (double v : values) put_le(os, v);
    }
    if (!os) throw std::runtime_error("write failed: " + path.string());
}

} // namespace

void write_field(const std::filesystem::path& path, const ScalarField& f) {
    write_volume(path, f.grid().n(), f.grid().spacing(), f.values());
}

void write_field(const std::filesystem::path& path, const ExtendedField& f) {
    write_volume(path, f.n(), f.base_grid().spacing(), f.values());
}

ScalarField read_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kFieldMagic, 4) != 0) {
        throw std::runtime_error("read_field: bad magic in " + path.string());
    }
    const auto n = get_le<std::uint32_t>(is);
    const auto spacing = get_le<double>(is);
    VoxelGrid grid(n, spacing);
    std::vector<double> values(grid.voxel_count());
    for (double& v : values) v = get_le<double>(is);
    return ScalarField(grid, std::move(values));
}

} // namespace magmap
