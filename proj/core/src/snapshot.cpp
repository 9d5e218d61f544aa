#include "nslab/snapshot.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "nslab/errors.hpp"

namespace nslab {

namespace {

static_assert(std::endian::native == std::endian::little,
              "snapshot I/O assumes a little-endian host");

constexpr std::array<char, 8> kMagic{'N', 'S', 'L', 'A', 'B', 'F', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& out, T value)
{
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T get(std::istream& in)
{
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) {
        throw IoError("truncated snapshot header");
    }
    return value;
}

} // namespace

void write_snapshot(std::ostream& out, const PhysicalField& field)
{
    const Grid& grid = field.grid();
    out.write(kMagic.data(), kMagic.size());
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.dimension()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(grid.points()));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(field.component_count()));
    put<double>(out, grid.period());
    for (int c = 0; c < field.component_count(); ++c) {
        const auto values = field.component(c);
        out.write(reinterpret_cast<const char*>(values.data()),
                  static_cast<std::streamsize>(values.size() * sizeof(double)));
    }
    if (!out) {
        throw IoError("failed writing snapshot");
    }
}

PhysicalField read_snapshot(std::istream& in)
{
    std::array<char, 8> magic{};
    in.read(magic.data(), magic.size());
    if (!in || magic != kMagic) {
        throw IoError("not an nslab snapshot (bad magic)");
    }
    const auto version = get<std::uint32_t>(in);
    if (version != kVersion) {
        throw IoError("unsupported snapshot version " + std::to_string(version));
    }
    const auto dimension = get<std::uint32_t>(in);
    const auto points = get<std::uint32_t>(in);
    const auto components = get<std::uint32_t>(in);
    const auto period = get<double>(in);
    const Grid grid(static_cast<int>(dimension), static_cast<int>(points), period);
    if (components < 1 || components > 3) {
        throw IoError("snapshot component count must be 1..3");
    }
    std::vector<std::vector<double>> data(components, std::vector<double>(grid.size()));
    for (auto& c : data) {
        in.read(reinterpret_cast<char*>(c.data()),
                static_cast<std::streamsize>(c.size() * sizeof(double)));
        if (!in) {
            throw IoError("truncated snapshot payload");
        }
    }
    return PhysicalField(grid, std::move(data));
}

void write_snapshot(const std::filesystem::path& path, const PhysicalField& field)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open " + path.string() + " for writing");
    }
    write_snapshot(out, field);
}

PhysicalField read_snapshot(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    try {
        return read_snapshot(in);
    } catch (const IoError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

} // namespace nslab
