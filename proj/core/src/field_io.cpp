// SPDX-License-Identifier: Apache-2.0
#include "kslab/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace kslab {

static_assert(std::endian::native == std::endian::little,
              "snapshot format is little-endian; big-endian hosts need byte swaps");

namespace {
constexpr char kMagic[4] = {'K', 'S', 'F', '1'};

template <typename T>
void put(std::ofstream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
void get(std::ifstream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
}
} // namespace

void write_snapshot(const std::filesystem::path& path, const ScalarField& f, double time,
                    const std::string& name) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_snapshot: cannot open " + path.string());
    os.write(kMagic, 4);
    put(os, static_cast<std::uint32_t>(f.grid.n));
    put(os, f.grid.box_length);
    put(os, time);
    char nm[16] = {};
    std::memcpy(nm, name.data(), std::min<std::size_t>(name.size(), 16));
    os.write(nm, 16);
    os.write(reinterpret_cast<const char*>(f.values.data()),
             static_cast<std::streamsize>(f.values.size() * sizeof(double)));
    if (!os) throw std::runtime_error("write_snapshot: short write to " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_snapshot: cannot open " + path.string());
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("read_snapshot: bad magic in " + path.string());
    std::uint32_t n = 0;
    double length = 0, time = 0;
    get(is, n);
    get(is, length);
    get(is, time);
    char nm[16];
    is.read(nm, 16);
    Snapshot snap;
    snap.field = ScalarField(GridSpec(static_cast<int>(n), length));
    snap.time = time;
    snap.name.assign(nm, strnlen(nm, 16));
    is.read(reinterpret_cast<char*>(snap.field.values.data()),
            static_cast<std::streamsize>(snap.field.values.size() * sizeof(double)));
    if (!is) throw std::runtime_error("read_snapshot: truncated payload in " + path.string());
    return snap;
}

} // namespace kslab
