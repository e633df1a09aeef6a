// SPDX-License-Identifier: Apache-2.0
#ifndef KSLAB_FIELD_IO_HPP
#define KSLAB_FIELD_IO_HPP

#include <filesystem>
#include <string>

#include "kslab/field.hpp"

namespace kslab {

/// Binary snapshot: header {magic "KSF1", N: u32, L: f64, t: f64, name: 16 bytes},
/// then N^2 little-endian f64 row-major samples.
struct Snapshot {
    ScalarField field;
    double time = 0.0;
    std::string name;
};

void write_snapshot(const std::filesystem::path& path, const ScalarField& f, double time,
                    const std::string& name);

Snapshot read_snapshot(const std::filesystem::path& path);

} // namespace kslab

#endif
