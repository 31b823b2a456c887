#pragma once

#include <stdexcept>
#include <string>

#include "ngmeet/hsi_cube.hpp"

namespace ngmeet {

// "HSI1" container: magic, three u32-LE dims (rows, cols, bands), a u32-LE
// dtype tag (1 = f32-LE), then band-sequential samples.
struct IoError : std::runtime_error {
    enum class Kind { BadMagic, Truncated, BadDtype, File };
    Kind kind;

    IoError(Kind k, const std::string& msg)
        : std::runtime_error(msg), kind(k) {}
};

HsiCube read_hsi(const std::string& path);
void write_hsi(const std::string& path, const HsiCube& cube);

// 8-bit binary PGM dump of one band, values mapped from [0, value_scale].
void write_pgm_band(const std::string& path, const HsiCube& cube, int band);

}  // namespace ngmeet
