#pragma once

#include <cstdint>

#include "ngmeet/hsi_cube.hpp"

namespace ngmeet {

// Synthetic self-similar low-rank cube: abundance fields built from a
// jittered motif tiling (so non-local matching has real duplicates to
// find), smoothed, and combined through a random orthonormal spectral
// basis whose first column is the constant spectrum; the result is
// normalized to [0, 255] with the mode-3 rank exactly k_true.
HsiCube synth_lowrank_hsi(int rows, int cols, int bands, int k_true,
                          double smoothness, std::uint64_t seed);

// x + N(0, sigma^2) i.i.d., pinned generator.
HsiCube add_gaussian_noise(const HsiCube& x, double sigma,
                           std::uint64_t seed);

}  // namespace ngmeet
