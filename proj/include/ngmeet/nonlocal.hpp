#pragma once

#include <vector>

#include "ngmeet/hsi_cube.hpp"

namespace ngmeet {

struct PatchGeometry {
    int patch_size = 6;     // n
    int stride = 4;         // s
    int search_radius = 20; // w, half-window
    int group_size = 50;    // p

    void validate(int rows, int cols) const;
};

// Top-left corner of a patch.
struct PatchPos {
    int row = 0;
    int col = 0;

    bool operator==(const PatchPos&) const = default;
};

struct PatchGroupSet {
    std::vector<PatchPos> refs;
    // groups[j] lists the matched patch positions for refs[j], the
    // reference itself first, then by increasing distance.
    std::vector<std::vector<PatchPos>> groups;
};

// Reference grid with stride s; the last valid row/col position is always
// included so every pixel is covered by at least one reference patch.
std::vector<PatchPos> tile_references(int rows, int cols,
                                      const PatchGeometry& geom);

// For each reference, the group_size nearest patches (squared Euclidean
// distance over the full patch across all bands) inside the
// (2w+1)^2 search window; ties broken by raster order.
PatchGroupSet match_groups(const HsiCube& reduced,
                           const PatchGeometry& geom);

// Column q is patch q of the group, vectorized spatial-major then
// spectral: element ((di*n + dj)*K + k).
Matrix gather_group(const HsiCube& reduced,
                    const std::vector<PatchPos>& group,
                    const PatchGeometry& geom);

// Scatter the (denoised) group matrices back and average overlapping
// contributions per pixel.
HsiCube aggregate_groups(const std::vector<Matrix>& groups,
                         const PatchGroupSet& group_set,
                         const PatchGeometry& geom, int rows, int cols,
                         int bands, double value_scale = 255.0);

}  // namespace ngmeet
