#pragma once

#include <functional>
#include <vector>

#include "ngmeet/hsi_cube.hpp"
#include "ngmeet/nonlocal.hpp"

namespace ngmeet {

struct NoiseState {
    double sigma0 = 0.0;   // noise std of the observation, input-scale units
    double sigma_i = 0.0;  // current iteration estimate
    double gamma = 0.5;    // re-estimation scaling factor
};

struct WnnmParams {
    double weight_const = 9.0;  // c
    double eps = 1e-16;
};

// Weighted nuclear norm shrinkage of a patch-group matrix. With g = U S V'
// and p = number of columns, the clean singular estimates are
// sqrt(max(s_j^2 - p sigma^2, 0)) and each s_j is soft-thresholded by
// w_j = c sqrt(p) sigma^2 / (clean_j + eps).
Matrix wnnm_prox(const Matrix& g, double sigma, const WnnmParams& params);

// Pluggable per-group denoiser; WNNM is the shipped implementation.
using GroupDenoiser = std::function<Matrix(const Matrix&, double sigma)>;

GroupDenoiser make_wnnm_denoiser(const WnnmParams& params);

// Gather + denoise every matched group of the reduced image.
std::vector<Matrix> denoise_groups(const HsiCube& reduced,
                                   const PatchGroupSet& group_set,
                                   const PatchGeometry& geom, double sigma,
                                   const GroupDenoiser& denoiser);

// sigma_next = gamma * sqrt(|sigma0^2 - ||x - x_ref||_F^2 / (M N B)|).
double reestimate_noise(const HsiCube& x, const HsiCube& x_ref,
                        const NoiseState& state);

}  // namespace ngmeet
