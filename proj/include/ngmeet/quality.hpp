#pragma once

#include <cstdint>
#include <vector>

#include "ngmeet/hsi_cube.hpp"

namespace ngmeet {

struct MetricReport {
    double psnr_db = 0.0;
    bool psnr_infinite = false;
    double ssim = 0.0;
    bool ssim_fallback = false;  // image smaller than the 11x11 window
    double sam_degrees = 0.0;
    std::int64_t sam_skipped = 0;  // zero-norm spectral vectors
    std::vector<double> band_psnr;
    std::vector<double> band_ssim;
};

struct PsnrResult {
    double mean_db = 0.0;
    bool infinite = false;
    std::vector<double> band_db;
};

// Band-wise 10 log10(peak^2 / MSE), arithmetic mean across bands.
// peak <= 0 uses ref.value_scale(). Identical inputs flag infinite.
PsnrResult psnr(const HsiCube& x, const HsiCube& ref, double peak = 0.0);

struct SsimResult {
    double mean = 0.0;
    bool fallback = false;
    std::vector<double> band;
};

// Band-wise SSIM with the standard 11x11 Gaussian window (sigma 1.5),
// K1 = 0.01, K2 = 0.03, L = ref.value_scale(); mean over bands. Images
// smaller than the window fall back to global statistics (flagged).
SsimResult ssim(const HsiCube& x, const HsiCube& ref);

struct SamResult {
    double degrees = 0.0;
    std::int64_t skipped = 0;
};

// Mean spectral angle in degrees over pixels; zero-norm pixels are
// skipped and counted.
SamResult sam(const HsiCube& x, const HsiCube& ref);

MetricReport evaluate(const HsiCube& x, const HsiCube& ref);

}  // namespace ngmeet
