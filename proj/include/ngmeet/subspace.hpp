#pragma once

#include "ngmeet/hsi_cube.hpp"

namespace ngmeet {

// Column-orthonormal spectral basis A (bands x rank).
struct SpectralBasis {
    Matrix A;

    int bands() const { return static_cast<int>(A.rows()); }
    int rank() const { return static_cast<int>(A.cols()); }
};

// Linear rank growth K(i) = min(K0 + delta * i, band_cap).
struct RankSchedule {
    int k0 = 1;
    int delta = 0;
    int band_cap = 1;
};

int adapt_rank(const RankSchedule& schedule, int iter);

struct HysimeResult {
    int k0 = 1;
    Vector sigma_bands;  // per-band noise std from the regression residuals

    // Single noise scale consumed by the restoration loop.
    double sigma_scalar() const {
        return std::sqrt(sigma_bands.squaredNorm() /
                         static_cast<double>(sigma_bands.size()));
    }
};

// Signal-subspace dimension and per-band noise estimate. Each band is
// regressed on all the others; the signal correlation is the data
// correlation minus the (diagonal) noise correlation, and directions whose
// projection error outweighs their noise cost are kept.
HysimeResult estimate_rank_hysime(const HsiCube& y);

struct BasisExtraction {
    SpectralBasis basis;
    HsiCube reduced;  // y ×₃ Aᵀ
};

// A = top-K left singular vectors of Z's mode-3 unfolding; the largest-
// magnitude entry of each column is made nonnegative to fix the sign.
BasisExtraction extract_basis_svd(const HsiCube& z, int k);

// Orthogonal-Procrustes basis: A maximizing <A, Z3 * M3'> over A'A = I.
// When delta > 0 the reduced image is first augmented with delta extra
// bands taken from the leading right-singular directions of the residual
// Z - M ×₃ A, orthonormalized against the existing reduced bands.
SpectralBasis extract_basis_procrustes(const HsiCube& z,
                                       const HsiCube& m_prev, int delta);

HsiCube project(const HsiCube& z, const SpectralBasis& basis);
HsiCube lift(const HsiCube& m, const SpectralBasis& basis);

}  // namespace ngmeet
