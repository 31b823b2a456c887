#include "ngmeet/subspace.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ngmeet/numerics.hpp"
#include "ngmeet/parallel.hpp"

namespace ngmeet {

namespace {

void fix_column_signs(Matrix& a) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
        Eigen::Index imax = 0;
        a.col(c).cwiseAbs().maxCoeff(&imax);
        if (a(imax, c) < 0.0) a.col(c) = -a.col(c);
    }
}

// Orthonormal polar factor of w: with w = U S V', returns U V'.
Matrix polar_factor(const Matrix& w) {
    Eigen::BDCSVD<Matrix> svd(w, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

int adapt_rank(const RankSchedule& schedule, int iter) {
    return std::min(schedule.k0 + schedule.delta * iter, schedule.band_cap);
}

HysimeResult estimate_rank_hysime(const HsiCube& y) {
    const int bands = y.bands();
    const auto n = y.pixels();
    if (bands < 3)
        throw std::invalid_argument(
            "estimate_rank_hysime: needs at least 3 bands");

    const auto [mn, mx] =
        std::minmax_element(y.raw().begin(), y.raw().end());
    if (*mn == *mx)
        return HysimeResult{1, Vector::Zero(bands)};

    const UnfoldView data = unfold_mode3_view(y);
    const Matrix corr = data * data.transpose();  // B x B, unnormalized
    const Matrix corr_inv =
        (corr + 1e-6 * Matrix::Identity(bands, bands)).inverse();

    // Noise per band: regression of band i on all other bands, done with
    // the rank-one update of the inverse correlation.
    Matrix noise(bands, n);
    parallel_for(bands, [&](std::int64_t i) {
        const Matrix xx =
            corr_inv -
            (corr_inv.col(i) * corr_inv.row(i)) / corr_inv(i, i);
        Vector rhs = corr.col(i);
        rhs(i) = 0.0;
        Vector beta = xx * rhs;
        beta(i) = 0.0;
        noise.row(i) = data.row(i) - beta.transpose() * data;
    });

    Vector noise_var(bands);
    for (int i = 0; i < bands; ++i)
        noise_var(i) = noise.row(i).squaredNorm() / static_cast<double>(n);

    const Matrix ry = corr / static_cast<double>(n);
    Matrix rx = ry;
    rx.diagonal() -= noise_var;

    // Small diagonal loading keeps the criterion stable when the data is
    // nearly noise-free.
    const double load =
        std::max(rx.trace(), 0.0) / static_cast<double>(bands) * 1e-5;

    Eigen::SelfAdjointEigenSolver<Matrix> eig(rx);
    if (eig.info() != Eigen::Success)
        throw std::runtime_error("estimate_rank_hysime: eigensolver failed");

    int k0 = 0;
    for (int i = 0; i < bands; ++i) {
        const Vector e = eig.eigenvectors().col(i);
        const double power_data = e.dot(ry * e);
        const double power_noise =
            e.cwiseAbs2().dot(noise_var) + load;
        if (2.0 * power_noise - power_data < 0.0) ++k0;
    }
    k0 = std::clamp(k0, 1, bands);

    return HysimeResult{k0, noise_var.cwiseMax(0.0).cwiseSqrt()};
}

BasisExtraction extract_basis_svd(const HsiCube& z, int k) {
    const int bands = z.bands();
    const int max_rank = static_cast<int>(std::min<std::int64_t>(
        bands, z.pixels()));
    if (k < 1 || k > bands)
        throw std::invalid_argument("extract_basis_svd: rank out of range");
    if (k > max_rank)
        throw std::invalid_argument(
            "extract_basis_svd: rank exceeds unfolding rank bound");

    Eigen::BDCSVD<Matrix> svd(unfold_mode3_view(z), Eigen::ComputeThinU);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error("extract_basis_svd: SVD did not converge");

    Matrix a = svd.matrixU().leftCols(k);
    fix_column_signs(a);
    SpectralBasis basis{std::move(a)};
    HsiCube reduced = mode3_product(z, basis.A, /*transpose=*/true);
    return BasisExtraction{std::move(basis), std::move(reduced)};
}

SpectralBasis extract_basis_procrustes(const HsiCube& z,
                                       const HsiCube& m_prev, int delta) {
    const int bands = z.bands();
    const int k_prev = m_prev.bands();
    if (delta < 0 || k_prev + delta > bands)
        throw std::invalid_argument(
            "extract_basis_procrustes: rank would exceed band count");
    if (z.rows() != m_prev.rows() || z.cols() != m_prev.cols())
        throw std::invalid_argument(
            "extract_basis_procrustes: spatial shape mismatch");

    const UnfoldView z3 = unfold_mode3_view(z);
    const UnfoldView m3 = unfold_mode3_view(m_prev);

    const Matrix a0 = polar_factor(z3 * m3.transpose());
    if (delta == 0) return SpectralBasis{a0};

    // Augment the reduced image with fresh directions from the residual.
    const HsiCube residual = axpby(1.0, z, -1.0, mode3_product(m_prev, a0));
    Eigen::BDCSVD<Matrix> rsvd(unfold_mode3_view(residual),
                               Eigen::ComputeThinV);
    if (rsvd.info() != Eigen::Success)
        throw std::runtime_error(
            "extract_basis_procrustes: residual SVD did not converge");
    const Matrix v = rsvd.matrixV();  // pixels x min(bands, pixels)

    // Orthonormal basis of the existing reduced-band row space.
    Eigen::HouseholderQR<Matrix> qr(m3.transpose());
    const Matrix q = Matrix(qr.householderQ()).leftCols(k_prev);

    Matrix m_aug(k_prev + delta, m3.cols());
    m_aug.topRows(k_prev) = m3;
    int accepted = 0;
    for (Eigen::Index c = 0; c < v.cols() && accepted < delta; ++c) {
        Vector cand = v.col(c);
        cand -= q * (q.transpose() * cand);
        for (int j = 0; j < accepted; ++j) {
            const auto prev = m_aug.row(k_prev + j);
            cand -= prev.dot(cand) * prev.transpose();
        }
        const double norm = cand.norm();
        if (norm < 1e-8) continue;
        m_aug.row(k_prev + accepted) = cand.transpose() / norm;
        ++accepted;
    }
    if (accepted < delta)
        throw std::runtime_error(
            "extract_basis_procrustes: residual rank too low to augment");

    return SpectralBasis{polar_factor(z3 * m_aug.transpose())};
}

HsiCube project(const HsiCube& z, const SpectralBasis& basis) {
    return mode3_product(z, basis.A, /*transpose=*/true);
}

HsiCube lift(const HsiCube& m, const SpectralBasis& basis) {
    return mode3_product(m, basis.A, /*transpose=*/false);
}

}  // namespace ngmeet
