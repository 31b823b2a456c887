#include "ngmeet/denoiser.hpp"

#include <cmath>
#include <stdexcept>

#include "ngmeet/numerics.hpp"
#include "ngmeet/parallel.hpp"

namespace ngmeet {

Matrix wnnm_prox(const Matrix& g, double sigma, const WnnmParams& params) {
    if (!g.allFinite())
        throw std::invalid_argument("wnnm_prox: non-finite entries");
    const double p = static_cast<double>(g.cols());
    SvdResult svd = thin_svd(g);
    Vector shrunk(svd.s.size());
    for (Eigen::Index j = 0; j < svd.s.size(); ++j) {
        const double sj = svd.s(j);
        const double clean =
            std::sqrt(std::max(sj * sj - p * sigma * sigma, 0.0));
        const double w = params.weight_const * std::sqrt(p) * sigma * sigma /
                         (clean + params.eps);
        shrunk(j) = std::max(sj - w, 0.0);
    }
    return svd.U * shrunk.asDiagonal() * svd.Vt;
}

GroupDenoiser make_wnnm_denoiser(const WnnmParams& params) {
    return [params](const Matrix& g, double sigma) {
        return wnnm_prox(g, sigma, params);
    };
}

std::vector<Matrix> denoise_groups(const HsiCube& reduced,
                                   const PatchGroupSet& group_set,
                                   const PatchGeometry& geom, double sigma,
                                   const GroupDenoiser& denoiser) {
    std::vector<Matrix> out(group_set.groups.size());
    parallel_for(static_cast<std::int64_t>(group_set.groups.size()),
                 [&](std::int64_t j) {
        const Matrix g = gather_group(reduced, group_set.groups[j], geom);
        out[j] = denoiser(g, sigma);
    });
    return out;
}

double reestimate_noise(const HsiCube& x, const HsiCube& x_ref,
                        const NoiseState& state) {
    if (!x.same_shape(x_ref))
        throw std::invalid_argument("reestimate_noise: shape mismatch");
    const double removed =
        std::pow(frobenius_norm(axpby(1.0, x, -1.0, x_ref)), 2) /
        static_cast<double>(x.size());
    return state.gamma *
           std::sqrt(std::abs(state.sigma0 * state.sigma0 - removed));
}

}  // namespace ngmeet
