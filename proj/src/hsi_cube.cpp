#include "ngmeet/hsi_cube.hpp"

#include <cmath>
#include <stdexcept>

namespace ngmeet {

HsiCube::HsiCube(int rows, int cols, int bands, double value_scale)
    : rows_(rows), cols_(cols), bands_(bands), value_scale_(value_scale) {
    if (rows <= 0 || cols <= 0 || bands <= 0)
        throw std::invalid_argument("HsiCube: dimensions must be positive");
    data_.assign(static_cast<std::size_t>(size()), 0.0);
}

HsiCube HsiCube::from_data(int rows, int cols, int bands,
                           std::vector<double> data, double value_scale) {
    HsiCube cube(rows, cols, bands, value_scale);
    if (data.size() != static_cast<std::size_t>(cube.size()))
        throw std::invalid_argument("HsiCube: data length != rows*cols*bands");
    cube.data_ = std::move(data);
    return cube;
}

bool HsiCube::all_finite() const {
    for (double v : data_)
        if (!std::isfinite(v)) return false;
    return true;
}

UnfoldView unfold_mode3_view(const HsiCube& x) {
    return UnfoldView(x.raw().data(), x.bands(), x.pixels());
}

Matrix unfold_mode3(const HsiCube& x) { return unfold_mode3_view(x); }

HsiCube fold_mode3(const Matrix& m, int rows, int cols, double value_scale) {
    if (m.cols() != static_cast<Eigen::Index>(rows) * cols)
        throw std::invalid_argument("fold_mode3: cols != rows*cols of target");
    HsiCube out(rows, cols, static_cast<int>(m.rows()), value_scale);
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>
        dst(out.raw().data(), m.rows(), m.cols());
    dst = m;
    return out;
}

HsiCube mode3_product(const HsiCube& x, const Matrix& a, bool transpose) {
    const Eigen::Index inner = transpose ? a.rows() : a.cols();
    if (inner != x.bands())
        throw std::invalid_argument(
            "mode3_product: inner dimensions do not agree");
    const Eigen::Index out_bands = transpose ? a.cols() : a.rows();
    HsiCube out(x.rows(), x.cols(), static_cast<int>(out_bands),
                x.value_scale());
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>
        dst(out.raw().data(), out_bands, x.pixels());
    if (transpose)
        dst.noalias() = a.transpose() * unfold_mode3_view(x);
    else
        dst.noalias() = a * unfold_mode3_view(x);
    return out;
}

double frobenius_norm(const HsiCube& x) {
    double s = 0.0;
    for (double v : x.raw()) s += v * v;
    return std::sqrt(s);
}

HsiCube axpby(double a, const HsiCube& x, double b, const HsiCube& y) {
    if (!x.same_shape(y))
        throw std::invalid_argument("axpby: shape mismatch");
    HsiCube out(x.rows(), x.cols(), x.bands(), x.value_scale());
    const auto& xs = x.raw();
    const auto& ys = y.raw();
    auto& os = out.raw();
    for (std::size_t i = 0; i < os.size(); ++i) os[i] = a * xs[i] + b * ys[i];
    return out;
}

}  // namespace ngmeet
