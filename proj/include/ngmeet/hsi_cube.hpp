#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace ngmeet {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// A hyperspectral cube of shape rows x cols x bands, stored band-sequential:
// band b occupies a contiguous rows*cols block, row-major within the band.
// That makes the mode-3 unfolding (bands x rows*cols) a zero-copy view.
class HsiCube {
public:
    HsiCube() = default;
    HsiCube(int rows, int cols, int bands, double value_scale = 255.0);

    static HsiCube from_data(int rows, int cols, int bands,
                             std::vector<double> data,
                             double value_scale = 255.0);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int bands() const { return bands_; }
    std::int64_t size() const {
        return static_cast<std::int64_t>(rows_) * cols_ * bands_;
    }
    std::int64_t pixels() const {
        return static_cast<std::int64_t>(rows_) * cols_;
    }

    double value_scale() const { return value_scale_; }
    void set_value_scale(double s) { value_scale_ = s; }

    double& at(int i, int j, int b) { return data_[index(i, j, b)]; }
    double at(int i, int j, int b) const { return data_[index(i, j, b)]; }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    bool same_shape(const HsiCube& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ &&
               bands_ == other.bands_;
    }
    bool all_finite() const;

private:
    std::int64_t index(int i, int j, int b) const {
        return (static_cast<std::int64_t>(b) * rows_ + i) * cols_ + j;
    }

    int rows_ = 0;
    int cols_ = 0;
    int bands_ = 0;
    double value_scale_ = 255.0;
    std::vector<double> data_;
};

using UnfoldView =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>;

// Mode-3 unfolding: row b of the result is band b flattened row-major.
UnfoldView unfold_mode3_view(const HsiCube& x);
Matrix unfold_mode3(const HsiCube& x);

// Inverse of unfold_mode3; m must have rows*cols columns.
HsiCube fold_mode3(const Matrix& m, int rows, int cols,
                   double value_scale = 255.0);

// y = x ×₃ A, i.e. fold₃(A · X₍₃₎); with transpose set, fold₃(Aᵀ · X₍₃₎).
HsiCube mode3_product(const HsiCube& x, const Matrix& a,
                      bool transpose = false);

double frobenius_norm(const HsiCube& x);

// Elementwise a*x + b*y; shapes must agree.
HsiCube axpby(double a, const HsiCube& x, double b, const HsiCube& y);

}  // namespace ngmeet
