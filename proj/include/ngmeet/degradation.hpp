#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ngmeet/hsi_cube.hpp"
#include "ngmeet/numerics.hpp"

namespace ngmeet {

// Operator output. Cube-shaped measurements (identity, mask) keep the cube
// dims; CASSI frames are rows x cols with bands == 1; compressed samples
// are a plain vector (rows == length, cols == bands == 1).
struct Measurement {
    Vector data;
    int rows = 0;
    int cols = 0;
    int bands = 1;

    static Measurement from_cube(const HsiCube& x);
    HsiCube to_cube(double value_scale = 255.0) const;
};

class DegradationOp {
public:
    virtual ~DegradationOp() = default;

    virtual Measurement apply(const HsiCube& x) const = 0;
    virtual HsiCube adjoint(const Measurement& y) const = 0;

    virtual std::array<int, 3> input_shape() const = 0;  // rows, cols, bands
    virtual std::string name() const = 0;
};

class IdentityOp final : public DegradationOp {
public:
    IdentityOp(int rows, int cols, int bands);

    Measurement apply(const HsiCube& x) const override;
    HsiCube adjoint(const Measurement& y) const override;
    std::array<int, 3> input_shape() const override { return shape_; }
    std::string name() const override { return "identity"; }

private:
    std::array<int, 3> shape_;
};

class MaskOp final : public DegradationOp {
public:
    MaskOp(int rows, int cols, int bands, std::vector<std::uint8_t> omega);

    Measurement apply(const HsiCube& x) const override;
    HsiCube adjoint(const Measurement& y) const override;
    std::array<int, 3> input_shape() const override { return shape_; }
    std::string name() const override { return "mask"; }

    const std::vector<std::uint8_t>& omega() const { return omega_; }
    std::int64_t observed_count() const { return observed_; }

private:
    std::array<int, 3> shape_;
    std::vector<std::uint8_t> omega_;  // 1 = observed, band-sequential
    std::int64_t observed_ = 0;
};

// h = S P2 H P1 vec(.): seeded random permutations P1/P2, orthonormal
// Walsh-Hadamard H on the zero-padded power-of-two length, S keeps the
// first sample_count entries. Rows are orthonormal, so h h* = I.
class HadamardCsOp final : public DegradationOp {
public:
    HadamardCsOp(int rows, int cols, int bands, double sampling_ratio,
                 std::uint64_t seed);

    Measurement apply(const HsiCube& x) const override;
    HsiCube adjoint(const Measurement& y) const override;
    std::array<int, 3> input_shape() const override { return shape_; }
    std::string name() const override { return "hadamard"; }

    std::int64_t sample_count() const { return sample_count_; }
    std::int64_t padded_len() const { return padded_len_; }

private:
    std::array<int, 3> shape_;
    std::int64_t padded_len_ = 0;
    std::int64_t sample_count_ = 0;
    std::vector<std::int64_t> perm1_;
    std::vector<std::int64_t> perm2_;
};

// Single-disperser snapshot operator with unit shear along columns:
// y(i, j) = sum_b mask(i, j - b) x(i, j - b, b). The measured frame is
// rows x (cols + bands - 1) so the shear always stays inside it.
class CassiOp final : public DegradationOp {
public:
    CassiOp(int rows, int cols, int bands, std::vector<std::uint8_t> mask);

    Measurement apply(const HsiCube& x) const override;
    HsiCube adjoint(const Measurement& y) const override;
    std::array<int, 3> input_shape() const override { return shape_; }
    std::string name() const override { return "cassi"; }

    const std::vector<std::uint8_t>& mask() const { return mask_; }
    int frame_cols() const { return shape_[1] + shape_[2] - 1; }

private:
    std::array<int, 3> shape_;
    std::vector<std::uint8_t> mask_;  // rows x cols, row-major
};

std::shared_ptr<MaskOp> make_mask(int rows, int cols, int bands,
                                  double sampling_ratio, std::uint64_t seed);
std::shared_ptr<HadamardCsOp> make_hadamard_cs(int rows, int cols, int bands,
                                               double sampling_ratio,
                                               std::uint64_t seed);
std::shared_ptr<CassiOp> make_cassi(int rows, int cols, int bands,
                                    double mask_density, std::uint64_t seed);

// Step-3 latent updates.
HsiCube latent_update_denoise(const HsiCube& y, const HsiCube& lifted,
                              double mu);
HsiCube latent_update_inpaint(const HsiCube& y, const HsiCube& lifted,
                              const MaskOp& op);

struct CsUpdateResult {
    HsiCube z;
    CgResult cg;
};

// Solves (h* h + mu I) z = h*(y) + mu * lifted by conjugate gradient.
CsUpdateResult latent_update_cs(const Measurement& y, const HsiCube& lifted,
                                const DegradationOp& op, double mu,
                                double cg_tol, int cg_max);

}  // namespace ngmeet
