#include "ngmeet/degradation.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "ngmeet/rng.hpp"

namespace ngmeet {

namespace {

void check_shape(const HsiCube& x, const std::array<int, 3>& shape,
                 const char* who) {
    if (x.rows() != shape[0] || x.cols() != shape[1] ||
        x.bands() != shape[2])
        throw std::invalid_argument(std::string(who) +
                                    ": cube shape mismatch");
}

void check_measurement(const Measurement& y, std::int64_t len,
                       const char* who) {
    if (y.data.size() != len)
        throw std::invalid_argument(std::string(who) +
                                    ": measurement length mismatch");
}

std::int64_t next_pow2(std::int64_t n) {
    std::int64_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

}  // namespace

Measurement Measurement::from_cube(const HsiCube& x) {
    Measurement m;
    m.rows = x.rows();
    m.cols = x.cols();
    m.bands = x.bands();
    m.data = Eigen::Map<const Vector>(x.raw().data(), x.size());
    return m;
}

HsiCube Measurement::to_cube(double value_scale) const {
    HsiCube out(rows, cols, bands, value_scale);
    if (data.size() != out.size())
        throw std::invalid_argument("Measurement::to_cube: size mismatch");
    Eigen::Map<Vector>(out.raw().data(), out.size()) = data;
    return out;
}

IdentityOp::IdentityOp(int rows, int cols, int bands)
    : shape_{rows, cols, bands} {}

Measurement IdentityOp::apply(const HsiCube& x) const {
    check_shape(x, shape_, "IdentityOp::apply");
    return Measurement::from_cube(x);
}

HsiCube IdentityOp::adjoint(const Measurement& y) const {
    check_measurement(y, static_cast<std::int64_t>(shape_[0]) * shape_[1] *
                             shape_[2],
                      "IdentityOp::adjoint");
    Measurement m = y;
    m.rows = shape_[0];
    m.cols = shape_[1];
    m.bands = shape_[2];
    return m.to_cube();
}

MaskOp::MaskOp(int rows, int cols, int bands,
               std::vector<std::uint8_t> omega)
    : shape_{rows, cols, bands}, omega_(std::move(omega)) {
    const auto len = static_cast<std::size_t>(rows) * cols * bands;
    if (omega_.size() != len)
        throw std::invalid_argument("MaskOp: omega length mismatch");
    for (auto b : omega_) observed_ += (b != 0);
}

Measurement MaskOp::apply(const HsiCube& x) const {
    check_shape(x, shape_, "MaskOp::apply");
    Measurement m = Measurement::from_cube(x);
    for (std::int64_t i = 0; i < m.data.size(); ++i)
        if (!omega_[static_cast<std::size_t>(i)]) m.data[i] = 0.0;
    return m;
}

HsiCube MaskOp::adjoint(const Measurement& y) const {
    const auto len =
        static_cast<std::int64_t>(shape_[0]) * shape_[1] * shape_[2];
    check_measurement(y, len, "MaskOp::adjoint");
    HsiCube out(shape_[0], shape_[1], shape_[2]);
    auto& raw = out.raw();
    for (std::int64_t i = 0; i < len; ++i)
        raw[static_cast<std::size_t>(i)] =
            omega_[static_cast<std::size_t>(i)] ? y.data[i] : 0.0;
    return out;
}

HadamardCsOp::HadamardCsOp(int rows, int cols, int bands,
                           double sampling_ratio, std::uint64_t seed)
    : shape_{rows, cols, bands} {
    if (sampling_ratio <= 0.0 || sampling_ratio > 1.0)
        throw std::invalid_argument(
            "HadamardCsOp: sampling ratio must be in (0, 1]");
    const std::int64_t len =
        static_cast<std::int64_t>(rows) * cols * bands;
    padded_len_ = next_pow2(len);
    sample_count_ = static_cast<std::int64_t>(sampling_ratio *
                                              static_cast<double>(len));
    if (sample_count_ < 1) sample_count_ = 1;
    std::mt19937_64 gen(seed);
    perm1_ = rng::permutation(padded_len_, gen);
    perm2_ = rng::permutation(padded_len_, gen);
}

Measurement HadamardCsOp::apply(const HsiCube& x) const {
    check_shape(x, shape_, "HadamardCsOp::apply");
    Vector padded = Vector::Zero(padded_len_);
    for (std::int64_t i = 0; i < x.size(); ++i)
        padded[i] = x.raw()[static_cast<std::size_t>(i)];
    Vector permuted(padded_len_);
    for (std::int64_t i = 0; i < padded_len_; ++i)
        permuted[i] = padded[perm1_[static_cast<std::size_t>(i)]];
    const Vector transformed = fwht(permuted);
    Measurement m;
    m.rows = static_cast<int>(sample_count_);
    m.cols = 1;
    m.bands = 1;
    m.data.resize(sample_count_);
    for (std::int64_t i = 0; i < sample_count_; ++i)
        m.data[i] = transformed[perm2_[static_cast<std::size_t>(i)]];
    return m;
}

HsiCube HadamardCsOp::adjoint(const Measurement& y) const {
    check_measurement(y, sample_count_, "HadamardCsOp::adjoint");
    Vector scattered = Vector::Zero(padded_len_);
    for (std::int64_t i = 0; i < sample_count_; ++i)
        scattered[perm2_[static_cast<std::size_t>(i)]] = y.data[i];
    const Vector transformed = fwht(scattered);
    Vector unpermuted = Vector::Zero(padded_len_);
    for (std::int64_t i = 0; i < padded_len_; ++i)
        unpermuted[perm1_[static_cast<std::size_t>(i)]] = transformed[i];
    HsiCube out(shape_[0], shape_[1], shape_[2]);
    for (std::int64_t i = 0; i < out.size(); ++i)
        out.raw()[static_cast<std::size_t>(i)] = unpermuted[i];
    return out;
}

CassiOp::CassiOp(int rows, int cols, int bands,
                 std::vector<std::uint8_t> mask)
    : shape_{rows, cols, bands}, mask_(std::move(mask)) {
    if (mask_.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("CassiOp: mask size mismatch");
}

Measurement CassiOp::apply(const HsiCube& x) const {
    check_shape(x, shape_, "CassiOp::apply");
    const int rows = shape_[0], cols = shape_[1], bands = shape_[2];
    const int fcols = frame_cols();
    Measurement m;
    m.rows = rows;
    m.cols = fcols;
    m.bands = 1;
    m.data = Vector::Zero(static_cast<std::int64_t>(rows) * fcols);
    for (int b = 0; b < bands; ++b)
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (mask_[static_cast<std::size_t>(i) * cols + j])
                    m.data[static_cast<std::int64_t>(i) * fcols + j + b] +=
                        x.at(i, j, b);
    return m;
}

HsiCube CassiOp::adjoint(const Measurement& y) const {
    const int rows = shape_[0], cols = shape_[1], bands = shape_[2];
    const int fcols = frame_cols();
    check_measurement(y, static_cast<std::int64_t>(rows) * fcols,
                      "CassiOp::adjoint");
    HsiCube out(rows, cols, bands);
    for (int b = 0; b < bands; ++b)
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (mask_[static_cast<std::size_t>(i) * cols + j])
                    out.at(i, j, b) =
                        y.data[static_cast<std::int64_t>(i) * fcols + j + b];
    return out;
}

std::shared_ptr<MaskOp> make_mask(int rows, int cols, int bands,
                                  double sampling_ratio,
                                  std::uint64_t seed) {
    if (sampling_ratio <= 0.0 || sampling_ratio > 1.0)
        throw std::invalid_argument(
            "make_mask: sampling ratio must be in (0, 1]");
    const std::int64_t len =
        static_cast<std::int64_t>(rows) * cols * bands;
    const auto count = static_cast<std::int64_t>(
        sampling_ratio * static_cast<double>(len));
    std::mt19937_64 gen(seed);
    const auto order = rng::permutation(len, gen);
    std::vector<std::uint8_t> omega(static_cast<std::size_t>(len), 0);
    for (std::int64_t i = 0; i < count; ++i)
        omega[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] =
            1;
    return std::make_shared<MaskOp>(rows, cols, bands, std::move(omega));
}

std::shared_ptr<HadamardCsOp> make_hadamard_cs(int rows, int cols, int bands,
                                               double sampling_ratio,
                                               std::uint64_t seed) {
    return std::make_shared<HadamardCsOp>(rows, cols, bands, sampling_ratio,
                                          seed);
}

std::shared_ptr<CassiOp> make_cassi(int rows, int cols, int bands,
                                    double mask_density,
                                    std::uint64_t seed) {
    if (mask_density <= 0.0 || mask_density > 1.0)
        throw std::invalid_argument(
            "make_cassi: mask density must be in (0, 1]");
    std::mt19937_64 gen(seed);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(rows) * cols);
    for (auto& m : mask) m = rng::uniform01(gen) < mask_density ? 1 : 0;
    return std::make_shared<CassiOp>(rows, cols, bands, std::move(mask));
}

HsiCube latent_update_denoise(const HsiCube& y, const HsiCube& lifted,
                              double mu) {
    if (!y.same_shape(lifted))
        throw std::invalid_argument("latent_update_denoise: shape mismatch");
    return axpby(1.0 / (1.0 + mu), y, mu / (1.0 + mu), lifted);
}

HsiCube latent_update_inpaint(const HsiCube& y, const HsiCube& lifted,
                              const MaskOp& op) {
    if (!y.same_shape(lifted))
        throw std::invalid_argument("latent_update_inpaint: shape mismatch");
    HsiCube out = lifted;
    const auto& omega = op.omega();
    if (omega.size() != static_cast<std::size_t>(out.size()))
        throw std::invalid_argument(
            "latent_update_inpaint: mask shape mismatch");
    for (std::size_t i = 0; i < omega.size(); ++i)
        if (omega[i]) out.raw()[i] = y.raw()[i];
    return out;
}

CsUpdateResult latent_update_cs(const Measurement& y, const HsiCube& lifted,
                                const DegradationOp& op, double mu,
                                double cg_tol, int cg_max) {
    if (mu <= 0.0)
        throw std::invalid_argument("latent_update_cs: mu must be positive");
    const auto shape = op.input_shape();
    check_shape(lifted, shape, "latent_update_cs");

    const auto to_cube = [&](const Vector& v) {
        HsiCube c(shape[0], shape[1], shape[2], lifted.value_scale());
        Eigen::Map<Vector>(c.raw().data(), c.size()) = v;
        return c;
    };
    const auto to_vec = [](const HsiCube& c) {
        return Vector(Eigen::Map<const Vector>(c.raw().data(), c.size()));
    };

    const Vector rhs =
        to_vec(op.adjoint(y)) + mu * to_vec(lifted);
    const auto system = [&](const Vector& v) {
        return Vector(to_vec(op.adjoint(op.apply(to_cube(v)))) + mu * v);
    };

    CgResult cg = conjugate_gradient(system, rhs, cg_tol, cg_max);
    CsUpdateResult out{to_cube(cg.x), std::move(cg)};
    return out;
}

}  // namespace ngmeet
