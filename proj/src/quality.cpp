#include "ngmeet/quality.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ngmeet {

namespace {

constexpr int kWindow = 11;
constexpr double kWindowSigma = 1.5;
constexpr double kK1 = 0.01;
constexpr double kK2 = 0.03;

void require_same_shape(const HsiCube& x, const HsiCube& ref,
                        const char* who) {
    if (!x.same_shape(ref))
        throw std::invalid_argument(std::string(who) + ": shape mismatch");
}

std::vector<double> gaussian_kernel() {
    std::vector<double> k(kWindow);
    const int half = kWindow / 2;
    double sum = 0.0;
    for (int i = 0; i < kWindow; ++i) {
        const double d = i - half;
        k[i] = std::exp(-d * d / (2.0 * kWindowSigma * kWindowSigma));
        sum += k[i];
    }
    for (auto& v : k) v /= sum;
    return k;
}

// Valid-region separable filtering of one band; out is (M-10) x (N-10).
Matrix filter_band(const HsiCube& x, int band,
                   const std::vector<double>& kernel) {
    const int rows = x.rows(), cols = x.cols();
    const int vr = rows - kWindow + 1, vc = cols - kWindow + 1;
    Matrix horiz(rows, vc);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < vc; ++j) {
            double s = 0.0;
            for (int v = 0; v < kWindow; ++v)
                s += kernel[v] * x.at(i, j + v, band);
            horiz(i, j) = s;
        }
    Matrix out(vr, vc);
    for (int i = 0; i < vr; ++i)
        for (int j = 0; j < vc; ++j) {
            double s = 0.0;
            for (int u = 0; u < kWindow; ++u) s += kernel[u] * horiz(i + u, j);
            out(i, j) = s;
        }
    return out;
}

double ssim_band_windowed(const HsiCube& x, const HsiCube& ref, int band,
                          const std::vector<double>& kernel, double c1,
                          double c2) {
    HsiCube xx(x.rows(), x.cols(), 1), yy(x.rows(), x.cols(), 1),
        xy(x.rows(), x.cols(), 1);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            const double a = x.at(i, j, band);
            const double b = ref.at(i, j, band);
            xx.at(i, j, 0) = a * a;
            yy.at(i, j, 0) = b * b;
            xy.at(i, j, 0) = a * b;
        }
    const Matrix mu_x = filter_band(x, band, kernel);
    const Matrix mu_y = filter_band(ref, band, kernel);
    const Matrix e_xx = filter_band(xx, 0, kernel);
    const Matrix e_yy = filter_band(yy, 0, kernel);
    const Matrix e_xy = filter_band(xy, 0, kernel);

    double acc = 0.0;
    for (Eigen::Index i = 0; i < mu_x.rows(); ++i)
        for (Eigen::Index j = 0; j < mu_x.cols(); ++j) {
            const double mx = mu_x(i, j), my = mu_y(i, j);
            const double vx = e_xx(i, j) - mx * mx;
            const double vy = e_yy(i, j) - my * my;
            const double cxy = e_xy(i, j) - mx * my;
            acc += ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
                   ((mx * mx + my * my + c1) * (vx + vy + c2));
        }
    return acc / static_cast<double>(mu_x.size());
}

double ssim_band_global(const HsiCube& x, const HsiCube& ref, int band,
                        double c1, double c2) {
    const double n = static_cast<double>(x.pixels());
    double mx = 0, my = 0;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            mx += x.at(i, j, band);
            my += ref.at(i, j, band);
        }
    mx /= n;
    my /= n;
    double vx = 0, vy = 0, cxy = 0;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            const double dx = x.at(i, j, band) - mx;
            const double dy = ref.at(i, j, band) - my;
            vx += dx * dx;
            vy += dy * dy;
            cxy += dx * dy;
        }
    vx /= n;
    vy /= n;
    cxy /= n;
    return ((2.0 * mx * my + c1) * (2.0 * cxy + c2)) /
           ((mx * mx + my * my + c1) * (vx + vy + c2));
}

}  // namespace

PsnrResult psnr(const HsiCube& x, const HsiCube& ref, double peak) {
    require_same_shape(x, ref, "psnr");
    if (peak <= 0.0) peak = ref.value_scale();
    PsnrResult out;
    out.band_db.resize(x.bands());
    const double n = static_cast<double>(x.pixels());
    double mean = 0.0;
    for (int b = 0; b < x.bands(); ++b) {
        double mse = 0.0;
        for (int i = 0; i < x.rows(); ++i)
            for (int j = 0; j < x.cols(); ++j) {
                const double d = x.at(i, j, b) - ref.at(i, j, b);
                mse += d * d;
            }
        mse /= n;
        const double v = mse == 0.0
                             ? std::numeric_limits<double>::infinity()
                             : 10.0 * std::log10(peak * peak / mse);
        out.band_db[b] = v;
        mean += v;
    }
    out.mean_db = mean / static_cast<double>(x.bands());
    out.infinite = std::isinf(out.mean_db);
    return out;
}

SsimResult ssim(const HsiCube& x, const HsiCube& ref) {
    require_same_shape(x, ref, "ssim");
    const double l = ref.value_scale();
    const double c1 = (kK1 * l) * (kK1 * l);
    const double c2 = (kK2 * l) * (kK2 * l);
    SsimResult out;
    out.fallback = x.rows() < kWindow || x.cols() < kWindow;
    const auto kernel = gaussian_kernel();
    out.band.resize(x.bands());
    double mean = 0.0;
    for (int b = 0; b < x.bands(); ++b) {
        out.band[b] = out.fallback
                          ? ssim_band_global(x, ref, b, c1, c2)
                          : ssim_band_windowed(x, ref, b, kernel, c1, c2);
        mean += out.band[b];
    }
    out.mean = mean / static_cast<double>(x.bands());
    return out;
}

SamResult sam(const HsiCube& x, const HsiCube& ref) {
    require_same_shape(x, ref, "sam");
    SamResult out;
    double acc = 0.0;
    std::int64_t used = 0;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            double dot = 0.0, nx = 0.0, nr = 0.0;
            for (int b = 0; b < x.bands(); ++b) {
                const double a = x.at(i, j, b);
                const double r = ref.at(i, j, b);
                dot += a * r;
                nx += a * a;
                nr += r * r;
            }
            if (nx == 0.0 || nr == 0.0) {
                ++out.skipped;
                continue;
            }
            double c = dot / std::sqrt(nx * nr);
            c = std::clamp(c, -1.0, 1.0);
            acc += std::acos(c);
            ++used;
        }
    out.degrees = used > 0 ? acc / static_cast<double>(used) * 180.0 /
                                 3.14159265358979323846
                           : 0.0;
    return out;
}

MetricReport evaluate(const HsiCube& x, const HsiCube& ref) {
    MetricReport r;
    const PsnrResult p = psnr(x, ref);
    const SsimResult s = ssim(x, ref);
    const SamResult a = sam(x, ref);
    r.psnr_db = p.mean_db;
    r.psnr_infinite = p.infinite;
    r.band_psnr = p.band_db;
    r.ssim = s.mean;
    r.ssim_fallback = s.fallback;
    r.band_ssim = s.band;
    r.sam_degrees = a.degrees;
    r.sam_skipped = a.skipped;
    return r;
}

}  // namespace ngmeet
