#include "ngmeet/numerics.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>
#include <string>

namespace ngmeet {

SvdResult thin_svd(const Matrix& m) {
    if (!m.allFinite())
        throw std::invalid_argument("thin_svd: input has non-finite entries");
    Eigen::BDCSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    if (svd.info() != Eigen::Success)
        throw std::runtime_error(
            "thin_svd: decomposition did not converge for " +
            std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
            " input");
    return SvdResult{svd.matrixU(), svd.singularValues(),
                     svd.matrixV().transpose()};
}

SvdResult truncated_svd(const Matrix& m, int k) {
    const int r = static_cast<int>(std::min(m.rows(), m.cols()));
    if (k < 1 || k > r)
        throw std::invalid_argument("truncated_svd: rank out of range");
    SvdResult full = thin_svd(m);
    return SvdResult{full.U.leftCols(k), full.s.head(k), full.Vt.topRows(k)};
}

CgResult conjugate_gradient(const std::function<Vector(const Vector&)>& op,
                            const Vector& rhs, double tol, int max_iter,
                            const Vector* inv_diag_precond,
                            const CgObserver& observer) {
    const double rhs_norm = rhs.norm();
    CgResult out;
    out.x = Vector::Zero(rhs.size());
    if (rhs_norm == 0.0) {
        out.converged = true;
        return out;
    }

    Vector r = rhs;  // residual of x = 0
    Vector z = inv_diag_precond ? Vector(inv_diag_precond->cwiseProduct(r))
                                : r;
    Vector p = z;
    double rz = r.dot(z);

    for (int it = 0; it < max_iter; ++it) {
        const Vector ap = op(p);
        const double pap = p.dot(ap);
        if (!std::isfinite(pap) || pap <= 0.0)
            throw std::runtime_error(
                "conjugate_gradient: operator is not SPD on the iterate "
                "(p'Ap = " +
                std::to_string(pap) + " at iteration " + std::to_string(it) +
                ")");
        const double alpha = rz / pap;
        out.x += alpha * p;
        r -= alpha * ap;
        if (!r.allFinite())
            throw std::runtime_error(
                "conjugate_gradient: NaN in iterates at iteration " +
                std::to_string(it));
        out.iterations = it + 1;
        out.rel_residual = r.norm() / rhs_norm;
        if (observer) observer(out.iterations, out.x, out.rel_residual);
        if (out.rel_residual <= tol) {
            out.converged = true;
            return out;
        }
        z = inv_diag_precond ? Vector(inv_diag_precond->cwiseProduct(r)) : r;
        const double rz_next = r.dot(z);
        p = z + (rz_next / rz) * p;
        rz = rz_next;
    }
    out.converged = false;
    return out;
}

Vector fwht(const Vector& v, bool inverse) {
    (void)inverse;  // orthonormal scaling makes the transform an involution
    const auto n = v.size();
    if (n <= 0 || (n & (n - 1)) != 0)
        throw std::invalid_argument("fwht: length must be a power of two");
    Vector w = v;
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (Eigen::Index h = 1; h < n; h <<= 1) {
        for (Eigen::Index i = 0; i < n; i += h << 1) {
            for (Eigen::Index j = i; j < i + h; ++j) {
                const double a = w[j];
                const double b = w[j + h];
                w[j] = (a + b) * inv_sqrt2;
                w[j + h] = (a - b) * inv_sqrt2;
            }
        }
    }
    return w;
}

}  // namespace ngmeet
