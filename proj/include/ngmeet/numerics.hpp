#pragma once

#include <functional>

#include "ngmeet/hsi_cube.hpp"

namespace ngmeet {

// Thin SVD factors: U (m x r) column-orthonormal, s non-increasing and
// nonnegative, Vt (r x n) row-orthonormal, r = min(m, n) unless truncated.
struct SvdResult {
    Matrix U;
    Vector s;
    Matrix Vt;

    Matrix reconstruct() const { return U * s.asDiagonal() * Vt; }
};

SvdResult thin_svd(const Matrix& m);

// Rank-k leading factors of the thin SVD, 1 <= k <= min(m, n).
SvdResult truncated_svd(const Matrix& m, int k);

// A linear operator given by matching apply/adjoint callables.
struct LinearMap {
    std::function<Vector(const Vector&)> apply;
    std::function<Vector(const Vector&)> adjoint;
    std::int64_t in_dim = 0;
    std::int64_t out_dim = 0;
};

struct CgResult {
    Vector x;
    int iterations = 0;
    double rel_residual = 0.0;
    bool converged = false;
};

using CgObserver = std::function<void(int iter, const Vector& x,
                                      double rel_residual)>;

// Unpreconditioned CG for an SPD operator; stops when ||op(x) - rhs|| <=
// tol * ||rhs|| or max_iter. The optional diagonal preconditioner hook
// accepts the inverse diagonal. NaN in the iterates aborts with a
// diagnostic.
CgResult conjugate_gradient(const std::function<Vector(const Vector&)>& op,
                            const Vector& rhs, double tol, int max_iter,
                            const Vector* inv_diag_precond = nullptr,
                            const CgObserver& observer = nullptr);

// Orthonormal fast Walsh-Hadamard transform (1/sqrt(2) butterflies), its own
// inverse. Length must be a power of two.
Vector fwht(const Vector& v, bool inverse = false);

}  // namespace ngmeet
