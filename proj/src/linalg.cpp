#include "circlab/linalg.hpp"

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

extern "C" void openblas_set_num_threads(int) __attribute__((weak));

namespace circlab {

ConvergenceError::ConvergenceError(std::size_t rows, std::size_t cols, double residual)
    : std::runtime_error("one-sided Jacobi did not converge on a " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrix (max relative off-diagonal " + std::to_string(residual) +
                         ")"),
      rows_(rows),
      cols_(cols),
      residual_(residual) {}

namespace {

double norm2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return s;
}

}  // namespace

SingularValues dense_svd(const DenseMatrix& m, const JacobiOptions& opts) {
    if (m.rows() == 0 || m.cols() == 0) throw std::invalid_argument("dense_svd: empty matrix");
    if (!m.all_finite()) throw std::invalid_argument("dense_svd: non-finite entries");
    const bool wide = m.rows() < m.cols();
    const std::size_t rows = wide ? m.cols() : m.rows();
    const std::size_t cols = wide ? m.rows() : m.cols();

    // Column-major working copy so each column is contiguous.
    std::vector<cplx> a(rows * cols);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (wide)
                a[i * rows + j] = std::conj(m(i, j));
            else
                a[j * rows + i] = m(i, j);
        }
    auto col = [&](std::size_t j) { return std::span<cplx>(a.data() + j * rows, rows); };

    const double tol =
        std::max(opts.tolerance, static_cast<double>(rows) * std::numeric_limits<double>::epsilon());
    // Columns at roundoff level relative to the whole matrix carry no singular
    // value information; rotating against them never converges.
    double frob2 = 0.0;
    for (const cplx& x : a) frob2 += std::norm(x);
    const double negligible = frob2 * std::pow(std::numeric_limits<double>::epsilon(), 2);
    double worst = 0.0;
    bool converged = cols == 1;
    for (std::size_t sweep = 0; sweep < opts.max_sweeps && !converged; ++sweep) {
        worst = 0.0;
        bool rotated = false;
        for (std::size_t i = 0; i + 1 < cols; ++i) {
            for (std::size_t j = i + 1; j < cols; ++j) {
                auto ci = col(i);
                auto cj = col(j);
                const double alpha = norm2(ci);
                const double beta = norm2(cj);
                if (alpha <= negligible || beta <= negligible) continue;
                cplx gamma{};
                for (std::size_t r = 0; r < rows; ++r) gamma += std::conj(ci[r]) * cj[r];
                const double g = std::abs(gamma);
                const double rel = g / std::sqrt(alpha * beta);
                worst = std::max(worst, rel);
                if (rel <= tol) continue;
                rotated = true;
                const cplx phase = std::conj(gamma) / g;  // e^{-i arg gamma}
                const double zeta = (beta - alpha) / (2.0 * g);
                const double t = std::copysign(1.0, zeta) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const cplx x = ci[r];
                    const cplx y = phase * cj[r];
                    ci[r] = c * x - s * y;
                    cj[r] = s * x + c * y;
                }
            }
        }
        converged = !rotated;
    }
    if (!converged) throw ConvergenceError(m.rows(), m.cols(), worst);

    SingularValues out;
    out.values.resize(cols);
    for (std::size_t j = 0; j < cols; ++j) out.values[j] = std::sqrt(norm2(col(j)));
    std::sort(out.values.begin(), out.values.end(), std::greater<>());
    return out;
}

LuDecomposition::LuDecomposition(const DenseMatrix& a) : lu_(a), perm_(a.rows()) {
    if (!a.square()) throw std::invalid_argument("LU decomposition requires a square matrix");
    const std::size_t n = a.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i)
            if (const double v = std::abs(lu_(i, k)); v > best) {
                best = v;
                p = i;
            }
        if (best == 0.0) {
            singular_ = true;
            continue;
        }
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
            std::swap(perm_[k], perm_[p]);
        }
        const cplx pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const cplx l = lu_(i, k) / pivot;
            lu_(i, k) = l;
            if (l == cplx{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= l * lu_(k, j);
        }
    }
}

std::vector<cplx> LuDecomposition::solve(std::span<const cplx> b) const {
    if (singular_) throw SingularMatrixError("LU solve with a singular matrix");
    const std::size_t n = size();
    if (b.size() != n) throw std::invalid_argument("LU solve: right-hand side has the wrong length");
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
        x[i] /= lu_(i, i);
    }
    return x;
}

DenseMatrix LuDecomposition::inverse() const {
    const std::size_t n = size();
    DenseMatrix inv(n, n);
    std::vector<cplx> e(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), cplx{});
        e[j] = 1.0;
        const auto x = solve(e);
        for (std::size_t i = 0; i < n; ++i) inv(i, j) = x[i];
    }
    return inv;
}

SigmaMinResult sigma_min_fast(const DenseMatrix& m, const SigmaMinOptions& opts) {
    if (!m.square() || m.rows() == 0) throw std::invalid_argument("sigma_min_fast requires a square matrix");
    if (!m.all_finite()) throw std::invalid_argument("sigma_min_fast: non-finite entries");
    if (openblas_set_num_threads) openblas_set_num_threads(1);

    const auto n = static_cast<lapack_int>(m.rows());
    std::vector<cplx> lu(m.data().begin(), m.data().end());
    std::vector<lapack_int> ipiv(m.rows());
    const lapack_int info = LAPACKE_zgetrf(LAPACK_ROW_MAJOR, n, n, lu.data(), n, ipiv.data());
    if (info < 0) throw std::runtime_error("zgetrf: illegal argument " + std::to_string(-info));
    SigmaMinResult res;
    if (info > 0) {
        res.singular = true;
        return res;
    }

    auto solve = [&](char trans, std::vector<cplx>& rhs) {
        const lapack_int rc =
            LAPACKE_zgetrs(LAPACK_ROW_MAJOR, trans, n, 1, lu.data(), n, ipiv.data(), rhs.data(), 1);
        if (rc != 0) throw std::runtime_error("zgetrs failed with code " + std::to_string(rc));
    };

    // Deterministic start vector with no special alignment to the Fourier basis.
    const std::size_t dim = m.rows();
    std::vector<cplx> x(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        const double u = std::sin(12.9898 * static_cast<double>(i + 1)) * 43758.5453;
        x[i] = u - std::floor(u) + 0.5;
    }
    const double xn = std::sqrt(norm2(x));
    for (auto& v : x) v /= xn;

    // Lanczos on B = (M^H M)^{-1} with full reorthogonalization; the largest
    // Ritz value approximates 1 / sigma_min^2.
    const std::size_t max_steps = std::min(opts.max_iterations, dim);
    std::vector<std::vector<cplx>> basis;
    std::vector<double> alpha, beta;
    basis.push_back(x);
    std::vector<cplx> w(dim);
    for (std::size_t k = 0; k < max_steps; ++k) {
        w = basis[k];
        solve('C', w);
        solve('N', w);
        double a = 0.0;
        for (std::size_t i = 0; i < dim; ++i) a += (std::conj(basis[k][i]) * w[i]).real();
        if (!std::isfinite(a)) {
            res.singular = true;
            res.iterations = k + 1;
            return res;
        }
        alpha.push_back(a);
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) {
                cplx h{};
                for (std::size_t i = 0; i < dim; ++i) h += std::conj(q[i]) * w[i];
                for (std::size_t i = 0; i < dim; ++i) w[i] -= h * q[i];
            }
        const double b = std::sqrt(norm2(w));
        res.iterations = k + 1;

        // Largest eigenpair of the k+1 square tridiagonal matrix.
        const auto steps = static_cast<lapack_int>(alpha.size());
        std::vector<double> d(alpha), e(beta), z(alpha.size() * alpha.size());
        if (LAPACKE_dstev(LAPACK_COL_MAJOR, 'V', steps, d.data(), e.data(), z.data(), steps) != 0)
            throw std::runtime_error("dstev failed");
        const double theta = d.back();
        const double last = z[alpha.size() * alpha.size() - 1];
        const bool exhausted = b <= 1e-14 * theta || k + 1 == dim;
        if (theta > 0.0 && (std::abs(b * last) <= opts.residual_tolerance * theta || exhausted)) {
            res.value = 1.0 / std::sqrt(theta);
            return res;
        }
        if (exhausted) break;
        beta.push_back(b);
        for (auto& v : w) v /= b;
        basis.push_back(w);
    }
    if (!opts.allow_fallback) throw ConvergenceError(m.rows(), m.cols(), 0.0);
    res.used_fallback = true;
    res.value = dense_svd(m, opts.fallback).min();
    return res;
}

}  // namespace circlab
